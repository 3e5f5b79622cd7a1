"""``plansat`` command line: generate, inspect, check, construct, solve.

Exit codes: 0 success, 1 property checked and refuted, 2 input or
precondition error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import fileformat
from .errors import PlansatError
from .generators import FAMILIES, FamilySpec
from .saturation import (deg3_bound_check, degree_gap_bound, is_plane_saturated, lemma1_construct, lower_bounds,
                         many3_construct, structure_props, upper_bound_auto)
from .solver import exact_sat

CONSTRUCTIONS = {"lemma1": lemma1_construct, "many3": many3_construct, "auto": upper_bound_auto}


def _emit(args: argparse.Namespace, doc: dict, lines: list[str]) -> None:
    if args.json:
        print(fileformat.report_json(doc))
    else:
        print("\n".join(lines))


def _save(args: argparse.Namespace, emb) -> None:
    if args.out:
        fileformat.write(args.out, emb)
    elif args.command == "gen":
        sys.stdout.write(fileformat.dumps(emb))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(fileformat.to_dot(emb))


def cmd_gen(args: argparse.Namespace) -> int:
    emb = FamilySpec(args.family, args.k, args.n, args.seed).build()
    _save(args, emb)
    return 0


def cmd_props(args: argparse.Namespace) -> int:
    host = fileformat.read(args.host)
    rep = structure_props(host.graph, host)
    cert = deg3_bound_check(host.graph)
    fails = rep.failures()
    expected = [c for c in fails if c.prop == "three_high" and rep.k5_minus_edge]
    refuted = any(c not in expected for c in fails) or not cert.satisfied
    lines = [f"{p}: {'pass' if rep.passed(p) else 'FAIL'}" for p in ("independent", "few_deg3", "three_high", "adjacent_high")]
    if rep.k5_minus_edge:
        lines.append("K5 minus an edge: the three_high exception applies")
    lines.append(str(cert) + (" (tight)" if cert.tight else ""))
    _emit(args, {"structure": rep, "deg3": cert}, lines)
    return 1 if refuted else 0


def cmd_check(args: argparse.Namespace) -> int:
    host = fileformat.read(args.host)
    sub = fileformat.read(args.sub)
    rep = is_plane_saturated(sub, host.graph)
    lines = [f"addable pairs: {rep.addable_count}", f"edges: {sub.edge_count}",
             f"saturated: {'yes' if rep.saturated else 'no'}"]
    for v in rep.witnesses[:10]:
        lines.append(f"extendable pair {v.pair.u} {v.pair.v} in face {v.pair.face}")
    _emit(args, {"saturated": rep.saturated, "addable_count": rep.addable_count, "edges": sub.edge_count,
                 "pair_verdicts": rep.pair_verdicts}, lines)
    return 0 if rep.saturated else 1


def cmd_construct(args: argparse.Namespace) -> int:
    host = fileformat.read(args.host)
    h, trace = CONSTRUCTIONS[args.method](host.graph, host)
    _save(args, h)
    lines = [f"method: {trace.method}", f"edges: {trace.final_edges}"]
    lines += [f"{k}: {v}" for k, v in trace.phases.items()]
    lines += [str(c) for c in trace.bound_certificates]
    _emit(args, {"trace": trace}, lines)
    return 0


def cmd_exact(args: argparse.Namespace) -> int:
    host = fileformat.read(args.host)
    res = exact_sat(host.graph, time_limit=args.time_limit)
    _save(args, res.witness)
    lines = [f"sat: {res.sat_value}", f"exhaustive: {res.exhaustive}"]
    lines += [f"{k}: {v}" for k, v in res.stats.items()]
    _emit(args, {"sat_value": res.sat_value, "exhaustive": res.exhaustive, "stats": res.stats,
                 "witness": res.witness, "subset": res.subset}, lines)
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    g = fileformat.read(args.host).graph
    certs = lower_bounds(g) + [degree_gap_bound(g)]
    if g.vertex_count >= 5:
        certs.append(deg3_bound_check(g))
    lines = []
    for c in certs:
        extra = f" -> {c.integer_bound}" if c.integer_bound is not None else ""
        lines.append(f"{c.formula}: {c.lhs} {c.relation} {c.rhs}{extra}")
    _emit(args, {"certificates": certs}, lines)
    return 0 if all(c.satisfied for c in certs) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plansat", description="plane-saturated subgraphs of triangulations")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is single-threaded")
    common.add_argument("--out", help="write the resulting embedding here")
    common.add_argument("--dot", help="also write a DOT drawing here")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a family member")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_gen)

    pr = sub.add_parser("props", parents=[common], help="degree-3 structure checks")
    pr.add_argument("--host", required=True)
    pr.set_defaults(func=cmd_props)

    c = sub.add_parser("check", parents=[common], help="is SUB plane-saturated in HOST?")
    c.add_argument("--host", required=True)
    c.add_argument("--sub", required=True)
    c.set_defaults(func=cmd_check)

    co = sub.add_parser("construct", parents=[common], help="build a small saturated subgraph")
    co.add_argument("--host", required=True)
    co.add_argument("--method", choices=sorted(CONSTRUCTIONS), default="auto")
    co.set_defaults(func=cmd_construct)

    ex = sub.add_parser("exact", parents=[common], help="exact saturation number (n <= 8)")
    ex.add_argument("--host", required=True)
    ex.add_argument("--time-limit", type=float)
    ex.set_defaults(func=cmd_exact)

    b = sub.add_parser("bounds", parents=[common], help="closed-form bounds")
    b.add_argument("--host", required=True)
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PlansatError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
