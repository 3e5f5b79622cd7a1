"""Line-oriented embedding files, DOT export and JSON-ready reports.

Embedding file grammar (0-indexed)::

    pse 1
    n <count>
    e <u> <v>                 # u < v, one line per edge
    r <v>: <w1> <w2> ...      # counter-clockwise rotation of a non-isolated vertex
    a <rep>: root             # the base component
    a <rep>: <x> <y>          # component of rep lies in the face left of x -> y
    a <rep>: <x> <y> @ <p> <q>   # ... and its dart p -> q faces that face

Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .embedding import Anchor, PlaneEmbedding
from .errors import ParseError, PlansatError
from .graph_core import Graph, Monomorphism

HEADER = "pse 1"


def dumps(e: PlaneEmbedding) -> str:
    lines = [HEADER, f"n {e.vertex_count}"]
    lines += [f"e {u} {v}" for u, v in e.graph.sorted_edges]
    for v, r in enumerate(e.rotation):
        if r:
            lines.append(f"r {v}: " + " ".join(map(str, r)))
    for a in e.anchors:
        if a.parent is None:
            lines.append(f"a {a.rep}: root")
        elif a.child is None:
            lines.append(f"a {a.rep}: {a.parent[0]} {a.parent[1]}")
        else:
            lines.append(f"a {a.rep}: {a.parent[0]} {a.parent[1]} @ {a.child[0]} {a.child[1]}")
    return "\n".join(lines) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def loads(text: str) -> PlaneEmbedding:
    n = None
    edges: list[tuple[int, int]] = []
    rot: dict[int, tuple[int, ...]] = {}
    anchors: list[Anchor] = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise ParseError(f"line {lineno}: expected header {HEADER!r}")
            seen_header = True
            continue
        tag, _, rest = line.partition(" ")
        if tag == "n":
            vals = _ints(rest.split(), lineno)
            if len(vals) != 1 or vals[0] < 0:
                raise ParseError(f"line {lineno}: expected one non-negative vertex count")
            n = vals[0]
        elif tag == "e":
            uv = _ints(rest.split(), lineno)
            if len(uv) != 2:
                raise ParseError(f"line {lineno}: edge lines need two vertices")
            edges.append((uv[0], uv[1]))
        elif tag in ("r", "a"):
            head, colon, body = rest.partition(":")
            if not colon:
                raise ParseError(f"line {lineno}: missing ':'")
            (v,) = _ints([head.strip()], lineno)
            if tag == "r":
                if v in rot:
                    raise ParseError(f"line {lineno}: duplicate rotation for {v}")
                rot[v] = tuple(_ints(body.split(), lineno))
            else:
                anchors.append(_parse_anchor(v, body.strip(), lineno))
        else:
            raise ParseError(f"line {lineno}: unknown record {tag!r}")
    if not seen_header:
        raise ParseError("empty file")
    if n is None:
        raise ParseError("missing vertex count line")
    try:
        graph = Graph.from_edges(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if len(graph.edges) != len(edges):
        raise ParseError("duplicate edge lines")
    for v in rot:
        if not 0 <= v < n:
            raise ParseError(f"rotation for unknown vertex {v}")
    rotation = tuple(rot.get(v, ()) for v in range(n))
    try:
        return PlaneEmbedding(graph, rotation, tuple(anchors))
    except PlansatError as exc:
        raise ParseError(f"{type(exc).__name__}: {exc}") from None


def _parse_anchor(v: int, body: str, lineno: int) -> Anchor:
    if body == "root":
        return Anchor(v)
    parent, at, child = body.partition("@")
    p = _ints(parent.split(), lineno)
    if len(p) != 2:
        raise ParseError(f"line {lineno}: anchor needs a directed edge")
    c = None
    if at:
        cc = _ints(child.split(), lineno)
        if len(cc) != 2:
            raise ParseError(f"line {lineno}: child dart needs two vertices")
        c = (cc[0], cc[1])
    return Anchor(v, (p[0], p[1]), c)


def read(path: str | Path) -> PlaneEmbedding:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def write(path: str | Path, e: PlaneEmbedding) -> None:
    p = Path(path)
    tmp = p.with_name(p.name + ".tmp")
    tmp.write_text(dumps(e))
    tmp.replace(p)


def to_dot(e: PlaneEmbedding, name: str = "plane") -> str:
    out = [f"graph {name} {{"]
    out += [f"  {v};" for v in range(e.vertex_count)]
    out += [f"  {u} -- {v};" for u, v in e.graph.sorted_edges]
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def to_plain(obj: Any) -> Any:
    """Convert reports into JSON-compatible values; non-integral rationals become ``"p/q"``."""
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, PlaneEmbedding):
        return {"n": obj.vertex_count, "edges": [list(e) for e in obj.graph.sorted_edges]}
    if isinstance(obj, Monomorphism):
        return list(obj.map)
    if dataclasses.is_dataclass(obj):
        return {f.name: to_plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_plain(x) for x in obj]
    if isinstance(obj, PlansatError):
        return {"error": type(obj).__name__, "message": str(obj)}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def report_json(obj: Any) -> str:
    return json.dumps(to_plain(obj), indent=2, sort_keys=True)
