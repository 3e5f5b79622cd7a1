"""Plane-saturation checking, greedy saturation, the two upper-bound
constructions and closed-form bound certificates.

All comparisons are exact: bounds are evaluated with integers or
:class:`fractions.Fraction`, never floats.
"""

from __future__ import annotations

import operator
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Callable

from .embedding import AddablePair, Dart, PlaneEmbedding, addable_pairs, delete_edges, insert_edge, \
    is_maximal_plane, move_isolated, planar_embed
from .errors import InsufficientTriangularFaces, InternalClaimFailed, NotASubgraph, NotMaximalPlanar, \
    PreconditionFailed, TooFewVertices, VertexCountMismatch
from .graph_core import Graph, Monomorphism, SubgraphMatcher, degree_profile, is_k5_minus_edge

_RELATIONS: dict[str, Callable[[Fraction, Fraction], bool]] = {
    "<": operator.lt, "<=": operator.le, "==": operator.eq, ">=": operator.ge, ">": operator.gt,
}


@dataclass(frozen=True)
class BoundCertificate:
    """``lhs relation rhs`` for one instance of a named inequality."""

    formula: str
    inputs: dict[str, int]
    lhs: Fraction
    rhs: Fraction
    relation: str
    integer_bound: int | None = None
    satisfied: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        object.__setattr__(self, "satisfied", _RELATIONS[self.relation](self.lhs, self.rhs))

    @property
    def tight(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self) -> str:
        return f"{self.formula}: {self.lhs} {self.relation} {self.rhs} [{'ok' if self.satisfied else 'FAILED'}]"


@dataclass(frozen=True)
class PairVerdict:
    pair: AddablePair
    witness: Monomorphism | None

    @property
    def extends(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class SaturationReport:
    saturated: bool
    pair_verdicts: tuple[PairVerdict, ...]
    addable_count: int
    base_witness: Monomorphism

    @property
    def witnesses(self) -> list[PairVerdict]:
        return [v for v in self.pair_verdicts if v.extends]


@dataclass
class ConstructionTrace:
    method: str
    phases: dict[str, object] = field(default_factory=dict)
    final_edges: int = 0
    bound_certificates: list[BoundCertificate] = field(default_factory=list)
    added_edges: list[tuple[int, int]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# checking
# ---------------------------------------------------------------------------


class _Extender:
    """Decides whether ``H + uv`` still embeds in ``G`` for a growing ``H``.

    A refuted pair stays refuted as ``H`` gains edges, so refutations are
    cached; the latest witness is tried first because it often already maps
    ``u, v`` onto an edge of ``G``.
    """

    def __init__(self, g: Graph, node_limit: int | None = None) -> None:
        self.g = g
        self.matcher = SubgraphMatcher(g)
        self.node_limit = node_limit
        self.refuted: set[tuple[int, int]] = set()
        self.witness: list[int] | None = None

    def start(self, h: Graph) -> Monomorphism:
        if h.vertex_count != self.g.vertex_count:
            raise VertexCountMismatch("subgraph and host differ in vertex count")
        w = self.matcher.find_masks(list(h.masks), node_limit=self.node_limit)
        if w is None:
            raise NotASubgraph("the plane graph is not a subgraph of the host")
        self.witness = w
        return Monomorphism(tuple(w))

    def try_pair(self, hmasks: list[int], u: int, v: int) -> list[int] | None:
        if (u, v) in self.refuted:
            return None
        w = self.witness
        if w is not None and (self.g.masks[w[u]] >> w[v]) & 1:
            return w
        key = _twin_reduce(hmasks, u, v)
        if key in self.refuted:
            self.refuted.add((u, v))
            return None
        m = list(hmasks)
        m[u] |= 1 << v
        m[v] |= 1 << u
        res = self.matcher.find_masks(m, node_limit=self.node_limit)
        if res is None:
            self.refuted.add((u, v))
            self.refuted.add(key)
        return res


def _twin_reduce(hmasks: list[int], u: int, v: int) -> tuple[int, int]:
    """Least pair equivalent to ``uv`` under swaps of twin vertices of ``H``.

    Swapping two vertices with the same open (or closed) neighbourhood is an
    automorphism, so equivalent pairs give isomorphic extensions.
    """
    for closed in (False, True):
        def sig(x: int) -> int:
            return hmasks[x] | (1 << x) if closed else hmasks[x]

        su, sv = sig(u), sig(v)
        cu = [x for x in range(len(hmasks)) if sig(x) == su]
        a = cu[0]
        if sv == su:
            b = next(x for x in cu if x != a)
        else:
            b = next(x for x in range(len(hmasks)) if sig(x) == sv)
        u, v = min(a, b), max(a, b)
    return u, v


def is_plane_saturated(h: PlaneEmbedding, g: Graph, *, node_limit: int | None = None) -> SaturationReport:
    """Decide, pair by pair and exhaustively, whether ``h`` is plane-saturated in ``g``."""
    ext = _Extender(g, node_limit)
    base = ext.start(h.graph)
    pairs = addable_pairs(h)
    masks = list(h.graph.masks)
    by_uv: dict[tuple[int, int], Monomorphism | None] = {}
    verdicts = []
    for p in pairs:
        key = (p.u, p.v)
        if key not in by_uv:
            w = ext.try_pair(masks, p.u, p.v)
            by_uv[key] = None if w is None else Monomorphism(tuple(w))
        verdicts.append(PairVerdict(p, by_uv[key]))
    saturated = all(v.witness is None for v in verdicts)
    return SaturationReport(saturated, tuple(verdicts), len(pairs), base)


def greedy_saturate(h: PlaneEmbedding, g: Graph, *, node_limit: int | None = None,
                    trace: ConstructionTrace | None = None) -> tuple[PlaneEmbedding, ConstructionTrace]:
    """Keep inserting the least addable pair that still embeds in ``g``.

    Pairs are ordered by ``(u, v, face id)``.  The result is plane-saturated.
    """
    trace = trace if trace is not None else ConstructionTrace("greedy")
    ext = _Extender(g, node_limit)
    ext.start(h.graph)
    cur = h
    added = []
    while True:
        masks = list(cur.graph.masks)
        for p in addable_pairs(cur):
            w = ext.try_pair(masks, p.u, p.v)
            if w is not None:
                ext.witness = w
                cur = insert_edge(cur, p)
                added.append((p.u, p.v))
                break
        else:
            break
    trace.added_edges.extend(added)
    trace.phases["greedy_edges_added"] = len(added)
    trace.final_edges = cur.edge_count
    return cur, trace


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _require_maximal(g: Graph, phi: PlaneEmbedding | None, min_n: int = 5) -> PlaneEmbedding:
    if g.vertex_count < min_n:
        raise TooFewVertices(f"need at least {min_n} vertices, got {g.vertex_count}")
    if phi is None:
        emb = planar_embed(g)
        if not emb:
            raise NotMaximalPlanar("host is not planar")
        phi = emb
    if phi.graph != g:
        raise ValueError("embedding does not belong to the given graph")
    if not is_maximal_plane(phi):
        raise NotMaximalPlanar("host is not maximal planar")
    return phi


def lemma1_construct(g: Graph, phi: PlaneEmbedding | None = None, *,
                     node_limit: int | None = None) -> tuple[PlaneEmbedding, ConstructionTrace]:
    """Grow half the vertices face by face, drop the rest into distinct triangles, saturate."""
    phi = _require_maximal(g, phi)
    n = g.vertex_count
    k = degree_profile(g).n3
    quota = ceil(n / 2) - 2
    trace = ConstructionTrace("lemma1")

    faces = phi.faces
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for i, f in enumerate(faces):
        for a, b in f.walks[0]:
            edge_faces.setdefault((min(a, b), max(a, b)), []).append(i)

    included = [0]
    verts = set(faces[0].vertices)
    seen = {0}
    queue = deque([0])
    added = 0
    while queue and added < quota:
        i = queue.popleft()
        for a, b in faces[i].walks[0]:
            for j in edge_faces[(min(a, b), max(a, b))]:
                if j in seen or added >= quota:
                    continue
                new = faces[j].vertices - verts
                seen.add(j)
                included.append(j)
                queue.append(j)
                if new:
                    verts |= new
                    added += len(new)
    if added != quota:
        raise InternalClaimFailed("face growth could not reach the vertex quota")

    kept = set()
    for i in included:
        for a, b in faces[i].walks[0]:
            kept.add((min(a, b), max(a, b)))
    h_t = delete_edges(phi, [e for e in g.edges if e not in kept])
    rest = sorted(set(range(n)) - verts)
    tri = [f for f in h_t.faces if f.has_triangular_boundary]
    trace.phases.update(
        phase1_faces=len(included), phase1_vertices_added=added, ht_vertices=len(verts),
        ht_edges=h_t.edge_count, ht_triangular_faces=len(tri), placed=len(rest), placed_vertices=rest,
    )
    if len(tri) < len(rest):
        raise InsufficientTriangularFaces(f"{len(tri)} triangular faces for {len(rest)} vertices")
    targets = {v: f.id for v, f in zip(rest, tri)}
    trace.phases["placement_faces"] = [targets[v] for v in rest]
    h2 = move_isolated(h_t, targets)
    h, _ = greedy_saturate(h2, g, node_limit=node_limit, trace=trace)
    trace.final_edges = h.edge_count

    half = n // 2 - 1
    if k <= half:
        cert = BoundCertificate(
            "lemma1_edges", {"n": n, "k": k}, 2 * h.edge_count, 2 * (3 * n - 6) - (half - k), "<=",
            integer_bound=3 * n - 6 - ceil(Fraction(half - k, 2)),
        )
        trace.bound_certificates.append(cert)
        if not cert.satisfied:
            raise InternalClaimFailed(str(cert))
    return h, trace


def many3_construct(g: Graph, phi: PlaneEmbedding | None = None, *,
                    node_limit: int | None = None) -> tuple[PlaneEmbedding, ConstructionTrace]:
    """Keep the degree-4+ triangulation, lift deficient vertices, pile the leftover degree-3 vertices in one face."""
    phi = _require_maximal(g, phi)
    n = g.vertex_count
    prof = degree_profile(g)
    k = prof.n3
    if 5 * k - 2 * n <= 0:
        raise PreconditionFailed(f"5k-2n <= 0 (k={k}, n={n})")
    d3 = [v for v in range(n) if prof.degrees[v] == 3]
    d3set = set(d3)
    u_set = [v for v in range(n) if v not in d3set]
    trace = ConstructionTrace("many3")

    h_u = delete_edges(phi, [e for e in g.edges if e[0] in d3set or e[1] in d3set])
    nu = len(u_set)
    if h_u.edge_count != 3 * nu - 6 or not all(f.has_triangular_boundary for f in h_u.faces):
        raise InternalClaimFailed("the degree-4+ vertices do not induce a maximal plane graph")
    hu_deg = h_u.graph.degrees
    deficient = [v for v in u_set if hu_deg[v] == 3]
    n3_hu = len(deficient)
    cert_hu = BoundCertificate("many3_hu_deg3", {"n": n, "k": k}, 3 * n3_hu, 2 * (n - k) - 4, "<=")
    trace.phases.update(u_size=nu, hu_edges=h_u.edge_count, hu_deg3=n3_hu, hu_maximal=True)
    if not cert_hu.satisfied:
        raise InternalClaimFailed(str(cert_hu))

    cur = h_u
    used: set[int] = set()
    for v in deficient:
        w = min(x for x in g.adjacency[v] if x in d3set)
        f = cur.face_of_isolated(w) if w not in used else next(
            f for f in cur.faces_at(w) if v in f.vertices)
        cur = insert_edge(cur, AddablePair(v, w, f.id))
        used.add(w)
    w_set = [v for v in d3 if v not in used]
    tri = [f for f in cur.faces if f.has_triangular_boundary]
    if not tri:
        raise InternalClaimFailed("no triangular face available for the leftover vertices")
    t_face = tri[0]
    cur = move_isolated(cur, {v: t_face.id for v in w_set})
    trace.phases.update(extension_edges=len(deficient), used_deg3=len(used), w_size=len(w_set), t_face=t_face.id)
    h, _ = greedy_saturate(cur, g, node_limit=node_limit, trace=trace)
    trace.final_edges = h.edge_count

    certs = [
        cert_hu,
        BoundCertificate("many3_w_size", {"n": n, "k": k}, 3 * len(w_set), 5 * k - 2 * n, ">="),
        BoundCertificate("many3_edges", {"n": n, "k": k}, 3 * h.edge_count,
                         3 * (3 * n - 6) - (5 * k - 2 * n - 3), "<=",
                         integer_bound=floor(Fraction(3 * (3 * n - 6) - (5 * k - 2 * n - 3), 3))),
    ]
    trace.bound_certificates.extend(certs)
    for c in certs:
        if not c.satisfied:
            raise InternalClaimFailed(str(c))
    return h, trace


def prefers_lemma1(n: int, n3: int) -> bool:
    """Dispatch rule: ``n3 < floor(n/2) - n/500 - 1`` in integer form."""
    return 500 * n3 < 500 * (n // 2) - n - 500


def upper_bound_auto(g: Graph, phi: PlaneEmbedding | None = None, *,
                     node_limit: int | None = None) -> tuple[PlaneEmbedding, ConstructionTrace]:
    """Pick the construction by degree-3 count and certify ``e(H) < (3 - 1/300) n``."""
    if g.vertex_count < 16:
        raise TooFewVertices("the dispatcher needs at least 16 vertices")
    phi = _require_maximal(g, phi)
    n = g.vertex_count
    k = degree_profile(g).n3
    if prefers_lemma1(n, k):
        h, trace = lemma1_construct(g, phi, node_limit=node_limit)
    else:
        h, trace = many3_construct(g, phi, node_limit=node_limit)
    trace.phases["branch"] = trace.method
    trace.method = "auto"
    cert = BoundCertificate("auto_edges", {"n": n, "k": k}, 300 * h.edge_count, 899 * n, "<")
    trace.bound_certificates.append(cert)
    if not cert.satisfied:
        raise InternalClaimFailed(str(cert))
    return h, trace


# ---------------------------------------------------------------------------
# closed-form bounds
# ---------------------------------------------------------------------------


def _check_maximal_graph(g: Graph) -> None:
    n = g.vertex_count
    if n < 3 or g.edge_count != 3 * n - 6 or not planar_embed(g):
        raise NotMaximalPlanar("graph is not maximal planar")


def degree_gap_bound(g: Graph) -> BoundCertificate:
    """Upper bound ``(3 - c) n - 2`` from the largest gap in the sorted degree sequence."""
    _check_maximal_graph(g)
    n = g.vertex_count
    d = sorted(g.degrees)
    gap = max(d[i + 1] - d[i] for i in range(n - 1))
    c = Fraction(gap, n)
    bound = (3 - c) * n - 2
    inputs = {"n": n, "gap": gap, "c_num": c.numerator, "c_den": c.denominator}
    return BoundCertificate("degree_gap", inputs, bound, bound, "<=", integer_bound=floor(bound))


def lower_bounds(g: Graph) -> list[BoundCertificate]:
    """Both lower bounds on the saturation number, with the least integer each allows."""
    _check_maximal_graph(g)
    n = g.vertex_count
    a = Fraction(n + 4, 6)
    b = Fraction(3 * n - 6, 16)
    return [
        BoundCertificate("lower_face_count", {"n": n}, a, a, ">=", integer_bound=ceil(a)),
        BoundCertificate("lower_general", {"n": n}, b, b, ">=", integer_bound=floor(b) + 1),
    ]


def sat_lower_bound(n: int) -> int:
    """Least integer compatible with both lower bounds."""
    return max(ceil(Fraction(n + 4, 6)), (3 * n - 6) // 16 + 1)


def lower_bound_certificates(n: int, edges: int) -> list[BoundCertificate]:
    """The two lower bounds checked against an actual saturated subgraph."""
    return [
        BoundCertificate("lower_face_count", {"n": n, "e": edges}, 6 * edges, n + 4, ">="),
        BoundCertificate("lower_general", {"n": n, "e": edges}, 16 * edges, 3 * n - 6, ">"),
    ]


def deg3_bound_check(g: Graph) -> BoundCertificate:
    """``3 n3 <= 2n - 4``; ``tight`` flags equality."""
    if g.vertex_count < 5:
        raise TooFewVertices("needs at least 5 vertices")
    _check_maximal_graph(g)
    n = g.vertex_count
    n3 = degree_profile(g).n3
    return BoundCertificate("deg3_count", {"n": n, "n3": n3}, 3 * n3, 2 * n - 4, "<=")


# ---------------------------------------------------------------------------
# structural properties of triangulations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyCheck:
    prop: str
    vertex: int
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class StructureReport:
    checks: tuple[PropertyCheck, ...]
    k5_minus_edge: bool

    def passed(self, prop: str) -> bool:
        return all(c.passed for c in self.checks if c.prop == prop)

    def failures(self, prop: str | None = None) -> list[PropertyCheck]:
        return [c for c in self.checks if not c.passed and (prop is None or c.prop == prop)]


def structure_props(g: Graph, emb: PlaneEmbedding | None = None) -> StructureReport:
    """Per-vertex checks of four degree-3 properties of triangulations.

    ``independent``: no two degree-3 vertices are adjacent.  ``few_deg3``: a
    vertex of degree ``d >= 4`` has at most ``d // 2`` degree-3 neighbours.
    ``three_high``: such a vertex has at least three neighbours of degree
    ``>= 4`` (the one exception is K5 minus an edge).  ``adjacent_high``: it
    has two adjacent neighbours both of degree ``>= 4``.
    """
    if g.vertex_count < 5:
        raise TooFewVertices("structure checks need at least 5 vertices")
    if emb is not None:
        if emb.graph != g or not is_maximal_plane(emb):
            raise NotMaximalPlanar("embedding is not a maximal plane embedding of the graph")
    else:
        _check_maximal_graph(g)
    deg = g.degrees
    adj = g.adjacency
    checks = []
    for v in range(g.vertex_count):
        d3 = [w for w in adj[v] if deg[w] == 3]
        if deg[v] == 3:
            checks.append(PropertyCheck("independent", v, not d3, f"degree-3 neighbours {sorted(d3)}"))
            continue
        checks.append(PropertyCheck("few_deg3", v, len(d3) <= deg[v] // 2, f"{len(d3)} of {deg[v]}"))
        high = [w for w in adj[v] if deg[w] >= 4]
        checks.append(PropertyCheck("three_high", v, len(high) >= 3, f"{len(high)} high neighbours"))
        hs = set(high)
        pair = any(adj[x] & hs for x in high)
        checks.append(PropertyCheck("adjacent_high", v, pair))
    return StructureReport(tuple(checks), is_k5_minus_edge(g))
