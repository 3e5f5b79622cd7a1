"""Deterministic builders for the graph families used throughout the package."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .embedding import Anchor, Dart, PlaneEmbedding, is_maximal_plane, planar_embed
from .errors import BadParameter, FlipCreatesParallelEdge, NotFlippable, NotMaximalPlanar
from .graph_core import Graph, canonical_form

FAMILIES = ("cycle", "double_wheel", "kleetope", "stacked", "random", "gk", "hk", "icosahedron", "octahedron")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    k: int | None = None
    n: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise BadParameter(f"unknown family {self.family!r}")

    def build(self) -> PlaneEmbedding:
        f, k, n = self.family, self.k, self.n
        if f in ("cycle", "double_wheel", "gk", "hk", "kleetope") and k is None:
            raise BadParameter(f"family {f} needs --k")
        if f in ("stacked", "random") and n is None:
            raise BadParameter(f"family {f} needs --n")
        if f == "cycle":
            return cycle(k)
        if f == "double_wheel":
            return double_wheel(k)
        if f == "kleetope":
            return kleetope(double_wheel(k))
        if f == "stacked":
            return stacked_triangulation(n, self.seed)
        if f == "random":
            return random_triangulation(n, self.seed)
        if f == "gk":
            return build_Gk(k).embedding
        if f == "hk":
            return build_Hk(k).embedding
        if f == "icosahedron":
            return icosahedron()
        return octahedron()


def _stellar(rot: list[list[int]], walk: tuple[Dart, ...], t: int) -> None:
    """Put new vertex ``t`` inside the triangular face traced ``a -> b -> c``."""
    (a, b), (_, c), _ = walk
    assert len(rot) == t
    rot.append([a, b, c])
    for w, before in ((a, c), (b, a), (c, b)):
        r = rot[w]
        r.insert(r.index(before), t)


def cycle(k: int) -> PlaneEmbedding:
    if k < 3:
        raise BadParameter("cycle needs k >= 3")
    return PlaneEmbedding.from_rotation([((i + 1) % k, (i - 1) % k) for i in range(k)])


def double_wheel(k: int) -> PlaneEmbedding:
    """Rim ``0..k-1``, hub ``k`` joined from one side and hub ``k+1`` from the other."""
    if k < 3:
        raise BadParameter("double_wheel needs k >= 3")
    v1, v2 = k, k + 1
    rot = [[v2, (i + 1) % k, v1, (i - 1) % k] for i in range(k)]
    rot.append(list(range(k)))
    rot.append(list(range(k - 1, -1, -1)))
    return PlaneEmbedding.from_rotation(rot)


def octahedron() -> PlaneEmbedding:
    return double_wheel(4)


def icosahedron() -> PlaneEmbedding:
    top, bottom = 0, 11
    edges = []
    for i in range(5):
        up, up_next = 1 + i, 1 + (i + 1) % 5
        lo, lo_next = 6 + i, 6 + (i + 1) % 5
        edges += [(top, up), (up, up_next), (up, lo), (up_next, lo), (lo, lo_next), (lo, bottom)]
    emb = planar_embed(Graph.from_edges(12, edges))
    assert isinstance(emb, PlaneEmbedding)
    return emb


def kleetope(e: PlaneEmbedding) -> PlaneEmbedding:
    """Add a degree-3 vertex inside every face; new vertices follow face id order."""
    if e.vertex_count < 4 or not is_maximal_plane(e):
        raise NotMaximalPlanar("kleetope needs a maximal plane embedding on at least 4 vertices")
    rot = [list(r) for r in e.rotation]
    n = e.vertex_count
    for i, f in enumerate(e.faces):
        _stellar(rot, f.walks[0], n + i)
    return PlaneEmbedding.from_rotation(rot)


def _triangle_k4() -> list[list[int]]:
    rot = [[1, 2], [2, 0], [0, 1]]
    _stellar(rot, ((0, 1), (1, 2), (2, 0)), 3)
    return rot


def stacked_triangulation(n: int, seed: int = 0) -> PlaneEmbedding:
    """Repeated stellar insertion into a random face, starting from K4."""
    if n < 4:
        raise BadParameter("stacked triangulations need n >= 4")
    rng = random.Random(seed)
    cur = PlaneEmbedding.from_rotation(_triangle_k4())
    for t in range(4, n):
        rot = [list(r) for r in cur.rotation]
        f = rng.choice(cur.faces)
        _stellar(rot, f.walks[0], t)
        cur = PlaneEmbedding.from_rotation(rot)
    return cur


def random_triangulation(n: int, seed: int = 0, flips: int | None = None) -> PlaneEmbedding:
    """A stacked triangulation scrambled by random diagonal flips."""
    rng = random.Random(seed)
    cur = stacked_triangulation(n, rng.randrange(1 << 30))
    for _ in range(4 * n if flips is None else flips):
        edge = rng.choice(cur.graph.sorted_edges)
        try:
            cur = flip(cur, edge)
        except NotFlippable:
            pass
    return cur


def flip(e: PlaneEmbedding, edge: tuple[int, int]) -> PlaneEmbedding:
    """Replace ``uv`` (shared by triangles ``uvx`` and ``vuy``) by ``xy``."""
    if not is_maximal_plane(e):
        raise NotFlippable("flips are defined on maximal plane embeddings")
    u, v = edge
    if not e.graph.has_edge(u, v):
        raise NotFlippable(f"({u}, {v}) is not an edge")
    x = e.successor((u, v))[1]
    y = e.successor((v, u))[1]
    if x == y:
        raise NotFlippable("both sides of the edge are the same triangle")
    if e.graph.has_edge(x, y):
        raise FlipCreatesParallelEdge(f"flipping ({u}, {v}) would duplicate edge ({x}, {y})")
    rot = [list(r) for r in e.rotation]
    rot[u].remove(v)
    rot[v].remove(u)
    rot[x].insert(rot[x].index(v), y)
    rot[y].insert(rot[y].index(u), x)
    return PlaneEmbedding.from_rotation(rot)


def catalog_triangulations(n: int, max_n: int = 8) -> list[PlaneEmbedding]:
    """One embedding per isomorphism class of triangulations on ``n`` vertices.

    Breadth-first search over diagonal flips starting at ``stacked(n, 0)``;
    the flip graph of unlabeled triangulations is connected, so this is
    complete.
    """
    if n < 4 or n > max_n:
        raise BadParameter(f"catalog supports 4 <= n <= {max_n}")
    start = stacked_triangulation(n, 0)
    seen = {canonical_form(start.graph)}
    out = [start]
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for edge in cur.graph.sorted_edges:
            try:
                nxt = flip(cur, edge)
            except NotFlippable:
                continue
            key = canonical_form(nxt.graph)
            if key not in seen:
                seen.add(key)
                out.append(nxt)
                queue.append(nxt)
    return out


# ---------------------------------------------------------------------------
# the extremal pair (G_k, H_k)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Gk:
    k: int
    embedding: PlaneEmbedding
    v1: int
    v2: int
    u: int
    a: int
    b: int
    x: int
    y: int
    z: int


def build_Gk(k: int) -> Gk:
    """Kleetope of the double wheel on ``k`` rim vertices plus a triangle gadget.

    Vertices: rim ``0..k-1``, hubs ``k`` and ``k+1``, face vertices
    ``k+2..3k+1`` (in face id order of the double wheel), then ``x, y, z``.
    """
    if k < 6:
        raise BadParameter("G_k needs k >= 6")
    v1, v2 = k, k + 1
    dw = double_wheel(k)
    base = kleetope(dw)
    u = next(k + 2 + i for i, f in enumerate(dw.faces) if v2 in f.vertices)
    walk = next(w for f in base.faces_at(u) for w in f.walks if v2 not in {d[0] for d in w})
    i = next(j for j, d in enumerate(walk) if d[0] == u)
    a, b = walk[i][1], walk[(i + 1) % 3][1]
    x, y, z = 3 * k + 2, 3 * k + 3, 3 * k + 4
    rot = [list(r) for r in base.rotation]
    ru = rot[u]
    ru[ru.index(b):ru.index(b)] = [x, y, z]
    ra = rot[a]
    ra[ra.index(u):ra.index(u)] = [z, x]
    rb = rot[b]
    rb.insert(rb.index(a), z)
    rot += [[y, u, a, z], [u, x, z], [u, y, x, a, b]]
    emb = PlaneEmbedding.from_rotation(rot)
    return Gk(k, emb, v1, v2, u, a, b, x, y, z)


@dataclass(frozen=True)
class Hk:
    k: int
    embedding: PlaneEmbedding
    cycle: tuple[int, ...]
    centers: tuple[int, int]
    k4: tuple[int, int, int, int]
    isolated: tuple[int, ...]
    faces: tuple[Dart, Dart, Dart]
    joined: int


def build_Hk(k: int) -> Hk:
    """K4 with a k-cycle in one face, two 11-leaf stars in another, and isolated vertices in a third.

    Vertices: cycle ``0..k-1``, star centres ``k`` and ``k+1``, K4 on
    ``k+2..k+5``, the leaves of each centre (11 apiece) and finally
    ``2k-23`` isolated vertices.  Centre ``k+1`` is joined to the first
    vertex of its face.
    """
    if k < 12:
        raise BadParameter("H_k needs k >= 12 (it places 2k-23 isolated vertices)")
    n = 3 * k + 5
    c1, c2 = k, k + 1
    q = [k + 2 + i for i in range(4)]
    leaves1 = list(range(k + 6, k + 17))
    leaves2 = list(range(k + 17, k + 28))
    isolated = list(range(k + 28, n))

    k4 = PlaneEmbedding.from_rotation(_triangle_k4())
    f1, f2, f3 = (f for f in k4.faces[:3])
    rot: list[list[int]] = [[] for _ in range(n)]
    for v in range(4):
        rot[q[v]] = [q[w] for w in k4.rotation[v]]
    for i in range(k):
        rot[i] = [(i + 1) % k, (i - 1) % k]
    rot[c1] = list(leaves1)
    for l in leaves1:
        rot[l] = [c1]
    rot[c2] = list(leaves2)
    for l in leaves2:
        rot[l] = [c2]
    # join c2 at the corner of F2 where its least dart starts
    walk2 = f2.walks[0]
    t, r = q[walk2[0][0]], q[walk2[-1][0]]
    rot[t].insert(rot[t].index(r), c2)
    rot[c2].append(t)

    def lift(d: Dart) -> Dart:
        return (q[d[0]], q[d[1]])

    anchors = [Anchor(q[0]), Anchor(0, lift(f1.id), (0, 1)), Anchor(c1, lift(f2.id))]
    anchors += [Anchor(v, lift(f3.id)) for v in isolated]
    emb = PlaneEmbedding.from_rotation(rot, anchors)
    fids = tuple(emb.face_of_dart(lift(f.id)).id for f in (f1, f2, f3))
    return Hk(k, emb, tuple(range(k)), (c1, c2), tuple(q), tuple(isolated), fids, t)
