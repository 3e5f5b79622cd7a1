"""Exact plane-saturation numbers of small triangulations by exhaustive search."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .embedding import PlaneEmbedding, _make, delete_edges, planar_embed
from .errors import NotMaximalPlanar, TooLarge
from .generators import catalog_triangulations
from .graph_core import Graph, SubgraphMatcher, bits
from .saturation import _twin_reduce, greedy_saturate, is_plane_saturated, sat_lower_bound


@dataclass
class SolverResult:
    sat_value: int
    witness: PlaneEmbedding
    scaffold: PlaneEmbedding | None
    subset: tuple[tuple[int, int], ...]
    stats: dict[str, int] = field(default_factory=dict)
    exhaustive: bool = True


def _host_check(g: Graph, max_n: int) -> None:
    n = g.vertex_count
    if n > max_n:
        raise TooLarge(f"exact search supports at most {max_n} vertices, got {n}")
    if n < 4 or g.edge_count != 3 * n - 6 or not planar_embed(g):
        raise NotMaximalPlanar("host must be a triangulation on at least 4 vertices")


class _Scaffold:
    """A triangulation with its edges indexed and its triangles as edge triples."""

    def __init__(self, t: PlaneEmbedding) -> None:
        self.emb = t
        self.edges = list(t.graph.sorted_edges)
        index = {e: i for i, e in enumerate(self.edges)}
        self.tris: list[tuple[int, int, int]] = []
        self.tri_edges: list[tuple[int, int, int]] = []
        for f in t.faces:
            (a, b), (_, c), _ = f.walks[0]
            self.tris.append((a, b, c))
            self.tri_edges.append(tuple(index[(min(x, y), max(x, y))] for x, y in ((a, b), (b, c), (c, a))))
        self.edge_tris: list[list[int]] = [[] for _ in self.edges]
        for ti, es in enumerate(self.tri_edges):
            for ei in es:
                self.edge_tris[ei].append(ti)

    def face_vertex_masks(self, keep: int) -> list[int]:
        """Vertex masks of the faces left after deleting the edges not in ``keep``."""
        parent = list(range(len(self.tris)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for ei in range(len(self.edges)):
            if not (keep >> ei) & 1:
                a, b = self.edge_tris[ei]
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        groups: dict[int, int] = {}
        for ti, (a, b, c) in enumerate(self.tris):
            r = find(ti)
            groups[r] = groups.get(r, 0) | (1 << a) | (1 << b) | (1 << c)
        return list(groups.values())


def _dominated(h_desc: list[int], g_desc: list[int]) -> bool:
    return all(a <= b for a, b in zip(h_desc, g_desc))


def _search(g: Graph, m_lo: int, m_hi: int, deadline: float | None, stats: dict[str, int]):
    """First ``(scaffold, subset mask, m)`` whose plane graph is saturated in ``g``, or ``None``.

    Raises ``TimeoutError`` when the deadline passes.
    """
    n = g.vertex_count
    scaffolds = [_Scaffold(t) for t in catalog_triangulations(n, max_n=max(8, n))]
    stats["scaffolds"] = len(scaffolds)
    matcher = SubgraphMatcher(g)
    g_desc = sorted(g.degrees, reverse=True)
    for m in range(m_lo, m_hi + 1):
        for sc in scaffolds:
            ne = len(sc.edges)
            for combo in itertools.combinations(range(ne), m):
                stats["subsets"] = stats.get("subsets", 0) + 1
                if deadline is not None and stats["subsets"] % 256 == 0 and time.monotonic() > deadline:
                    raise TimeoutError
                hmasks = [0] * n
                keep = 0
                for ei in combo:
                    keep |= 1 << ei
                    a, b = sc.edges[ei]
                    hmasks[a] |= 1 << b
                    hmasks[b] |= 1 << a
                if not _dominated(sorted((x.bit_count() for x in hmasks), reverse=True), g_desc):
                    continue
                stats["monomorphism_calls"] = stats.get("monomorphism_calls", 0) + 1
                base = matcher.find_masks(hmasks)
                if base is None:
                    continue
                if _saturated_masks(matcher, hmasks, sc.face_vertex_masks(keep), base, stats):
                    return sc, combo, m
    return None


def _saturated_masks(matcher: SubgraphMatcher, hmasks: list[int], face_masks: list[int],
                     base: list[int], stats: dict[str, int]) -> bool:
    gmask = matcher.adj
    tried: set[tuple[int, int]] = set()
    for fm in face_masks:
        for u in bits(fm):
            for v in bits(fm & ~hmasks[u] & ~((1 << (u + 1)) - 1)):
                if (gmask[base[u]] >> base[v]) & 1:
                    return False
                key = _twin_reduce(hmasks, u, v)
                if key in tried:
                    continue
                tried.add(key)
                m = list(hmasks)
                m[u] |= 1 << v
                m[v] |= 1 << u
                stats["monomorphism_calls"] = stats.get("monomorphism_calls", 0) + 1
                if matcher.find_masks(m) is not None:
                    return False
    return True


def exact_sat(g: Graph, *, max_n: int = 8, time_limit: float | None = None) -> SolverResult:
    """Minimum edge count of a plane-saturated subgraph of the triangulation ``g``.

    Every plane graph extends to a triangulation on the same vertices, so
    scanning all edge subsets of one triangulation per isomorphism class,
    with the inherited embedding, covers every plane subgraph up to
    isomorphism.  With ``time_limit`` (seconds) the search may stop early and
    return the greedy upper bound with ``exhaustive=False``.
    """
    _host_check(g, max_n)
    n = g.vertex_count
    stats: dict[str, int] = {}
    deadline = None if time_limit is None else time.monotonic() + time_limit
    try:
        found = _search(g, sat_lower_bound(n), 3 * n - 6, deadline, stats)
    except TimeoutError:
        h, _ = greedy_saturate(PlaneEmbedding.edgeless(n), g)
        return SolverResult(h.edge_count, h, None, tuple(h.graph.sorted_edges), stats, exhaustive=False)
    assert found is not None, "a triangulation is always saturated in itself"
    sc, combo, m = found
    kept = {sc.edges[i] for i in combo}
    witness = delete_edges(sc.emb, [e for e in sc.edges if e not in kept])
    if not is_plane_saturated(witness, g).saturated:
        raise AssertionError("scaffold witness failed the saturation checker")
    return SolverResult(m, witness, sc.emb, tuple(sorted(kept)), stats, exhaustive=True)


def verify_not_improvable(g: Graph, h: PlaneEmbedding, *, max_n: int = 8) -> bool:
    """True iff no plane-saturated subgraph of ``g`` has fewer edges than ``h``."""
    _host_check(g, max_n)
    stats: dict[str, int] = {}
    lo = sat_lower_bound(g.vertex_count)
    if h.edge_count <= lo:
        return True
    return _search(g, lo, h.edge_count - 1, None, stats) is None


# ---------------------------------------------------------------------------
# naive oracle: labelled edge subsets x rotation systems x arrangements
# ---------------------------------------------------------------------------


def _cyclic_orders(items: list[int]) -> list[tuple[int, ...]]:
    if len(items) <= 2:
        return [tuple(items)]
    first, rest = items[0], items[1:]
    return [(first, *p) for p in itertools.permutations(rest)]


def _walks(rot: dict[int, tuple[int, ...]]) -> list[list[tuple[int, int]]]:
    nxt = {}
    for v, r in rot.items():
        for i, w in enumerate(r):
            # dart w->v continues to v->r[i-1]
            nxt[(w, v)] = (v, r[i - 1])
    seen: set[tuple[int, int]] = set()
    out = []
    for d in sorted(nxt):
        if d in seen:
            continue
        walk = []
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = nxt[d]
        out.append(walk)
    return out


def _components(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    label = list(range(n))

    def find(x: int) -> int:
        while label[x] != x:
            x = label[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            label[max(ra, rb)] = min(ra, rb)
    comps: dict[int, list[int]] = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


def exact_sat_naive(g: Graph) -> SolverResult:
    """The same quantity as :func:`exact_sat`, by brute force straight from the definition.

    For every edge subset of ``g`` (ascending size), every rotation system,
    every placement of components into each other's faces, it collects the
    face vertex sets and tests every addable pair against all vertex
    permutations of ``g``.
    """
    if g.vertex_count > 6:
        raise TooLarge("the naive oracle supports at most 6 vertices")
    _host_check(g, 6)
    n = g.vertex_count
    gedges = g.sorted_edges
    perm_masks = set()
    pair_bit = {(a, b): 1 << i for i, (a, b) in enumerate((a, b) for a in range(n) for b in range(a + 1, n))}
    for p in itertools.permutations(range(n)):
        m = 0
        for a, b in gedges:
            x, y = p[a], p[b]
            m |= pair_bit[(min(x, y), max(x, y))]
        perm_masks.add(m)
    perm_list = list(perm_masks)

    def embeds(mask: int) -> bool:
        return any(mask & pm == mask for pm in perm_list)

    stats = {"subsets": 0, "rotation_systems": 0, "arrangements": 0}
    for m in range(0, len(gedges) + 1):
        for combo in itertools.combinations(gedges, m):
            stats["subsets"] += 1
            hmask = sum(pair_bit[e] for e in combo)
            adj: dict[int, list[int]] = {v: [] for v in range(n)}
            for a, b in combo:
                adj[a].append(b)
                adj[b].append(a)
            comps = _components(n, list(combo))
            comp_of = {v: ci for ci, c in enumerate(comps) for v in c}
            verts = [v for v in range(n) if adj[v]]
            for rots in itertools.product(*(_cyclic_orders(sorted(adj[v])) for v in verts)):
                stats["rotation_systems"] += 1
                rot = dict(zip(verts, rots))
                walks = _walks(rot)
                slots: list[list[int]] = [[] for _ in comps]  # walk indices per component
                slot_verts: list[int] = []
                slot_dart: list[tuple[int, int] | None] = []
                for w in walks:
                    slots[comp_of[w[0][0]]].append(len(slot_verts))
                    vm = 0
                    for d in w:
                        vm |= 1 << d[0]
                    slot_verts.append(vm)
                    slot_dart.append(w[0])
                ok = True
                for ci, c in enumerate(comps):
                    if len(c) == 1:
                        slots[ci].append(len(slot_verts))
                        slot_verts.append(1 << c[0])
                        slot_dart.append(None)
                    else:
                        ce = sum(len(adj[v]) for v in c) // 2
                        if len(c) - ce + len(slots[ci]) != 2:
                            ok = False
                if not ok:
                    continue
                for arrangement in _arrangements(slots):
                    stats["arrangements"] += 1
                    faces = _merge(len(slot_verts), arrangement, slot_verts)
                    if _naive_saturated(n, faces, adj, hmask, pair_bit, embeds):
                        witness = _naive_embedding(n, combo, rot, comps, slots, slot_dart, arrangement)
                        return SolverResult(m, witness, None, tuple(combo), stats, exhaustive=True)
    raise AssertionError("unreachable: the host is saturated in itself")


def _arrangements(slots: list[list[int]]):
    """Every way to hang components 1.. into faces, as ``{comp: (parent slot, own slot)}``."""
    c = len(slots)
    owner = {s: ci for ci, ss in enumerate(slots) for s in ss}
    choices = []
    for ci in range(1, c):
        opts = [(p, o) for p in owner if owner[p] != ci for o in slots[ci]]
        choices.append(opts)
    for pick in itertools.product(*choices):
        arr = {ci + 1: pk for ci, pk in enumerate(pick)}
        good = True
        for start in arr:
            cur, steps = start, 0
            while cur != 0 and steps <= c:
                cur = owner[arr[cur][0]]
                steps += 1
            if cur != 0:
                good = False
                break
        if good:
            yield arr


def _merge(nslots: int, arr: dict[int, tuple[int, int]], slot_verts: list[int]) -> list[int]:
    parent = list(range(nslots))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for p, o in arr.values():
        parent[find(o)] = find(p)
    faces: dict[int, int] = {}
    for s in range(nslots):
        r = find(s)
        faces[r] = faces.get(r, 0) | slot_verts[s]
    return list(faces.values())


def _naive_saturated(n, faces, adj, hmask, pair_bit, embeds) -> bool:
    for fm in faces:
        vs = [v for v in range(n) if (fm >> v) & 1]
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                if b in adj[a]:
                    continue
                if embeds(hmask | pair_bit[(a, b)]):
                    return False
    return True


def _naive_embedding(n, combo, rot, comps, slots, slot_dart, arr) -> PlaneEmbedding:
    nslots = len(slot_dart)
    parent = list(range(nslots))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for p, o in arr.values():
        parent[find(o)] = find(p)
    walks = _walks(rot)
    dart_label = {}
    for w in walks:
        s = slot_dart.index(w[0])
        for d in w:
            dart_label[d] = find(s)
    iso_label = {}
    for ci, c in enumerate(comps):
        if len(c) == 1:
            iso_label[c[0]] = find(slots[ci][0])
    rotation = [rot.get(v, ()) for v in range(n)]
    return _make(Graph.from_edges(n, combo), rotation, dart_label, iso_label)
