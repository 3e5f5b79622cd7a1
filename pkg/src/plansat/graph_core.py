"""Abstract simple graphs, degree statistics and spanning subgraph search.

Vertices are the integers ``0 .. n-1``.  Adjacency is kept both as frozen
sets and as Python-int bitmasks; the search code works on the masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import SearchLimitExceeded, VertexCountMismatch

Edge = tuple[int, int]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0 .. vertex_count-1``."""

    vertex_count: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        n = self.vertex_count
        if n < 0:
            raise ValueError("vertex_count must be non-negative")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            norm.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Graph:
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        out = [0] * self.vertex_count
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def with_edges(self, extra: Iterable[Edge]) -> Graph:
        return Graph(self.vertex_count, self.edges | {_norm_edge(*e) for e in extra})

    def without_edges(self, removed: Iterable[Edge]) -> Graph:
        return Graph(self.vertex_count, self.edges - {_norm_edge(*e) for e in removed})

    def components(self) -> list[frozenset[int]]:
        """Connected components (isolated vertices included), ordered by least vertex."""
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
                        comp.append(y)
            comps.append(frozenset(comp))
        return comps

    def relabel(self, perm: Iterable[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        p = list(perm)
        return Graph(self.vertex_count, frozenset(_norm_edge(p[u], p[v]) for u, v in self.edges))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def is_k5_minus_edge(g: Graph) -> bool:
    return g.vertex_count == 5 and g.edge_count == 9


# ---------------------------------------------------------------------------
# degree statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    sorted_degrees: tuple[int, ...]
    n3: int
    d3_neighbors: tuple[int, ...]

    def count(self, d: int) -> int:
        return sum(1 for x in self.degrees if x == d)


def degree_profile(g: Graph) -> DegreeProfile:
    deg = g.degrees
    d3 = tuple(sum(1 for w in g.adjacency[v] if deg[w] == 3) for v in range(g.vertex_count))
    return DegreeProfile(
        degrees=deg,
        sorted_degrees=tuple(sorted(deg)),
        n3=sum(1 for d in deg if d == 3),
        d3_neighbors=d3,
    )


# ---------------------------------------------------------------------------
# canonical labeling (individualisation / refinement, no automorphism pruning)
# ---------------------------------------------------------------------------


def _refine(adj: tuple[frozenset[int], ...], cells: list[list[int]]) -> list[list[int]]:
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for si in range(len(cells)):
            splitter = set(cells[si])
            out: list[list[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault(len(adj[v] & splitter), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                else:
                    out.extend(groups[c] for c in sorted(groups))
                    changed = True
            cells = out
            if changed:
                break
    return cells


def canonical_labeling(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Return ``(code, perm)`` with ``code`` an isomorphism-invariant integer.

    ``perm[v]`` is the canonical name of vertex ``v``.  The code is the
    minimum adjacency bit-string over all leaves of the refinement tree.
    """
    n = g.vertex_count
    adj = g.adjacency
    if n == 0:
        return 0, ()
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(g.degrees[v], []).append(v)
    start = [by_deg[d] for d in sorted(by_deg)]
    best: list = [None, None]

    def code_of(cells: list[list[int]]) -> tuple[int, list[int]]:
        perm = [0] * n
        for i, c in enumerate(cells):
            perm[c[0]] = i
        code = 0
        for u, v in g.edges:
            a, b = perm[u], perm[v]
            if a > b:
                a, b = b, a
            code |= 1 << (a * n + b)
        return code, perm

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            code, perm = code_of(cells)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, perm
            return
        cell = cells[target]
        for v in cell:
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search(start)
    return best[0], tuple(best[1])


def canonical_form(g: Graph) -> tuple[int, int, int]:
    """Hashable isomorphism invariant that is complete (equal iff isomorphic)."""
    code, _ = canonical_labeling(g)
    return (g.vertex_count, g.edge_count, code)


# ---------------------------------------------------------------------------
# spanning monomorphism search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Monomorphism:
    """Injective vertex map ``V(H) -> V(G)``; ``map[v]`` is the image of ``v``."""

    map: tuple[int, ...]

    def verify(self, h: Graph, g: Graph) -> bool:
        m = self.map
        if len(m) != h.vertex_count or len(set(m)) != len(m):
            return False
        if any(not (0 <= x < g.vertex_count) for x in m):
            return False
        return all(g.has_edge(m[u], m[v]) for u, v in h.edges)

    def __getitem__(self, v: int) -> int:
        return self.map[v]


def _dominated(small: list[int], big: list[int]) -> bool:
    # both sorted descending
    if len(small) > len(big):
        return False
    return all(a <= b for a, b in zip(small, big))


class SubgraphMatcher:
    """Exhaustive search for spanning monomorphisms into a fixed host graph.

    Pattern vertices are split into a *core* (degree >= 2, plus both ends
    of isolated edges), *pendant leaves* and *isolated vertices*.  Only the
    core is searched; leaves are placed afterwards by bipartite matching and
    isolated vertices take whatever host vertices remain.  Core search uses
    smallest-domain-first ordering, forward checking on bitmask domains,
    ordering constraints on twin vertices and a distance test along paths of
    unmatched pattern vertices.
    """

    def __init__(self, g: Graph, *, distance_pruning: bool = True) -> None:
        self.graph = g
        self.n = g.vertex_count
        self.adj = list(g.masks)
        self.deg = list(g.degrees)
        self.m = g.edge_count
        self.sorted_deg = sorted(self.deg, reverse=True)
        self.nbr_desc = [sorted((self.deg[w] for w in g.adjacency[x]), reverse=True) for x in range(self.n)]
        self.distance_pruning = distance_pruning
        self._dom_cache: dict[tuple[int, ...], int] = {}
        self.nodes = 0
        self.calls = 0

    def _static_domain(self, hdeg: int, nd: list[int]) -> int:
        key = (hdeg, *nd)
        dom = self._dom_cache.get(key)
        if dom is None:
            dom = 0
            for x in range(self.n):
                if self.deg[x] >= hdeg and _dominated(nd, self.nbr_desc[x]):
                    dom |= 1 << x
            self._dom_cache[key] = dom
        return dom

    def find(self, h: Graph, node_limit: int | None = None) -> Monomorphism | None:
        if h.vertex_count != self.n:
            raise VertexCountMismatch(f"pattern has {h.vertex_count} vertices, host has {self.n}")
        res = self.find_masks(list(h.masks), node_limit=node_limit)
        return None if res is None else Monomorphism(tuple(res))

    def find_masks(self, hadj: list[int], node_limit: int | None = None) -> list[int] | None:
        self.calls += 1
        n = self.n
        gadj = self.adj
        hdeg = [m.bit_count() for m in hadj]
        if sum(hdeg) > 2 * self.m:
            return None
        for a, b in zip(sorted(hdeg, reverse=True), self.sorted_deg):
            if a > b:
                return None

        leaf_parent: dict[int, int] = {}
        for v in range(n):
            if hdeg[v] == 1:
                p = hadj[v].bit_length() - 1
                if hdeg[p] >= 2:
                    leaf_parent[v] = p
        core = [v for v in range(n) if hdeg[v] > 0 and v not in leaf_parent]
        if not core:
            return list(range(n))

        dom = [0] * n
        for v in core:
            nd = sorted((hdeg[w] for w in bits(hadj[v])), reverse=True)
            d = self._static_domain(hdeg[v], nd)
            if not d:
                return None
            dom[v] = d

        # twins: identical open or closed neighbourhoods are interchangeable
        groups: dict[tuple[str, int], list[int]] = {}
        for v in core:
            groups.setdefault(("o", hadj[v]), []).append(v)
            groups.setdefault(("c", hadj[v] | (1 << v)), []).append(v)
        twin_lo = [0] * n  # mask of twins that must map below v
        twin_hi = [0] * n  # mask of twins that must map above v
        for members in groups.values():
            if len(members) > 1:
                members.sort()
                for i, v in enumerate(members):
                    for w in members[:i]:
                        twin_lo[v] |= 1 << w
                    for w in members[i + 1:]:
                        twin_hi[v] |= 1 << w

        leaves = sorted(leaf_parent)
        core_mask = 0
        for v in core:
            core_mask |= 1 << v
        img = [-1] * n
        limit = node_limit
        state = {"nodes": 0}
        use_dist = self.distance_pruning

        def twin_ok(v: int, x: int, assigned: int) -> bool:
            lo, hi = twin_lo[v] & assigned, twin_hi[v] & assigned
            for w in bits(lo):
                if img[w] > x:
                    return False
            for w in bits(hi):
                if img[w] < x:
                    return False
            return True

        def distance_ok(v: int, x: int, assigned: int, unassigned: int, used: int) -> bool:
            # H-side BFS through unassigned core vertices
            seen = 1 << v
            frontier = 1 << v
            d = 0
            hits: list[tuple[int, int]] = []
            while frontier:
                d += 1
                nxt = 0
                for f in bits(frontier):
                    nxt |= hadj[f]
                nxt &= ~seen
                seen |= nxt
                if d >= 2:
                    hit = nxt & assigned & ~(1 << v)
                    if hit:
                        hits.append((d, hit))
                frontier = nxt & unassigned
            if not hits:
                return True
            free = ~used
            reach = gadj[x]
            frontier_g = reach & free
            explored = frontier_g | (1 << x)
            depth = 1
            for d, hit in hits:
                while depth < d:
                    nxt = 0
                    for y in bits(frontier_g):
                        nxt |= gadj[y]
                    reach |= nxt
                    frontier_g = nxt & free & ~explored
                    explored |= frontier_g
                    depth += 1
                for a in bits(hit):
                    if not (reach >> img[a]) & 1:
                        return False
            return True

        def place_leaves(used: int) -> bool:
            if not leaves:
                return True
            free = ~used
            match_of: dict[int, int] = {}  # host vertex -> leaf
            allowed = {l: gadj[img[leaf_parent[l]]] & free for l in leaves}

            def augment(l: int, visited: set[int]) -> bool:
                for y in bits(allowed[l]):
                    if y in visited:
                        continue
                    visited.add(y)
                    if y not in match_of or augment(match_of[y], visited):
                        match_of[y] = l
                        return True
                return False

            for l in leaves:
                if not augment(l, set()):
                    return False
            for y, l in match_of.items():
                img[l] = y
            return True

        def rec(assigned: int, unassigned: int, used: int, dom: list[int]) -> bool:
            state["nodes"] += 1
            if limit is not None and state["nodes"] > limit:
                raise SearchLimitExceeded(f"node limit {limit} exceeded")
            if not unassigned:
                if place_leaves(used):
                    return True
                for l in leaves:
                    img[l] = -1
                return False
            best_v = -1
            best_key = None
            for w in bits(unassigned):
                key = (dom[w].bit_count(), -(hadj[w] & assigned).bit_count(), -hdeg[w])
                if best_key is None or key < best_key:
                    best_key, best_v = key, w
            v = best_v
            rest = unassigned & ~(1 << v)
            hv = hadj[v]
            for x in bits(dom[v]):
                if (twin_lo[v] | twin_hi[v]) & assigned and not twin_ok(v, x, assigned):
                    continue
                bx = 1 << x
                nused = used | bx
                gx = gadj[x]
                ndom = dom[:]
                ok = True
                for w in bits(rest):
                    d = dom[w] & ~bx
                    if (hv >> w) & 1:
                        d &= gx
                    if not d:
                        ok = False
                        break
                    ndom[w] = d
                if not ok:
                    continue
                nassigned = assigned | (1 << v)
                # capacity: assigned vertices need free host neighbours for their unmatched ones
                if (gx & ~nused).bit_count() < (hv & ~nassigned).bit_count():
                    continue
                for a in bits(assigned & ~hv):
                    if (gx >> img[a]) & 1 and (
                        (gadj[img[a]] & ~nused).bit_count() < (hadj[a] & ~nassigned).bit_count()
                    ):
                        ok = False
                        break
                if not ok:
                    continue
                img[v] = x
                if use_dist and rest and not distance_ok(v, x, nassigned, rest, nused):
                    img[v] = -1
                    continue
                if rec(nassigned, rest, nused, ndom):
                    return True
                img[v] = -1
            return False

        found = rec(0, core_mask, 0, dom)
        self.nodes += state["nodes"]
        if not found:
            return None
        used = 0
        for v in range(n):
            if img[v] >= 0:
                used |= 1 << img[v]
        spare = [x for x in range(n) if not (used >> x) & 1]
        it = iter(spare)
        for v in range(n):
            if img[v] < 0:
                img[v] = next(it)
        return img


def monomorphism_search(h: Graph, g: Graph, *, node_limit: int | None = None) -> Monomorphism | None:
    """Find an injective edge-preserving map ``V(h) -> V(g)``, or prove none exists.

    Both graphs must have the same number of vertices (the spanning
    convention); the result is ``None`` exactly when ``h`` is not isomorphic
    to a spanning subgraph of ``g``.
    """
    if h.vertex_count != g.vertex_count:
        raise VertexCountMismatch(f"pattern has {h.vertex_count} vertices, host has {g.vertex_count}")
    return SubgraphMatcher(g).find(h, node_limit=node_limit)


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return False
    if sorted(g1.degrees) != sorted(g2.degrees):
        return False
    return monomorphism_search(g1, g2) is not None
