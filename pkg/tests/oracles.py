"""Independent reference implementations used only by the tests.

None of these share code paths with the search engines they check: the
subgraph oracle tries every vertex permutation, and the triangulation
oracle enumerates labelled edge sets directly.
"""

from __future__ import annotations

import itertools

import networkx as nx

from plansat.graph_core import Graph


def brute_force_contains(h: Graph, g: Graph) -> bool:
    """Some vertex permutation maps every edge of ``h`` onto an edge of ``g``."""
    n = h.vertex_count
    hedges = list(h.edges)
    for p in itertools.permutations(range(n)):
        if all(g.has_edge(p[u], p[v]) for u, v in hedges):
            return True
    return False


def labelled_triangulations(n: int) -> list[Graph]:
    """All triangulations on ``0..n-1`` whose degrees are non-increasing in the label.

    Every isomorphism class has such a labelling, so reducing this list by
    isomorphism yields one graph per class.  Vertices are completed one row
    at a time; planarity of the partial graph is checked after every row.
    """
    target = 3 * n - 6
    results: list[Graph] = []
    deg = [0] * n
    edges: list[tuple[int, int]] = []
    partial = nx.Graph()
    partial.add_nodes_from(range(n))

    def rec(i: int, prev: int) -> None:
        if i == n:
            if len(edges) == target:
                results.append(Graph.from_edges(n, edges))
            return
        later = list(range(i + 1, n))
        have = deg[i]
        for size in range(len(later) + 1):
            d = have + size
            if d > prev:
                break
            if d < 3:
                continue
            for nbrs in itertools.combinations(later, size):
                if any(deg[j] + 1 > d for j in nbrs):
                    continue
                for j in nbrs:
                    deg[j] += 1
                    edges.append((i, j))
                deg[i] = d
                # finished rows have fixed degree sum; the rest lie in [3, d]
                done = sum(deg[: i + 1])
                rest = n - i - 1
                if done + 3 * rest <= 2 * target <= done + d * rest and all(deg[j] <= d for j in later):
                    partial.add_edges_from((i, j) for j in nbrs)
                    if nx.check_planarity(partial)[0]:
                        rec(i + 1, d)
                    partial.remove_edges_from((i, j) for j in nbrs)
                deg[i] = have
                for j in nbrs:
                    deg[j] -= 1
                    edges.pop()

    rec(0, n - 1)
    return results


def _nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.vertex_count))
    out.add_edges_from(g.edges)
    return out


def iso_classes(graphs: list[Graph]) -> list[Graph]:
    """One representative per isomorphism class, compared with networkx's VF2."""
    reps: list[tuple[Graph, nx.Graph]] = []
    for g in graphs:
        ng = _nx(g)
        if not any(sorted(g.degrees) == sorted(r.degrees) and nx.is_isomorphic(ng, nr) for r, nr in reps):
            reps.append((g, ng))
    return [r for r, _ in reps]
