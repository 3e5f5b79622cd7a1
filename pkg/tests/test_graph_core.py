import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_contains
from plansat import (Graph, VertexCountMismatch, canonical_form, complete_graph, degree_profile, double_wheel,
                     kleetope, monomorphism_search, octahedron)
from plansat.generators import stacked_triangulation


@st.composite
def graph_pairs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    g = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    h = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return Graph.from_edges(n, h), Graph.from_edges(n, g)


def test_graph_rejects_loops_and_out_of_range():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_edges_are_normalised():
    g = Graph.from_edges(3, [(2, 0), (0, 2), (1, 2)])
    assert g.sorted_edges == ((0, 2), (1, 2))


def test_degree_profile_k4():
    p = degree_profile(complete_graph(4))
    assert p.degrees == (3, 3, 3, 3) and p.n3 == 4


def test_degree_profile_kleetope_k4():
    g = kleetope(stacked_triangulation(4)).graph
    p = degree_profile(g)
    assert sorted(p.degrees) == [3, 3, 3, 3, 6, 6, 6, 6]
    assert 3 * p.n3 == 2 * 8 - 4


def test_degree_profile_double_wheel_6():
    p = degree_profile(double_wheel(6).graph)
    assert p.degrees[:6] == (4,) * 6 and p.degrees[6:] == (6, 6) and p.n3 == 0


def test_degree_profile_d3_neighbors():
    g = kleetope(octahedron()).graph
    p = degree_profile(g)
    assert all(p.d3_neighbors[v] == 4 for v in range(6))
    assert sum(p.degrees) == 2 * g.edge_count


def test_edgeless_pattern_always_embeds():
    assert monomorphism_search(Graph(6), octahedron().graph) is not None


def test_identity_on_octahedron():
    g = octahedron().graph
    m = monomorphism_search(g, g)
    assert m is not None and m.verify(g, g)


def test_star_not_in_octahedron():
    star = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    assert monomorphism_search(star, octahedron().graph) is None


def test_vertex_count_mismatch():
    with pytest.raises(VertexCountMismatch):
        monomorphism_search(Graph(3), Graph(4))


@settings(max_examples=300, deadline=None)
@given(graph_pairs())
def test_search_agrees_with_permutation_oracle(hg):
    h, g = hg
    m = monomorphism_search(h, g)
    assert (m is not None) == brute_force_contains(h, g)
    if m is not None:
        assert m.verify(h, g)


@settings(max_examples=200, deadline=None)
@given(graph_pairs(), st.randoms(use_true_random=False))
def test_canonical_form_is_relabelling_invariant(hg, rnd):
    _, g = hg
    perm = list(range(g.vertex_count))
    rnd.shuffle(perm)
    assert canonical_form(g) == canonical_form(g.relabel(perm))


@settings(max_examples=200, deadline=None)
@given(graph_pairs())
def test_canonical_form_separates_non_isomorphic(hg):
    h, g = hg
    same = h.edge_count == g.edge_count and brute_force_contains(h, g)
    assert (canonical_form(h) == canonical_form(g)) == same


def test_twin_heavy_patterns():
    # many interchangeable leaves exercise the leaf matching and twin ordering
    rng = random.Random(3)
    for _ in range(40):
        n = 7
        g = Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.6])
        h = Graph.from_edges(n, [(0, i) for i in range(1, rng.randint(2, 6))])
        assert (monomorphism_search(h, g) is not None) == brute_force_contains(h, g)
