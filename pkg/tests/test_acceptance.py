"""Acceptance criteria, each run at its stated size and time budget.

Every criterion records a PASS/FAIL line; the lines are repeated in the
terminal summary.
"""

import random

import pytest

import embedding_audit
from acceptance_log import criterion
from oracles import iso_classes, labelled_triangulations
from plansat import (PlaneEmbedding, are_isomorphic, build_Gk, build_Hk, catalog_triangulations,
                     deg3_bound_check, degree_profile, delete_edges, euler_holds, exact_sat, exact_sat_naive,
                     greedy_saturate, insert_edge, addable_pairs, is_plane_saturated, kleetope, move_isolated,
                     random_triangulation, structure_props, upper_bound_auto)
from plansat import fileformat
from plansat.saturation import lower_bound_certificates, sat_lower_bound


def structure_hosts():
    hosts = [("catalog", e) for n in range(5, 9) for e in catalog_triangulations(n)]
    rng = random.Random(2024)
    hosts += [("random", random_triangulation(rng.randint(5, 40), rng.randrange(10**6))) for _ in range(200)]
    return hosts


def test_criterion_1_structure():
    with criterion("1 structure suite", 60) as notes:
        hosts = structure_hosts()
        k5e = 0
        for _, e in hosts:
            r = structure_props(e.graph, e)
            assert r.passed("independent") and r.passed("few_deg3") and r.passed("adjacent_high")
            assert r.passed("three_high") != r.k5_minus_edge
            k5e += r.k5_minus_edge
            assert deg3_bound_check(e.graph).satisfied
        for n in range(5, 9):
            for e in catalog_triangulations(n):
                c = deg3_bound_check(kleetope(e).graph)
                assert c.satisfied and c.tight
        notes.append(f"{len(hosts)} hosts, K5-e exception seen {k5e} times")


def _embedding_corpus(count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(4, 14)
        t = random_triangulation(n, rng.randrange(10**6))
        drop = [e for e in t.graph.sorted_edges if rng.random() < rng.random()]
        e = delete_edges(t, drop)
        iso = [v for v in range(n) if e.graph.degrees[v] == 0]
        if iso and e.edge_count:
            e = move_isolated(e, {v: rng.choice(e.faces).id for v in iso})
        yield rng, e


def test_criterion_2_embeddings():
    with criterion("2 embedding suite", 60) as notes:
        trips = 0
        for rng, e in _embedding_corpus(400, 7):
            assert euler_holds(e)
            assert fileformat.loads(fileformat.dumps(e)) == e
            pairs = addable_pairs(e)
            if pairs:
                p = rng.choice(pairs)
                out = insert_edge(e, p)
                assert euler_holds(out) and delete_edges(out, [(p.u, p.v)]) == e
                trips += 1
        assert embedding_audit.checked > 0 and embedding_audit.violations == []
        notes.append(f"{trips} insert/delete round-trips, 400 file round-trips, "
                     f"{embedding_audit.checked} embeddings audited so far")


def test_criterion_3_oracle_agreement():
    with criterion("3 definition/oracle suite", 600) as notes:
        values = []
        for n in (4, 5, 6):
            for t in catalog_triangulations(n):
                g = t.graph
                a, b = exact_sat(g), exact_sat_naive(g)
                assert a.exhaustive and a.sat_value == b.sat_value
                for r in (a, b):
                    assert r.witness.edge_count == r.sat_value
                    assert is_plane_saturated(r.witness, g).saturated
                assert 6 * a.sat_value >= n + 4 and 16 * a.sat_value > 3 * n - 6
                values.append(f"n={n}:{a.sat_value}")
        assert len(values) == 4
        notes.append("sat values " + ", ".join(values))


def test_criterion_4_exact_n7():
    with criterion("4 exact values at n = 7", 1800) as notes:
        values = []
        cat = catalog_triangulations(7)
        assert len(cat) == 5
        for t in cat:
            g = t.graph
            r = exact_sat(g)
            greedy, _ = greedy_saturate(PlaneEmbedding.edgeless(7), g)
            assert r.exhaustive and is_plane_saturated(r.witness, g).saturated
            assert all(c.satisfied for c in lower_bound_certificates(7, r.sat_value))
            assert sat_lower_bound(7) <= r.sat_value <= greedy.edge_count
            values.append(f"{r.sat_value}<={greedy.edge_count}")
        notes.append("sat<=greedy " + ", ".join(values))


@pytest.mark.parametrize("k", [12, 13, 14])
def test_criterion_5_hk_saturated(k):
    with criterion(f"5 H_k plane-saturated in G_k (k={k})", 600) as notes:
        hk, gk = build_Hk(k), build_Gk(k)
        h, g = hk.embedding, gk.embedding.graph
        assert h.edge_count == k + 29 and g.vertex_count == 3 * k + 5
        assert h.vertex_count == g.vertex_count
        if k == 12:
            assert 3 * h.edge_count == g.vertex_count + 82
        rep = is_plane_saturated(h, g)
        ext = {(v.pair.u, v.pair.v) for v in rep.witnesses}
        notes.append(f"e(H)={h.edge_count}, v(G)={g.vertex_count}, {rep.addable_count} addable pairs, "
                     f"{len(ext)} still extend")
        assert rep.saturated, f"{len(ext)} addable pairs of H_{k} still embed in G_{k}, e.g. {sorted(ext)[:3]}"


def bound_hosts():
    rng = random.Random(1)
    hosts = []
    for i in range(50):
        if i % 5 == 4:
            # kleetopes supply hosts with many degree-3 vertices
            m = rng.randint(7, 14)
            hosts.append(kleetope(random_triangulation(m, rng.randrange(10**6))))
        else:
            hosts.append(random_triangulation(rng.randint(16, 40), rng.randrange(10**6)))
    return hosts


def test_criterion_6_upper_bound():
    with criterion("6 upper bound on random hosts", 1800) as notes:
        branches = {"lemma1": 0, "many3": 0}
        for e in bound_hosts():
            g = e.graph
            n = g.vertex_count
            assert 16 <= n <= 40
            k = degree_profile(g).n3
            h, t = upper_bound_auto(g, e)
            assert is_plane_saturated(h, g).saturated
            assert 300 * h.edge_count < 899 * n
            branch = t.phases["branch"]
            branches[branch] += 1
            if branch == "lemma1" and k <= n // 2 - 1:
                assert 2 * h.edge_count <= 2 * (3 * n - 6) - (n // 2 - 1 - k)
            if branch == "many3":
                assert 3 * t.phases["w_size"] >= 5 * k - 2 * n
                assert 3 * h.edge_count <= 3 * (3 * n - 6) - (5 * k - 2 * n - 3)
            assert all(c.satisfied for c in t.bound_certificates)
        notes.append(f"branches {branches}")


def test_criterion_7_catalog():
    with criterion("7 catalog vs labelled oracle", 900) as notes:
        sizes = []
        for n in range(4, 9):
            oracle = iso_classes(labelled_triangulations(n))
            cat = catalog_triangulations(n)
            assert len(cat) == len(oracle)
            for o in oracle:
                assert sum(are_isomorphic(o, c.graph) for c in cat) == 1
            sizes.append(str(len(cat)))
        notes.append("sizes n=4..8: " + ", ".join(sizes))
