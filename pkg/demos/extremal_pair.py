"""
The pair G_k and H_k
====================

"""

from plansat import addable_pairs, build_Gk, build_Hk, monomorphism_search

k = 12
gk, hk = build_Gk(k), build_Hk(k)
g, h = gk.embedding.graph, hk.embedding

# vertex and edge counts: v = 3k + 5 for both, e(H) = k + 29
print(g.vertex_count, g.edge_count, h.vertex_count, h.edge_count)

# the two hubs are the only vertices of degree above ten
print(sorted(g.degrees)[-3:])

# H_k sits inside G_k
print(monomorphism_search(h.graph, g) is not None)

# the cycle shares a face with three K4 vertices; one such pair still fits inside G_k
f1 = h.face(hk.faces[0])
c, q = hk.cycle[0], next(v for v in hk.k4 if v in f1.boundary_vertices)
print((min(c, q), max(c, q)) in {(p.u, p.v) for p in addable_pairs(h)})
m = monomorphism_search(h.graph.with_edges([(c, q)]), g)
print(m is not None and m.verify(h.graph.with_edges([(c, q)]), g))
print("rim vertex a is adjacent to", sorted(g.adjacency[gk.a] & {gk.u, gk.x, gk.y, gk.z}))
