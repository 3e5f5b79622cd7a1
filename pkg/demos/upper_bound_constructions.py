"""
Sparse saturated subgraphs of larger triangulations
===================================================

"""

from plansat import (degree_profile, icosahedron, is_plane_saturated, kleetope, lemma1_construct, many3_construct,
                     random_triangulation, upper_bound_auto)

# few degree-3 vertices: grow half the vertices face by face, scatter the rest
ico = icosahedron()
h, trace = lemma1_construct(ico.graph, ico)
print(h.edge_count, trace.phases["placed"], [str(c) for c in trace.bound_certificates])

# many degree-3 vertices: keep the high-degree core and pile the rest inside one face
kl = kleetope(icosahedron())
h, trace = many3_construct(kl.graph, kl)
print(h.edge_count, trace.phases["w_size"], [str(c) for c in trace.bound_certificates])

# the dispatcher picks a branch from the degree-3 count and certifies 300 e(H) < 899 n
for seed in range(5):
    g = random_triangulation(20 + 4 * seed, seed)
    h, trace = upper_bound_auto(g.graph, g)
    ok = is_plane_saturated(h, g.graph).saturated
    print(g.vertex_count, degree_profile(g.graph).n3, trace.phases["branch"], h.edge_count, ok)
