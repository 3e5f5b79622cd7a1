"""
Exact saturation numbers of small triangulations
================================================

"""

from plansat import PlaneEmbedding, catalog_triangulations, exact_sat, greedy_saturate, is_plane_saturated
from plansat.saturation import sat_lower_bound

# one triangulation per isomorphism class, up to six vertices
for n in (4, 5, 6):
    for t in catalog_triangulations(n):
        g = t.graph
        # the exhaustive search scans edge subsets of every scaffold triangulation
        r = exact_sat(g)
        # greedy saturation from the edgeless plane graph gives an upper bound
        greedy, _ = greedy_saturate(PlaneEmbedding.edgeless(n), g)
        assert is_plane_saturated(r.witness, g).saturated
        print(n, sorted(g.degrees), "lower", sat_lower_bound(n), "sat", r.sat_value, "greedy", greedy.edge_count)
