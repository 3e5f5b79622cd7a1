"""Plane-saturated subgraphs of maximal planar graphs."""

from .embedding import (OPEN_REGION, AddablePair, Anchor, Face, NonPlanar, PlaneEmbedding, addable_pairs,
                        delete_edges, euler_holds, extend_to_triangulation, faces, induced_plane_subgraph,
                        insert_edge, is_maximal_plane, move_isolated, planar_embed)
from .errors import *  # noqa: F401,F403
from .generators import (FamilySpec, build_Gk, build_Hk, catalog_triangulations, cycle, double_wheel, flip,
                         icosahedron, kleetope, octahedron, random_triangulation, stacked_triangulation)
from .graph_core import (DegreeProfile, Graph, Monomorphism, SubgraphMatcher, are_isomorphic, canonical_form,
                         complete_graph, degree_profile, monomorphism_search)
from .saturation import (BoundCertificate, ConstructionTrace, SaturationReport, deg3_bound_check, degree_gap_bound,
                         greedy_saturate, is_plane_saturated, lemma1_construct, lower_bounds, many3_construct,
                         structure_props, upper_bound_auto)
from .solver import SolverResult, exact_sat, exact_sat_naive, verify_not_improvable

__version__ = "0.1.0"
