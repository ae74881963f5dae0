"""Toric quivers: theta-stability, the cone of weights and its chambers, and
flow polytopes, computed in exact integer and rational arithmetic."""

from . import errors
from .chambers import (
    ChamberSystem,
    Wall,
    cone_of_weights,
    cone_system,
    potential_walls,
    primitive_arrows,
    reference_thetas,
    same_chamber,
    tree_chamber,
)
from .errors import QuiverError
from .flow_polytope import (
    CycleBasis,
    basis_for_flow_polytope,
    flow_polytope,
    flow_polytope_in_tree_basis,
    flow_polytope_vertices,
    is_flow_polytope_reflexive,
)
from .geometry import Cone, LatticeData, Polytope, convex_hull, is_reflexive, lattice_data
from .io import export_dot, load_quiver, quiver_from_json, quiver_to_json, save_quiver
from .quiver import (
    Subquiver,
    ToricQuiver,
    all_spanning_trees,
    bipartite_quiver,
    build_quiver,
    canonical_weight,
    chain_quiver,
    complete_quiver,
    from_undirected_graph,
    inc_inverse,
    inc_map,
    is_acyclic,
    is_spanning_tree,
    merge_on_arrow,
    merge_on_vertex,
    replace_flow,
    restricted_view,
    subquivers,
    three_vertex_quiver,
    tree_flow,
    zeroed_view,
)
from .stability import (
    is_closed_under_arrows,
    is_semistable,
    is_stable,
    is_tight,
    make_tight,
    maximal_nonstable_subquivers,
    maximal_unstable_subquivers,
    stable_trees,
)

__version__ = "0.1.0"
