"""Exact rational cones and lattice polytopes."""

from .cone import Cone, cone_contains, cone_dim, cone_from_inequalities, cone_from_rays, intersect_cones
from .polytope import (
    LatticeData,
    Polytope,
    convex_hull,
    is_reflexive,
    lattice_data,
    lattice_points,
    normalized_volume,
)

__all__ = [
    "Cone",
    "LatticeData",
    "Polytope",
    "cone_contains",
    "cone_dim",
    "cone_from_inequalities",
    "cone_from_rays",
    "convex_hull",
    "intersect_cones",
    "is_reflexive",
    "lattice_data",
    "lattice_points",
    "normalized_volume",
]
