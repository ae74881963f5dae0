"""Exact rational polytopes: convex hulls, lattice points, reflexivity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, gcd
from typing import NamedTuple, Sequence

import numpy as np

from ..errors import NotFullDimensional, OriginNotInterior, TooLarge
from .cone import Cone
from .linalg import determinant, dot, primitive, rank

DEFAULT_LATTICE_CAP = 10**7


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points.

    ``inequalities`` holds pairs ``(a, b)`` meaning ``<a, x> <= b`` with ``a``
    a primitive integer normal; ``equations`` holds pairs ``(e, c)`` meaning
    ``<e, x> = c`` and cuts out the affine hull.
    """

    ambient_dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    inequalities: tuple[tuple[tuple[int, ...], Fraction], ...]
    equations: tuple[tuple[tuple[int, ...], Fraction], ...]

    @property
    def dim(self) -> int:
        if not self.vertices:
            return -1
        return self.ambient_dim - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, point: Sequence, strictly: bool = False) -> bool:
        """Membership; ``strictly`` tests the relative interior."""
        point = [Fraction(x) for x in point]
        if any(dot(e, point) != c for e, c in self.equations):
            return False
        if strictly:
            return all(dot(a, point) < b for a, b in self.inequalities)
        return all(dot(a, point) <= b for a, b in self.inequalities)

    def vertex_facet_incidence(self) -> list[frozenset[int]]:
        """For each facet, the indices of the vertices lying on it."""
        return [
            frozenset(i for i, v in enumerate(self.vertices) if dot(a, v) == b)
            for a, b in self.inequalities
        ]

    def edges(self) -> list[tuple[int, int]]:
        """Vertex index pairs spanning 1-dimensional faces."""
        if self.dim < 1:
            return []
        tight = [frozenset(k for k, (a, b) in enumerate(self.inequalities) if dot(a, v) == b)
                 for v in self.vertices]
        if self.dim == 1:
            return [(0, 1)]
        out = []
        for i, j in itertools.combinations(range(len(self.vertices)), 2):
            common = tight[i] & tight[j]
            rows = [self.inequalities[k][0] for k in common] + [e for e, _ in self.equations]
            if rank(rows, self.ambient_dim) != self.ambient_dim - 1:
                continue
            if any(common <= tight[k] for k in range(len(self.vertices)) if k not in (i, j)):
                continue
            out.append((i, j))
        return out

    def translate(self, shift: Sequence) -> "Polytope":
        shift = [Fraction(x) for x in shift]
        return convex_hull([[a + s for a, s in zip(v, shift)] for v in self.vertices])


def convex_hull(points: Sequence[Sequence]) -> Polytope:
    """Vertices and facets of ``conv(points)`` by homogenising to a cone."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise ValueError("convex hull of an empty point set")
    n = len(pts[0])
    if n == 0:
        return Polytope(0, ((),), (), ())
    lifted = [primitive(list(p) + [Fraction(1)]) for p in pts]
    cone = Cone.from_rays(lifted, ambient_dim=n + 1)
    vertices = sorted({tuple(Fraction(x, r[-1]) for x in r[:-1]) for r in cone.rays})
    inequalities = []
    for a in cone.facets:
        # <a[:n], x> + a[n] >= 0  <=>  <-a[:n], x> <= a[n]
        normal = [-x for x in a[:n]]
        g = 0
        for x in normal:
            g = gcd(g, x)
        if g == 0:
            continue
        inequalities.append((tuple(x // g for x in normal), Fraction(a[n], g)))
    equations = []
    for e in cone.equations:
        normal = list(e[:n])
        g = 0
        for x in normal:
            g = gcd(g, x)
        equations.append((tuple(x // g for x in normal), Fraction(-e[n], g)))
    return Polytope(
        ambient_dim=n,
        vertices=tuple(vertices),
        inequalities=tuple(sorted(set(inequalities))),
        equations=tuple(sorted(equations)),
    )


class LatticeData(NamedTuple):
    """Lattice-isomorphism invariants of a polytope."""

    dim: int
    vertex_count: int
    lattice_point_count: int
    interior_lattice_point_count: int
    normalized_volume: int | None

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "vertexCount": self.vertex_count,
            "latticePointCount": self.lattice_point_count,
            "interiorLatticePointCount": self.interior_lattice_point_count,
            "normalizedVolume": self.normalized_volume,
        }


def lattice_points(p: Polytope, cap: int = DEFAULT_LATTICE_CAP, interior: bool = False) -> list[tuple[int, ...]]:
    """Integer points of ``p`` (of its relative interior if ``interior``).

    Bounding-box enumeration filtered by the facet inequalities.  Raises
    :class:`TooLarge` when the box holds more than ``cap`` candidates.
    """
    n = p.ambient_dim
    if not p.vertices:
        return []
    if n == 0:
        return [()]
    lo = [ceil(min(v[i] for v in p.vertices)) for i in range(n)]
    hi = [floor(max(v[i] for v in p.vertices)) for i in range(n)]
    if any(h < l for l, h in zip(lo, hi)):
        return []
    size = 1
    for l, h in zip(lo, hi):
        size *= h - l + 1
    if size > cap:
        raise TooLarge(f"bounding box holds {size} candidates (cap {cap})")
    grids = np.meshgrid(*[np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo, hi)], indexing="ij")
    cand = np.stack([g.ravel() for g in grids], axis=1)
    keep = np.ones(len(cand), dtype=bool)
    for a, rhs in p.inequalities:
        rhs = Fraction(rhs)
        lhs = cand @ (np.array(a, dtype=np.int64) * rhs.denominator)
        keep &= (lhs < rhs.numerator) if interior else (lhs <= rhs.numerator)
    for e, c in p.equations:
        c = Fraction(c)
        lhs = cand @ (np.array(e, dtype=np.int64) * c.denominator)
        keep &= lhs == c.numerator
    return [tuple(int(x) for x in row) for row in cand[keep]]


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([[a - b for a, b in zip(q, base)] for q in points[1:]], len(base))


def pulling_triangulation(p: Polytope) -> list[tuple[int, ...]]:
    """Simplices (vertex index tuples) of the pulling triangulation of a full-dimensional ``p``."""
    if not p.is_full_dimensional:
        raise NotFullDimensional("triangulation needs a full-dimensional polytope")
    incidence = p.vertex_facet_incidence()
    verts = p.vertices

    @lru_cache(maxsize=None)
    def face_dim(face: frozenset) -> int:
        return _affine_rank([verts[i] for i in sorted(face)])

    @lru_cache(maxsize=None)
    def triangulate(face: frozenset, d: int) -> tuple[tuple[int, ...], ...]:
        if d == 0:
            return ((min(face),),)
        apex = min(face)
        subfaces = set()
        for inc in incidence:
            sub = face & inc
            if sub != face and apex not in sub and len(sub) >= d and face_dim(sub) == d - 1:
                subfaces.add(sub)
        out = []
        for sub in sorted(subfaces, key=sorted):
            for simplex in triangulate(sub, d - 1):
                out.append((apex,) + simplex)
        return tuple(out)

    return list(triangulate(frozenset(range(len(verts))), p.dim))


def normalized_volume(p: Polytope) -> Fraction:
    """``dim! * volume`` of a full-dimensional polytope (an integer for lattice polytopes)."""
    total = Fraction(0)
    for simplex in pulling_triangulation(p):
        v0 = p.vertices[simplex[0]]
        rows = [[a - b for a, b in zip(p.vertices[i], v0)] for i in simplex[1:]]
        total += abs(determinant(rows))
    return total


def lattice_data(p: Polytope, cap: int = DEFAULT_LATTICE_CAP) -> LatticeData:
    """Dimension, vertex count, lattice-point counts and normalised volume.

    For a polytope that is not full-dimensional the counts refer to its affine
    hull and the normalised volume is ``None``.
    """
    pts = lattice_points(p, cap)
    inner = lattice_points(p, cap, interior=True) if p.dim > 0 else []
    vol = None
    if p.is_full_dimensional and p.dim > 0:
        v = normalized_volume(p)
        vol = int(v) if v.denominator == 1 else v
    return LatticeData(p.dim, len(p.vertices), len(pts), len(inner), vol)


def is_reflexive(p: Polytope) -> bool:
    """True iff every facet reads ``<a, x> <= 1`` with ``a`` primitive integral.

    Requires ``p`` full-dimensional with the origin in its interior.
    """
    if not p.is_full_dimensional:
        raise NotFullDimensional(f"polytope has dimension {p.dim} in R^{p.ambient_dim}")
    origin = [0] * p.ambient_dim
    if not p.contains(origin, strictly=True):
        raise OriginNotInterior("the origin is not an interior point")
    return all(b == 1 for _, b in p.inequalities)
