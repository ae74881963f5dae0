"""Rational polyhedral cones with synchronised ray and facet representations.

Both directions of the conversion go through one routine,
:func:`generators_from_constraints`, an incremental double description
(Motzkin) scheme with the combinatorial adjacency test.  Converting rays to
facets dualises first: the facets of ``cone(R)`` are the extreme rays of
``{a : <a, r> >= 0 for r in R}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ZeroAmbientDim
from .linalg import canonical_basis, dot, nullspace, primitive, project_out, rank


def _neg(v):
    return tuple(-x for x in v)


def _comb(a: int, u: Sequence[int], b: int, v: Sequence[int]) -> tuple[int, ...]:
    return primitive(a * x + b * y for x, y in zip(u, v))


def generators_from_constraints(
    inequalities: Sequence[Sequence[int]],
    equations: Sequence[Sequence[int]],
    dim: int,
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Extreme rays and a lineality basis of ``{x : A x >= 0, E x = 0}``.

    Rays are returned modulo the lineality space (not yet canonicalised).
    """
    lineality = nullspace([primitive(e) for e in equations if any(e)], dim)
    rays: list[tuple[int, ...]] = []
    tight: list[int] = []  # bitmask of processed inequalities each ray saturates
    for k, h in enumerate(inequalities):
        h = primitive(h)
        bit = 1 << k
        done = bit - 1
        lin_vals = [dot(h, l) for l in lineality]
        j = next((i for i, x in enumerate(lin_vals) if x != 0), None)
        if j is not None:
            l0, hl0 = lineality[j], lin_vals[j]
            if hl0 < 0:
                l0, hl0 = _neg(l0), -hl0
            lineality = [
                _comb(hl0, l, -hv, l0)
                for i, (l, hv) in enumerate(zip(lineality, lin_vals)) if i != j
            ]
            rays = [_comb(hl0, r, -dot(h, r), l0) for r in rays]
            tight = [z | bit for z in tight]
            rays.append(l0)
            tight.append(done)
            continue

        vals = [dot(h, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays, new_tight = [], []
        for i, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[i])
                new_tight.append(tight[i] | bit if v == 0 else tight[i])
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if any(
                    (tight[r] & common) == common
                    for r in range(len(rays)) if r != p and r != q
                ):
                    continue
                new_rays.append(_comb(vals[p], rays[q], -vals[q], rays[p]))
                new_tight.append(common | bit)
        rays, tight = new_rays, new_tight
    return rays, lineality


def _dedupe_sorted(vectors: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted({v for v in vectors if any(v)}))


@dataclass(frozen=True)
class Cone:
    """A cone ``cone(rays) + span(lineality)`` equal to
    ``{x : <a, x> >= 0 for a in facets, <e, x> = 0 for e in equations}``.

    All vectors are primitive integer tuples in canonical form: facet normals
    are taken inside the linear span of the cone, rays orthogonal to the
    lineality space, and both lists are sorted.  Two cones are equal exactly
    when their dataclass fields are equal.
    """

    ambient_dim: int
    rays: tuple[tuple[int, ...], ...]
    lineality: tuple[tuple[int, ...], ...]
    facets: tuple[tuple[int, ...], ...]
    equations: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rays(
        cls,
        rays: Iterable[Sequence],
        lineality: Iterable[Sequence] = (),
        ambient_dim: int | None = None,
    ) -> "Cone":
        rays = [primitive(r) for r in rays]
        lineality = [primitive(l) for l in lineality]
        if ambient_dim is None:
            sample = rays or lineality
            ambient_dim = len(sample[0]) if sample else 0
        if ambient_dim == 0:
            raise ZeroAmbientDim("cone needs a positive ambient dimension")
        rays = [r for r in rays if any(r)]
        lineality = [l for l in lineality if any(l)]
        n = ambient_dim
        facet_rays, orth = generators_from_constraints(rays, lineality, n)
        equations = canonical_basis(orth, n)
        ext_rays, lin = generators_from_constraints(facet_rays, equations, n)
        lin_basis = canonical_basis(lin, n)
        ext_rays = [primitive(project_out(r, lin_basis)) for r in ext_rays]
        facets = [primitive(project_out(a, equations)) for a in facet_rays]
        return cls(
            ambient_dim=n,
            rays=_dedupe_sorted(ext_rays),
            lineality=lin_basis,
            facets=_dedupe_sorted(facets),
            equations=equations,
        )

    @classmethod
    def from_inequalities(
        cls,
        facets: Iterable[Sequence],
        equations: Iterable[Sequence] = (),
        ambient_dim: int | None = None,
    ) -> "Cone":
        facets = [primitive(a) for a in facets]
        equations = [primitive(e) for e in equations]
        if ambient_dim is None:
            sample = facets or equations
            ambient_dim = len(sample[0]) if sample else 0
        if ambient_dim == 0:
            raise ZeroAmbientDim("cone needs a positive ambient dimension")
        order = sorted(set(a for a in facets if any(a)))
        rays, lin = generators_from_constraints(order, equations, ambient_dim)
        return cls.from_rays(rays, lin, ambient_dim=ambient_dim)

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    def contains(self, point: Sequence, strictly: bool = False) -> bool:
        """Membership; ``strictly`` tests the relative interior."""
        point = [Fraction(x) for x in point]
        if len(point) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        if any(dot(e, point) != 0 for e in self.equations):
            return False
        if strictly:
            return all(dot(a, point) > 0 for a in self.facets)
        return all(dot(a, point) >= 0 for a in self.facets)

    def interior_point(self) -> tuple[int, ...]:
        """An integral point of the relative interior: the primitive sum of the rays."""
        s = [0] * self.ambient_dim
        for r in self.rays:
            s = [a + b for a, b in zip(s, r)]
        return primitive(s)

    def intersect(self, other: "Cone") -> "Cone":
        return intersect_cones(self, other)

    def ray_adjacency(self) -> list[tuple[int, int]]:
        """Pairs of rays spanning a 2-dimensional face (pointed cones)."""
        tight = [frozenset(i for i, a in enumerate(self.facets) if dot(a, r) == 0)
                 for r in self.rays]
        edges = []
        for i in range(len(self.rays)):
            for j in range(i + 1, len(self.rays)):
                common = tight[i] & tight[j]
                if rank([self.facets[k] for k in common] + list(self.equations),
                        self.ambient_dim) != self.ambient_dim - 2:
                    continue
                if any(common <= tight[k] for k in range(len(self.rays)) if k not in (i, j)):
                    continue
                edges.append((i, j))
        return edges


def cone_from_rays(rays, lineality=(), ambient_dim: int | None = None) -> Cone:
    return Cone.from_rays(rays, lineality, ambient_dim)


def cone_from_inequalities(facets, equations=(), ambient_dim: int | None = None) -> Cone:
    return Cone.from_inequalities(facets, equations, ambient_dim)


def intersect_cones(a: Cone, b: Cone) -> Cone:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return Cone.from_inequalities(
        a.facets + b.facets, a.equations + b.equations, ambient_dim=a.ambient_dim
    )


def cone_dim(c: Cone) -> int:
    return c.dim


def cone_contains(c: Cone, point, strictly: bool = False) -> bool:
    return c.contains(point, strictly=strictly)
