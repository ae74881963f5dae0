"""Weight-space geometry: the cone of weights, walls and chambers.

Cones here live in ``R^{Q0}`` and are contained in the hyperplane
``sum(theta) = 0``; they carry that hyperplane among their equations rather
than being rewritten in a coordinate chart.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import Indeterminate, NotSpanningTree, TooManyTrees, TooManyVertices
from .geometry.cone import Cone
from .geometry.linalg import primitive
from .quiver import (
    ToricQuiver,
    all_spanning_trees,
    check_weight,
    is_connected,
    is_spanning_tree,
    require_connected,
)
from .stability import semistable_mask, stable_mask, stable_trees

DEFAULT_VERTEX_CAP = 20
DEFAULT_TREE_CAP = 10**4

INDETERMINATE_MESSAGE = "cannot be determined. stableTrees are empty"


def primitive_arrows(q: ToricQuiver) -> tuple[int, ...]:
    """Arrows ``a`` admitting no directed path from ``tail(a)`` to ``head(a)``
    other than ``a`` and its parallel copies.

    Parallel copies share one incidence column, so all of them are kept.
    """
    require_connected(q)
    succ: dict[int, list[tuple[int, int]]] = {v: [] for v in q.vertices}
    for b, (t, h) in enumerate(q.arrows):
        succ[t].append((b, h))
    out = []
    for a, (t, h) in enumerate(q.arrows):
        seen = {t}
        stack = [t]
        while stack:
            v = stack.pop()
            for b, w in succ[v]:
                if q.arrows[b] != (t, h) and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if h not in seen:
            out.append(a)
    return tuple(out)


def _columns(q: ToricQuiver, arrows: Sequence[int]) -> list[tuple[int, ...]]:
    m = q.incidence_matrix
    return [tuple(int(x) for x in m[:, a]) for a in arrows]


def cone_of_weights(q: ToricQuiver, all_arrows: bool = False) -> Cone:
    """``C(Q)``: generated by the incidence columns of the primitive arrows.

    ``all_arrows=True`` uses every column instead; the cone is the same.
    """
    require_connected(q)
    arrows = range(q.arrow_count) if all_arrows else primitive_arrows(q)
    return Cone.from_rays(_columns(q, arrows), ambient_dim=q.vertex_count)


@dataclass(frozen=True)
class Wall:
    """The hyperplane ``sum_{i in q_plus} theta(i) = 0`` with its arrow-crossing type."""

    q_plus: tuple[int, ...]
    type: tuple[int, int]

    @property
    def is_outer(self) -> bool:
        return self.type[0] * self.type[1] == 0

    def normal(self, n: int) -> tuple[int, ...]:
        s = set(self.q_plus)
        return tuple(int(i in s) for i in range(n))

    def as_dict(self) -> dict:
        return {"qplus": list(self.q_plus), "type": list(self.type)}


def wall_type(q: ToricQuiver, q_plus: Sequence[int]) -> tuple[int, int]:
    s = set(q_plus)
    t_plus = sum(1 for t, h in q.arrows if t in s and h not in s)
    t_minus = sum(1 for t, h in q.arrows if t not in s and h in s)
    return t_plus, t_minus


def potential_walls(q: ToricQuiver, max_vertices: int = DEFAULT_VERTEX_CAP) -> list[Wall]:
    """Bipartitions of the vertices with both induced subquivers connected.

    Each wall is represented by the side without vertex 0, and walls are
    sorted by the size of that side and then lexicographically.
    """
    n = q.vertex_count
    if n > max_vertices:
        raise TooManyVertices(f"{n} vertices exceed the cap of {max_vertices}")
    walls = []
    rest = list(range(1, n))
    for k in range(1, n):
        for plus in itertools.combinations(rest, k):
            minus = [v for v in range(n) if v not in plus]
            if is_connected(q, vertices=plus) and is_connected(q, vertices=minus):
                walls.append(Wall(plus, wall_type(q, plus)))
    return walls


def tree_chamber(tree: Sequence[int], q: ToricQuiver) -> Cone:
    """``C_T``: the image under ``inc`` of the nonnegative flows supported on ``tree``."""
    tree = tuple(sorted(tree))
    if not is_spanning_tree(q, tree):
        raise NotSpanningTree(f"{list(tree)} is not a spanning tree")
    return Cone.from_rays(_columns(q, tree), ambient_dim=q.vertex_count)


@dataclass(frozen=True)
class ChamberSystem:
    """Full-dimensional chambers refining ``C(Q)``.

    ``tree_cone_index[i]`` lists the spanning trees ``T`` with
    ``chambers[i]`` contained in ``C_T``; ``hyperplanes`` are the collected
    facet normals of all ``C_T``.
    """

    quiver: ToricQuiver
    ambient: Cone
    chambers: tuple[Cone, ...]
    tree_cone_index: tuple[tuple[tuple[int, ...], ...], ...]
    hyperplanes: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.chambers)

    def locate(self, theta: Sequence) -> list[int]:
        """Indices of the chambers containing ``theta``."""
        return [i for i, c in enumerate(self.chambers) if c.contains(theta)]


def _split(cell: Cone, h: tuple[int, ...]) -> list[Cone]:
    vals = [sum(a * b for a, b in zip(h, r)) for r in cell.rays]
    if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
        return [cell]
    out = []
    for normal in (h, tuple(-x for x in h)):
        part = Cone.from_inequalities(
            cell.facets + (normal,), cell.equations, ambient_dim=cell.ambient_dim
        )
        if part.dim == cell.dim:
            out.append(part)
    return out


def cone_system(q: ToricQuiver, max_trees: int = DEFAULT_TREE_CAP) -> ChamberSystem:
    """Chambers of the common refinement of all tree cones ``C_T``.

    The facet hyperplanes of every ``C_T`` cut ``C(Q)`` into cells; each
    cell sits inside exactly the ``C_T`` containing its interior point, and
    the chamber of the cell is the intersection of those ``C_T``.
    """
    require_connected(q)
    trees = all_spanning_trees(q)
    if len(trees) > max_trees:
        raise TooManyTrees(f"{len(trees)} spanning trees exceed the cap of {max_trees}")
    ambient = cone_of_weights(q)
    tree_cones = {t: tree_chamber(t, q) for t in trees}
    hyperplanes = sorted({a for c in tree_cones.values() for a in c.facets})

    cells = [ambient]
    for h in hyperplanes:
        cells = [piece for cell in cells for piece in _split(cell, h)]

    chambers: dict[Cone, tuple] = {}
    for cell in cells:
        p = cell.interior_point()
        containing = tuple(t for t in trees if tree_cones[t].contains(p))
        if containing in chambers.values():
            continue
        chamber = tree_cones[containing[0]]
        for t in containing[1:]:
            chamber = chamber.intersect(tree_cones[t])
        chambers[chamber] = containing
    order = sorted(chambers, key=lambda c: c.rays)
    return ChamberSystem(
        quiver=q,
        ambient=ambient,
        chambers=tuple(order),
        tree_cone_index=tuple(chambers[c] for c in order),
        hyperplanes=tuple(hyperplanes),
    )


def reference_thetas(cs: ChamberSystem) -> list[tuple[int, ...]]:
    """One integral weight in the interior of each chamber (primitive ray sum)."""
    return [c.interior_point() for c in cs.chambers]


def same_chamber(theta1: Sequence[int], theta2: Sequence[int], q: ToricQuiver) -> bool:
    """Whether both weights have the same semistable and stable arrow subsets.

    Raises :class:`Indeterminate` when either weight has no stable tree
    (its flow polytope is empty or degenerate).
    """
    theta1 = check_weight(q, theta1)
    theta2 = check_weight(q, theta2)
    if not stable_trees(theta1, q) or not stable_trees(theta2, q):
        raise Indeterminate(INDETERMINATE_MESSAGE)
    return bool(
        np.array_equal(semistable_mask(q, theta1), semistable_mask(q, theta2))
        and np.array_equal(stable_mask(q, theta1), stable_mask(q, theta2))
    )
