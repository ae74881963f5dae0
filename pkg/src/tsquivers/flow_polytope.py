"""Flow polytopes and their coordinates in circulation-lattice bases."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NoUniqueInteriorPoint, NotSpanningTree, WeightNotInCone
from .geometry.polytope import Polytope, convex_hull, is_reflexive, lattice_data, lattice_points
from .quiver import (
    ToricQuiver,
    all_spanning_trees,
    check_weight,
    is_spanning_tree,
    spanning_forest,
    tree_flow,
)


@dataclass(frozen=True)
class CycleBasis:
    """A basis of the circulation lattice attached to a spanning tree.

    ``columns[j]`` belongs to the ``j``-th non-tree arrow (ascending index):
    it is ``-1`` on that arrow and walks the tree path from its tail to its
    head, ``+1`` on arrows crossed forwards and ``-1`` on arrows crossed
    backwards.
    """

    tree: tuple[int, ...]
    non_tree: tuple[int, ...]
    columns: tuple[tuple[int, ...], ...]

    def matrix(self) -> list[list[int]]:
        """The basis as a ``|Q1| x rank`` row-major matrix."""
        m = len(self.columns[0]) if self.columns else 0
        return [[c[i] for c in self.columns] for i in range(m)]

    def expand(self, coords: Sequence) -> tuple:
        """Flow difference with the given coordinates."""
        out = [0] * (len(self.columns[0]) if self.columns else 0)
        for c, x in zip(self.columns, coords):
            out = [a + x * b for a, b in zip(out, c)]
        return tuple(out)

    def coordinates(self, circulation: Sequence) -> tuple:
        """Coordinates of a circulation; the basis is ``-identity`` on non-tree rows."""
        return tuple(-circulation[a] for a in self.non_tree)


def _resolve_tree(q: ToricQuiver, tree: Sequence[int] | None) -> tuple[int, ...]:
    if tree is None:
        return spanning_forest(q)
    tree = tuple(sorted(tree))
    if not is_spanning_tree(q, tree):
        raise NotSpanningTree(f"{list(tree)} is not a spanning tree")
    return tree


def _tree_path(q: ToricQuiver, tree: Sequence[int], start: int, end: int) -> list[tuple[int, int]]:
    """Arrows on the tree path from ``start`` to ``end`` with direction signs."""
    adj: dict[int, list[tuple[int, int, int]]] = {v: [] for v in q.vertices}
    for a in tree:
        t, h = q.arrows[a]
        adj[t].append((h, a, 1))
        adj[h].append((t, a, -1))
    prev: dict[int, tuple[int, int, int] | None] = {start: None}
    stack = [start]
    while stack:
        v = stack.pop()
        for w, a, sign in adj[v]:
            if w not in prev:
                prev[w] = (v, a, sign)
                stack.append(w)
    path = []
    v = end
    while prev[v] is not None:
        u, a, sign = prev[v]
        path.append((a, sign))
        v = u
    return path[::-1]


def basis_for_flow_polytope(q: ToricQuiver, tree: Sequence[int] | None = None) -> CycleBasis:
    """Circulation basis from a spanning tree (default: the lexicographically smallest)."""
    tree = _resolve_tree(q, tree)
    tset = set(tree)
    non_tree = tuple(a for a in range(q.arrow_count) if a not in tset)
    columns = []
    for a in non_tree:
        col = [0] * q.arrow_count
        col[a] = -1
        t, h = q.arrows[a]
        for b, sign in _tree_path(q, tree, t, h):
            col[b] += sign
        columns.append(tuple(col))
    return CycleBasis(tree, non_tree, tuple(columns))


def regular_tree_flows(theta: Sequence[int], q: ToricQuiver) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Spanning trees whose tree flow is nonnegative, with those flows."""
    theta = check_weight(q, theta)
    out = {}
    for tree in all_spanning_trees(q):
        w = tree_flow(q, theta, tree)
        if all(x >= 0 for x in w):
            out[tree] = w
    return out


def flow_polytope_vertices(theta: Sequence[int], q: ToricQuiver) -> list[tuple[int, ...]]:
    """Vertices of the flow polytope in flow coordinates, sorted.

    Every vertex is a regular flow supported on a spanning tree, so this is
    the deduplicated set of regular tree flows; empty when ``theta`` is
    outside the cone of weights.
    """
    return sorted(set(regular_tree_flows(theta, q).values()))


def _base_point(theta, q: ToricQuiver, vertices) -> tuple[int, ...]:
    if tuple(q.weight) == tuple(theta):
        return q.flow
    return vertices[0]


def flow_polytope_in_tree_basis(theta: Sequence[int], q: ToricQuiver,
                                tree: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Vertices translated into the circulation lattice and written in a tree basis.

    The base point is the quiver's own flow when it has weight ``theta`` and
    the smallest vertex otherwise.
    """
    theta = check_weight(q, theta)
    basis = basis_for_flow_polytope(q, tree)
    verts = flow_polytope_vertices(theta, q)
    if not verts:
        raise WeightNotInCone(f"flow polytope of {list(theta)} is empty")
    f0 = _base_point(theta, q, verts)
    return [basis.coordinates([a - b for a, b in zip(v, f0)]) for v in verts]


def flow_polytope(theta: Sequence[int], q: ToricQuiver, tree: Sequence[int] | None = None,
                  ambient: bool = False) -> Polytope:
    """The flow polytope as a :class:`Polytope`, in tree coordinates unless ``ambient``."""
    if ambient:
        verts = flow_polytope_vertices(theta, q)
        if not verts:
            raise WeightNotInCone(f"flow polytope of {list(theta)} is empty")
        return convex_hull(verts)
    return convex_hull(flow_polytope_in_tree_basis(theta, q, tree))


def is_flow_polytope_reflexive(theta: Sequence[int], q: ToricQuiver) -> bool:
    """Reflexivity of the flow polytope after centring its unique interior lattice point."""
    p = flow_polytope(theta, q)
    if not p.is_full_dimensional:
        raise WeightNotInCone(f"{list(theta)} is not in the interior of the cone of weights")
    inner = lattice_points(p, interior=True)
    if len(inner) != 1:
        raise NoUniqueInteriorPoint(f"flow polytope has {len(inner)} interior lattice points")
    return is_reflexive(p.translate([-x for x in inner[0]]))


__all__ = [
    "CycleBasis",
    "basis_for_flow_polytope",
    "flow_polytope",
    "flow_polytope_in_tree_basis",
    "flow_polytope_vertices",
    "is_flow_polytope_reflexive",
    "lattice_data",
    "regular_tree_flows",
]
