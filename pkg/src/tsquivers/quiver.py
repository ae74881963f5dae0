"""Toric quivers: construction, built-in families, the incidence map and
graph enumeration.

A :class:`ToricQuiver` is an acyclic directed multigraph on vertices
``0..n-1`` with an ordered arrow list and an integer flow.  Arrow order is
identity-bearing: arrow subsets are referred to by index everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import (
    Disconnected,
    EmptyQuiver,
    IndexOutOfRange,
    Infeasible,
    LengthMismatch,
    NonPositiveArgument,
    SelfLoop,
    VertexGap,
    WeightNotBalanced,
)

Arrow = tuple[int, int]
FlowSpec = Union[str, Sequence[int]]

DEFAULT_SEED = 0


@dataclass(frozen=True)
class ToricQuiver:
    vertex_count: int
    arrows: tuple[Arrow, ...]
    flow: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple((int(t), int(h)) for t, h in self.arrows))
        object.__setattr__(self, "flow", tuple(self.flow))
        if len(self.flow) != len(self.arrows):
            raise LengthMismatch(
                f"flow has {len(self.flow)} entries for {len(self.arrows)} arrows"
            )
        for t, h in self.arrows:
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise IndexOutOfRange(f"arrow ({t}, {h}) outside 0..{self.vertex_count - 1}")

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def arrow_count(self) -> int:
        return len(self.arrows)

    @cached_property
    def incidence_matrix(self) -> np.ndarray:
        """``n x |Q1|`` matrix: +1 at the head of each arrow, -1 at its tail."""
        m = np.zeros((self.vertex_count, len(self.arrows)), dtype=np.int64)
        for j, (t, h) in enumerate(self.arrows):
            m[t, j] -= 1
            m[h, j] += 1
        return m

    @cached_property
    def weight(self) -> tuple[int, ...]:
        return inc_map(self, self.flow)

    def __repr__(self) -> str:
        return (f"ToricQuiver(vertex_count={self.vertex_count}, arrows={list(self.arrows)}, "
                f"flow={list(self.flow)})")


@dataclass(frozen=True)
class Subquiver:
    """An arrow subset of a parent quiver.

    The zeroed view ``Q^I`` keeps every vertex and zeroes the flow off
    ``I`` (see :attr:`quiver`); :meth:`restricted` gives ``Q_I`` instead.
    """

    parent: ToricQuiver
    arrows: tuple[int, ...]

    @property
    def flow(self) -> tuple[int, ...]:
        keep = set(self.arrows)
        return tuple(w if i in keep else 0 for i, w in enumerate(self.parent.flow))

    @property
    def quiver(self) -> ToricQuiver:
        return ToricQuiver(self.parent.vertex_count, self.parent.arrows, self.flow)

    def restricted(self) -> ToricQuiver:
        return restricted_view(self.parent, self.arrows)


# ---------------------------------------------------------------------------
# construction

def _make_flow(flow: FlowSpec, m: int, seed: int | None) -> tuple[int, ...]:
    if isinstance(flow, str):
        key = flow.lower()
        if key == "ones":
            return (1,) * m
        if key == "random":
            rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
            return tuple(int(x) for x in rng.integers(0, 100, size=m))
        raise ValueError(f"unknown flow spec {flow!r}")
    flow = tuple(int(x) for x in flow)
    if len(flow) != m:
        raise LengthMismatch(f"flow has {len(flow)} entries for {m} arrows")
    return flow


def _check_vertices(edges: Sequence[Sequence[int]]) -> int:
    used = {v for e in edges for v in e}
    n = max(used) + 1
    if used != set(range(n)) or min(used) < 0:
        raise VertexGap(f"vertex labels {sorted(used)} are not 0..{n - 1}")
    return n


def build_quiver(edges: Sequence[Sequence[int]], flow: FlowSpec = "ones",
                 seed: int | None = None) -> ToricQuiver:
    """Quiver with arrows ``tail -> head`` in the given order.

    ``flow`` is ``"ones"``, ``"random"`` (uniform integers in ``[0, 100)``,
    seeded by ``seed`` or 0), or an explicit integer list.
    """
    edges = [tuple(int(x) for x in e) for e in edges]
    if not edges:
        raise EmptyQuiver("a quiver needs at least one arrow")
    for t, h in edges:
        if t == h:
            raise SelfLoop(f"self-loop at vertex {t}")
    n = _check_vertices(edges)
    return ToricQuiver(n, tuple(edges), _make_flow(flow, len(edges), seed))


def replace_flow(q: ToricQuiver, flow: Sequence[int]) -> ToricQuiver:
    flow = tuple(int(x) for x in flow)
    if len(flow) != q.arrow_count:
        raise LengthMismatch(f"flow has {len(flow)} entries for {q.arrow_count} arrows")
    return ToricQuiver(q.vertex_count, q.arrows, flow)


def from_undirected_graph(edges: Sequence[Sequence[int]], flow: FlowSpec = "ones",
                          seed: int | None = None) -> ToricQuiver:
    """Orient every edge ``{i, j}`` from the smaller label to the larger one."""
    oriented = []
    for i, j in edges:
        if i == j:
            raise SelfLoop(f"self-loop at vertex {i}")
        oriented.append((min(i, j), max(i, j)))
    return build_quiver(oriented, flow, seed)


def complete_graph_edges(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def complete_quiver(n: int) -> ToricQuiver:
    if n < 2:
        raise NonPositiveArgument("complete graph needs at least 2 vertices")
    return from_undirected_graph(complete_graph_edges(n))


def bipartite_quiver(r: int, n: int) -> ToricQuiver:
    """``r`` sources ``0..r-1`` each joined to ``n`` sinks ``r..r+n-1``."""
    if r < 1 or n < 1:
        raise NonPositiveArgument("bipartite_quiver needs r >= 1 and n >= 1")
    return build_quiver([(i, r + j) for i in range(r) for j in range(n)])


def three_vertex_quiver(a: int, b: int, c: int) -> ToricQuiver:
    """``a`` arrows 0->1, then ``b`` arrows 1->2, then ``c`` arrows 0->2."""
    if min(a, b, c) < 1:
        raise NonPositiveArgument("three_vertex_quiver needs positive multiplicities")
    return build_quiver([(0, 1)] * a + [(1, 2)] * b + [(0, 2)] * c)


def chain_quiver(multiplicities: Sequence[int]) -> ToricQuiver:
    if not multiplicities or min(multiplicities) < 1:
        raise NonPositiveArgument("chain_quiver needs positive multiplicities")
    edges = [(i, i + 1) for i, k in enumerate(multiplicities) for _ in range(k)]
    return build_quiver(edges)


def _remaining(n: int, glued: dict[int, int], offset: int) -> dict[int, int]:
    # Q2's non-glued vertices go after Q1's, in increasing original order
    mapping = dict(glued)
    nxt = offset
    for v in range(n):
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    return mapping


def merge_on_vertex(q1: ToricQuiver, v1: int, q2: ToricQuiver, v2: int) -> ToricQuiver:
    if not (0 <= v1 < q1.vertex_count and 0 <= v2 < q2.vertex_count):
        raise IndexOutOfRange("merge vertex out of range")
    mapping = _remaining(q2.vertex_count, {v2: v1}, q1.vertex_count)
    arrows = q1.arrows + tuple((mapping[t], mapping[h]) for t, h in q2.arrows)
    return ToricQuiver(q1.vertex_count + q2.vertex_count - 1, arrows, q1.flow + q2.flow)


def merge_on_arrow(q1: ToricQuiver, a1: int, q2: ToricQuiver, a2: int) -> ToricQuiver:
    """Glue ``q2`` onto ``q1`` so that arrow ``a2`` coincides with ``a1``.

    The fused arrow keeps ``q1``'s index and flow value.
    """
    if not (0 <= a1 < q1.arrow_count and 0 <= a2 < q2.arrow_count):
        raise IndexOutOfRange("merge arrow out of range")
    t1, h1 = q1.arrows[a1]
    t2, h2 = q2.arrows[a2]
    mapping = _remaining(q2.vertex_count, {t2: t1, h2: h1}, q1.vertex_count)
    kept = [i for i in range(q2.arrow_count) if i != a2]
    arrows = q1.arrows + tuple((mapping[q2.arrows[i][0]], mapping[q2.arrows[i][1]]) for i in kept)
    flow = q1.flow + tuple(q2.flow[i] for i in kept)
    return ToricQuiver(q1.vertex_count + q2.vertex_count - 2, arrows, flow)


# ---------------------------------------------------------------------------
# incidence map

def inc_map(q: ToricQuiver, flow: Sequence) -> tuple:
    """Weight ``inflow - outflow`` at every vertex."""
    if len(flow) != q.arrow_count:
        raise LengthMismatch(f"flow has {len(flow)} entries for {q.arrow_count} arrows")
    theta = [0] * q.vertex_count
    for (t, h), w in zip(q.arrows, flow):
        theta[h] += w
        theta[t] -= w
    return tuple(theta)


def canonical_weight(q: ToricQuiver) -> tuple[int, ...]:
    return inc_map(q, (1,) * q.arrow_count)


def check_weight(q: ToricQuiver, theta: Sequence) -> tuple:
    theta = tuple(theta)
    if len(theta) != q.vertex_count:
        raise LengthMismatch(f"weight has {len(theta)} entries for {q.vertex_count} vertices")
    if sum(theta) != 0:
        raise WeightNotBalanced(f"weight {list(theta)} does not sum to zero")
    return theta


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[max(rx, ry)] = min(rx, ry)
        return True


def spanning_forest(q: ToricQuiver, support: Sequence[int] | None = None) -> tuple[int, ...]:
    """Lexicographically smallest spanning forest of the support (greedy by index)."""
    uf = _UnionFind(q.vertex_count)
    pool = range(q.arrow_count) if support is None else sorted(support)
    return tuple(a for a in pool if uf.union(*q.arrows[a]))


def tree_flow(q: ToricQuiver, theta: Sequence, forest: Sequence[int]) -> tuple:
    """The unique flow supported on ``forest`` with ``inc = theta``.

    Leaves are peeled one at a time; raises :class:`Infeasible` if a
    component of the forest carries nonzero total demand.
    """
    residual = [Fraction(x) for x in theta]
    flow: list = [0] * q.arrow_count
    incident: dict[int, set[int]] = {v: set() for v in q.vertices}
    for a in forest:
        t, h = q.arrows[a]
        incident[t].add(a)
        incident[h].add(a)
    leaves = [v for v in q.vertices if len(incident[v]) == 1]
    while leaves:
        v = leaves.pop()
        if len(incident[v]) != 1:
            continue
        (a,) = incident[v]
        t, h = q.arrows[a]
        if h == v:
            w = residual[v]
            residual[t] += w
            other = t
        else:
            w = -residual[v]
            residual[h] -= w
            other = h
        residual[v] = 0
        flow[a] = w
        incident[v].clear()
        incident[other].discard(a)
        if len(incident[other]) == 1:
            leaves.append(other)
    if any(residual):
        raise Infeasible(f"no flow on arrows {list(forest)} has weight {list(theta)}")
    return tuple(int(x) if Fraction(x).denominator == 1 else x for x in flow)


def inc_inverse(theta: Sequence, q: ToricQuiver, support: Sequence[int] | None = None) -> tuple:
    """A flow with ``inc(flow) = theta``, zero outside ``support``.

    The flow lives on the lexicographically smallest spanning tree (forest)
    of the support, so it is integral for integral ``theta``.
    """
    theta = check_weight(q, theta)
    if support is not None:
        for a in support:
            if not 0 <= a < q.arrow_count:
                raise IndexOutOfRange(f"arrow index {a} out of range")
    return tree_flow(q, theta, spanning_forest(q, support))


# ---------------------------------------------------------------------------
# graph structure

def is_acyclic(q: ToricQuiver) -> bool:
    indeg = [0] * q.vertex_count
    out: dict[int, list[int]] = {v: [] for v in q.vertices}
    for t, h in q.arrows:
        indeg[h] += 1
        out[t].append(h)
    stack = [v for v in q.vertices if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for h in out[v]:
            indeg[h] -= 1
            if indeg[h] == 0:
                stack.append(h)
    return seen == q.vertex_count


def is_connected(q: ToricQuiver, arrows: Sequence[int] | None = None,
                 vertices: Sequence[int] | None = None) -> bool:
    """Connectivity of the underlying graph restricted to ``vertices``/``arrows``."""
    vs = list(q.vertices) if vertices is None else list(vertices)
    if not vs:
        return True
    vset = set(vs)
    idx = {v: i for i, v in enumerate(vs)}
    uf = _UnionFind(len(vs))
    pool = range(q.arrow_count) if arrows is None else arrows
    for a in pool:
        t, h = q.arrows[a]
        if t in vset and h in vset:
            uf.union(idx[t], idx[h])
    return len({uf.find(i) for i in range(len(vs))}) == 1


def require_connected(q: ToricQuiver) -> None:
    if not is_connected(q):
        raise Disconnected("the underlying graph is not connected")


def all_spanning_trees(q: ToricQuiver) -> list[tuple[int, ...]]:
    """Every spanning tree as a sorted arrow-index tuple, in lexicographic order."""
    require_connected(q)
    n, m = q.vertex_count, q.arrow_count
    need = n - 1
    out: list[tuple[int, ...]] = []

    def extend(start: int, chosen: list[int], parent: list[int]) -> None:
        if len(chosen) == need:
            out.append(tuple(chosen))
            return
        for a in range(start, m - (need - len(chosen)) + 1):
            t, h = q.arrows[a]
            uf = _UnionFind(n)
            uf.parent = parent.copy()
            if uf.union(t, h):
                chosen.append(a)
                extend(a + 1, chosen, uf.parent)
                chosen.pop()

    extend(0, [], list(range(n)))
    return out


def is_spanning_tree(q: ToricQuiver, arrows: Sequence[int]) -> bool:
    arrows = list(arrows)
    if len(arrows) != q.vertex_count - 1 or len(set(arrows)) != len(arrows):
        return False
    if any(not 0 <= a < q.arrow_count for a in arrows):
        return False
    uf = _UnionFind(q.vertex_count)
    return all(uf.union(*q.arrows[a]) for a in arrows)


def check_subset(q: ToricQuiver, arrows: Sequence[int]) -> tuple[int, ...]:
    arrows = tuple(sorted(set(int(a) for a in arrows)))
    for a in arrows:
        if not 0 <= a < q.arrow_count:
            raise IndexOutOfRange(f"arrow index {a} out of range 0..{q.arrow_count - 1}")
    return arrows


def subquivers(q: ToricQuiver) -> Iterator[tuple[int, ...]]:
    """All ``2^|Q1|`` arrow subsets in lexicographic order, lazily."""
    m = q.arrow_count

    def walk(prefix: tuple[int, ...], start: int) -> Iterator[tuple[int, ...]]:
        yield prefix
        for a in range(start, m):
            yield from walk(prefix + (a,), a + 1)

    return walk((), 0)


def zeroed_view(q: ToricQuiver, arrows: Sequence[int]) -> Subquiver:
    return Subquiver(q, check_subset(q, arrows))


def restricted_view(q: ToricQuiver, arrows: Sequence[int]) -> ToricQuiver:
    """Only the arrows ``I`` and their endpoints, vertices renumbered in order."""
    arrows = check_subset(q, arrows)
    used = sorted({v for a in arrows for v in q.arrows[a]})
    idx = {v: i for i, v in enumerate(used)}
    return ToricQuiver(
        len(used),
        tuple((idx[q.arrows[a][0]], idx[q.arrows[a][1]]) for a in arrows),
        tuple(q.flow[a] for a in arrows),
    )

