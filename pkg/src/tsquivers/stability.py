"""Theta-stability of subquivers, maximal unstable subquivers, tightness and
stable spanning trees.

A vertex set ``V`` is successor closed for an arrow subset ``I`` when no
arrow of ``I`` leaves it.  ``I`` is theta-stable (semistable) when every
nonempty proper successor-closed ``V`` has ``theta(V) > 0`` (``>= 0``).

Arrow subsets are encoded as bitmasks internally (bit ``a`` is arrow ``a``)
so that all ``2^|Q1|`` verdicts can be produced as one numpy array.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRange, NonConvergence, WeightNotInCone
from .quiver import (
    Subquiver,
    ToricQuiver,
    all_spanning_trees,
    check_subset,
    check_weight,
    inc_inverse,
    is_connected,
    require_connected,
    tree_flow,
)

_BIG = np.iinfo(np.int64).max


def mask_of(arrows: Sequence[int]) -> int:
    m = 0
    for a in arrows:
        m |= 1 << a
    return m


def subset_of(mask: int) -> tuple[int, ...]:
    out = []
    a = 0
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


def _vertex_set(mask: int) -> tuple[int, ...]:
    return subset_of(mask)


@lru_cache(maxsize=64)
def _leaving(n: int, arrows: tuple) -> np.ndarray:
    """``leaving[a, V]``: arrow ``a`` has its tail in ``V`` and its head outside."""
    vs = np.arange(1 << n, dtype=np.int64)
    out = np.zeros((len(arrows), 1 << n), dtype=bool)
    for a, (t, h) in enumerate(arrows):
        out[a] = ((vs >> t) & 1).astype(bool) & ~((vs >> h) & 1).astype(bool)
    return out


@lru_cache(maxsize=16)
def _closed_table(n: int, arrows: tuple) -> np.ndarray:
    """``closed[I, V]`` for every arrow bitmask ``I`` and vertex bitmask ``V``."""
    leaving = _leaving(n, arrows)
    table = np.ones((1, 1 << n), dtype=bool)
    for a in range(len(arrows)):
        table = np.concatenate([table, table & ~leaving[a]])
    return table


def _vertex_sums(theta: Sequence[int]) -> np.ndarray:
    """``theta(V)`` for every vertex bitmask; the empty and full sets are masked out."""
    n = len(theta)
    vs = np.arange(1 << n, dtype=np.int64)
    bits = (vs[:, None] >> np.arange(n)) & 1
    sums = bits @ np.asarray(theta, dtype=np.int64)
    sums[0] = _BIG
    sums[-1] = _BIG
    return sums


def _closed_row(q: ToricQuiver, arrows: Sequence[int]) -> np.ndarray:
    leaving = _leaving(q.vertex_count, q.arrows)
    row = np.ones(1 << q.vertex_count, dtype=bool)
    for a in arrows:
        row &= ~leaving[a]
    return row


def _as_view(p) -> tuple[ToricQuiver, tuple[int, ...]]:
    if isinstance(p, Subquiver):
        return p.parent, p.arrows
    return p, tuple(range(p.arrow_count))


def is_closed_under_arrows(vertices: Sequence[int], p) -> bool:
    """True iff no arrow of ``p`` (a quiver or :class:`Subquiver`) leaves ``vertices``."""
    q, arrows = _as_view(p)
    vset = set(vertices)
    if any(not 0 <= v < q.vertex_count for v in vset):
        raise IndexOutOfRange("vertex outside the quiver")
    return not any(q.arrows[a][0] in vset and q.arrows[a][1] not in vset for a in arrows)


@dataclass(frozen=True)
class StabilityVerdict:
    """Stability of one arrow subset.

    ``witness`` is the successor-closed vertex set of least theta-sum (ties
    broken by bitmask); it is ``None`` exactly when the subset is stable.
    """

    stable: bool
    semistable: bool
    witness: tuple[int, ...] | None = None
    witness_sum: int | None = None


def stability(arrows: Sequence[int], q: ToricQuiver, theta: Sequence[int] | None = None) -> StabilityVerdict:
    theta = q.weight if theta is None else check_weight(q, theta)
    arrows = check_subset(q, arrows)
    sums = np.where(_closed_row(q, arrows), _vertex_sums(theta), _BIG)
    best = int(np.argmin(sums))
    low = int(sums[best])
    if low == _BIG or low > 0:
        return StabilityVerdict(True, True)
    return StabilityVerdict(False, low == 0, _vertex_set(best), low)


def is_stable(arrows: Sequence[int], q: ToricQuiver, theta: Sequence[int] | None = None) -> bool:
    return stability(arrows, q, theta).stable


def is_semistable(arrows: Sequence[int], q: ToricQuiver, theta: Sequence[int] | None = None) -> bool:
    return stability(arrows, q, theta).semistable


def min_closed_sums(q: ToricQuiver, theta: Sequence[int]) -> np.ndarray:
    """Least theta-sum over closed sets, for every arrow bitmask (``_BIG`` if none)."""
    table = _closed_table(q.vertex_count, q.arrows)
    sums = _vertex_sums(theta)
    return np.where(table, sums[None, :], _BIG).min(axis=1)


def semistable_mask(q: ToricQuiver, theta: Sequence[int]) -> np.ndarray:
    return min_closed_sums(q, check_weight(q, theta)) >= 0


def stable_mask(q: ToricQuiver, theta: Sequence[int]) -> np.ndarray:
    return min_closed_sums(q, check_weight(q, theta)) > 0


def _maximal(bad: np.ndarray, m: int) -> list[tuple[int, ...]]:
    idx = np.arange(1 << m, dtype=np.int64)
    dominated = np.zeros_like(bad)
    for a in range(m):
        free = ((idx >> a) & 1) == 0
        dominated |= free & bad[idx | (1 << a)]
    return sorted(subset_of(int(i)) for i in np.flatnonzero(bad & ~dominated))


@dataclass(frozen=True)
class MaximalSubquivers:
    non_singletons: list[tuple[int, ...]] = field(default_factory=list)
    singletons: list[int] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "nonSingletons": [list(s) for s in self.non_singletons],
            "singletons": list(self.singletons),
        }


def _maximal_report(q: ToricQuiver, theta, bad: np.ndarray, strict: bool) -> MaximalSubquivers:
    found = _maximal(bad, q.arrow_count)
    # a disconnected arrow set only restates instability of its pieces
    non_singletons = [s for s in found if s and is_connected(q, s)]
    covered = {v for s in non_singletons for a in s for v in q.arrows[a]}
    singletons = [
        v for v in q.vertices
        if (theta[v] <= 0 if strict else theta[v] < 0) and v not in covered
    ]
    return MaximalSubquivers(non_singletons, singletons)


def maximal_unstable_subquivers(q: ToricQuiver, theta: Sequence[int] | None = None) -> MaximalSubquivers:
    """Inclusion-maximal arrow subsets that are not theta-semistable.

    Only subsets whose arrows connect every vertex are reported.  Arrowless
    unstable pieces (vertices with negative weight that no reported arrow set
    touches) are listed separately as singletons.
    """
    theta = q.weight if theta is None else check_weight(q, theta)
    return _maximal_report(q, theta, ~semistable_mask(q, theta), strict=False)


def maximal_nonstable_subquivers(q: ToricQuiver, theta: Sequence[int] | None = None) -> MaximalSubquivers:
    theta = q.weight if theta is None else check_weight(q, theta)
    return _maximal_report(q, theta, ~stable_mask(q, theta), strict=True)


def is_tight(q: ToricQuiver, theta: Sequence[int] | None = None) -> bool:
    """True iff removing any single arrow leaves a theta-stable subquiver."""
    theta = q.weight if theta is None else check_weight(q, theta)
    everything = range(q.arrow_count)
    return all(
        stability([b for b in everything if b != a], q, theta).stable for a in everything
    )


def _first_loose_arrow(q: ToricQuiver, theta) -> int | None:
    everything = range(q.arrow_count)
    for a in everything:
        if not stability([b for b in everything if b != a], q, theta).stable:
            return a
    return None


def contract_arrow(q: ToricQuiver, theta: Sequence[int], a: int) -> tuple[ToricQuiver, tuple[int, ...]]:
    """Identify the endpoints of arrow ``a`` into the smaller label.

    Loops created by the identification are dropped; vertices above the
    removed label shift down by one and the two weights are added.
    """
    t, h = q.arrows[a]
    keep, gone = min(t, h), max(t, h)

    def relabel(v: int) -> int:
        if v == gone:
            return keep
        return v - 1 if v > gone else v

    new_theta = [0] * (q.vertex_count - 1)
    for v, x in enumerate(theta):
        new_theta[relabel(v)] += x
    arrows, flow = [], []
    for b, (tb, hb) in enumerate(q.arrows):
        if b == a:
            continue
        nt, nh = relabel(tb), relabel(hb)
        if nt != nh:
            arrows.append((nt, nh))
            flow.append(q.flow[b])
    return ToricQuiver(q.vertex_count - 1, tuple(arrows), tuple(flow)), tuple(new_theta)


def _regular_support(theta, q: ToricQuiver) -> set[int]:
    """Arrows carrying positive flow at some vertex of the flow polytope."""
    support: set[int] = set()
    for tree in all_spanning_trees(q):
        w = tree_flow(q, theta, tree)
        if all(x >= 0 for x in w):
            support.update(a for a, x in enumerate(w) if x > 0)
    return support


def _drop_vanishing_arrows(q: ToricQuiver, theta) -> tuple[ToricQuiver, tuple[int, ...]]:
    """Delete arrows that are zero on the whole flow polytope, then glue the
    resulting components at their smallest vertices.

    Both steps leave the polytope unchanged (gluing at a vertex turns a
    product of flow polytopes into one), and afterwards some regular flow is
    positive on every arrow, so the quiver is theta-stable.
    """
    support = _regular_support(theta, q)
    if len(support) == q.arrow_count:
        return q, tuple(theta)
    kept = [a for a in range(q.arrow_count) if a in support]
    parent = list(q.vertices)

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a in kept:
        t, h = q.arrows[a]
        rt, rh = find(t), find(h)
        if rt != rh:
            parent[max(rt, rh)] = min(rt, rh)
    roots = sorted({find(v) for v in q.vertices})
    hub = roots[0]
    target = [hub if find(v) == v else v for v in q.vertices]
    labels = sorted(set(target))
    index = {v: i for i, v in enumerate(labels)}
    new_theta = [0] * len(labels)
    for v, x in enumerate(theta):
        new_theta[index[target[v]]] += x
    arrows = tuple((index[target[q.arrows[a][0]]], index[target[q.arrows[a][1]]]) for a in kept)
    flow = tuple(q.flow[a] for a in kept)
    return ToricQuiver(len(labels), arrows, flow), tuple(new_theta)


def polytope_nonempty(theta: Sequence[int], q: ToricQuiver) -> bool:
    """Whether some regular flow has weight ``theta`` (a vertex exists iff nonempty)."""
    theta = check_weight(q, theta)
    for tree in all_spanning_trees(q):
        if all(w >= 0 for w in tree_flow(q, theta, tree)):
            return True
    return False


def make_tight(theta: Sequence[int], q: ToricQuiver, max_steps: int | None = None) -> ToricQuiver:
    """Contract arrows until the weight is tight; the flow polytope is unchanged.

    Arrows vanishing on the whole polytope are deleted first, which makes the
    quiver theta-stable.  Then at each step the smallest-index arrow whose
    removal breaks stability is contracted.  The result carries the
    contracted weight via a tree flow.
    ``max_steps`` bounds the number of contractions (default ``|Q1|``).
    """
    theta = check_weight(q, theta)
    require_connected(q)
    if not polytope_nonempty(theta, q):
        raise WeightNotInCone(f"flow polytope of {list(theta)} is empty")
    cur, cur_theta = _drop_vanishing_arrows(q, theta)
    steps = q.arrow_count if max_steps is None else max_steps
    for step in range(steps + 1):
        a = _first_loose_arrow(cur, cur_theta)
        if a is None:
            if cur is q and tuple(q.weight) == tuple(theta):
                return q
            return ToricQuiver(cur.vertex_count, cur.arrows, inc_inverse(cur_theta, cur))
        if step == steps:
            break
        cur, cur_theta = contract_arrow(cur, cur_theta, a)
    raise NonConvergence(f"weight not tight after {steps} contractions")


def stable_trees(theta: Sequence[int], q: ToricQuiver) -> list[tuple[int, ...]]:
    """Spanning trees whose tree flow is regular and which are theta-stable."""
    theta = check_weight(q, theta)
    out = []
    for tree in all_spanning_trees(q):
        w = tree_flow(q, theta, tree)
        if all(x >= 0 for x in w) and stability(tree, q, theta).stable:
            out.append(tree)
    return out
