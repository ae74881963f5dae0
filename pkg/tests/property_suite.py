"""Randomised properties checked against the oracles in ``oracles.py``.

Each ``prop_*`` is a complete hypothesis test; calling it runs the search.
``CORE`` are the properties gated by the acceptance suite, ``EXTRA`` are
run by ``test_properties.py``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import sympy
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import oracles
from strategies import balanced_weights, quiver_and_weight, quivers
from tsquivers import (
    Cone,
    ChamberSystem,
    basis_for_flow_polytope,
    cone_of_weights,
    cone_system,
    convex_hull,
    flow_polytope,
    flow_polytope_vertices,
    inc_inverse,
    inc_map,
    is_semistable,
    is_stable,
    lattice_data,
    make_tight,
    potential_walls,
    reference_thetas,
    same_chamber,
)
from tsquivers.errors import Indeterminate
from tsquivers.geometry.linalg import primitive
from tsquivers.stability import polytope_nonempty

N_CASES = 200

many = settings(
    max_examples=N_CASES,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
fewer = settings(
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


@many
@given(quivers())
def prop_exact_sequence_ranks(q):
    # 0 -> circulations -> Z^{Q1} -> weights -> Z -> 0
    n, m = q.vertex_count, q.arrow_count
    inc = sympy.Matrix(q.incidence_matrix.tolist())
    assert inc.rank() == n - 1
    assert len(inc.nullspace()) == m - n + 1
    b = basis_for_flow_polytope(q)
    assert len(b.columns) == m - n + 1
    mat = np.array(b.matrix(), dtype=int).reshape(m, len(b.columns))
    assert not (q.incidence_matrix @ mat).any()
    # rows of the non-tree arrows form -identity, so the columns are a lattice basis
    if b.columns:
        assert (mat[list(b.non_tree)] == -np.eye(len(b.columns), dtype=int)).all()
    assert sum(q.weight) == 0


@many
@given(quivers(), st.data())
def prop_inc_inverse_roundtrip(q, data):
    w = data.draw(st.lists(st.integers(-3, 3), min_size=q.arrow_count, max_size=q.arrow_count))
    theta = inc_map(q, w)
    flow = inc_inverse(theta, q)
    assert inc_map(q, flow) == theta
    assert all(Fraction(x).denominator == 1 for x in flow)


@st.composite
def _subset_and_arrow(draw, m):
    subset = sorted(draw(st.sets(st.integers(0, m - 1), min_size=1)))
    a = draw(st.sampled_from(subset))
    return subset, a


@many
@given(quiver_and_weight(), st.data())
def prop_instability_monotone(qt, data):
    q, theta = qt
    subset, a = data.draw(_subset_and_arrow(q.arrow_count))
    smaller = [b for b in subset if b != a]
    ss = is_semistable(subset, q, theta)
    st_ = is_stable(subset, q, theta)
    assert ss == oracles.brute_stable(q.vertex_count, q.arrows, subset, theta, strict=False)
    assert st_ == oracles.brute_stable(q.vertex_count, q.arrows, subset, theta, strict=True)
    if not ss:
        assert not is_semistable(smaller, q, theta)
    if not st_:
        assert not is_stable(smaller, q, theta)


@many
@given(quiver_and_weight(), st.integers(2, 5), st.data())
def prop_scale_invariance(qt, k, data):
    q, theta = qt
    subset = sorted(data.draw(st.sets(st.integers(0, q.arrow_count - 1))))
    scaled = tuple(k * x for x in theta)
    assert is_stable(subset, q, theta) == is_stable(subset, q, scaled)
    assert is_semistable(subset, q, theta) == is_semistable(subset, q, scaled)


@many
@given(quiver_and_weight())
def prop_nonempty_iff_in_cone(qt):
    q, theta = qt
    expected = oracles.has_flow(q.vertex_count, q.arrows, theta)
    assert cone_of_weights(q).contains(theta) == expected
    assert polytope_nonempty(theta, q) == expected
    verts = flow_polytope_vertices(theta, q)
    assert bool(verts) == expected
    if expected:
        flows = oracles.integer_flows(q.vertex_count, q.arrows, theta, limit=300)
        if len(flows) < 300:
            assert set(verts) <= set(flows)
            p = convex_hull(verts)
            assert all(p.contains(f) for f in flows)


_point = st.integers(-3, 3)


@st.composite
def _point_cloud(draw):
    d = draw(st.integers(1, 3))
    pts = draw(st.lists(st.tuples(*[_point] * d), min_size=1, max_size=8))
    x = draw(st.tuples(*[st.integers(-4, 4)] * d))
    return pts, x


@many
@given(_point_cloud())
def prop_hull_membership(cloud):
    pts, x = cloud
    p = convex_hull(pts)
    assert p.contains(x) == oracles.in_hull(pts, x)
    assert set(p.vertices) <= set(oracles.as_fractions(v) for v in pts)
    assert all(p.contains(v) for v in pts)


@st.composite
def _unimodular(draw, d):
    u = np.eye(d, dtype=int)
    for _ in range(draw(st.integers(0, 4))):
        i, j = draw(st.permutations(range(d)))[:2] if d > 1 else (0, 0)
        if i == j:
            u[i] *= -1
        else:
            u[i] += draw(st.integers(-2, 2)) * u[j]
    if draw(st.booleans()):
        u[0] *= -1
    return u


@st.composite
def _full_dim_cloud(draw):
    d = draw(st.integers(1, 3))
    pts = draw(st.lists(st.tuples(*[st.integers(-2, 2)] * d), min_size=d + 1, max_size=7))
    u = draw(_unimodular(d))
    t = draw(st.tuples(*[st.integers(-3, 3)] * d))
    return pts, u, t


@many
@given(_full_dim_cloud())
def prop_lattice_data_unimodular(case):
    pts, u, t = case
    p = convex_hull(pts)
    assume(p.is_full_dimensional)
    moved = [tuple(int(y) for y in u @ np.array(v) + np.array(t)) for v in pts]
    ld = lattice_data(p)
    assert ld == lattice_data(convex_hull(moved))
    if p.ambient_dim >= 2:
        assert ld.lattice_point_count == len(oracles.lattice_points_brute(p.vertices))
        assert ld.interior_lattice_point_count == len(oracles.lattice_points_brute(p.vertices, interior=True))


def _projected(normal):
    n = len(normal)
    s = sum(normal)
    return primitive([Fraction(x) - Fraction(s, n) for x in normal])


@many
@given(quivers())
def prop_facets_are_outer_walls(q):
    c = cone_of_weights(q)
    n = q.vertex_count
    outer = set()
    for w in potential_walls(q):
        if w.is_outer:
            v = _projected(w.normal(n))
            outer.add(v)
            outer.add(tuple(-x for x in v))
    for a in c.facets:
        assert primitive(a) in outer


@many
@given(st.integers(2, 4).flatmap(
    lambda d: st.lists(st.tuples(*[st.integers(-3, 3)] * d), min_size=1, max_size=6)))
def prop_duality_roundtrip(rays):
    assume(any(any(r) for r in rays))
    c = Cone.from_rays(rays)
    back = Cone.from_inequalities(c.facets, c.equations, ambient_dim=c.ambient_dim)
    assert back == c
    assert all(c.contains(r) for r in rays)


@many
@given(quivers(max_vertices=4, max_arrows=6), st.data())
def prop_make_tight_preserves_lattice_data(q, data):
    w = data.draw(st.lists(st.integers(0, 2), min_size=q.arrow_count, max_size=q.arrow_count))
    theta = inc_map(q, w)
    tight = make_tight(theta, q)
    before = lattice_data(flow_polytope(theta, q))
    after = lattice_data(flow_polytope(tight.weight, tight))
    assert before[:4] == after[:4]
    if before.normalized_volume is not None and after.normalized_volume is not None:
        assert before.normalized_volume == after.normalized_volume


@fewer
@given(quivers(max_vertices=4, max_arrows=6), st.data())
def prop_chamber_sampling(q, data):
    cs: ChamberSystem = cone_system(q)
    refs = reference_thetas(cs)
    for i, (c, ref) in enumerate(zip(cs.chambers, refs)):
        assert cs.locate(ref) == [i]
        coeffs = data.draw(st.lists(st.integers(1, 4), min_size=len(c.rays), max_size=len(c.rays)))
        sample = tuple(sum(k * r[j] for k, r in zip(coeffs, c.rays)) for j in range(q.vertex_count))
        assert c.contains(sample, strictly=True)
        try:
            assert same_chamber(ref, sample, q)
        except Indeterminate:
            raise AssertionError(f"interior weight {sample} has no stable tree")
    for i, j in itertools.combinations(range(len(refs)), 2):
        assert not same_chamber(refs[i], refs[j], q)


CORE = {
    "exact-sequence ranks": prop_exact_sequence_ranks,
    "inc of incInverse is the identity": prop_inc_inverse_roundtrip,
    "instability monotone under arrow removal": prop_instability_monotone,
    "stability scale invariance": prop_scale_invariance,
    "flow polytope nonempty iff weight in cone": prop_nonempty_iff_in_cone,
    "hull membership agrees with LP oracle": prop_hull_membership,
    "latticeData unimodular invariance": prop_lattice_data_unimodular,
    "facets of the cone of weights are outer walls": prop_facets_are_outer_walls,
}

EXTRA = {
    "cone duality round trip": prop_duality_roundtrip,
    "makeTight preserves latticeData": prop_make_tight_preserves_lattice_data,
    "chamber sampling agrees with sameChamber": prop_chamber_sampling,
}
