import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import lambda_grid_contains
from tropsvm.tropical_core import (TropicalPolytope, normalize, pairwise_trop_distance,
                                   tconv_contains, torus_equal, trop_combine, trop_distance,
                                   trop_segment, tropical_projection)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def vec(d):
    return arrays(np.float64, d, elements=finite)


# ---------------------------------------------------------------- normalize

def test_normalize_examples():
    assert normalize([2, 3, 0]).tolist() == [2, 3, 0]
    assert normalize([3, 4, 1]).tolist() == [2, 3, 0]


def test_normalize_is_read_only():
    v = normalize([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        v[0] = 5


@pytest.mark.parametrize("bad", [[1.0], [], [1.0, np.nan], [np.inf, 0.0], [[1, 2], [3, 4]]])
def test_normalize_rejects(bad):
    with pytest.raises(ValueError):
        normalize(bad)


def test_normalize_shift_invariance_random(rng):
    for _ in range(1000):
        d = rng.integers(2, 12)
        x = rng.normal(size=d) * 10
        c = rng.normal() * 100
        np.testing.assert_allclose(normalize(x + c), normalize(x), atol=1e-9)


@given(vec(5))
def test_normalize_idempotent(x):
    n = normalize(x)
    assert np.array_equal(normalize(n), n)
    assert n[-1] == 0.0


# ---------------------------------------------------------------- trop_combine

def test_trop_combine_examples():
    assert trop_combine(0, [0, 0, 0], 0, [0, 0, 0]).tolist() == [0, 0, 0]
    assert trop_combine(0, [2, 3, 0], -10, [0, 0, 0]).tolist() == [2, 3, 0]
    assert trop_combine(1, [2, 3, 0], 2, [2, 1, 0]).tolist() == [2, 2, 0]


def test_trop_combine_dimension_mismatch():
    with pytest.raises(ValueError):
        trop_combine(0, [1, 2, 0], 0, [1, 0])


# ---------------------------------------------------------------- distance

@pytest.mark.parametrize("v,expected", [([2, 3, 0], 3.0), ([2, 1, 0], 2.0), ([2, -1, 0], 3.0)])
def test_distance_worked_examples(v, expected):
    assert trop_distance(v, [0, 0, 0]) == expected


def test_distance_mismatch():
    with pytest.raises(ValueError):
        trop_distance([1, 2, 3], [1, 2])


def test_metric_axioms_random(rng):
    for _ in range(10_000):
        d = int(rng.integers(2, 21))
        u, v, w = rng.normal(size=(3, d)) * rng.choice([0.1, 1, 100])
        duv, dvw, duw = trop_distance(u, v), trop_distance(v, w), trop_distance(u, w)
        assert duv >= 0
        assert duv == trop_distance(v, u)
        assert duw <= duv + dvw + 1e-9
    x = rng.normal(size=7)
    assert trop_distance(x, x + 3.5) == pytest.approx(0.0, abs=1e-12)


@given(vec(4), vec(4), finite, finite)
def test_translation_invariance(v, w, c, c2):
    # the differences are computed after the shift; exact up to rounding of v + c
    assert trop_distance(v + c, w + c2) == pytest.approx(trop_distance(v, w), abs=1e-9)


@given(vec(6), vec(6))
def test_negation_symmetry(v, w):
    assert trop_distance(v, w) == trop_distance(-v, -w)


@given(vec(3), finite)
def test_distance_zero_on_same_torus_point(v, c):
    assert trop_distance(v, v + c) <= 1e-9
    assert torus_equal(v, v + c, atol=1e-9)


@given(vec(3), vec(3))
def test_positive_distance_means_distinct(v, w):
    if trop_distance(v, w) > 1e-6:
        assert not torus_equal(v, w, atol=1e-9)


def test_pairwise_matches_scalar(rng):
    X, Y = rng.normal(size=(5, 4)), rng.normal(size=(3, 4))
    D = pairwise_trop_distance(X, Y)
    for i in range(5):
        for j in range(3):
            assert D[i, j] == pytest.approx(trop_distance(X[i], Y[j]))


# ---------------------------------------------------------------- segments and hulls

def test_segment_endpoints_exact(rng):
    v, w = rng.normal(size=(2, 4))
    seg = trop_segment(v, w, 17)
    assert np.array_equal(seg[0], normalize(v))
    assert np.array_equal(seg[-1], normalize(w))


def test_segment_of_equal_points():
    seg = trop_segment([1, 2, 0], [1, 2, 0], 5)
    assert np.all(seg == np.array([1, 2, 0]))


def test_segment_rejects_short_k():
    with pytest.raises(ValueError):
        trop_segment([1, 2, 0], [0, 0, 0], 1)


def test_segment_samples_in_hull(rng):
    for _ in range(100):
        d = int(rng.integers(2, 7))
        v, w = rng.normal(size=(2, d)) * 5
        P = TropicalPolytope([v, w])
        for x in trop_segment(v, w, 25):
            assert P.contains(x)


def test_vertices_are_members(rng):
    V = rng.normal(size=(5, 4))
    P = TropicalPolytope(V)
    assert all(P.contains(v) for v in V)


def test_combination_is_member(rng):
    for _ in range(200):
        V = rng.normal(size=(3, 3)) * 4
        a, b = rng.normal(size=2) * 3
        x = trop_combine(a, V[0], b, V[1])
        assert tconv_contains(TropicalPolytope(V), x)


def test_far_point_not_member_matches_lambda_oracle(rng):
    for _ in range(30):
        v, w = rng.normal(size=(2, 3)) * 3
        x = np.maximum(v, w).copy()
        x[int(rng.integers(0, 2))] += 100.0
        P = TropicalPolytope([v, w])
        assert not P.contains(x)
        assert not lambda_grid_contains(v, w, x)


def test_membership_agrees_with_lambda_oracle(rng):
    """Mixed in/out points on d = 3, two-vertex polytopes."""
    agree = 0
    for _ in range(60):
        v, w = np.round(rng.normal(size=(2, 3)) * 3, 1)
        if rng.random() < 0.5:
            a = np.round(rng.uniform(-4, 4), 2)     # on the oracle's grid
            x = trop_combine(a, v, 0.0, w)
        else:
            x = np.round(rng.normal(size=3) * 3, 1)
        ours = TropicalPolytope([v, w]).contains(x)
        span = float(np.ptp(v - w)) + 2.0
        # grid step 1e-3 hits every a with two decimals
        steps = int(round(2 * span / 1e-3)) + 1
        oracle = lambda_grid_contains(v, w, x, span=span, steps=steps, tol=1e-6)
        assert ours == oracle, (v, w, x)
        agree += 1
    assert agree == 60


def test_projection_idempotent_and_in_hull(rng):
    V = rng.normal(size=(4, 5))
    x = rng.normal(size=5) * 3
    p = tropical_projection(V, x)
    np.testing.assert_allclose(tropical_projection(V, p), p, atol=1e-12)
    assert TropicalPolytope(V).contains(p)


def test_hull_invariant_under_reorder_and_redundant_vertex(rng):
    for _ in range(100):
        V = rng.normal(size=(3, 4)) * 2
        x = rng.normal(size=4) * 2
        base = TropicalPolytope(V).contains(x)
        assert TropicalPolytope(V[::-1]).contains(x) == base
        extra = trop_combine(0.3, V[0], -0.2, V[2])
        assert TropicalPolytope(np.vstack([V, extra])).contains(x) == base


def test_hull_dimension_mismatch():
    with pytest.raises(ValueError):
        TropicalPolytope([[1, 2, 0]]).contains([1, 0])
