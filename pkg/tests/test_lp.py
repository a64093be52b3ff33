import numpy as np
import pytest

from oracles import vertex_enumeration
from tropsvm.lp import FEAS_TOL, LinearProgram, Status, solve


def test_single_bound():
    sol = solve(LinearProgram([1.0], [[1.0]], [5.0]))
    assert sol.status is Status.OPTIMAL
    assert sol.value == pytest.approx(5.0)


def test_box_corner():
    A = [[1, 0], [0, 1], [-1, 0], [0, -1]]
    sol = solve(LinearProgram([1, 1], A, [1, 2, 0, 0]))
    assert sol.value == pytest.approx(3.0)
    np.testing.assert_allclose(sol.point, [1, 2], atol=1e-12)


def test_unbounded_and_infeasible():
    assert solve(LinearProgram([1.0], [[-1.0]], [0.0])).status is Status.UNBOUNDED
    lp = LinearProgram([1.0], [[1.0], [-1.0]], [0.0, -1.0])     # u <= 0 and u >= 1
    assert solve(lp).status is Status.INFEASIBLE


def test_no_constraints():
    assert solve(LinearProgram([1.0, 0.0], np.zeros((0, 2)), [])).status is Status.UNBOUNDED
    assert solve(LinearProgram([0.0], np.zeros((0, 1)), [])).value == 0.0


def test_negative_rhs_free_variable():
    # u <= -3 with u free: needs phase one and a negative solution
    sol = solve(LinearProgram([1.0], [[1.0]], [-3.0]))
    assert sol.value == pytest.approx(-3.0)


def test_nonneg_mask():
    lp = LinearProgram([-1.0], [[1.0]], [5.0], nonneg=[True])
    assert solve(lp).value == pytest.approx(0.0)


@pytest.mark.parametrize("kw", [
    dict(objective=[], A=np.zeros((0, 0)), b=[]),
    dict(objective=[1.0, 1.0], A=[[1.0]], b=[1.0]),
    dict(objective=[1.0], A=[[1.0]], b=[1.0, 2.0]),
    dict(objective=[np.nan], A=[[1.0]], b=[1.0]),
    dict(objective=[1.0], A=[[np.inf]], b=[1.0]),
])
def test_malformed(kw):
    with pytest.raises(ValueError):
        LinearProgram(**kw)


def _random_instance(rng):
    return (rng.integers(-3, 4, 3).astype(float), rng.integers(-3, 4, (8, 3)).astype(float),
            rng.integers(-3, 4, 8).astype(float))


def test_matches_vertex_enumeration(rng):
    counts = {s: 0 for s in Status}
    for _ in range(500):
        c, A, b = _random_instance(rng)
        sol = solve(LinearProgram(c, A, b))
        status, value = vertex_enumeration(c, A, b)
        assert sol.status.value == status, (c, A, b)
        counts[sol.status] += 1
        if status == "optimal":
            assert sol.value == pytest.approx(value, abs=1e-6)
    # the instance mix exercises every outcome
    assert all(counts.values())


def test_optimal_point_is_feasible_and_consistent(rng):
    for _ in range(300):
        c, A, b = _random_instance(rng)
        sol = solve(LinearProgram(c, A, b))
        if sol.optimal:
            assert np.all(A @ sol.point <= b + FEAS_TOL)
            assert sol.value == pytest.approx(c @ sol.point, abs=1e-9)


def test_relaxation_never_decreases_optimum(rng):
    for _ in range(300):
        c, A, b = _random_instance(rng)
        s1 = solve(LinearProgram(c, A, b))
        s2 = solve(LinearProgram(c, A, b + 1.0))
        if s1.optimal:
            assert s2.status is Status.UNBOUNDED or s2.value >= s1.value - 1e-9
        if s1.status is Status.UNBOUNDED:
            assert s2.status is Status.UNBOUNDED


def test_deterministic(rng):
    c, A, b = _random_instance(rng)
    s1, s2 = solve(LinearProgram(c, A, b)), solve(LinearProgram(c, A, b))
    assert s1.status == s2.status
    if s1.optimal:
        assert np.array_equal(s1.point, s2.point)


def test_degenerate_cycling_example():
    # Beale's classic cycling instance (as a max problem); Bland fallback must terminate
    c = [0.75, -20, 0.5, -6]
    A = [[0.25, -8, -1, 9], [0.5, -12, -0.5, 3], [0, 0, 1, 0]]
    b = [0, 0, 1]
    lp = LinearProgram(c, A, b, nonneg=[True] * 4)
    sol = solve(lp)
    assert sol.value == pytest.approx(1.25)
