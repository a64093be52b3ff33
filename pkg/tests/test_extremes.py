import numpy as np
import pytest
from scipy import stats

from tropsvm.extremes import (EULER_GAMMA, centred_maxima, exp_sample, gaussian_curve,
                              gumbel_cdf, gumbel_deviation, gumbel_sample, harmonic,
                              ks_statistic, loglog_slope, random_tuning_trial, scaling_table,
                              theory_trop, trial_rng, tuning_table)
from tropsvm.tropical_core import trop_distance


class ZeroStub:
    """RNG stand-in whose uniforms are all 0, so every Exp(1) draw is 0."""

    def random(self, size):
        return np.zeros(size)


# ---------------------------------------------------------------- tuning curves

def test_gaussian_curve_shape_and_errors():
    c = gaussian_curve(101)
    assert c.shape == (101,)
    assert c[50] == pytest.approx(1 / np.sqrt(2 * np.pi))
    with pytest.raises(ValueError):
        gaussian_curve(1)
    with pytest.raises(ValueError):
        gaussian_curve(10, sigma=0.0)


def test_lift_is_invisible_to_tropical_distance():
    base = gaussian_curve(101)
    for c in (0.1, -3.0, 42.0):
        lifted = gaussian_curve(101, lift=c)
        assert trop_distance(lifted, base) == pytest.approx(0.0, abs=1e-12)
        assert np.linalg.norm(lifted - base) == pytest.approx(abs(c) * np.sqrt(101))


def test_shift_increases_both_distances():
    base = gaussian_curve(201)
    deltas = np.linspace(0.05, 3.0, 60)
    trop = [trop_distance(gaussian_curve(201, mu=d), base) for d in deltas]
    euc = [np.linalg.norm(gaussian_curve(201, mu=d) - base) for d in deltas]
    assert np.all(np.diff(trop) > 0) and np.all(np.diff(euc) > 0)


def test_tuning_table_rows():
    rows = tuning_table(n=51)
    kinds = {r[0] for r in rows}
    assert kinds == {"shift", "lift"}
    for kind, amount, trop, euc in rows:
        if kind == "lift":
            assert trop == pytest.approx(0.0, abs=1e-12)
        assert trop >= 0 and euc >= 0


# ---------------------------------------------------------------- random curves

def test_degenerate_rng_gives_peak_only():
    trop, euc = random_tuning_trial(50, ZeroStub())
    assert trop == 5.0
    assert euc == 5.0


def test_trop_is_peak_plus_max_noise():
    rng = trial_rng(0, 3)
    trop, _ = random_tuning_trial(20, trial_rng(0, 3))
    x = exp_sample(rng, 19)
    assert trop == pytest.approx(5.0 + x.max())


def test_trial_rng_independent_of_schedule():
    a = [trial_rng(9, t).random() for t in range(5)]
    b = [trial_rng(9, t).random() for t in reversed(range(5))][::-1]
    assert a == b


def test_exp_sampler_ks_against_scipy():
    x = exp_sample(np.random.default_rng(1), 20000)
    assert x.min() >= 0
    assert stats.kstest(x, "expon").statistic < 0.02


def test_gumbel_sampler_self_consistent():
    g = gumbel_sample(np.random.default_rng(2), 10_000)
    assert ks_statistic(g, gumbel_cdf) < 0.02


def test_gumbel_cdf_matches_scipy():
    x = np.linspace(-3, 8, 50)
    np.testing.assert_allclose(gumbel_cdf(x), stats.gumbel_r.cdf(x), rtol=1e-12)


def test_ks_statistic_matches_scipy(rng):
    for _ in range(10):
        s = rng.gumbel(size=500) + rng.normal() * 0.1
        ours = ks_statistic(s, gumbel_cdf)
        ref = stats.kstest(s, stats.gumbel_r.cdf).statistic
        assert ours == pytest.approx(ref, abs=1e-12)


def test_ks_statistic_empty():
    with pytest.raises(ValueError):
        ks_statistic([], gumbel_cdf)


# ---------------------------------------------------------------- scaling

def test_harmonic_numbers():
    assert harmonic(1) == 1.0
    assert harmonic(4) == pytest.approx(25 / 12)
    assert harmonic(10**6) == pytest.approx(np.log(10**6) + EULER_GAMMA, abs=1e-6)


@pytest.mark.parametrize("n", [10, 100])
def test_mean_max_is_harmonic_number(n):
    # the curve has n - 1 noise terms, so the exact mean is 5 + H_{n-1}
    row = scaling_table([n], trials=10_000, seed=5)[0]
    assert abs(row.mean_trop - (5 + harmonic(n - 1))) <= 3 * row.se_trop


def test_theory_curve():
    assert theory_trop(1) == pytest.approx(5 + EULER_GAMMA)
    assert theory_trop(1000) == pytest.approx(5 + EULER_GAMMA + np.log(1000))


def test_scaling_table_requires_two_trials():
    with pytest.raises(ValueError):
        scaling_table([10], trials=1)


def test_loglog_slope_exact():
    ns = [10, 100, 1000]
    assert loglog_slope(ns, np.sqrt(ns)) == pytest.approx(0.5)


def test_centred_maxima_ks_finite_size_larger():
    small = gumbel_deviation(10, 2000, seed=4)
    large = gumbel_deviation(10_000, 2000, seed=4)
    assert small > large


def test_centred_maxima_matches_scipy_ks():
    m = centred_maxima(1000, 2000, seed=6)
    assert ks_statistic(m, gumbel_cdf) == pytest.approx(
        stats.kstest(m, stats.gumbel_r.cdf).statistic, abs=1e-12)


@pytest.mark.parametrize("n,trials", [(9, 1000), (10, 999)])
def test_gumbel_deviation_domain(n, trials):
    with pytest.raises(ValueError):
        gumbel_deviation(n, trials)
