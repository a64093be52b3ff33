"""Tuning-curve distances and extreme-value scaling of the tropical metric.

A random tuning curve ``v = (5, -x_2, ..., -x_n)`` with ``x_i ~ Exp(1)`` sits
at tropical distance ``5 + max_i x_i`` from the flat curve, so the mean
distance grows like ``5 + γ + log n`` while the Euclidean distance grows like
``sqrt(n)``.  All randomness is drawn by inverse transform from uniforms, one
generator per trial seeded by ``(seed, trial)``, so results do not depend on
how trials are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tropical_core import trop_distance

EULER_GAMMA = float(np.euler_gamma)
STIMULUS_RANGE = (-5.0, 5.0)
PEAK = 5.0


def gaussian_curve(n: int, mu: float = 0.0, sigma: float = 1.0, lift: float = 0.0) -> np.ndarray:
    """Gaussian density sampled at ``n`` evenly spaced stimuli on [-5, 5], plus ``lift``."""
    if n < 2:
        raise ValueError("need n >= 2 stimuli")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    x = np.linspace(*STIMULUS_RANGE, n)
    return np.exp(-0.5 * ((x - mu) / sigma) ** 2) / (sigma * np.sqrt(2 * np.pi)) + lift


def trial_rng(seed, trial: int) -> np.random.Generator:
    """Generator for one trial, independent of every other trial index."""
    return np.random.default_rng([int(seed), int(trial)])


def exp_sample(rng, size) -> np.ndarray:
    """Exp(1) variates as -log U."""
    u = rng.random(size)
    return -np.log1p(-u)   # 1 - U is uniform on (0, 1]; avoids log(0)


def gumbel_sample(rng, size) -> np.ndarray:
    """Standard Gumbel variates as -log(-log U)."""
    u = rng.random(size)
    u = np.where(u == 0.0, np.nextafter(0.0, 1.0), u)
    return -np.log(-np.log(u))


def random_curve(n: int, rng) -> np.ndarray:
    if n < 2:
        raise ValueError("need n >= 2")
    v = np.empty(n)
    v[0] = PEAK
    v[1:] = -exp_sample(rng, n - 1)
    return v


def random_tuning_trial(n: int, seed=0):
    """(tropical, Euclidean) distance between a random curve and the flat curve.

    ``seed`` may be anything ``numpy.random.default_rng`` accepts, or an
    object with a ``random(size)`` method (handy for stubbing).
    """
    rng = seed if hasattr(seed, "random") else np.random.default_rng(seed)
    v = random_curve(n, rng)
    w = np.zeros(n)
    return trop_distance(v, w), float(np.linalg.norm(v - w))


def _trials(n: int, trials: int, seed):
    trop = np.empty(trials)
    euc = np.empty(trials)
    for t in range(trials):
        trop[t], euc[t] = random_tuning_trial(n, trial_rng(seed, t))
    return trop, euc


def harmonic(n: int) -> float:
    """H_n = 1 + 1/2 + ... + 1/n, the mean of the max of n Exp(1) variates."""
    return float(np.sum(1.0 / np.arange(1, n + 1)))


def theory_trop(n: int) -> float:
    return PEAK + EULER_GAMMA + float(np.log(n))


@dataclass(frozen=True)
class ScalingRow:
    n: int
    mean_trop: float
    se_trop: float
    theory_trop: float
    mean_euclid: float
    se_euclid: float
    sqrt_n: float


def scaling_table(ns, trials: int = 10_000, seed: int = 0) -> list[ScalingRow]:
    """Monte-Carlo mean distances per n alongside 5 + γ + log n and sqrt(n)."""
    if trials < 2:
        raise ValueError("need at least two trials for a standard error")
    rows = []
    for n in ns:
        trop, euc = _trials(int(n), trials, seed)
        rows.append(ScalingRow(
            int(n), float(trop.mean()), float(trop.std(ddof=1) / np.sqrt(trials)),
            theory_trop(int(n)), float(euc.mean()),
            float(euc.std(ddof=1) / np.sqrt(trials)), float(np.sqrt(n))))
    return rows


def loglog_slope(ns, values) -> float:
    """Least-squares slope of log(values) against log(ns)."""
    slope, _ = np.polyfit(np.log(np.asarray(ns, float)), np.log(np.asarray(values, float)), 1)
    return float(slope)


def gumbel_cdf(x):
    return np.exp(-np.exp(-np.asarray(x, dtype=float)))


def ks_statistic(sample, cdf) -> float:
    """Two-sided one-sample Kolmogorov-Smirnov statistic sup |F_n - F|."""
    x = np.sort(np.asarray(sample, dtype=float))
    m = x.size
    if m == 0:
        raise ValueError("empty sample")
    F = cdf(x)
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - F), np.max(F - (i - 1) / m)))


def centred_maxima(n: int, trials: int, seed=0) -> np.ndarray:
    """max of n Exp(1) variates minus log n, one value per trial."""
    out = np.empty(trials)
    for t in range(trials):
        out[t] = exp_sample(trial_rng(seed, t), n).max() - np.log(n)
    return out


def gumbel_deviation(n: int, trials: int, seed=0) -> float:
    """KS distance between (max - log n) over ``trials`` draws and Gumbel(0, 1)."""
    if n < 10:
        raise ValueError("need n >= 10")
    if trials < 1000:
        raise ValueError("need at least 1000 trials")
    return ks_statistic(centred_maxima(n, trials, seed), gumbel_cdf)


def tuning_table(n: int = 101, shifts=(0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0),
                 lifts=(0.0, 0.1, 0.2, 0.3)):
    """Distances of shifted and lifted Gaussian curves from the centred one.

    Returns rows ``(kind, amount, trop, euclid)`` with kind ``"shift"`` or
    ``"lift"``.
    """
    base = gaussian_curve(n)
    rows = []
    for delta in shifts:
        c = gaussian_curve(n, mu=delta)
        rows.append(("shift", float(delta), trop_distance(c, base), float(np.linalg.norm(c - base))))
    for lift in lifts:
        c = gaussian_curve(n, lift=lift)
        rows.append(("lift", float(lift), trop_distance(c, base), float(np.linalg.norm(c - base))))
    return rows
