"""Experiment drivers behind the CLI.

Every trial draws from its own generator seeded by ``(seed, trial, d)``, and
results are gathered in trial order, so tables do not depend on the number
of worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .. import extremes, functional
from ..generalization import hit_rate_lower_bound, vc_bound
from ..l2svm import predict_l2_many, train_l2
from ..svm import InseparableError, LabeledDataset, accuracy, train_heuristic
from .plot import Table


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    trials: int = 200
    dims: tuple = (3, 10, 20, 50, 100)
    samples_per_class: int = 5
    s: float = 5.0
    eta: float = 0.1
    holdout: bool = False
    workers: int = 1
    lam: float = 1e-3
    C: float = 5.0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.dims:
            raise ValueError("dims must be nonempty")
        if not self.s > 0:
            raise ValueError("separation s must be positive")
        if self.samples_per_class < 1:
            raise ValueError("samples_per_class must be >= 1")
        if not 0 < self.eta < 1:
            raise ValueError("eta must lie in (0, 1)")

    @property
    def dprime(self) -> float:
        return 2.0 * self.s * math.sqrt(2.0)


def s_from_dprime(dprime: float) -> float:
    return dprime / (2.0 * math.sqrt(2.0))


def gen_gaussian_dataset(d: int, n_per_class: int, s: float, seed=0) -> LabeledDataset:
    """Two unit-covariance Gaussians with means ±(s, -s, 0, ..., 0), labels A/B."""
    if d < 3:
        raise ValueError("need d >= 3")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    m = np.zeros(d)
    m[0], m[1] = s, -s
    X = np.vstack([m + rng.standard_normal((n_per_class, d)),
                   -m + rng.standard_normal((n_per_class, d))])
    return LabeledDataset(X, ("A",) * n_per_class + ("B",) * n_per_class)


def _signs(data: LabeledDataset) -> np.ndarray:
    return np.array([1.0 if lab == "A" else -1.0 for lab in data.labels])


def _fit_both(train, validation, test, cfg, seed):
    """Test accuracies (tropical, classical) plus the tropical training accuracy."""
    try:
        model = train_heuristic(train, validation, C=cfg.C)
        trop, trop_train = accuracy(model, test), accuracy(model, train)
    except InseparableError:
        trop, trop_train = 0.5, 0.5   # no usable classifier: chance level
    e = train_l2(train.points, _signs(train), lam=cfg.lam, seed=seed)
    classical = float(np.mean(predict_l2_many(e, test.points) == _signs(test)))
    return trop, classical, trop_train


def _trial(args):
    cfg, t = args
    out = []
    N = cfg.samples_per_class
    for d in cfg.dims:
        rng = np.random.default_rng([cfg.seed, t, d])
        train = gen_gaussian_dataset(d, N, cfg.s, rng)
        test = gen_gaussian_dataset(d, N, cfg.s, rng)
        # model selection on the test split, or on a separate split if asked
        validation = gen_gaussian_dataset(d, N, cfg.s, rng) if cfg.holdout else test
        out.append(_fit_both(train, validation, test, cfg, seed=t))
    return out


def _run_trials(cfg: ExperimentConfig) -> np.ndarray:
    """Array (trials, len(dims), 3) of per-trial results."""
    jobs = [(cfg, t) for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            res = list(pool.map(_trial, jobs, chunksize=max(1, cfg.trials // (4 * cfg.workers))))
    else:
        res = [_trial(j) for j in jobs]
    return np.array(res, dtype=float)


def run_curse_experiment(cfg: ExperimentConfig) -> Table:
    """Mean and SD of test accuracy per dimension, tropical vs classical."""
    R = _run_trials(cfg)
    table = Table(("d", "tropical_hit", "classical_hit", "tropical_sd", "classical_sd"))
    for k, d in enumerate(cfg.dims):
        table.add(int(d), float(R[:, k, 0].mean()), float(R[:, k, 1].mean()),
                  float(R[:, k, 0].std()), float(R[:, k, 1].std()))
    return table


def run_bound_experiment(cfg: ExperimentConfig) -> Table:
    """Test hit rates against the VC lower bound (training hit minus penalty).

    The VC dimension of tropical hyperplanes on the d-dimensional torus is d
    and the training sample has n = 2N points.  ``covered`` is the fraction
    of trials whose test hit rate reaches that trial's lower bound.
    """
    R = _run_trials(cfg)
    n = 2 * cfg.samples_per_class
    table = Table(("d", "hit", "hit_sd", "classical_hit", "classical_sd", "train_hit",
                   "lower_bound", "penalty", "covered"))
    for k, d in enumerate(cfg.dims):
        test, classical, train = R[:, k, 0], R[:, k, 1], R[:, k, 2]
        penalty = vc_bound(n, int(d), cfg.eta) if n >= d else math.inf
        lower = np.array([hit_rate_lower_bound(h, n, int(d), cfg.eta) if n >= d else 0.0
                          for h in train])
        table.add(int(d), float(test.mean()), float(test.std()), float(classical.mean()),
                  float(classical.std()), float(train.mean()), float(lower.mean()),
                  float(penalty), float(np.mean(test >= lower)))
    return table


def run_scaling_experiment(ns=(10, 100, 1000, 10000), trials: int = 10_000, seed: int = 0) -> Table:
    table = Table(("n", "mean_trop", "se_trop", "theory_trop", "mean_euclid", "se_euclid", "sqrt_n"))
    for r in extremes.scaling_table(ns, trials, seed):
        table.add(r.n, r.mean_trop, r.se_trop, r.theory_trop, r.mean_euclid, r.se_euclid, r.sqrt_n)
    return table


def run_tuning_experiment(n: int = 101) -> Table:
    table = Table(("kind", "amount", "trop", "euclid"))
    for row in extremes.tuning_table(n):
        table.add(*row)
    return table


def run_functional_experiment(epsilon: float = 1.0) -> Table:
    """Distances between the four example Gaussians and to H_{0,ε}, H_{F3,ε}."""
    F = functional.example_gaussians()
    table = Table(("quantity", "value"))
    for a, b in (("F1", "F2"), ("F1", "F3"), ("F1", "F4")):
        table.add(f"d_tr({a},{b})", functional.func_trop_distance(F[a], F[b]))
    for name in ("F1", "F2"):
        H = functional.FunctionalHyperplane(None, epsilon)
        table.add(f"d_tr({name},H_0)", functional.dist_to_functional_hyperplane(F[name], H))
    H = functional.FunctionalHyperplane(F["F3"], epsilon)
    table.add("d_tr(F1,H_F3)", functional.dist_to_functional_hyperplane(F["F1"], H))
    return table
