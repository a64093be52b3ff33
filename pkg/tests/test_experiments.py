import math

import numpy as np
import pytest
from scipy.stats import norm

from tropsvm.experiments.runners import (ExperimentConfig, gen_gaussian_dataset,
                                         run_bound_experiment, run_curse_experiment,
                                         run_functional_experiment, run_scaling_experiment,
                                         run_tuning_experiment, s_from_dprime)


def test_dprime_formula():
    assert ExperimentConfig(s=math.sqrt(2)).dprime == pytest.approx(4.0)
    assert ExperimentConfig(s=5.0).dprime == pytest.approx(10 * math.sqrt(2))
    assert s_from_dprime(4.0) == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize("kw", [dict(trials=0), dict(dims=()), dict(s=0.0), dict(eta=1.0),
                                dict(samples_per_class=0)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        ExperimentConfig(**kw)


def test_dataset_generation():
    a = gen_gaussian_dataset(5, 4, 2.0, seed=3)
    b = gen_gaussian_dataset(5, 4, 2.0, seed=3)
    assert np.array_equal(a.points, b.points) and a.labels == b.labels
    assert a.labels == ("A",) * 4 + ("B",) * 4
    assert np.all(a.points[:, -1] == 0)
    with pytest.raises(ValueError):
        gen_gaussian_dataset(2, 4, 2.0)


def test_dataset_means():
    ds = gen_gaussian_dataset(4, 20000, 3.0, seed=0)
    # normalized by the last coordinate, the class means are ±(s, -s, 0, 0)
    np.testing.assert_allclose(ds.points[:20000].mean(axis=0), [3, -3, 0, 0], atol=0.05)
    np.testing.assert_allclose(ds.points[20000:].mean(axis=0), [-3, 3, 0, 0], atol=0.05)


def test_curse_table_ranges():
    t = run_curse_experiment(ExperimentConfig(trials=5, dims=(3, 20)))
    assert t.column("d") == [3, 20]
    for col in ("tropical_hit", "classical_hit"):
        assert all(0 <= v <= 1 for v in t.column(col))
    for col in ("tropical_sd", "classical_sd"):
        assert all(0 <= v <= 0.5 for v in t.column(col))


def test_curse_near_perfect_at_d3():
    # Bayes accuracy for two unit Gaussians with means 10 sqrt 2 apart
    bayes = norm.cdf(10 * math.sqrt(2) / 2)
    assert bayes > 0.999
    t = run_curse_experiment(ExperimentConfig(trials=20, dims=(3,)))
    assert t.column("tropical_hit")[0] >= 0.95
    assert t.column("classical_hit")[0] >= 0.95


def test_holdout_protocol_runs():
    t = run_curse_experiment(ExperimentConfig(trials=3, dims=(5,), holdout=True))
    assert 0 <= t.column("tropical_hit")[0] <= 1


def test_workers_do_not_change_results():
    cfg = dict(trials=4, dims=(3, 10), seed=5)
    a = run_curse_experiment(ExperimentConfig(**cfg, workers=1))
    b = run_curse_experiment(ExperimentConfig(**cfg, workers=2))
    assert a.to_csv() == b.to_csv()


def test_bound_table():
    t = run_bound_experiment(ExperimentConfig(trials=4, dims=(3, 10), samples_per_class=20,
                                              s=math.sqrt(2)))
    assert t.columns[:2] == ("d", "hit")
    for lb, pen, cov in zip(t.column("lower_bound"), t.column("penalty"), t.column("covered")):
        assert 0 <= lb <= 1 and pen > 0 and 0 <= cov <= 1


def test_scaling_table():
    t = run_scaling_experiment((10, 100), trials=50, seed=1)
    assert t.column("n") == [10, 100]
    assert t.column("sqrt_n") == pytest.approx([math.sqrt(10), 10.0])


def test_tuning_table():
    t = run_tuning_experiment(51)
    lifts = [r for r in t.rows if r[0] == "lift"]
    assert all(r[2] == pytest.approx(0.0, abs=1e-12) for r in lifts)


def test_functional_table():
    t = run_functional_experiment()
    vals = dict(t.rows)
    assert vals["d_tr(F1,F2)"] == pytest.approx(0.549, abs=1e-3)
    assert vals["d_tr(F1,H_F3)"] < 1e-6
