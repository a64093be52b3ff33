import numpy as np
import pytest
from sklearn.linear_model import LogisticRegression

from tropsvm.experiments.runners import gen_gaussian_dataset
from tropsvm.l2svm import EuclideanModel, objective, predict_l2, predict_l2_many, train_l2


def test_one_dimensional_pair():
    m = train_l2([[-1.0], [1.0]], [-1, 1])
    assert predict_l2(m, [-1.0]) == -1
    assert predict_l2(m, [1.0]) == 1


def test_separable_blobs(rng):
    X = np.vstack([rng.normal(size=(50, 2)) + [4, 4], rng.normal(size=(50, 2)) - [4, 4]])
    y = np.r_[np.ones(50), -np.ones(50)]
    m = train_l2(X, y, lam=1e-3)
    assert np.mean(predict_l2_many(m, X) == y) == 1.0


def test_predict_signs():
    m = EuclideanModel(np.array([1.0, -1.0]), 0.0, 1e-3)
    assert predict_l2(m, [2, 1]) == 1
    assert predict_l2(m, [1, 2]) == -1
    assert predict_l2(m, [1, 1]) == 1      # exact zero goes to +1


def test_positive_rescaling_keeps_labels(rng):
    m = EuclideanModel(rng.normal(size=3), 0.3, 1e-3)
    X = rng.normal(size=(100, 3))
    m2 = EuclideanModel(m.weights * 7.5, m.bias * 7.5, 1e-3)
    assert np.array_equal(predict_l2_many(m, X), predict_l2_many(m2, X))


def test_objective_not_worse_than_zero_model(rng):
    X = rng.normal(size=(40, 4))
    y = np.where(rng.random(40) < 0.5, -1, 1)
    y[:2] = [-1, 1]
    m = train_l2(X, y, lam=1e-2)
    assert objective(m.weights, m.bias, X, y, 1e-2) <= objective(np.zeros(4), 0.0, X, y, 1e-2)


def test_trace_non_increasing(rng):
    X = rng.normal(size=(60, 3))
    y = np.where(X[:, 0] + 0.3 * rng.normal(size=60) > 0, 1, -1)
    _, trace = train_l2(X, y, epochs=50, return_trace=True)
    assert np.all(np.diff(trace) <= 1e-15)


def test_deterministic_given_seed(rng):
    X = rng.normal(size=(30, 3))
    y = np.where(X[:, 1] > 0, 1, -1)
    a, b = train_l2(X, y, seed=3), train_l2(X, y, seed=3)
    assert np.array_equal(a.weights, b.weights) and a.bias == b.bias


@pytest.mark.parametrize("X,y", [
    ([[1.0], [2.0]], [1, 1]),
    ([[1.0]], [1]),
    ([[1.0], [2.0]], [0, 1]),
    ([[1.0], [2.0]], [1]),
])
def test_rejects_bad_training_data(X, y):
    with pytest.raises(ValueError):
        train_l2(X, y)


def test_rejects_dimension_mismatch():
    m = EuclideanModel(np.ones(2), 0.0, 1e-3)
    with pytest.raises(ValueError):
        predict_l2(m, [1.0, 2.0, 3.0])


def test_accuracy_matches_logistic_regression_oracle():
    """Gaussian classes at separation d' = 4 in d = 3, 100 points per class."""
    s = np.sqrt(2.0)
    train = gen_gaussian_dataset(3, 100, s, seed=11)
    test = gen_gaussian_dataset(3, 2000, s, seed=12)
    sign = lambda ds: np.array([1 if lab == "A" else -1 for lab in ds.labels])
    m = train_l2(train.points, sign(train), lam=1e-3)
    ours = np.mean(predict_l2_many(m, test.points) == sign(test))
    ref = LogisticRegression(C=1.0 / (2e-3 * train.n)).fit(train.points, sign(train))
    oracle = np.mean(ref.predict(test.points) == sign(test))
    assert ours == pytest.approx(oracle, abs=0.03)
