"""Linear L2-regularized hinge-loss SVM, used as the Euclidean comparator.

Minimizes ``λ‖w‖² + mean_i (1 - y_i (w·x_i + b))_+`` by dual coordinate
descent (the liblinear scheme) with the bias folded in as an extra constant
feature.  The sweep order is a seeded permutation per epoch, so training is
deterministic for a given seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BIAS_SCALE = 10.0


@dataclass(frozen=True)
class EuclideanModel:
    weights: np.ndarray
    bias: float
    lam: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if not np.all(np.isfinite(w)) or not np.isfinite(self.bias):
            raise ValueError("model parameters must be finite")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bias", float(self.bias))


def objective(w, b, X, y, lam: float) -> float:
    hinge = np.maximum(0.0, 1.0 - y * (X @ w + b))
    return float(lam * w @ w + hinge.mean())


def _check(X, y):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).reshape(-1)
    if X.ndim != 2 or X.shape[0] != y.size:
        raise ValueError("X must be (n, d) with one label per row")
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise ValueError("labels must be -1 or +1")
    if X.shape[0] < 2 or np.unique(y).size < 2:
        raise ValueError("training needs both classes present")
    return X, y


def train_l2(X, y, lam: float = 1e-3, epochs: int = 200, seed: int = 0,
             tol: float = 1e-6, return_trace: bool = False):
    """Train on rows of ``X`` with labels ``y`` in {-1, +1}.

    Runs at most ``epochs`` sweeps and stops early once the projected dual
    gradient falls below ``tol``.  With ``return_trace`` also returns the
    best primal objective seen after each sweep.
    """
    X, y = _check(X, y)
    if lam <= 0:
        raise ValueError("lam must be positive")
    n, d = X.shape
    Xa = np.hstack([X, np.full((n, 1), BIAS_SCALE)])
    # λ‖w‖² + (1/n) Σ hinge  ==  (1/(2λn)) * (½‖w‖² + C Σ hinge),  C = 1/(2λn)
    C = 1.0 / (2.0 * lam * n)
    q = np.einsum("ij,ij->i", Xa, Xa)
    alpha = np.zeros(n)
    w = np.zeros(d + 1)
    rng = np.random.default_rng(seed)
    best = (objective(w[:d], 0.0, X, y, lam), w.copy())
    trace = []
    for _ in range(epochs):
        worst = 0.0
        for i in rng.permutation(n):
            g = y[i] * (w @ Xa[i]) - 1.0
            if alpha[i] <= 0.0:
                pg = min(g, 0.0)
            elif alpha[i] >= C:
                pg = max(g, 0.0)
            else:
                pg = g
            worst = max(worst, abs(pg))
            if pg != 0.0:
                new = min(max(alpha[i] - g / q[i], 0.0), C)
                w += (new - alpha[i]) * y[i] * Xa[i]
                alpha[i] = new
        f = objective(w[:d], w[d] * BIAS_SCALE, X, y, lam)
        if f < best[0]:
            best = (f, w.copy())
        trace.append(best[0])
        if worst < tol:
            break
    wb = best[1]
    model = EuclideanModel(wb[:d], wb[d] * BIAS_SCALE, lam)
    return (model, trace) if return_trace else model


def predict_l2(model: EuclideanModel, x) -> int:
    """Sign of w·x + b, with an exact zero mapped to +1."""
    x = np.asarray(x, dtype=float)
    if x.shape != model.weights.shape:
        raise ValueError(f"dimension mismatch: model {model.weights.size}, x {x.size}")
    return 1 if x @ model.weights + model.bias >= 0 else -1


def predict_l2_many(model: EuclideanModel, X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.weights.size:
        raise ValueError("dimension mismatch")
    return np.where(X @ model.weights + model.bias >= 0, 1, -1)
