"""Max-plus arithmetic on the tropical projective torus R^d / R1.

Points are plain numpy vectors.  The canonical representative of a torus
point has its last coordinate equal to zero; :func:`normalize` produces it
and every function here accepts raw (unnormalized) vectors as well.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ATOL = 1e-9


def _as_vector(x, name="x") -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {v.shape}")
    if v.shape[0] < 2:
        raise ValueError(f"{name} needs dimension >= 2, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def _check_same_dim(v: np.ndarray, w: np.ndarray) -> None:
    if v.shape != w.shape:
        raise ValueError(f"dimension mismatch: {v.shape[0]} vs {w.shape[0]}")


def normalize(raw) -> np.ndarray:
    """Return the representative of ``raw`` whose last coordinate is 0."""
    v = _as_vector(raw, "raw")
    out = v - v[-1]
    out.setflags(write=False)
    return out


def normalize_rows(points) -> np.ndarray:
    """Row-wise :func:`normalize` for an (n, d) array."""
    X = np.asarray(points, dtype=float)
    if X.ndim != 2 or X.shape[1] < 2:
        raise ValueError(f"expected an (n, d>=2) array, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("points have non-finite entries")
    return X - X[:, -1:]


def torus_equal(v, w, atol: float = ATOL) -> bool:
    v, w = normalize(v), normalize(w)
    _check_same_dim(v, w)
    return bool(np.all(np.abs(v - w) <= atol))


def trop_combine(a: float, v, b: float, w) -> np.ndarray:
    """Tropical linear combination ``a ⊙ v ⊞ b ⊙ w``, normalized."""
    v, w = _as_vector(v, "v"), _as_vector(w, "w")
    _check_same_dim(v, w)
    return normalize(np.maximum(a + v, b + w))


def trop_distance(v, w) -> float:
    """Generalized Hilbert projective metric max(v - w) - min(v - w)."""
    v, w = _as_vector(v, "v"), _as_vector(w, "w")
    _check_same_dim(v, w)
    diff = v - w
    return float(diff.max() - diff.min())


def pairwise_trop_distance(X, Y) -> np.ndarray:
    """Matrix of tropical distances between the rows of ``X`` and ``Y``."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    diff = X[:, None, :] - Y[None, :, :]
    return diff.max(axis=2) - diff.min(axis=2)


def trop_segment(v, w, k: int) -> np.ndarray:
    """Sample ``k`` points of the tropical line segment from ``v`` to ``w``.

    The scalar gap ``t = a - b`` sweeps linearly from ``R`` down to ``-R``
    with ``R = d_tr(v, w) + 1``; at both ends one generator dominates every
    coordinate, so the first and last rows are exactly ``v`` and ``w``.
    """
    v, w = normalize(v), normalize(w)
    _check_same_dim(v, w)
    if k < 2:
        raise ValueError("k must be at least 2")
    R = trop_distance(v, w) + 1.0
    t = np.linspace(R, -R, k)
    pts = np.maximum(t[:, None] + v[None, :], w[None, :])
    pts -= pts[:, -1:]
    # endpoints are exact by construction, but pin them against rounding
    pts[0] = v
    pts[-1] = w
    return pts


@dataclass(frozen=True)
class TropicalPolytope:
    """Tropical convex hull of a finite vertex set (rows of ``vertices``)."""

    vertices: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.vertices, dtype=float)
        if V.ndim == 1:
            V = V[None, :]
        if V.ndim != 2 or V.shape[0] == 0:
            raise ValueError("a polytope needs a nonempty (k, d) vertex array")
        V = normalize_rows(V)
        V.setflags(write=False)
        object.__setattr__(self, "vertices", V)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def project(self, x) -> np.ndarray:
        return tropical_projection(self.vertices, x)

    def contains(self, x, atol: float = ATOL) -> bool:
        return tconv_contains(self, x, atol)


def tropical_projection(vertices, x) -> np.ndarray:
    """Nearest-point projection of ``x`` onto tconv(vertices).

    Uses the closed form ``⊞_i λ_i ⊙ v^i`` with ``λ_i = min_j (x_j - v^i_j)``.
    """
    V = np.asarray(vertices, dtype=float)
    x = _as_vector(x)
    if V.shape[1] != x.shape[0]:
        raise ValueError(f"dimension mismatch: {V.shape[1]} vs {x.shape[0]}")
    lam = (x[None, :] - V).min(axis=1)
    proj = (lam[:, None] + V).max(axis=0)
    return proj - proj[-1]


def tconv_contains(P: TropicalPolytope, x, atol: float = ATOL) -> bool:
    x = normalize(x)
    if x.shape[0] != P.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {x.shape[0]}")
    return bool(np.all(np.abs(P.project(x) - x) <= atol))
