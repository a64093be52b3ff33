"""Tropical hyperplanes H_ω, their open sectors and point-to-hyperplane distance."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tropical_core import ATOL, _as_vector, _check_same_dim, normalize


@dataclass(frozen=True)
class TropicalHyperplane:
    omega: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "omega", normalize(self.omega))

    @property
    def dim(self) -> int:
        return self.omega.shape[0]


@dataclass(frozen=True)
class SectorResult:
    """Where a point sits relative to H_ω.

    ``sector`` is the 1-based index of the open sector containing the point,
    or ``None`` when the maximum of x + ω is attained at least twice; in that
    case ``ties`` holds the 1-based tying indices.
    """

    sector: int | None
    ties: frozenset = field(default_factory=frozenset)

    @property
    def on_hyperplane(self) -> bool:
        return self.sector is None


def _shifted(H: TropicalHyperplane, x) -> np.ndarray:
    x = _as_vector(x)
    _check_same_dim(H.omega, x)
    s = x + H.omega
    # the torus quotient: only differences between coordinates matter
    return s - s.max()


def sector_of(H: TropicalHyperplane, x, tol: float = ATOL) -> SectorResult:
    s = _shifted(H, x)
    top = np.flatnonzero(s >= -tol)
    if top.size == 1:
        return SectorResult(int(top[0]) + 1)
    return SectorResult(None, frozenset(int(i) + 1 for i in top))


def max_minus_second_max(s: np.ndarray) -> np.ndarray:
    """max - second max along the last axis, duplicates of the max counted."""
    part = np.partition(s, -2, axis=-1)
    return part[..., -1] - part[..., -2]


def dist_to_hyperplane(H: TropicalHyperplane, x) -> float:
    """Tropical distance from ``x`` to H_ω, via max(x+ω) - secondmax(x+ω)."""
    return float(max_minus_second_max(_shifted(H, x)))


def dist_to_hyperplane_many(omega, X) -> np.ndarray:
    """Vectorised :func:`dist_to_hyperplane` for the rows of ``X``."""
    S = np.asarray(X, dtype=float) + np.asarray(omega, dtype=float)[None, :]
    return max_minus_second_max(S)
