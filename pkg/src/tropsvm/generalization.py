"""VC-dimension tools for tropical hyperplanes.

The generalization bound and the hit-rate lower bound derived from it,
constructions of shattered point sets, exhaustive separability checks and a
search for tropical Radon partitions (bipartitions whose tropical hulls meet).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .lp import Status, solve
from .svm import _sector_lp
from .tropical_core import normalize_rows, trop_distance, trop_segment

STRICT_Z = 1e-6
WITNESS_TOL = 1e-6
MAX_SHATTER_DIM = 8


def vc_bound(n: int, d: int, eta: float) -> float:
    """Penalty term sqrt((d (log(2n/d) + 1) - log(eta/4)) / n), natural logs."""
    if not (isinstance(n, (int, np.integer)) and isinstance(d, (int, np.integer))):
        raise TypeError("n and d must be integers")
    if d < 1 or n < d:
        raise ValueError(f"need n >= d >= 1, got n={n}, d={d}")
    if not 0.0 < eta < 1.0:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    return math.sqrt((d * (math.log(2.0 * n / d) + 1.0) - math.log(eta / 4.0)) / n)


def hit_rate_lower_bound(train_hit: float, n: int, d: int, eta: float) -> float:
    """Training hit rate minus the VC penalty, clipped at zero."""
    if not 0.0 <= train_hit <= 1.0:
        raise ValueError(f"train_hit must lie in [0, 1], got {train_hit}")
    return max(0.0, train_hit - vc_bound(n, d, eta))


def shattered_configuration(d: int, M: float = 100.0) -> np.ndarray:
    """Points M e_1, ..., M e_d; with ω = 0 each sits deep inside its own sector.

    Any labeling is then realised by handing each label the sectors of its
    points, so the set is shattered by sector-set classifiers.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    return normalize_rows(M * np.eye(d))


def _strictly_feasible(X, targets) -> bool:
    coords = sorted(set(int(t) for t in targets))
    if len(coords) < 2:
        return True   # a lone target sector can always be made dominant
    lp, _ = _sector_lp(X, np.asarray(targets), coords)
    sol = solve(lp)
    if sol.status is Status.UNBOUNDED:
        return True
    return sol.optimal and sol.value >= STRICT_Z


def separating_targets(points, labeling):
    """Per-point sector indices (0-based) realising ``labeling``, or None.

    Looks for ω and disjoint sector sets, one per label, such that every
    point lies strictly (margin >= 1e-6) in a sector of its label's set.
    Depth-first over per-point sector choices, pruned by LP feasibility of
    the partial assignment.
    """
    X = normalize_rows(points)
    labeling = list(labeling)
    n, d = X.shape
    if len(labeling) != n:
        raise ValueError("one label per point required")
    if d > MAX_SHATTER_DIM:
        raise ValueError(f"exhaustive search capped at d <= {MAX_SHATTER_DIM}")
    if n > d + 1:
        raise ValueError(f"at most d+1 = {d + 1} points supported, got {n}")
    classes = sorted(set(labeling), key=repr)
    if len(classes) > 2:
        raise ValueError("labeling must be binary")
    lab = [classes.index(v) for v in labeling]

    targets = []
    owner = {}

    def dfs(k):
        if k == n:
            return True
        for c in range(d):
            if owner.get(c, lab[k]) != lab[k]:
                continue
            new = c not in owner
            owner[c] = lab[k]
            targets.append(c)
            if _strictly_feasible(X[:k + 1], targets) and dfs(k + 1):
                return True
            targets.pop()
            if new:
                del owner[c]
        return False

    return list(targets) if dfs(0) else None


def shatter_check(points, labeling) -> bool:
    """True iff some tropical hyperplane separates ``labeling`` by sector sets."""
    return separating_targets(points, labeling) is not None


def is_shattered(points) -> bool:
    """Every one of the 2^n labelings is separable."""
    n = len(points)
    return all(shatter_check(points, lab)
               for lab in itertools.product((0, 1), repeat=n))


class RadonSearchError(RuntimeError):
    """No bipartition with a certified common hull point was found."""


@dataclass(frozen=True)
class RadonWitness:
    part_a: tuple
    part_b: tuple
    point: np.ndarray

    def labeling(self, n: int) -> list:
        return [0 if i in self.part_a else 1 for i in range(n)]


def bipartitions(n: int):
    """Unordered splits of range(n) into two nonempty parts, point 0 in part A."""
    rest = range(1, n)
    for r in range(0, n - 1):
        for extra in itertools.combinations(rest, r):
            a = (0,) + extra
            b = tuple(i for i in range(n) if i not in a)
            yield a, b


def _project_many(V, X) -> np.ndarray:
    """Tropical projection of every row of ``X`` onto tconv(rows of ``V``)."""
    lam = (X[:, None, :] - V[None, :, :]).min(axis=2)
    P = (lam[:, :, None] + V[None, :, :]).max(axis=1)
    return P - P[:, -1:]


def _in_hull_many(V, X, tol) -> np.ndarray:
    return np.all(np.abs(_project_many(V, X) - X) <= tol, axis=1)


def _common_point(VA, VB, tol, sweeps=500):
    """A point of tconv(VA) ∩ tconv(VB) found by projection and sampling, or None."""

    def first_hit(Y):
        ok = _in_hull_many(VA, Y, tol) & _in_hull_many(VB, Y, tol)
        return Y[np.argmax(ok)] if ok.any() else None

    # hull projections of each vertex onto the other hull
    hit = first_hit(np.vstack([_project_many(VB, VA), _project_many(VA, VB)]))
    if hit is not None:
        return hit
    # alternating projections, started from every vertex at once
    X = np.vstack([VA, VB])
    for _ in range(sweeps):
        Y = _project_many(VB, _project_many(VA, X))
        done = np.max(np.abs(Y - X)) <= 1e-13
        X = Y
        if done:
            break
    hit = first_hit(X)
    if hit is not None:
        return hit
    # dense sampling along the edges of each hull, projected onto the other
    diam = max(np.ptp(np.vstack([VA, VB]), axis=0).max(), 1.0)
    for V, other in ((VA, VB), (VB, VA)):
        for v, w in itertools.combinations(V, 2):
            # the gap parameter sweeps 2R; step it at 1e-3 of the diameter
            R = trop_distance(v, w) + 1.0
            k = int(min(1e5, max(100, math.ceil(2 * R / (1e-3 * diam)) + 1)))
            hit = first_hit(_project_many(other, trop_segment(v, w, k)))
            if hit is not None:
                return hit
    return None


def radon_witness(points, tol: float = WITNESS_TOL) -> RadonWitness:
    """Bipartition of d+1 points whose tropical hulls share a point.

    Tries each bipartition in turn (fixed order) and returns the first with a
    point certified to lie in both hulls within ``tol``.  Raises
    :class:`RadonSearchError` if the search comes up empty.
    """
    X = normalize_rows(points)
    n, d = X.shape
    if n != d + 1:
        raise ValueError(f"expected d+1 = {d + 1} points, got {n}")
    for a, b in bipartitions(n):
        x = _common_point(X[list(a)], X[list(b)], tol)
        if x is not None:
            return RadonWitness(a, b, x)
    raise RadonSearchError("no bipartition with intersecting hulls found")
