"""The tropical metric and tropical hyperplanes on spaces of functions.

Functions are anything callable on a numpy array of abscissae:
:class:`GaussianMixture`, :class:`GridFunction` (piecewise-linear
interpolation of samples) or a plain vectorised callable.  Functions are
considered up to an additive constant, and every quantity here is invariant
under ``f -> f + c``.

Suprema over an interval are computed on uniform grids that double in
resolution until two successive estimates agree to ``tol``.  Grid maxima are
polished by a golden-section search on the neighbouring cells, which makes
the estimates converge quadratically instead of linearly in the spacing.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .svm import (InseparableError, LabeledDataset, TrainedModel, predict,
                  train_hard, train_heuristic)
from .tropical_core import normalize

DOMAIN = (-8.0, 8.0)
TOL = 1e-6
MAX_REFINE = 20
BASE_POINTS = 1025
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class ConvergenceError(RuntimeError):
    """Grid refinement did not settle within the allowed number of passes."""


class BoundaryArgmaxError(ValueError):
    """The maximum of f + ω sits on the edge of the domain."""


@dataclass(frozen=True)
class GaussianMixture:
    """Weighted sum of normal densities; components are (weight, mu, sigma)."""

    components: tuple

    def __post_init__(self):
        comps = tuple((float(w), float(m), float(s)) for w, m, s in self.components)
        if not comps:
            raise ValueError("a mixture needs at least one component")
        if any(not s > 0 for _, _, s in comps):
            raise ValueError("every sigma must be positive")
        object.__setattr__(self, "components", comps)

    @classmethod
    def single(cls, mu: float, sigma: float, weight: float = 1.0) -> "GaussianMixture":
        return cls(((weight, mu, sigma),))

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for w, m, s in self.components:
            out = out + w * np.exp(-0.5 * ((x - m) / s) ** 2) / (s * math.sqrt(2 * math.pi))
        return out

    __call__ = eval

    def __add__(self, other):
        if isinstance(other, GaussianMixture):
            return GaussianMixture(self.components + other.components)
        return NotImplemented

    def scaled(self, a: float) -> "GaussianMixture":
        return GaussianMixture(tuple((a * w, m, s) for w, m, s in self.components))


def example_gaussians() -> dict:
    """Four reference Gaussians F1..F4: means -2, -2, 2, 2 and sigmas 1, 0.5, 1, 0.5."""
    return {
        "F1": GaussianMixture.single(-2.0, 1.0),
        "F2": GaussianMixture.single(-2.0, 0.5),
        "F3": GaussianMixture.single(2.0, 1.0),
        "F4": GaussianMixture.single(2.0, 0.5),
    }


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function on a strictly increasing grid, up to a constant."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float).reshape(-1)
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if g.size != v.size or g.size < 2:
            raise ValueError("grid and values need the same length >= 2")
        if not np.all(np.diff(g) > 0):
            raise ValueError("grid must be strictly increasing")
        if not (np.all(np.isfinite(g)) and np.all(np.isfinite(v))):
            raise ValueError("grid and values must be finite")
        g.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    @classmethod
    def sample(cls, f: Callable, grid) -> "GridFunction":
        grid = np.asarray(grid, dtype=float)
        return cls(grid, np.asarray(f(grid), dtype=float))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < self.grid[0] - 1e-12) or np.any(x > self.grid[-1] + 1e-12):
            raise ValueError("evaluation outside the sampled grid")
        return np.interp(x, self.grid, self.values)

    @property
    def domain(self) -> tuple:
        return float(self.grid[0]), float(self.grid[-1])

    def to_torus(self) -> np.ndarray:
        return normalize(self.values)


def add(f: Callable, g: Callable | None) -> Callable:
    """Pointwise sum; ``None`` stands for the zero function."""
    if g is None:
        return f
    return lambda x: f(x) + g(x)


def _grids(domain, base=BASE_POINTS, max_refine=MAX_REFINE):
    a, b = map(float, domain)
    if not b > a:
        raise ValueError(f"empty domain {domain}")
    k = base
    for _ in range(max_refine + 1):
        yield np.linspace(a, b, k)
        k = 2 * (k - 1) + 1


def _golden_max(h: Callable, a: float, b: float, iters: int = 80) -> tuple:
    """Maximise a unimodal ``h`` on [a, b]; returns (argmax, max)."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    hc, hd = h(c), h(d)
    for _ in range(iters):
        if hc >= hd:
            b, d, hd = d, c, hc
            c = b - _INV_PHI * (b - a)
            hc = h(c)
        else:
            a, c, hc = c, d, hd
            d = a + _INV_PHI * (b - a)
            hd = h(d)
    x = (a + b) / 2
    return x, h(x)


def _polish(h, x, y, i, lo, hi):
    """Refine the grid maximum at index ``i`` inside the bracket [lo, hi]."""
    a = x[max(i - 1, 0)]
    b = x[min(i + 1, len(x) - 1)]
    a, b = max(a, lo), min(b, hi)
    if not b > a:
        return x[i], y[i]
    xs, ys = _golden_max(lambda t: float(h(np.array([t]))[0]), a, b)
    return (xs, ys) if ys > y[i] else (x[i], y[i])


def _refine(estimate: Callable, domain, tol, max_refine):
    prev = None
    for x in _grids(domain, max_refine=max_refine):
        cur = estimate(x)
        if prev is not None and abs(cur - prev) < tol:
            return cur
        prev = cur
    raise ConvergenceError(f"no convergence to {tol} after {max_refine} refinements")


def func_trop_distance(f: Callable, g: Callable, domain=DOMAIN, tol: float = TOL,
                       max_refine: int = MAX_REFINE) -> float:
    """sup (f - g) - inf (f - g) over ``domain``."""
    def h(x):
        return np.asarray(f(x), float) - np.asarray(g(x), float)

    def neg(x):
        return -h(x)

    a, b = map(float, domain)

    def estimate(x):
        y = h(x)
        _, top = _polish(h, x, y, int(np.argmax(y)), a, b)
        _, bot = _polish(neg, x, -y, int(np.argmin(y)), a, b)
        return top + bot

    return _refine(estimate, domain, tol, max_refine)


@dataclass(frozen=True)
class FunctionalHyperplane:
    """H_{ω,ε}: functions whose max of f + ω recurs outside the ε-ball of its argmax."""

    omega: Callable | None
    epsilon: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


@dataclass(frozen=True)
class _Peak:
    argmax: float
    top: float
    outside: float          # max of f + ω outside the closed ε-ball
    outside_at: float


def _peak(h, x, eps, a, b) -> _Peak:
    y = h(x)
    i = int(np.argmax(y))           # leftmost on ties
    if i == 0 or i == len(x) - 1:
        raise BoundaryArgmaxError(f"argmax at the domain edge x = {x[i]:.6g}")
    xs, top = _polish(h, x, y, i, a, b)
    far = np.abs(x - xs) > eps
    best_x, best = None, -np.inf
    if far.any():
        j = int(np.flatnonzero(far)[np.argmax(y[far])])
        lo, hi = (a, xs - eps) if x[j] < xs else (xs + eps, b)
        best_x, best = _polish(h, x, y, j, lo, hi)
    # the supremum over the open complement includes the ball's rim by continuity
    for rim in (xs - eps, xs + eps):
        if a <= rim <= b:
            v = float(h(np.array([rim]))[0])
            if v > best:
                best_x, best = rim, v
    if best_x is None:
        raise ValueError("the ε-ball covers the whole domain")
    return _Peak(float(xs), float(top), float(best), float(best_x))


def dist_to_functional_hyperplane(f: Callable, H: FunctionalHyperplane, domain=DOMAIN,
                                  tol: float = TOL, max_refine: int = MAX_REFINE) -> float:
    """max(f + ω) minus the max of f + ω outside the ε-ball around its argmax."""
    h = add(f, H.omega)
    a, b = map(float, domain)
    return _refine(lambda x: (lambda p: p.top - p.outside)(_peak(h, x, H.epsilon, a, b)),
                   domain, tol, max_refine)


@dataclass(frozen=True)
class FunctionalSector:
    """Location of the max of f + ω; ``on_hyperplane`` when it recurs beyond ε."""

    argmax: float
    on_hyperplane: bool
    ties: tuple = field(default_factory=tuple)

    def contains(self, x: float, epsilon: float) -> bool:
        """f lies in the open sector S^x iff the argmax is within ε of x."""
        return not self.on_hyperplane and abs(self.argmax - x) <= epsilon


def functional_sector(f: Callable, H: FunctionalHyperplane, domain=DOMAIN,
                      tol: float = TOL, max_refine: int = MAX_REFINE) -> FunctionalSector:
    """Argmax of f + ω (leftmost on ties), flagged when f lies on H_{ω,ε}."""
    h = add(f, H.omega)
    a, b = map(float, domain)
    last = []

    def estimate(x):
        p = _peak(h, x, H.epsilon, a, b)
        last.append(p)
        return p.top - p.outside

    gap = _refine(estimate, domain, tol, max_refine)
    p = last[-1]
    if gap < tol:
        return FunctionalSector(p.argmax, True, (p.argmax, p.outside_at))
    return FunctionalSector(p.argmax, False)


# --------------------------------------------------------------------------
# training on sampled functions


@dataclass(frozen=True)
class FunctionalModel:
    model: TrainedModel
    grid: np.ndarray

    def predict(self, f: Callable):
        vals = np.asarray(f(self.grid), dtype=float)
        return predict(self.model, normalize(vals))


def _shared_grid(samples, epsilon):
    grid = samples[0].grid
    for s in samples[1:]:
        if s.grid.shape != grid.shape or not np.array_equal(s.grid, grid):
            raise ValueError("all samples must share one grid")
    if np.min(np.diff(grid)) <= epsilon:
        raise ValueError(f"grid spacing must exceed epsilon = {epsilon}")
    return grid


def alg1_train(samples, labels, epsilon: float) -> FunctionalModel:
    """Train a tropical SVM on functions sampled on a common ε-separated grid.

    Each sample becomes the torus point of its value vector.  The hard-margin
    trainer is used when the data are separable; otherwise the heuristic
    trainer runs with the training set doubling as validation set.
    """
    samples = list(samples)
    if not samples:
        raise ValueError("no samples")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    grid = _shared_grid(samples, epsilon)
    data = LabeledDataset(np.array([s.values for s in samples]), tuple(labels))
    try:
        model = train_hard(data)
    except InseparableError:
        if len(data.classes) != 2:
            raise
        model = train_heuristic(data, data)
    return FunctionalModel(model, grid)


# --------------------------------------------------------------------------
# CSV: first column abscissa, then one column per function


def write_grid_functions(path, functions: dict) -> None:
    names = list(functions)
    if not names:
        raise ValueError("nothing to write")
    grid = functions[names[0]].grid
    for n in names:
        if not np.array_equal(functions[n].grid, grid):
            raise ValueError("functions must share one grid")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x"] + names)
        for k, x in enumerate(grid):
            w.writerow([format(x, ".17g")] + [format(functions[n].values[k], ".17g") for n in names])


def read_grid_functions(path) -> dict:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows[0]) < 2:
        raise ValueError(f"{path}: expected a header with an abscissa and at least one function")
    names = rows[0][1:]
    try:
        data = np.array([[float(c) for c in r] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise ValueError(f"{path}: non-numeric cell ({exc})") from None
    if data.ndim != 2 or data.shape[1] != len(names) + 1:
        raise ValueError(f"{path}: ragged rows")
    return {n: GridFunction(data[:, 0], data[:, k + 1]) for k, n in enumerate(names)}
