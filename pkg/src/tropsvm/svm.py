"""Hard-margin and heuristic tropical SVMs.

Training works one sector assignment at a time.  Once every label is pinned
to a coordinate, "x lies in its label's open sector with margin z" is the
set of difference constraints

    z + (x_j + ω_j) - (x_i + ω_i) <= 0      for all j != i,

so the best margin for that assignment is a linear program in (z, ω).  The
winner over all injective assignments is the trained classifier.

Coordinates nobody is assigned to only ever appear as upper bounds on their
own ω_j, and lowering ω_j satisfies those.  The margin for an assignment is
therefore decided by the assigned coordinates alone; training solves the
small LP over those and fills in the rest with a minimum-norm LP at the end.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from .lp import LinearProgram, LPNumericalError, Status, solve
from .tropical_core import ATOL, _as_vector, normalize_rows

log = logging.getLogger(__name__)

TIE_POLICY = "lowest-index"
MARGIN_TOL = 1e-9


class InseparableError(ValueError):
    """No tropical hyperplane puts every training point in its label's sector."""


@dataclass(frozen=True)
class LabeledDataset:
    """Points on the torus (rows, normalized on construction) with labels."""

    points: np.ndarray
    labels: tuple

    def __post_init__(self):
        X = normalize_rows(self.points)
        labels = tuple(self.labels)
        if X.shape[0] != len(labels):
            raise ValueError(f"{X.shape[0]} points but {len(labels)} labels")
        if X.shape[0] == 0:
            raise ValueError("empty dataset")
        X.setflags(write=False)
        object.__setattr__(self, "points", X)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def classes(self) -> tuple:
        uniq = set(self.labels)
        try:
            return tuple(sorted(uniq))
        except TypeError:
            return tuple(sorted(uniq, key=repr))

    def mask(self, label) -> np.ndarray:
        return np.array([lab == label for lab in self.labels])

    def subset(self, keep) -> "LabeledDataset":
        keep = np.asarray(keep)
        keep = np.flatnonzero(keep) if keep.dtype == bool else keep.astype(int)
        return LabeledDataset(self.points[keep], tuple(self.labels[i] for i in keep))


@dataclass(frozen=True)
class TrainedModel:
    """Normal vector, label -> coordinate map (0-based), and the achieved margin."""

    omega: np.ndarray
    assignment: dict
    margin: float
    tie_policy: str = TIE_POLICY
    _order: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        w = _as_vector(self.omega, "omega")
        w = w - w[-1]
        w.setflags(write=False)
        object.__setattr__(self, "omega", w)
        coords = list(self.assignment.values())
        if len(set(coords)) != len(coords):
            raise ValueError("sector assignment must be injective")
        if any(not 0 <= c < w.size for c in coords):
            raise ValueError("assignment index out of range")
        if self.tie_policy != TIE_POLICY:
            raise ValueError(f"unsupported tie policy {self.tie_policy!r}")
        order = tuple(sorted(self.assignment.items(), key=lambda kv: kv[1]))
        object.__setattr__(self, "_order", order)

    @property
    def dim(self) -> int:
        return self.omega.size

    def predict(self, x):
        return predict(self, x)


def _targets(data: LabeledDataset, asg: dict) -> np.ndarray:
    missing = set(data.labels) - set(asg)
    if missing:
        raise ValueError(f"assignment does not cover labels {sorted(map(str, missing))}")
    t = np.array([asg[lab] for lab in data.labels], dtype=int)
    if t.size and (t.min() < 0 or t.max() >= data.dim):
        raise ValueError("assignment index out of range")
    return t


def _margin_rows(X, targets, coords, aggregate):
    """Constraint data (i, j, x_i - x_j) for the sector LP restricted to ``coords``."""
    rows = []
    for i in np.unique(targets):
        Xi = X[targets == i]
        others = [j for j in coords if j != i]
        if not others:
            continue
        gaps = Xi[:, [i]] - Xi[:, others]          # (points, others)
        if aggregate:
            gaps = gaps.min(axis=0, keepdims=True)
        for g in gaps:
            rows.extend(zip(itertools.repeat(i), others, g))
    return rows


def _sector_lp(X, targets, coords, aggregate=True) -> tuple[LinearProgram, list]:
    """LP over (z, ω_c for c in coords except the last), ω_{coords[-1]} = 0."""
    coords = list(coords)
    var = {c: k + 1 for k, c in enumerate(coords[:-1])}
    rows = _margin_rows(X, targets, coords, aggregate)
    A = np.zeros((len(rows), 1 + len(var)))
    b = np.empty(len(rows))
    for r, (i, j, gap) in enumerate(rows):
        A[r, 0] = 1.0
        if j in var:
            A[r, var[j]] += 1.0
        if i in var:
            A[r, var[i]] -= 1.0
        b[r] = gap
    c = np.zeros(1 + len(var))
    c[0] = 1.0
    return LinearProgram(c, A, b), coords


def build_lp(data: LabeledDataset, asg: dict, aggregate: bool = False) -> LinearProgram:
    """Margin LP for a fixed sector assignment.

    Variables are ``(z, ω_1, ..., ω_{d-1})`` with the last coordinate of ω
    pinned at 0; the objective is to maximize z.  With ``aggregate`` only the
    tightest constraint per (assigned coordinate, other coordinate) pair is
    kept, which leaves the feasible set unchanged.
    """
    t = _targets(data, asg)
    lp, _ = _sector_lp(data.points, t, range(data.dim), aggregate)
    return lp


def _solve_margin(X, targets, coords) -> float:
    lp, _ = _sector_lp(X, targets, coords)
    sol = solve(lp)
    if sol.status is Status.UNBOUNDED:
        return np.inf
    if sol.status is Status.INFEASIBLE:
        # z is free, so the system is always feasible
        raise LPNumericalError("margin LP reported infeasible")
    return sol.value


def _gap_matrix(X, targets, d):
    """gap[c, j] = min over points targeted at c of x_c - x_j (inf if none)."""
    gap = np.full((d, d), np.inf)
    for c in np.unique(targets):
        Xc = X[targets == c]
        gap[c] = (Xc[:, [c]] - Xc).min(axis=0)
    return gap


def min_norm_omega(X, targets, z: float) -> np.ndarray:
    """Smallest max|ω_i| among normal vectors achieving margin ``z``.

    max|ω_i| stands in for d_tr(ω, 0); both are minimized at the same point
    on the symmetric instances we check against, and the sup-norm keeps the
    problem a plain LP.

    A free coordinate j only has to satisfy ω_j <= ω_c - z + gap[c, j] for
    every assigned c, so the LP runs over the assigned coordinates and the
    bound t; free coordinates are then set to the admissible value nearest 0.
    """
    d = X.shape[1]
    gap = _gap_matrix(X, targets, d)
    assigned = sorted(int(c) for c in np.unique(targets))
    for z_fix in (z, z - MARGIN_TOL * (1.0 + abs(z))):
        sol = _min_norm_lp(gap, assigned, d, z_fix)
        if sol.optimal:
            break
    else:
        raise LPNumericalError(f"minimum-norm LP ended {sol.status.value}")
    omega = np.zeros(d)
    var = [c for c in assigned if c != d - 1]
    omega[var] = sol.point[:-1]
    free = [j for j in range(d) if j not in assigned]
    if free:
        upper = (omega[assigned, None] - z_fix + gap[assigned][:, free]).min(axis=0)
        omega[free] = np.minimum(0.0, upper)
        omega[d - 1] = 0.0
    return omega


def _min_norm_lp(gap, assigned, d, z_fix):
    var = {c: k for k, c in enumerate(c for c in assigned if c != d - 1)}
    nv = len(var) + 1                        # assigned ω's (last pinned) and t
    free = [j for j in range(d) if j not in assigned]
    A, b = [], []

    def row(coefs, rhs):
        # coefs: (coordinate or "t", weight); the pinned coordinate drops out
        a = np.zeros(nv)
        for c, v in coefs:
            if c == "t":
                a[-1] += v
            elif c in var:
                a[var[c]] += v
        A.append(a)
        b.append(rhs)

    for i in assigned:
        for j in assigned:
            if i != j and np.isfinite(gap[i, j]):
                # z + ω_j - ω_i <= gap[i, j]
                row([(j, 1.0), (i, -1.0)], gap[i, j] - z_fix)
        others = [j for j in free if j != d - 1]
        if others:
            # ω_i + t >= z - gap[i, j] keeps ω_j >= -t feasible
            worst = max(z_fix - gap[i, j] for j in others)
            row([(i, -1.0), ("t", -1.0)], -worst)
        if d - 1 in free:
            # the pinned coordinate ω_{d-1} = 0 must itself be admissible
            row([(i, -1.0)], gap[i, d - 1] - z_fix)
    for c in var:
        row([(c, 1.0), ("t", -1.0)], 0.0)
        row([(c, -1.0), ("t", -1.0)], 0.0)
    c = np.zeros(nv)
    c[-1] = -1.0
    return solve(LinearProgram(c, np.array(A).reshape(-1, nv), np.array(b)))


def _finish(data: LabeledDataset, asg: dict, z: float) -> TrainedModel:
    t = _targets(data, asg)
    omega = min_norm_omega(data.points, t, z)
    margin = float(_assignment_margin(data.points, t, omega).min())
    return TrainedModel(omega, dict(asg), margin)


def _assignment_margin(X, targets, omega) -> np.ndarray:
    """Per point: (x+ω)_target - max over other coordinates."""
    S = X + omega
    own = S[np.arange(len(S)), targets]
    S = S.copy()
    S[np.arange(len(S)), targets] = -np.inf
    return own - S.max(axis=1)


def train_hard(data: LabeledDataset) -> TrainedModel:
    """Maximum-margin tropical SVM over every injective sector assignment.

    Raises :class:`InseparableError` when no assignment yields a positive
    margin.  Ties between assignments go to the first one in enumeration
    order (itertools.permutations over coordinates, labels in sorted order).
    """
    labels = data.classes
    q, d = len(labels), data.dim
    if q < 2:
        raise ValueError("training needs at least two distinct labels")
    if q > d:
        raise ValueError(f"{q} labels cannot fit into {d} sectors")
    best_z, best_asg = -np.inf, None
    for coords in itertools.permutations(range(d), q):
        asg = dict(zip(labels, coords))
        t = _targets(data, asg)
        z = _solve_margin(data.points, t, sorted(coords))
        if z > best_z + MARGIN_TOL:
            best_z, best_asg = z, asg
    if not best_z > MARGIN_TOL:
        raise InseparableError(f"best margin over all assignments is {best_z:.6g}")
    return _finish(data, best_asg, best_z)


def predict_many(model: TrainedModel, X) -> list:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != model.dim:
        raise ValueError(f"dimension mismatch: model {model.dim}, points {X.shape[1]}")
    coords = np.array([c for _, c in model._order])
    S = X[:, coords] + model.omega[coords]
    S -= S.max(axis=1, keepdims=True)
    # first coordinate (in increasing index order) within tolerance of the max
    winner = np.argmax(S >= -ATOL, axis=1)
    return [model._order[k][0] for k in winner]


def predict(model: TrainedModel, x):
    """Label whose coordinate maximizes x + ω among the assigned coordinates.

    Ties go to the lowest assigned coordinate index.
    """
    x = _as_vector(x)
    return predict_many(model, x[None, :])[0]


def accuracy(model: TrainedModel, data: LabeledDataset) -> float:
    pred = predict_many(model, data.points)
    return float(np.mean([p == y for p, y in zip(pred, data.labels)]))


def margin_function(data: LabeledDataset, omega) -> float:
    """Margin M(ω) of a normal vector on a labeled sample.

    Positive values are the minimum distance to H_ω when every label owns its
    own sector.  Otherwise the value is the negative of the worst sector
    violation under the most favourable label-to-sector assignment, and 0
    exactly on the verge of misclassification.
    """
    omega = _as_vector(omega, "omega")
    X = data.points
    if X.shape[1] != omega.size:
        raise ValueError(f"dimension mismatch: {X.shape[1]} vs {omega.size}")
    S = X + omega
    top2 = np.sort(S, axis=1)[:, -2:]
    is_max = S >= top2[:, [1]]
    # g[p, i] = s_i - max_{j != i} s_j
    g = np.where(is_max, top2[:, [1]] - top2[:, [0]], S - top2[:, [1]])
    labels = data.classes
    h = np.stack([g[data.mask(lab)].min(axis=0) for lab in labels])
    best = -np.inf
    for coords in itertools.permutations(range(X.shape[1]), len(labels)):
        best = max(best, h[np.arange(len(labels)), coords].min())
    return float(best)


# --------------------------------------------------------------------------
# heuristic (error tolerant) binary trainer


def _pair_scores(data: LabeledDataset, a, b) -> np.ndarray:
    """Fisher-style separation of x_i - x_k between the two classes, all (i, k)."""
    XA, XB = data.points[data.mask(a)], data.points[data.mask(b)]
    mu = XA.mean(axis=0) - XB.mean(axis=0)
    gap = mu[:, None] - mu[None, :]

    def diff_var(Xc):
        if len(Xc) < 2:
            return np.zeros((Xc.shape[1], Xc.shape[1]))
        C = np.cov(Xc, rowvar=False)
        v = np.diag(C)
        return v[:, None] + v[None, :] - 2 * C

    score = gap / np.sqrt(diff_var(XA) + diff_var(XB) + 1e-12)
    np.fill_diagonal(score, -np.inf)
    return score


def _candidate_pairs(data, a, b, max_pairs):
    d = data.dim
    pairs = [(i, k) for i in range(d) for k in range(d) if i != k]
    if max_pairs is None or len(pairs) <= max_pairs:
        return pairs
    score = _pair_scores(data, a, b)
    flat = np.argsort(-score, axis=None, kind="stable")[:max_pairs]
    return sorted(tuple(int(v) for v in np.unravel_index(f, score.shape)) for f in flat)


def _slack_lp(r_a, r_b, C):
    """max z - (C/n) Σ s  s.t.  z - w - s_p <= r_p (A),  z + w - s_q <= -r_q (B).

    ``r`` is x_i - x_k for the candidate pair and ``w`` = ω_i - ω_k.  The
    margin is held above a small positive floor so that the points left with
    zero slack are strictly separated.
    """
    na, nb = len(r_a), len(r_b)
    n = na + nb
    floor = 1e-6 * (1.0 + max(np.abs(r_a).max(), np.abs(r_b).max()))
    A = np.zeros((n + 1, 2 + n))
    A[:n, 0] = 1.0
    A[:na, 1] = -1.0
    A[na:n, 1] = 1.0
    A[:n, 2:] = -np.eye(n)
    A[n, 0] = -1.0
    b = np.concatenate([r_a, -r_b, [-floor]])
    c = np.concatenate([[1.0, 0.0], np.full(n, -C / n)])
    nonneg = np.r_[False, False, np.ones(n, dtype=bool)]
    return LinearProgram(c, A, b, nonneg)


def _fit_pair(data, a, b, i, k, C):
    """Hard fit on pair (i, k), or slack fit + outlier removal + hard refit."""
    ma, mb = data.mask(a), data.mask(b)
    targets = np.where(ma, i, k)
    z = _solve_margin(data.points, targets, sorted((i, k)))
    if z > MARGIN_TOL:
        return data, z
    r = data.points[:, i] - data.points[:, k]
    sol = solve(_slack_lp(r[ma], r[mb], C))
    if not sol.optimal:
        return None
    slack = np.empty(data.n)
    slack[np.flatnonzero(ma)] = sol.point[2:2 + ma.sum()]
    slack[np.flatnonzero(mb)] = sol.point[2 + ma.sum():]
    keep = slack <= MARGIN_TOL * (1.0 + np.abs(r).max())
    if not (keep & ma).any() or not (keep & mb).any():
        return None
    kept = data.subset(keep)
    z = _solve_margin(kept.points, targets[keep], sorted((i, k)))
    if not z > MARGIN_TOL:
        return None
    return kept, z


def train_heuristic(train: LabeledDataset, validation: LabeledDataset,
                    C: float = 5.0, max_pairs: int | None = 16) -> TrainedModel:
    """Error-tolerant binary tropical SVM with validation-based pair selection.

    For each ordered pair of sectors the hard-margin LP is tried first; if it
    is not separable, a slack-relaxed LP flags the offending points, which are
    dropped before a hard refit.  Candidates are ranked by validation
    accuracy, then margin, then the pair itself.  When there are more than
    ``max_pairs`` ordered pairs only the best-separated pairs (by a
    Fisher-type score on x_i - x_k) are fitted.
    """
    if validation.n == 0:
        raise ValueError("validation set is empty")
    labels = train.classes
    if len(labels) != 2:
        raise ValueError("the heuristic trainer is binary")
    if validation.dim != train.dim:
        raise ValueError("train and validation dimensions differ")
    a, b = labels
    best_key, best = None, None
    for i, k in _candidate_pairs(train, a, b, max_pairs):
        fit = _fit_pair(train, a, b, i, k, C)
        if fit is None:
            continue
        kept, z = fit
        asg = {a: i, b: k}
        t = _targets(kept, asg)
        # provisional ω: only ω_i - ω_k matters for prediction on this pair
        w = np.zeros(train.dim)
        w[i] = _pair_offset(kept.points, t, i, k, z)
        acc = accuracy(TrainedModel(w, asg, z), validation)
        key = (acc, z, (-i, -k))
        if best_key is None or key > best_key:
            best_key, best = key, (kept, asg, z)
    if best is None:
        raise InseparableError("no sector pair produced a usable classifier")
    kept, asg, z = best
    log.debug("heuristic picked %s with validation accuracy %.3f", asg, best_key[0])
    return _finish(kept, asg, z)


def _pair_offset(X, targets, i, k, z):
    """ω_i - ω_k centring the hyperplane between the two support values."""
    r = X[:, i] - X[:, k]
    lo = r[targets == i].min()
    hi = r[targets == k].max()
    return -(lo + hi) / 2.0


# --------------------------------------------------------------------------
# noisy two-point instance: closed-form ω_2 - ω_1


def noisy_instance(N: int, d: int, s: float = 5.0, rng=None):
    """Two classes around (s, -s, 0, ...) and (-s, s, 0, ...) with N(0,1) noise.

    Returns ``(dataset, xi, eta)`` where ``xi``/``eta`` are the raw noise arrays
    of the first and second class.
    """
    rng = np.random.default_rng(rng)
    if d < 3:
        raise ValueError("need d >= 3")
    m = np.zeros(d)
    m[0], m[1] = s, -s
    xi = rng.standard_normal((N, d))
    eta = rng.standard_normal((N, d))
    X = np.vstack([m + xi, -m + eta])
    data = LabeledDataset(X, ("A",) * N + ("B",) * N)
    return data, xi, eta


def predicted_shift(xi, eta) -> float:
    """ω_2 - ω_1 predicted from the support vectors of the two classes."""
    xi, eta = np.asarray(xi, dtype=float), np.asarray(eta, dtype=float)
    i_star = np.argmin(xi[:, 0] - xi[:, 1])
    j_star = np.argmin(eta[:, 1] - eta[:, 0])
    return float((xi[i_star, 0] - xi[i_star, 1] + eta[j_star, 0] - eta[j_star, 1]) / 2)


class SectorMismatchError(ValueError):
    """The classifier did not put the two classes into sectors 1 and 2."""


def support_vector_shift(model: TrainedModel, xi, eta) -> tuple[float, float]:
    """(trained ω_2 - ω_1, predicted ω_2 - ω_1) for a model fit on a noisy instance."""
    if model.assignment != {"A": 0, "B": 1}:
        raise SectorMismatchError(f"classifier used sectors {model.assignment}")
    return float(model.omega[1] - model.omega[0]), predicted_shift(xi, eta)
