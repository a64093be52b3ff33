"""Dense two-phase simplex for small linear programs with free variables.

Problems have the form ``maximize c·u subject to A u <= b`` with ``u``
unrestricted in sign, except for variables flagged in ``nonneg``.  Free
variables are split as ``u = p - q`` with ``p, q >= 0``.  Pivoting uses the largest reduced cost and falls back to
Bland's rule once a run of degenerate pivots suggests cycling.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-7
_DEGENERATE_RUN = 50


class LPNumericalError(RuntimeError):
    """The simplex lost numerical control; no trustworthy answer exists."""


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    objective: np.ndarray
    A: np.ndarray
    b: np.ndarray
    nonneg: np.ndarray | None = None

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).reshape(-1)
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if c.size < 1:
            raise ValueError("need at least one variable")
        if A.size == 0:
            A = A.reshape(0, c.size)
        if A.ndim != 2 or A.shape[1] != c.size or A.shape[0] != b.size:
            raise ValueError(f"inconsistent shapes: c {c.shape}, A {A.shape}, b {b.shape}")
        for name, arr in (("objective", c), ("A", A), ("b", b)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} has non-finite entries")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        mask = np.zeros(c.size, dtype=bool) if self.nonneg is None else \
            np.asarray(self.nonneg, dtype=bool).reshape(-1)
        if mask.size != c.size:
            raise ValueError("nonneg mask must have one flag per variable")
        object.__setattr__(self, "nonneg", mask)

    @property
    def n_vars(self) -> int:
        return self.objective.size

    @property
    def n_constraints(self) -> int:
        return self.b.size


@dataclass(frozen=True)
class LpSolution:
    status: Status
    point: np.ndarray | None = None
    value: float | None = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Tableau:
    def __init__(self, T: np.ndarray, basis: list[int]):
        self.T = T
        self.basis = basis
        self.bland = False
        self._degenerate = 0

    def pivot(self, row: int, col: int) -> None:
        T = self.T
        T[row] /= T[row, col]
        colvals = T[:, col].copy()
        colvals[row] = 0.0
        nz = np.flatnonzero(colvals)
        T[nz] -= colvals[nz, None] * T[row]
        self.basis[row] = col

    def entering(self, allowed: int) -> int | None:
        obj = self.T[-1, :allowed]
        if self.bland:
            cand = np.flatnonzero(obj < -PIVOT_TOL)
            return int(cand[0]) if cand.size else None
        j = int(np.argmin(obj))
        return j if obj[j] < -PIVOT_TOL else None

    def leaving(self, col: int) -> int | None:
        T = self.T
        colv = T[:-1, col]
        pos = np.flatnonzero(colv > PIVOT_TOL)
        if pos.size == 0:
            return None
        ratios = T[pos, -1] / colv[pos]
        best = ratios.min()
        ties = pos[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
        # lowest basic variable index among ties (Bland)
        row = int(min(ties, key=lambda r: self.basis[r]))
        if best <= PIVOT_TOL:
            self._degenerate += 1
            if self._degenerate > _DEGENERATE_RUN:
                self.bland = True
        else:
            self._degenerate = 0
        return row

    def run(self, allowed: int, max_iter: int) -> bool:
        """Pivot to optimality; return False when the LP is unbounded."""
        for _ in range(max_iter):
            col = self.entering(allowed)
            if col is None:
                return True
            row = self.leaving(col)
            if row is None:
                return False
            self.pivot(row, col)
        raise LPNumericalError(f"simplex did not terminate in {max_iter} pivots")


def solve(lp: LinearProgram, max_iter: int | None = None) -> LpSolution:
    """Solve ``lp``; raises :class:`LPNumericalError` rather than lie."""
    A, b, c = lp.A, lp.b, lp.objective
    r, m = A.shape
    free = np.flatnonzero(~lp.nonneg)
    nf = free.size
    if max_iter is None:
        max_iter = 50 * (r + m + nf) + 1000

    if r == 0:
        if np.any(c[free] != 0) or np.any(c > 0):
            return LpSolution(Status.UNBOUNDED)
        return LpSolution(Status.OPTIMAL, np.zeros(m), 0.0)

    neg = b < 0
    n_art = int(neg.sum())
    n_struct = m + nf + r
    ncols = n_struct + n_art
    T = np.zeros((r + 1, ncols + 1))
    sign = np.where(neg, -1.0, 1.0)
    T[:r, :m] = A * sign[:, None]
    T[:r, m:m + nf] = -A[:, free] * sign[:, None]
    T[:r, m + nf:n_struct] = np.diag(sign)
    T[:r, -1] = b * sign
    basis = [0] * r
    art_rows = np.flatnonzero(neg)
    for k, i in enumerate(art_rows):
        T[i, n_struct + k] = 1.0
        basis[i] = n_struct + k
    for i in np.flatnonzero(~neg):
        basis[i] = m + nf + i
    tab = _Tableau(T, basis)

    if n_art:
        # phase I: maximize -(sum of artificials)
        T[-1, n_struct:ncols] = 1.0
        for i in art_rows:
            T[-1] -= T[i]
        tab.run(ncols, max_iter)
        if T[-1, -1] < -FEAS_TOL * max(1.0, np.abs(b).max()):
            return LpSolution(Status.INFEASIBLE)
        # drive remaining artificials out of the basis
        keep = np.ones(r, dtype=bool)
        for i in range(r):
            if tab.basis[i] >= n_struct:
                cand = np.flatnonzero(np.abs(T[i, :n_struct]) > PIVOT_TOL)
                if cand.size:
                    tab.pivot(i, int(cand[0]))
                else:
                    keep[i] = False
        if not keep.all():
            rows = np.append(np.flatnonzero(keep), r)
            tab.T = T = T[rows]
            tab.basis = [tab.basis[i] for i in np.flatnonzero(keep)]
        T = np.delete(tab.T, np.s_[n_struct:ncols], axis=1)
        tab.T = T
        tab.bland = False
        tab._degenerate = 0

    # phase II objective row: z - c·u = 0
    T = tab.T
    T[-1, :] = 0.0
    T[-1, :m] = -c
    T[-1, m:m + nf] = c[free]
    for i, j in enumerate(tab.basis):
        if T[-1, j] != 0.0:
            T[-1] -= T[-1, j] * T[i]
    if not tab.run(n_struct, max_iter):
        return LpSolution(Status.UNBOUNDED)

    T = tab.T
    x = np.zeros(n_struct)
    for i, j in enumerate(tab.basis):
        x[j] = T[i, -1]
    u = x[:m].copy()
    u[free] -= x[m:m + nf]
    value = float(c @ u)
    slack = A @ u - b
    scale = 1.0 + np.abs(b).max()
    if slack.max(initial=0.0) > FEAS_TOL * scale:
        raise LPNumericalError(
            f"reported optimum violates a constraint by {slack.max():.3g}")
    return LpSolution(Status.OPTIMAL, u, value)
