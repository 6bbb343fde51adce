"""Dense phase-1 simplex for small feasibility problems.

Problems have free variables ``x`` and constraints

    A_eq @ x == b_eq
    lower <= A_ineq @ x <= upper      (either bound may be infinite)

The problem is rewritten in standard form (``x = x+ - x-``, one slack per
finite inequality bound), rows are scaled to unit max-norm, and the sum of
artificial variables is minimised with Bland's smallest-index rule.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FEASIBLE_TOL = 1e-9
INFEASIBLE_TOL = 1e-7
MAX_ITER = 10_000
_PIVOT_TOL = 1e-10
_COST_TOL = 1e-12


class LPError(RuntimeError):
    pass


class AmbiguousFeasibility(LPError):
    """Phase-1 residual fell between the feasible and infeasible thresholds."""


class IterationLimit(LPError):
    pass


@dataclass
class LinearProgram:
    n_vars: int
    A_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    A_ineq: np.ndarray | None = None
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None

    def __post_init__(self):
        n = self.n_vars
        self.A_eq = np.zeros((0, n)) if self.A_eq is None else np.atleast_2d(np.asarray(self.A_eq, float))
        self.b_eq = np.zeros(0) if self.b_eq is None else np.asarray(self.b_eq, float).ravel()
        self.A_ineq = np.zeros((0, n)) if self.A_ineq is None else np.atleast_2d(np.asarray(self.A_ineq, float))
        r = len(self.A_ineq)
        self.lower = np.full(r, -np.inf) if self.lower is None else np.asarray(self.lower, float).ravel()
        self.upper = np.full(r, np.inf) if self.upper is None else np.asarray(self.upper, float).ravel()
        if self.A_eq.shape[1] != n or self.A_ineq.shape[1] != n:
            raise ValueError("constraint matrices must have n_vars columns")
        if len(self.b_eq) != len(self.A_eq):
            raise ValueError("A_eq and b_eq row counts differ")
        if len(self.lower) != r or len(self.upper) != r:
            raise ValueError("inequality bounds do not match A_ineq rows")
        for name in ("A_eq", "b_eq", "A_ineq"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise ValueError(f"{name} has non-finite entries")
        if np.any(np.isnan(self.lower)) or np.any(np.isnan(self.upper)):
            raise ValueError("NaN inequality bound")

    def violation(self, x) -> float:
        """Largest constraint violation of ``x`` in the original units."""
        x = np.asarray(x, float)
        worst = 0.0
        if len(self.A_eq):
            worst = max(worst, float(np.max(np.abs(self.A_eq @ x - self.b_eq))))
        if len(self.A_ineq):
            g = self.A_ineq @ x
            worst = max(worst, float(np.max(self.lower - g, initial=0.0)))
            worst = max(worst, float(np.max(g - self.upper, initial=0.0)))
        return worst


@dataclass
class FeasibilityResult:
    feasible: bool
    point: np.ndarray | None
    residual: float
    iterations: int = 0


def _standard_form(lp: LinearProgram):
    n = lp.n_vars
    rows, rhs, slack_sign = [], [], []
    for a, b in zip(lp.A_eq, lp.b_eq):
        rows.append(a)
        rhs.append(b)
        slack_sign.append(0)
    for a, lo, hi in zip(lp.A_ineq, lp.lower, lp.upper):
        if np.isfinite(lo):
            rows.append(a)
            rhs.append(lo)
            slack_sign.append(-1)
        if np.isfinite(hi):
            rows.append(a)
            rhs.append(hi)
            slack_sign.append(+1)
    m = len(rows)
    n_slack = sum(1 for s in slack_sign if s)
    A = np.zeros((m, 2 * n + n_slack))
    b = np.array(rhs, dtype=float)
    k = 2 * n
    for i, (a, s) in enumerate(zip(rows, slack_sign)):
        A[i, :n] = a
        A[i, n:2 * n] = -a
        if s:
            A[i, k] = s
            k += 1
    return A, b


def solve_feasibility(lp: LinearProgram, max_iter: int = MAX_ITER) -> FeasibilityResult:
    """Decide whether ``lp`` has a feasible point.

    Returns a feasible verdict with a witness point when the phase-1
    optimum is at most ``FEASIBLE_TOL``, and an infeasible verdict when it
    is at least ``INFEASIBLE_TOL``.

    Raises
    ------
    AmbiguousFeasibility
        Residual in the band between the two thresholds, or a feasible
        basis whose point violates the constraints by more than
        ``FEASIBLE_TOL``.
    IterationLimit
        More than ``max_iter`` pivots.
    """
    n = lp.n_vars
    A, b = _standard_form(lp)
    m, ncols = A.shape

    if m == 0:
        return FeasibilityResult(True, np.zeros(n), 0.0)

    scale = np.max(np.abs(A), axis=1)
    empty = scale == 0.0
    if np.any(empty):
        r = float(np.max(np.abs(b[empty])))
        if r > FEASIBLE_TOL:
            return _verdict(lp, None, r, 0)
        A, b, scale = A[~empty], b[~empty], scale[~empty]
        m = len(A)
    A = A / scale[:, None]
    b = b / scale
    neg = b < 0
    A[neg] *= -1
    b[neg] *= -1

    # tableau: [A | I | b], artificial columns ncols..ncols+m-1
    T = np.zeros((m + 1, ncols + m + 1))
    T[:m, :ncols] = A
    T[:m, ncols:ncols + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :ncols] = -A.sum(axis=0)
    T[m, -1] = -b.sum()
    basis = np.arange(ncols, ncols + m)

    it = 0
    while True:
        cost = T[m, :-1]
        candidates = np.flatnonzero(cost < -_COST_TOL)
        if candidates.size == 0:
            break
        if it >= max_iter:
            raise IterationLimit(f"phase-1 simplex exceeded {max_iter} pivots")
        j = candidates[0]
        col = T[:m, j]
        ok = np.flatnonzero(col > _PIVOT_TOL)
        if ok.size == 0:
            # cannot happen for a phase-1 objective bounded below by zero
            raise LPError("phase-1 objective unbounded; tableau is corrupt")
        ratios = T[ok, -1] / col[ok]
        best = ratios.min()
        ties = ok[ratios <= best + 1e-14 * max(1.0, abs(best))]
        i = ties[np.argmin(basis[ties])]
        T[i] /= T[i, j]
        f = T[:, j].copy()
        f[i] = 0.0
        T -= np.outer(f, T[i])
        basis[i] = j
        it += 1

    residual = max(0.0, -float(T[m, -1]))
    z = np.zeros(ncols + m)
    z[basis] = T[:m, -1]
    x = z[:n] - z[n:2 * n]
    return _verdict(lp, x, residual, it)


def _verdict(lp, x, residual, it) -> FeasibilityResult:
    if residual >= INFEASIBLE_TOL:
        return FeasibilityResult(False, None, residual, it)
    if residual > FEASIBLE_TOL:
        raise AmbiguousFeasibility(
            f"phase-1 residual {residual:.3e} lies between {FEASIBLE_TOL:g} and {INFEASIBLE_TOL:g}"
        )
    viol = lp.violation(x)
    if viol > FEASIBLE_TOL:
        raise AmbiguousFeasibility(
            f"phase-1 point violates constraints by {viol:.3e} (tol {FEASIBLE_TOL:g})"
        )
    return FeasibilityResult(True, x, residual, it)
