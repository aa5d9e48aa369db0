"""Dense two-phase simplex for equality-constrained feasibility problems.

Solves  "does there exist x >= 0 with A x = b?"  and returns either a primal
point or a Farkas certificate y with yᵀA <= 0 and yᵀb > 0.  Bland's rule
guarantees termination; both answers are re-verified numerically before they
are returned, and anything in between is reported as indeterminate rather
than being rounded to a decision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndeterminateError

TAU_LP = 1e-8
GAMMA_LP = 1e-8

_PIVOT_EPS = 1e-10
_MAX_ITER = 100_000

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LinearProgram:
    """min cᵀx (optional) subject to A_eq x = b_eq, x >= 0."""

    a_eq: np.ndarray
    b_eq: np.ndarray
    objective: np.ndarray | None = None

    def __post_init__(self):
        a = np.asarray(self.a_eq, dtype=float)
        b = np.asarray(self.b_eq, dtype=float)
        if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.shape[0]:
            raise ValueError(f"inconsistent system shapes {a.shape} / {b.shape}")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("non-finite constraint data")
        object.__setattr__(self, "a_eq", a)
        object.__setattr__(self, "b_eq", b)
        if self.objective is not None:
            c = np.asarray(self.objective, dtype=float)
            if c.shape != (a.shape[1],):
                raise ValueError("objective length does not match variable count")
            object.__setattr__(self, "objective", c)

    @property
    def n_vars(self) -> int:
        return self.a_eq.shape[1]


@dataclass(frozen=True)
class FeasibilityResult:
    status: str
    x: np.ndarray | None = None
    certificate: np.ndarray | None = None

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


def _pivot(tab: np.ndarray, obj: np.ndarray, row: int, col: int, basis: list[int]):
    tab[row] /= tab[row, col]
    factors = tab[:, col].copy()
    factors[row] = 0.0
    tab -= np.outer(factors, tab[row])
    obj -= obj[col] * tab[row]
    basis[row] = col


def _bland_iterate(tab, obj, basis, allowed, max_iter):
    """Run simplex pivots (min problem) with Bland's rule on allowed columns."""
    for it in range(max_iter):
        enter = -1
        for j in allowed:
            if obj[j] < -_PIVOT_EPS:
                enter = j
                break
        if enter < 0:
            return True
        col = tab[:, enter]
        rhs = tab[:, -1]
        best = None
        for r in range(tab.shape[0]):
            if col[r] > _PIVOT_EPS:
                ratio = rhs[r] / col[r]
                if best is None or ratio < best[0] - 1e-12 or (
                    abs(ratio - best[0]) <= 1e-12 and basis[r] < basis[best[1]]
                ):
                    best = (ratio, r)
        if best is None:
            raise IndeterminateError("unbounded pivot column in simplex")
        _pivot(tab, obj, best[1], enter, basis)
    return False


def solve_feasibility(
    lp: LinearProgram,
    tol: float = TAU_LP,
    gamma: float = GAMMA_LP,
    max_iter: int = _MAX_ITER,
) -> FeasibilityResult:
    """Decide feasibility of the LP; see the module docstring for the contract."""
    a = lp.a_eq
    b = lp.b_eq
    m, n = a.shape

    sgn = np.where(b < 0, -1.0, 1.0)
    tab = np.hstack([a * sgn[:, None], np.eye(m), (b * sgn)[:, None]])
    basis = list(range(n, n + m))
    # phase-1 reduced costs: c = (0,...,0, 1,...,1) minus the basic rows
    obj = np.zeros(n + m + 1)
    obj[n : n + m] = 1.0
    obj -= tab.sum(axis=0)

    done = _bland_iterate(tab, obj, basis, allowed=range(n + m), max_iter=max_iter)
    if not done:
        raise IndeterminateError(f"iteration cap {max_iter} exceeded in phase 1")
    phase1_opt = -obj[-1]

    if phase1_opt <= tol:
        if lp.objective is not None:
            obj2 = np.zeros(n + m + 1)
            obj2[:n] = lp.objective
            for r, bi in enumerate(basis):
                if obj2[bi] != 0.0:
                    obj2 -= obj2[bi] * tab[r]
            done = _bland_iterate(tab, obj2, basis, allowed=range(n), max_iter=max_iter)
            if not done:
                raise IndeterminateError(f"iteration cap {max_iter} exceeded in phase 2")
        x = np.zeros(n)
        for r, bi in enumerate(basis):
            if bi < n:
                x[bi] = tab[r, -1]
        x = np.clip(x, 0.0, None)
        resid = np.abs(a @ x - b).max() if m else 0.0
        if resid > 10 * tol:
            raise IndeterminateError(f"feasible point failed re-verification: residual {resid:.3e}")
        return FeasibilityResult(status=FEASIBLE, x=x)

    if phase1_opt <= 10 * tol:
        raise IndeterminateError(
            f"phase-1 optimum {phase1_opt:.3e} in the near-feasibility band ({tol:.1e}, {10 * tol:.1e}]"
        )

    # Farkas certificate from the phase-1 dual: reduced cost of artificial j is 1 - y_j
    y = (1.0 - obj[n : n + m]) * sgn
    scale = np.abs(y).max()
    if scale <= 0:
        raise IndeterminateError("degenerate Farkas certificate")
    y = y / scale
    along = y @ a if n else np.zeros(0)
    margin = float(y @ b)
    if (n and along.max() > tol) or margin < gamma:
        raise IndeterminateError(
            f"certificate failed re-verification: max yᵀA = {along.max() if n else 0:.3e}, yᵀb = {margin:.3e}"
        )
    return FeasibilityResult(status=INFEASIBLE, certificate=y)
