"""Rényi entropies, entropic uncertainty bounds, and the fluctuation functional.

The fluctuation functional is evaluated exactly: restricted to observables
diagonal in the measured basis, each per-outcome variance is a quadratic form
in the spectrum, so the supremum over unit 2-norm observables is the largest
eigenvalue of a column covariance matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Basis, DensityState, OverlapMatrix, check_probability_vector, measure_distribution, overlap_matrix
from .errors import DimensionMismatchError
from .monotones import von_neumann_entropy


def renyi_entropy(p, alpha: float) -> float:
    """α-Rényi entropy in bits; α = 1 is Shannon, α = ∞ is min-entropy."""
    p = check_probability_vector(np.asarray(p, dtype=float), name="renyi.p")
    p = np.clip(p, 0.0, None)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if alpha == 0:
        return float(np.log2(np.count_nonzero(p > 1e-15)))
    if alpha == 1:
        q = p[p > 0]
        return float(-(q * np.log2(q)).sum())
    if np.isinf(alpha):
        return float(-np.log2(p.max()))
    return float(np.log2((p**alpha).sum()) / (1.0 - alpha))


def mu_bound(x: OverlapMatrix | np.ndarray) -> float:
    """Maassen-Uffink bound -log2(max X_ij) in bits."""
    a = x.x if isinstance(x, OverlapMatrix) else np.asarray(x, dtype=float)
    return float(-np.log2(np.clip(a.max(), 1e-300, 1.0)))


@dataclass(frozen=True)
class UncertaintyReport:
    alpha: float
    beta: float
    entropy_sum: float
    mu_bound: float
    coles_bound: float | None
    q_value: float
    q_bound: float
    mu_satisfied: bool
    coles_satisfied: bool | None


def _column_covariance(col: np.ndarray) -> np.ndarray:
    return np.diag(col) - np.outer(col, col)


def q_exact(b1: Basis, b0: Basis) -> float:
    """Exact worst-case outcome fluctuation of unit-norm observables in b1.

    max over reference outcomes i of the top eigenvalue of
    diag(x^(i)) - x^(i) x^(i)ᵀ with x^(i) the i-th column of X(B1,B0).
    """
    if b1.dim != b0.dim:
        raise DimensionMismatchError(f"dims differ: {b1.dim} vs {b0.dim}")
    x = overlap_matrix(b1, b0).x
    worst = 0.0
    for i in range(x.shape[1]):
        lam = float(np.linalg.eigvalsh(_column_covariance(x[:, i])).max())
        worst = max(worst, lam)
    return worst


def sum_variance_sup(x: OverlapMatrix | np.ndarray) -> float:
    """sup over unit observables of the summed per-outcome variances.

    Intermediate step of the q bound: equals the top eigenvalue of the summed
    column covariances, which coincides with 1 - λ_min(XXᵀ).
    """
    a = x.x if isinstance(x, OverlapMatrix) else np.asarray(x, dtype=float)
    total = sum(_column_covariance(a[:, i]) for i in range(a.shape[1]))
    return float(np.linalg.eigvalsh(total).max())


def q_bound(x: OverlapMatrix | np.ndarray) -> float:
    """Upper bound 1 - λ_min(XXᵀ) on the fluctuation functional."""
    a = x.x if isinstance(x, OverlapMatrix) else np.asarray(x, dtype=float)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("q bound requires a square (bistochastic) overlap matrix")
    lam = float(np.linalg.eigvalsh(a @ a.T).min())
    return float(np.clip(1.0 - lam, 0.0, 1.0))


def check_entropic_bounds(
    state: DensityState,
    b1: Basis,
    b2: Basis,
    alpha: float = 1.0,
    beta: float = 1.0,
    slack: float = 1e-9,
) -> UncertaintyReport:
    """Evaluate S_α + S_β against the Maassen-Uffink (and Coles) bounds.

    Requires α, β >= 1/2 with 1/α + 1/β = 2; the Coles improvement applies at
    α = β = 1 only.  Violation flags indicate implementation bugs, never
    physics.
    """
    inv = (0.0 if np.isinf(alpha) else 1.0 / alpha) + (0.0 if np.isinf(beta) else 1.0 / beta)
    if alpha < 0.5 or beta < 0.5 or abs(inv - 2.0) > 1e-9:
        raise ValueError(f"invalid Rényi pair ({alpha}, {beta}): need α,β >= 1/2 and 1/α + 1/β = 2")
    p1 = measure_distribution(state, b1)
    p2 = measure_distribution(state, b2)
    lhs = renyi_entropy(p1, alpha) + renyi_entropy(p2, beta)
    x12 = overlap_matrix(b2, b1)
    mu = mu_bound(x12)
    shannon_case = alpha == 1.0 and beta == 1.0
    coles = von_neumann_entropy(state.rho) + mu if shannon_case else None
    return UncertaintyReport(
        alpha=alpha,
        beta=beta,
        entropy_sum=lhs,
        mu_bound=mu,
        coles_bound=coles,
        q_value=q_exact(b2, b1),
        q_bound=q_bound(x12),
        mu_satisfied=bool(lhs >= mu - slack),
        coles_satisfied=bool(lhs >= coles - slack) if shannon_case else None,
    )
