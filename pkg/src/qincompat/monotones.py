"""Scalar quantifiers: convex monotone families, coherence measures, subentropy.

The monotone families are sums of a convex function over the rows of an
overlap matrix; the homogeneous subset serves the column-stochastic preorder.
Coherence averages over the flat simplex measure come in an analytic and a
Monte Carlo flavor that cross-validate each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Basis, DensityState, OverlapMatrix, check_probability_vector, dephase, overlap_matrix
from .errors import DimensionMismatchError
from .sampling import rng_from_seed

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class ConvexFunctional:
    """Named evaluator over probability-like row vectors."""

    name: str
    fn: Callable[[np.ndarray], float]
    convex: bool = True
    homogeneous: bool = False

    def __call__(self, x) -> float:
        return float(self.fn(np.asarray(x, dtype=float)))


def _neg_shannon(x: np.ndarray) -> float:
    x = x[x > 0]
    return float((x * np.log2(x)).sum())


def builtin_functionals(d: int, seed: int = 0, n_linear: int = 6) -> list[ConvexFunctional]:
    """Standard library of convex monotones, including homogeneous ones."""
    rng = rng_from_seed(seed)
    linear = rng.normal(size=(n_linear, d))
    funs = [
        ConvexFunctional("neg_shannon_entropy", _neg_shannon),
        ConvexFunctional("power_sum_1.5", lambda x: float((np.abs(x) ** 1.5).sum())),
        ConvexFunctional("power_sum_2", lambda x: float((x**2).sum())),
        ConvexFunctional("power_sum_3", lambda x: float((np.abs(x) ** 3).sum())),
        ConvexFunctional("max_component", lambda x: float(x.max()), homogeneous=True),
        ConvexFunctional("euclidean_norm", lambda x: float(np.linalg.norm(x)), homogeneous=True),
        ConvexFunctional(
            "max_random_linear", lambda x, a=linear: float((a @ x).max()), homogeneous=True
        ),
    ]
    return funs


def f_phi(x: OverlapMatrix, phi: ConvexFunctional) -> float:
    """Σ_i φ(row_i(X)), a compatibility monotone for convex φ."""
    if not phi.convex:
        raise ValueError(f"functional {phi.name!r} is not flagged convex")
    return float(sum(phi(row) for row in x.x))


def g_psi(x: OverlapMatrix, psi: ConvexFunctional) -> float:
    """f_phi restricted to homogeneous functionals (column-stochastic preorder)."""
    if not psi.homogeneous:
        raise ValueError(f"functional {psi.name!r} is not homogeneous")
    return f_phi(x, psi)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Spectral entropy in bits."""
    w = np.linalg.eigvalsh(np.asarray(rho))
    w = np.clip(w.real, 0.0, None)
    w = w[w > 1e-15]
    return float(-(w * np.log2(w)).sum())


def rel_entropy_coherence(state: DensityState, b: Basis) -> float:
    """S(dephase(ρ, b)) - S(ρ) in bits; zero iff ρ is diagonal in b."""
    if state.dim != b.dim:
        raise DimensionMismatchError(f"state dim {state.dim}, basis dim {b.dim}")
    out = von_neumann_entropy(dephase(state, b).rho) - von_neumann_entropy(state.rho)
    return max(out, 0.0)


def two_coherence(state: DensityState, b: Basis) -> float:
    """Σ_{i≠j} |ρ_ij|² with ρ expressed in basis b."""
    if state.dim != b.dim:
        raise DimensionMismatchError(f"state dim {state.dim}, basis dim {b.dim}")
    in_b = b.u.conj().T @ state.rho @ b.u
    off = in_b - np.diag(np.diag(in_b))
    return float((np.abs(off) ** 2).sum())


def _subentropy_raw(p: np.ndarray) -> float:
    d = len(p)
    total = 0.0
    for k in range(d):
        pk = p[k]
        if pk <= 0.0:
            continue
        den = 1.0
        for j in range(d):
            if j != k:
                den *= pk - p[j]
        total -= pk**d / den * math.log2(pk)
    return total


def _degenerate_clusters(p: np.ndarray, order: np.ndarray, deg_tol: float) -> list[list[int]]:
    """Chains of nonzero components whose consecutive sorted gaps are < deg_tol."""
    clusters = []
    current = [order[0]]
    for a, b in zip(order[:-1], order[1:]):
        if p[b] - p[a] < deg_tol:
            current.append(b)
        else:
            clusters.append(current)
            current = [b]
    clusters.append(current)
    return [c for c in clusters if len(c) > 1 and p[c[-1]] > 0.0]


def subentropy(p, deg_tol: float = 1e-6) -> float:
    """Jozsa-Robb-Wootters subentropy of a probability vector, in bits.

    Near-degenerate components make the closed-form expression singular; each
    degenerate cluster is spread symmetrically around its values with a small
    zero-sum ramp, evaluated in both directions and Richardson-extrapolated in
    the ramp width, which removes the first- and second-order split errors.
    """
    p = check_probability_vector(np.asarray(p, dtype=float), name="subentropy.p")
    p = np.clip(p, 0.0, None)
    d = len(p)
    if d == 1:
        return 0.0
    order = np.argsort(p, kind="stable")
    clusters = _degenerate_clusters(p, order, deg_tol)
    if not clusters:
        return _subentropy_raw(p)

    eps = np.finfo(float).eps

    def ramped(scale: float) -> float:
        ramp = np.zeros(d)
        for c in clusters:
            # spacing balancing split bias against roundoff in the denominators
            width = 10.0 * eps ** (1.0 / (len(c) + 1))
            width = min(width * scale, p[c[0]] / (2.0 * len(c)) if p[c[0]] > 0 else width)
            offs = (np.arange(len(c)) - (len(c) - 1) / 2.0) * width
            for i, o in zip(c, offs):
                ramp[i] = o
        plus = np.clip(p + ramp, 0.0, None)
        minus = np.clip(p - ramp, 0.0, None)
        return 0.5 * (_subentropy_raw(plus / plus.sum()) + _subentropy_raw(minus / minus.sum()))

    return (4.0 * ramped(0.5) - ramped(1.0)) / 3.0


REL_ENTROPY = "rel-entropy"
TWO_COHERENCE = "two-coherence"


@dataclass(frozen=True)
class CoherenceAverage:
    value: float
    stderr: float | None = None


def two_coherence_row_functional(x: OverlapMatrix) -> float:
    """Σ_i φ(row_i) with φ(p) = Σ_j (1/d - p_j²), i.e. n_rows - Σ_ij X_ij²."""
    return float(x.x.shape[0] - (x.x**2).sum())


def two_coherence_kappa(d: int) -> float:
    """Flat-simplex proportionality constant between the average and d - ΣX²."""
    return 1.0 / (d * (d + 1))


def coherence_average(
    b: Basis,
    b0: Basis,
    kind: str = REL_ENTROPY,
    method: str = "analytic",
    n: int = 100_000,
    seed: int = 0,
) -> CoherenceAverage:
    """Average coherence of b-measurements over diagonal states of b0.

    The measure is the flat Dirichlet distribution on the simplex of diagonal
    states.  Under it the relative-entropy average equals
    (1/d) Σ_i subentropy(row_i(X)) and the 2-coherence average equals
    (d - Σ_ij X_ij²) / (d (d+1)); the Monte Carlo method estimates the same
    integrals directly and returns a standard error.
    """
    if b.dim != b0.dim:
        raise DimensionMismatchError(f"dims differ: {b.dim} vs {b0.dim}")
    if kind not in (REL_ENTROPY, TWO_COHERENCE):
        raise ValueError(f"unknown coherence kind {kind!r}")
    d = b.dim
    x = overlap_matrix(b, b0).x
    if method == "analytic":
        if kind == REL_ENTROPY:
            return CoherenceAverage(value=sum(subentropy(row) for row in x) / d)
        return CoherenceAverage(value=two_coherence_kappa(d) * (d - (x**2).sum()))
    if method != "montecarlo":
        raise ValueError(f"unknown method {method!r}")
    if n < 100:
        raise ValueError("Monte Carlo needs at least 100 samples")
    rng = rng_from_seed(seed)
    samples = rng.dirichlet(np.ones(d), size=n)
    pushed = samples @ x.T
    if kind == REL_ENTROPY:

        def ent(mat):
            clipped = np.clip(mat, 1e-300, None)
            return -(clipped * np.log2(clipped)).sum(axis=1)

        vals = ent(pushed) - ent(samples)
    else:
        vals = (samples**2).sum(axis=1) - (pushed**2).sum(axis=1)
    return CoherenceAverage(value=float(vals.mean()), stderr=float(vals.std(ddof=1) / np.sqrt(n)))
