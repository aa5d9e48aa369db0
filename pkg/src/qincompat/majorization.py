"""Majorization decisions, post-processing matrices, witnesses and T-transforms.

The preorder checks reduce to LP feasibility over the entries of the
post-processing matrix M.  Infeasible instances are converted into explicit
separating monotones (max-affine functions) assembled from the Farkas
certificate, so every negative answer ships with its own proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import (
    BISTOCHASTIC,
    COLUMN_STOCHASTIC,
    TAU_PROB,
    Basis,
    OverlapMatrix,
    overlap_matrix,
)
from .errors import DecompositionError, DimensionMismatchError, IndeterminateError, InvariantViolationError
from .lp import GAMMA_LP, TAU_LP, LinearProgram, solve_feasibility


@dataclass(frozen=True)
class PiecewiseLinearConvex:
    """max-affine function φ(x) = max_k (<c_k, x> + b_k)."""

    coeffs: np.ndarray  # (n_pieces, d)
    offsets: np.ndarray  # (n_pieces,)
    homogeneous: bool = False

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.coeffs, dtype=float))
        b = np.atleast_1d(np.asarray(self.offsets, dtype=float))
        if c.shape[0] == 0 or c.shape[0] != b.shape[0]:
            raise InvariantViolationError("witness.pieces", f"shapes {c.shape} / {b.shape}")
        if self.homogeneous and np.abs(b).max() > 0:
            raise InvariantViolationError("witness.homogeneous", "nonzero offsets")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "offsets", b)

    def __call__(self, x) -> float:
        return float(np.max(self.coeffs @ np.asarray(x, dtype=float) + self.offsets))

    def row_sum(self, x: np.ndarray) -> float:
        """Σ_i φ(row_i(x)) for a 2-d array of row vectors."""
        return float(np.max(np.asarray(x, float) @ self.coeffs.T + self.offsets, axis=1).sum())


@dataclass(frozen=True)
class MajorizationDecision:
    holds: bool
    m: np.ndarray | None = None
    witness: PiecewiseLinearConvex | None = None


@dataclass(frozen=True)
class TTransform:
    """Convex mix of identity and the (i, j) swap with weight t."""

    i: int
    j: int
    t: float

    def __post_init__(self):
        if not (0 <= self.i < self.j):
            raise InvariantViolationError("ttransform.indices", f"({self.i}, {self.j})")
        if not (-1e-12 <= self.t <= 1 + 1e-12):
            raise InvariantViolationError("ttransform.weight", f"t = {self.t}")
        object.__setattr__(self, "t", float(np.clip(self.t, 0.0, 1.0)))

    def matrix(self, d: int) -> np.ndarray:
        m = np.eye(d)
        m[self.i, self.i] = m[self.j, self.j] = self.t
        m[self.i, self.j] = m[self.j, self.i] = 1.0 - self.t
        return m


def ttransform_product(transforms: list[TTransform], d: int) -> np.ndarray:
    """T_k ⋯ T_1 for transforms listed as (T_1, ..., T_k)."""
    p = np.eye(d)
    for t in transforms:
        p = t.matrix(d) @ p
    return p


def vector_majorizes(p, q, tol: float = TAU_PROB) -> bool:
    """p ≻ q: sorted partial sums of p dominate those of q, equal totals."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise DimensionMismatchError(f"lengths differ: {p.shape} vs {q.shape}")
    if abs(p.sum() - q.sum()) > tol:
        return False
    cp = np.cumsum(np.sort(p)[::-1])
    cq = np.cumsum(np.sort(q)[::-1])
    return bool(np.all(cp >= cq - tol))


def _build_majorization_lp(x1: np.ndarray, x2: np.ndarray, mclass: str) -> LinearProgram:
    """Equalities X2 = M X1 plus stochasticity constraints over vec(M)."""
    n1, d = x1.shape
    n2 = x2.shape[0]
    n_entry = n2 * d
    n_rows = n_entry + n1 + (n2 if mclass == BISTOCHASTIC else 0)
    a = np.zeros((n_rows, n2 * n1))
    b = np.zeros(n_rows)
    for i in range(n2):
        for j in range(d):
            a[i * d + j, i * n1 : (i + 1) * n1] = x1[:, j]
            b[i * d + j] = x2[i, j]
    for k in range(n1):
        a[n_entry + k, k::n1] = 1.0
        b[n_entry + k] = 1.0
    if mclass == BISTOCHASTIC:
        for i in range(n2):
            a[n_entry + n1 + i, i * n1 : (i + 1) * n1] = 1.0
            b[n_entry + n1 + i] = 1.0
    return LinearProgram(a_eq=a, b_eq=b)


def witness_from_certificate(
    certificate: np.ndarray,
    x1: OverlapMatrix,
    x2: OverlapMatrix,
    mclass: str = BISTOCHASTIC,
    gamma: float = GAMMA_LP,
) -> PiecewiseLinearConvex:
    """Separating monotone from a Farkas certificate of the majorization LP.

    The dual values on the entrywise equalities give one affine piece per row
    of M; the row-sum duals become the offsets (zero for the column-stochastic
    class, making the witness homogeneous).  The construction guarantees
    Σφ(rows of X2) - Σφ(rows of X1) >= yᵀb > 0, which is re-checked before
    returning.
    """
    a1, a2 = x1.x, x2.x
    n1, d = a1.shape
    n2 = a2.shape[0]
    y = np.asarray(certificate, dtype=float)
    coeffs = y[: n2 * d].reshape(n2, d)
    if mclass == BISTOCHASTIC:
        offsets = y[n2 * d + n1 :]
        homogeneous = False
    else:
        offsets = np.zeros(n2)
        homogeneous = True
    phi = PiecewiseLinearConvex(coeffs=coeffs, offsets=offsets, homogeneous=homogeneous)
    margin = phi.row_sum(a2) - phi.row_sum(a1)
    if margin < gamma:
        raise IndeterminateError(f"witness failed re-verification: margin {margin:.3e}")
    return phi


def matrix_majorizes(
    x1: OverlapMatrix,
    x2: OverlapMatrix,
    mclass: str = BISTOCHASTIC,
    tol: float = TAU_LP,
    gamma: float = GAMMA_LP,
) -> MajorizationDecision:
    """Decide whether X2 = M X1 for some M in the requested stochasticity class."""
    if mclass not in (BISTOCHASTIC, COLUMN_STOCHASTIC):
        raise ValueError(f"unknown stochasticity class {mclass!r}")
    a1, a2 = x1.x, x2.x
    if a1.shape[1] != a2.shape[1]:
        raise DimensionMismatchError(f"column dimensions differ: {a1.shape[1]} vs {a2.shape[1]}")
    if mclass == BISTOCHASTIC and a1.shape[0] != a2.shape[0]:
        raise DimensionMismatchError("bistochastic comparison needs equal row counts (pad POVMs first)")
    lp = _build_majorization_lp(a1, a2, mclass)
    res = solve_feasibility(lp, tol=tol, gamma=gamma)
    if res.feasible:
        m = res.x.reshape(a2.shape[0], a1.shape[0])
        if np.abs(m @ a1 - a2).max() > 10 * tol:
            raise IndeterminateError("post-processing matrix failed re-verification")
        return MajorizationDecision(holds=True, m=m)
    phi = witness_from_certificate(res.certificate, x1, x2, mclass, gamma=gamma)
    return MajorizationDecision(holds=False, witness=phi)


def qubit_bloch_angle(b1: Basis, b0: Basis) -> float:
    """Acute angle in [0, π/2] between the Bloch-ball lines of two qubit bases."""
    if b1.dim != 2 or b0.dim != 2:
        raise DimensionMismatchError("Bloch angle is defined for d = 2 only")
    a = overlap_matrix(b1, b0).x[0, 0]
    return float(np.arccos(np.clip(abs(2 * a - 1), 0.0, 1.0)))


def unistochastic_lift(t: TTransform, d: int) -> np.ndarray:
    """Real rotation R with |R_kl|² equal to the T-transform matrix."""
    r = np.eye(d)
    c, s = np.sqrt(t.t), np.sqrt(1.0 - t.t)
    r[t.i, t.i] = r[t.j, t.j] = c
    r[t.i, t.j] = -s
    r[t.j, t.i] = s
    return r


# ---------------------------------------------------------------------------
# T-transform decomposition


def _perm_gap(r: np.ndarray) -> float:
    return float((1.0 - r.max(axis=1)).sum())


def _peel_candidates(r: np.ndarray):
    """Single-factor peels r = T_(i,j,t) @ b with b entrywise nonnegative.

    For each pair the mixing parameter is pushed to the boundary where an
    entry of b hits zero; this is the step that undoes a factor of a genuine
    T-transform product.  The swapped variant covers factors with t < 1/2.
    """
    d = r.shape[0]
    out = []
    for i, j in combinations(range(d), 2):
        for swap in (False, True):
            ri, rj = (r[j], r[i]) if swap else (r[i], r[j])
            diff = ri - rj
            smax = np.inf
            for k in range(d):
                if diff[k] < -1e-13:
                    smax = min(smax, ri[k] / -diff[k])
                elif diff[k] > 1e-13:
                    smax = min(smax, rj[k] / diff[k])
            if not np.isfinite(smax) or smax <= 1e-11:
                continue
            bi = ri + smax * diff
            bj = rj - smax * diff
            b = r.copy()
            b[i], b[j] = (bj, bi) if swap else (bi, bj)
            t = (smax + 1.0) / (2.0 * smax + 1.0)
            if swap:
                t = 1.0 - t
            out.append((i, j, t, np.clip(b, 0.0, None)))
    return out


def _permutation_to_swaps(r: np.ndarray, tol: float):
    """Write a (near-)permutation matrix as an ordered product of swaps."""
    d = r.shape[0]
    perm = r.argmax(axis=1)
    if sorted(perm) != list(range(d)):
        return None
    p = np.zeros((d, d))
    p[np.arange(d), perm] = 1.0
    if np.abs(p - r).max() > max(tol, 1e-9):
        return None
    swaps = []
    work = p.copy()
    for i in range(d):
        if work[i, i] != 1.0:
            jrow = int(np.argmax(work[:, i]))
            work[[i, jrow]] = work[[jrow, i]]
            swaps.append(TTransform(min(i, jrow), max(i, jrow), 0.0))
    # collected swaps satisfy p = s_1 s_2 ... s_q in collection order
    return swaps


def _peel_beam(m: np.ndarray, tol: float, beam: int, max_len: int):
    """Beam search over boundary peels; returns leftmost-first factors or None."""
    d = m.shape[0]
    states = [(_perm_gap(m), [], m)]
    for _ in range(max_len):
        finished = [s for s in states if s[0] <= tol]
        for gap, seq, r in sorted(finished, key=lambda s: len(s[1])):
            swaps = _permutation_to_swaps(r, tol)
            if swaps is not None:
                return seq + [(t.i, t.j, t.t) for t in swaps]
        nxt = []
        seen = set()
        for gap, seq, r in states:
            for i, j, t, b in _peel_candidates(r):
                key = tuple(np.round(b, 9).ravel())
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((_perm_gap(b), seq + [(i, j, t)], b))
        if not nxt:
            break
        nxt.sort(key=lambda s: s[0])
        states = nxt[:beam]
    return None


def _fit_sequence(m: np.ndarray, length: int, rng: np.random.Generator, sweeps: int = 60):
    """Alternating least-squares fit of a fixed-length T-transform product."""
    d = m.shape[0]
    pairs = list(combinations(range(d), 2))
    seq = [(pairs[int(rng.integers(len(pairs)))], 1.0) for _ in range(length)]

    def mats(entries):
        return [TTransform(i, j, t).matrix(d) for (i, j), t in entries]

    for _ in range(sweeps):
        for k in range(length):
            left = np.eye(d)
            for mm in mats(seq[:k]):
                left = left @ mm
            right = np.eye(d)
            for mm in mats(seq[k + 1 :]):
                right = right @ mm
            best = None
            for i, j in pairs:
                e = np.eye(d)
                e[i, i] = e[j, j] = 0.0
                e[i, j] = e[j, i] = 1.0
                dd = np.zeros((d, d))
                dd[i, i] = dd[j, j] = 1.0
                dd[i, j] = dd[j, i] = -1.0
                p = left @ e @ right - m
                q = left @ dd @ right
                den = float((q * q).sum())
                t = 0.5 if den < 1e-15 else float(np.clip(-(p * q).sum() / den, 0.0, 1.0))
                resid = np.abs(left @ TTransform(i, j, t).matrix(d) @ right - m).max()
                if best is None or resid < best[0]:
                    best = (resid, (i, j), t)
            seq[k] = (best[1], best[2])
        prod = np.eye(d)
        for mm in mats(seq):
            prod = prod @ mm
        if np.abs(prod - m).max() < 1e-12:
            break
    prod = np.eye(d)
    for mm in mats(seq):
        prod = prod @ mm
    return seq, float(np.abs(prod - m).max())


def ttransform_decompose(
    m: np.ndarray,
    tol: float = 1e-8,
    beam: int = 16,
    max_transforms: int = 48,
    prob_tol: float = TAU_PROB,
) -> list[TTransform]:
    """Approximate a bistochastic matrix by a product of T-transforms.

    Returns (T_1, ..., T_k) with ‖T_k ⋯ T_1 - M'‖_∞ <= tol for some
    bistochastic M' with ‖M' - M‖_1 <= tol.  Exact boundary peeling is tried
    first (it recovers genuine products), then the positivity perturbation
    toward the flat matrix, then a bounded alternating-fit search.  Inputs
    outside the reach of all three raise DecompositionError.
    """
    m = np.asarray(m, dtype=float)
    d = m.shape[0]
    if m.shape != (d, d):
        raise DimensionMismatchError(f"expected a square matrix, got {m.shape}")
    if (
        m.min() < -prob_tol
        or np.abs(m.sum(axis=0) - 1.0).max() > 10 * prob_tol
        or np.abs(m.sum(axis=1) - 1.0).max() > 10 * prob_tol
    ):
        raise InvariantViolationError("ttransform.bistochastic_input")

    if np.abs(m - np.eye(d)).max() <= tol:
        return []
    if d == 2:
        return [TTransform(0, 1, float(np.clip(m[0, 0], 0.0, 1.0)))]

    for target in (m, (1.0 - tol / 2.0) * m + (tol / 2.0) / d):
        seq = _peel_beam(target, max(tol * 1e-2, 1e-12), beam, max_transforms)
        if seq is not None:
            ts = [TTransform(i, j, t) for i, j, t in reversed(seq)]
            if np.abs(ttransform_product(ts, d) - m).max() <= tol:
                return ts

    rng = np.random.Generator(np.random.Philox(key=0))
    best = None
    for length in (2 * d, 4 * d):
        if length > max_transforms:
            break
        for _ in range(3):
            seq, resid = _fit_sequence(m, length, rng)
            if best is None or resid < best[1]:
                best = (seq, resid)
            if resid <= tol:
                ts = [TTransform(i, j, t) for (i, j), t in reversed(best[0])]
                return ts
    raise DecompositionError(
        f"no T-transform product within tol {tol:.1e} found (best residual {best[1]:.3e})"
    )
