"""Parent-measurement relations and their basis-relative consistency checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Basis, Povm, fourier_basis, overlap_matrix_povm, pad_povms
from .errors import DimensionMismatchError, IndeterminateError
from .lp import TAU_LP, LinearProgram, solve_feasibility
from .sampling import haar_random_basis


@dataclass(frozen=True)
class ParentDecision:
    is_parent: bool
    m: np.ndarray | None = None


def is_parent(f: Povm, g: Povm, tol: float = TAU_LP) -> ParentDecision:
    """Decide whether G_i = Σ_j M_ij F_j for some column-stochastic M >= 0.

    The operator equalities are flattened into real scalar constraints (real
    and imaginary part of every matrix entry, 2d² per effect).
    """
    if f.dim != g.dim:
        raise DimensionMismatchError(f"dims differ: {f.dim} vs {g.dim}")
    f, g = pad_povms(f, g)
    d = f.dim
    nf, ng = f.n_effects, g.n_effects
    fre = np.array([e.real.ravel() for e in f.effects])  # (nf, d²)
    fim = np.array([e.imag.ravel() for e in f.effects])
    rows = []
    rhs = []
    for i in range(ng):
        gi = g.effects[i]
        for part, basis_block in ((gi.real.ravel(), fre), (gi.imag.ravel(), fim)):
            block = np.zeros((d * d, ng * nf))
            block[:, i * nf : (i + 1) * nf] = basis_block.T
            rows.append(block)
            rhs.append(part)
    col = np.zeros((nf, ng * nf))
    for j in range(nf):
        col[j, j::nf] = 1.0
    rows.append(col)
    rhs.append(np.ones(nf))
    lp = LinearProgram(a_eq=np.vstack(rows), b_eq=np.concatenate(rhs))
    res = solve_feasibility(lp, tol=tol)
    if not res.feasible:
        return ParentDecision(is_parent=False)
    m = res.x.reshape(ng, nf)
    worst = max(
        float(np.abs(sum(m[i, j] * f.effects[j] for j in range(nf)) - g.effects[i]).max())
        for i in range(ng)
    )
    if worst > 10 * tol:
        raise IndeterminateError(f"parent matrix failed re-verification: residual {worst:.3e}")
    return ParentDecision(is_parent=True, m=m)


def _pad_to(p: Povm, n: int) -> Povm:
    """Pad a POVM with zero effects up to n outcomes (matching a given M shape)."""
    if p.n_effects > n:
        raise DimensionMismatchError(f"POVM has {p.n_effects} effects, M expects at most {n}")
    if p.n_effects == n:
        return p
    zero = np.zeros((p.dim, p.dim), dtype=complex)
    return Povm(p.effects + (zero,) * (n - p.n_effects))


def parent_implies_relative(
    f: Povm,
    g: Povm,
    m: np.ndarray,
    b0_samples: list[Basis],
    tol: float = TAU_LP,
) -> bool:
    """Check X(G,B0) = M X(F,B0) with the fixed M for every sampled B0."""
    m = np.asarray(m, dtype=float)
    f = _pad_to(f, m.shape[1])
    g = _pad_to(g, m.shape[0])
    for b0 in b0_samples:
        xf = overlap_matrix_povm(f, b0).x
        xg = overlap_matrix_povm(g, b0).x
        if np.abs(m @ xf - xg).max() > tol:
            return False
    return True


def default_basis_samples(d: int, n_haar: int = 20, seed: int = 0) -> list[Basis]:
    """Computational and Fourier bases plus a seeded Haar sample."""
    out = [Basis.computational(d), fourier_basis(d)]
    out.extend(haar_random_basis(d, seed + k) for k in range(n_haar))
    return out
