"""Emulation of one non-selective measurement by another plus auxiliary dephasings.

Given bases with X(B1,B0) majorizing X(B2,B0), the post-processing matrix M
is decomposed into T-transforms, each lifted to a unitary; the resulting
rotated bases form the auxiliary dephasing sequence and a final rotation maps
the last auxiliary basis onto B2.  The construction is certified by an
explicit residual on the image of the reference dephasing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Basis, dephase_operator, overlap_matrix
from .errors import DecompositionError, DimensionMismatchError, QincompatError
from .majorization import matrix_majorizes, ttransform_decompose, unistochastic_lift


@dataclass(frozen=True)
class DephasingSequence:
    b0: Basis
    b1: Basis
    b2: Basis
    aux_bases: tuple
    u: np.ndarray

    def __post_init__(self):
        dims = {self.b0.dim, self.b1.dim, self.b2.dim} | {b.dim for b in self.aux_bases}
        if len(dims) != 1:
            raise DimensionMismatchError(f"mixed dimensions {sorted(dims)}")
        u = np.asarray(self.u, dtype=complex)
        if np.abs(u.conj().T @ u - np.eye(self.b0.dim)).max() > 1e-9:
            raise QincompatError("final rotation is not unitary")
        object.__setattr__(self, "aux_bases", tuple(self.aux_bases))

    @property
    def length(self) -> int:
        return len(self.aux_bases)


def _basis_to_basis_unitary(src: Basis, dst: Basis) -> np.ndarray:
    """Unitary mapping ket j of src onto ket j of dst (columnwise matching)."""
    return dst.u @ src.u.conj().T


def build_emulation(
    b0: Basis, b1: Basis, b2: Basis, tol: float = 1e-8, m: np.ndarray | None = None
) -> DephasingSequence:
    """Construct the dephasing sequence emulating the B2 measurement from B1.

    A post-processing matrix can be supplied to skip the LP (it is verified
    against the overlap matrices before use).
    """
    x1 = overlap_matrix(b1, b0)
    x2 = overlap_matrix(b2, b0)
    if m is None:
        decision = matrix_majorizes(x1, x2)
        if not decision.holds:
            raise QincompatError("X(B1,B0) does not majorize X(B2,B0); no emulation exists")
        m = decision.m
    else:
        m = np.asarray(m, dtype=float)
        resid = np.abs(m @ x1.x - x2.x).max()
        if resid > 10 * tol:
            raise QincompatError(f"supplied M fails X2 = M X1: residual {resid:.3e}")
    d = b0.dim
    transforms = ttransform_decompose(m, tol=tol)

    w = _basis_to_basis_unitary(b0, b1)
    aux = []
    prod_rot = np.eye(d)
    # decomposition yields M = T_k ... T_1; auxiliary basis α uses T_α directly
    for t in transforms:
        prod_rot = prod_rot @ unistochastic_lift(t, d)
        aux.append(Basis(w @ b0.u @ prod_rot))
    last = aux[-1] if aux else b1
    u = _basis_to_basis_unitary(last, b2)
    seq = DephasingSequence(b0=b0, b1=b1, b2=b2, aux_bases=tuple(aux), u=u)
    resid = emulation_residual(seq)
    if resid > max(tol, 1e-9):
        raise DecompositionError(f"emulation residual {resid:.3e} exceeds tol {tol:.1e}")
    return seq


def emulation_residual(seq: DephasingSequence) -> float:
    """Max trace-norm gap between both sides, restricted to span{P_i^(0)}."""
    d = seq.b0.dim
    worst = 0.0
    for i in range(d):
        p0 = seq.b0.projector(i)
        lhs = dephase_operator(p0, seq.b2)
        rhs = dephase_operator(p0, seq.b1)
        for b in seq.aux_bases:
            rhs = dephase_operator(rhs, b)
        rhs = seq.u @ rhs @ seq.u.conj().T
        diff = lhs - rhs
        tn = float(np.abs(np.linalg.eigvalsh((diff + diff.conj().T) / 2)).sum())
        worst = max(worst, tn)
    return worst


def probability_chain_residual(seq: DephasingSequence) -> float:
    """Deviation of X(B'_k,B'_{k-1}) ⋯ X(B'_1,B1) X(B1,B0) from X(B2,B0)."""
    chain = overlap_matrix(seq.b1, seq.b0).x
    prev = seq.b1
    for b in seq.aux_bases:
        chain = overlap_matrix(b, prev).x @ chain
        prev = b
    # the final rotation maps B'_k onto B2 and leaves overlaps unchanged
    return float(np.abs(chain - overlap_matrix(seq.b2, seq.b0).x).max())
