"""Validated quantum objects and overlap-matrix construction.

Bases are stored as unitaries whose columns are the kets, POVMs as tuples of
effect operators, states as density matrices.  All validation tolerances are
module-level defaults and can be overridden per constructor call.  Logarithms
are base 2 throughout the package (bits).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, InvariantViolationError

TAU_UNITARY = 1e-9
TAU_HERM = 1e-9
TAU_PSD = 1e-9
TAU_PROB = 1e-9

BISTOCHASTIC = "bistochastic"
COLUMN_STOCHASTIC = "column-stochastic"


def as_complex_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a complex 2-d array with finite entries."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2:
        raise InvariantViolationError(f"{name}.shape", f"expected 2-d, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise InvariantViolationError(f"{name}.finite", "non-finite entries")
    m.setflags(write=False)
    return m


def check_probability_vector(p, tol: float = TAU_PROB, name: str = "p") -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvariantViolationError(f"{name}.shape", "expected a nonempty 1-d array")
    if not np.all(np.isfinite(p)):
        raise InvariantViolationError(f"{name}.finite", "non-finite components")
    if np.min(p) < -tol:
        raise InvariantViolationError(f"{name}.nonnegative", f"min component {np.min(p):.3e}")
    if abs(p.sum() - 1.0) > tol:
        raise InvariantViolationError(f"{name}.normalized", f"sum {p.sum():.12f}")
    return p


@dataclass(frozen=True)
class Basis:
    """Orthonormal basis, represented by the unitary whose columns are the kets."""

    u: np.ndarray
    tol: float = field(default=TAU_UNITARY, compare=False)

    def __post_init__(self):
        u = as_complex_matrix(self.u, "basis.u")
        if u.shape[0] != u.shape[1]:
            raise InvariantViolationError("basis.square", f"shape {u.shape}")
        dev = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
        if dev > self.tol:
            raise InvariantViolationError("basis.unitary", f"|u†u - I| = {dev:.3e}")
        object.__setattr__(self, "u", u)

    @property
    def dim(self) -> int:
        return self.u.shape[0]

    def ket(self, i: int) -> np.ndarray:
        return self.u[:, i]

    def projector(self, i: int) -> np.ndarray:
        k = self.u[:, i]
        return np.outer(k, k.conj())

    @classmethod
    def computational(cls, d: int) -> "Basis":
        return cls(np.eye(d, dtype=complex))


@dataclass(frozen=True)
class Povm:
    """Generalized measurement: PSD effects summing to the identity."""

    effects: tuple
    herm_tol: float = field(default=TAU_HERM, compare=False)
    psd_tol: float = field(default=TAU_PSD, compare=False)

    def __post_init__(self):
        effs = tuple(as_complex_matrix(e, f"povm.effect[{k}]") for k, e in enumerate(self.effects))
        if not effs:
            raise InvariantViolationError("povm.nonempty")
        d = effs[0].shape[0]
        total = np.zeros((d, d), dtype=complex)
        for k, e in enumerate(effs):
            if e.shape != (d, d):
                raise InvariantViolationError("povm.dims", f"effect {k} has shape {e.shape}")
            herm = np.abs(e - e.conj().T).max()
            if herm > self.herm_tol:
                raise InvariantViolationError("povm.hermitian", f"effect {k}: |F - F†| = {herm:.3e}")
            lo = float(np.linalg.eigvalsh((e + e.conj().T) / 2).min())
            if lo < -self.psd_tol:
                raise InvariantViolationError("povm.psd", f"effect {k}: min eigenvalue {lo:.3e}")
            total += e
        dev = np.abs(total - np.eye(d)).max()
        if dev > self.herm_tol:
            raise InvariantViolationError("povm.completeness", f"|ΣF - I| = {dev:.3e}")
        object.__setattr__(self, "effects", effs)

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    @property
    def n_effects(self) -> int:
        return len(self.effects)

    @classmethod
    def from_basis(cls, b: Basis) -> "Povm":
        return cls(tuple(b.projector(i) for i in range(b.dim)))


@dataclass(frozen=True)
class DensityState:
    """Density operator; optionally carries its diagonal form in a basis."""

    rho: np.ndarray
    p: np.ndarray | None = None
    basis: Basis | None = None
    herm_tol: float = field(default=TAU_HERM, compare=False)
    psd_tol: float = field(default=TAU_PSD, compare=False)

    def __post_init__(self):
        rho = as_complex_matrix(self.rho, "state.rho")
        if rho.shape[0] != rho.shape[1]:
            raise InvariantViolationError("state.square", f"shape {rho.shape}")
        herm = np.abs(rho - rho.conj().T).max()
        if herm > self.herm_tol:
            raise InvariantViolationError("state.hermitian", f"|ρ - ρ†| = {herm:.3e}")
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > self.herm_tol:
            raise InvariantViolationError("state.unit_trace", f"trace {tr:.12f}")
        lo = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2).min())
        if lo < -self.psd_tol:
            raise InvariantViolationError("state.psd", f"min eigenvalue {lo:.3e}")
        object.__setattr__(self, "rho", rho)
        if self.p is not None:
            p = check_probability_vector(self.p, name="state.p")
            if self.basis is None:
                raise InvariantViolationError("state.diagonal_basis", "p given without basis")
            rebuilt = (self.basis.u * p) @ self.basis.u.conj().T
            if np.abs(rebuilt - rho).max() > 10 * self.herm_tol:
                raise InvariantViolationError("state.diagonal_form", "ρ != Σ p_i P_i")
            object.__setattr__(self, "p", p)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @property
    def is_diagonal(self) -> bool:
        return self.p is not None

    @classmethod
    def diagonal(cls, p, basis: Basis) -> "DensityState":
        p = check_probability_vector(p)
        if len(p) != basis.dim:
            raise DimensionMismatchError(f"p has {len(p)} components, basis dim {basis.dim}")
        rho = (basis.u * p) @ basis.u.conj().T
        return cls(rho=rho, p=p, basis=basis)

    @classmethod
    def pure(cls, ket) -> "DensityState":
        k = np.asarray(ket, dtype=complex)
        k = k / np.linalg.norm(k)
        return cls(rho=np.outer(k, k.conj()))

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityState":
        return cls(rho=np.eye(d, dtype=complex) / d)


@dataclass(frozen=True)
class OverlapMatrix:
    """Matrix of overlaps Tr(E_i P_j) between a measurement and a reference basis."""

    x: np.ndarray
    stochasticity: str
    tol: float = field(default=TAU_PROB, compare=False)

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 2:
            raise InvariantViolationError("overlap.shape", f"ndim {x.ndim}")
        if not np.all(np.isfinite(x)):
            raise InvariantViolationError("overlap.finite")
        if self.stochasticity not in (BISTOCHASTIC, COLUMN_STOCHASTIC):
            raise InvariantViolationError("overlap.stochasticity", repr(self.stochasticity))
        if x.min() < -self.tol or x.max() > 1 + self.tol:
            raise InvariantViolationError("overlap.range", f"entries in [{x.min():.3e}, {x.max():.3e}]")
        col = np.abs(x.sum(axis=0) - 1.0).max()
        if col > self.tol:
            raise InvariantViolationError("overlap.column_sums", f"max deviation {col:.3e}")
        if self.stochasticity == BISTOCHASTIC:
            if x.shape[0] != x.shape[1]:
                raise InvariantViolationError("overlap.square", f"shape {x.shape}")
            row = np.abs(x.sum(axis=1) - 1.0).max()
            if row > self.tol:
                raise InvariantViolationError("overlap.row_sums", f"max deviation {row:.3e}")
        x = x.copy()
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def n_rows(self) -> int:
        return self.x.shape[0]

    @property
    def dim(self) -> int:
        return self.x.shape[1]


def _require_same_dim(a, b):
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimensions differ: {a.dim} vs {b.dim}")


def overlap_matrix(b1: Basis, b0: Basis) -> OverlapMatrix:
    """Bistochastic overlap matrix X_ij = |<i1|j0>|^2 between two bases."""
    _require_same_dim(b1, b0)
    x = np.abs(b1.u.conj().T @ b0.u) ** 2
    return OverlapMatrix(x=x, stochasticity=BISTOCHASTIC)


def overlap_matrix_povm(f: Povm, b0: Basis) -> OverlapMatrix:
    """Column-stochastic overlap matrix X_ij = Tr(F_i P_j)."""
    _require_same_dim(f, b0)
    x = np.empty((f.n_effects, b0.dim))
    for i, e in enumerate(f.effects):
        # Tr(F_i |j><j|) = <j|F_i|j>
        x[i] = np.real(np.einsum("kj,kl,lj->j", b0.u.conj(), e, b0.u))
    x = np.clip(x, 0.0, None)
    return OverlapMatrix(x=x, stochasticity=COLUMN_STOCHASTIC)


def dephase_operator(mat: np.ndarray, b: Basis) -> np.ndarray:
    """Apply the dephasing map Σ_i P_i mat P_i of basis ``b`` to an operator."""
    in_b = b.u.conj().T @ mat @ b.u
    return (b.u * np.diag(in_b)) @ b.u.conj().T


def dephase(state: DensityState, b: Basis) -> DensityState:
    """Non-selective measurement in ``b``; output is diagonal in ``b``."""
    if state.dim != b.dim:
        raise DimensionMismatchError(f"state dim {state.dim}, basis dim {b.dim}")
    diag = np.real(np.einsum("ki,kl,li->i", b.u.conj(), state.rho, b.u))
    diag = np.clip(diag, 0.0, None)
    diag = diag / diag.sum()
    return DensityState.diagonal(diag, b)


def measure_distribution(state: DensityState, m: Basis | Povm) -> np.ndarray:
    """Outcome distribution Tr(E_i ρ) of measuring ``state`` with ``m``."""
    if state.dim != m.dim:
        raise DimensionMismatchError(f"state dim {state.dim}, measurement dim {m.dim}")
    if isinstance(m, Basis):
        p = np.real(np.einsum("ki,kl,li->i", m.u.conj(), state.rho, m.u))
    else:
        p = np.array([float(np.real(np.trace(e @ state.rho))) for e in m.effects])
    p = np.clip(p, 0.0, None)
    return check_probability_vector(p / p.sum())


def fourier_basis(d: int) -> Basis:
    """Canonical basis mutually unbiased to the computational one."""
    if d < 2:
        raise ValueError("d must be at least 2")
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    u = np.exp(2j * np.pi * j * k / d) / np.sqrt(d)
    return Basis(u)


def pad_povms(f: Povm, g: Povm) -> tuple[Povm, Povm]:
    """Pad the POVM with fewer effects with zero effects to equal cardinality."""
    _require_same_dim(f, g)
    n = max(f.n_effects, g.n_effects)
    zero = np.zeros((f.dim, f.dim), dtype=complex)

    def pad(p: Povm) -> Povm:
        if p.n_effects == n:
            return p
        return Povm(p.effects + (zero,) * (n - p.n_effects))

    return pad(f), pad(g)


def bases_equal(b1: Basis, b2: Basis, tol: float = 1e-9) -> bool:
    """Equality up to column phases and permutations, tested on the overlap matrix."""
    x = overlap_matrix(b1, b2).x
    # X is a permutation matrix iff every row has a single unit entry
    return bool(np.abs(np.sort(x, axis=1)[:, :-1]).max() <= tol if x.shape[1] > 1 else True) and bool(
        np.abs(x.max(axis=1) - 1.0).max() <= tol
    )
