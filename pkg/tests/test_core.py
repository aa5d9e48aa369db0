import numpy as np
import pytest

from qincompat import (
    Basis,
    DensityState,
    InvariantViolationError,
    Povm,
    bases_equal,
    dephase,
    dephase_operator,
    fourier_basis,
    haar_random_basis,
    measure_distribution,
    overlap_matrix,
    overlap_matrix_povm,
    pad_povms,
)

from conftest import rotation_basis


def test_basis_rejects_nonunitary():
    with pytest.raises(InvariantViolationError):
        Basis(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_basis_projectors_resolve_identity():
    b = haar_random_basis(4, seed=11)
    total = sum(b.projector(i) for i in range(4))
    assert np.abs(total - np.eye(4)).max() < 1e-12


def test_povm_rejects_incomplete():
    half = np.eye(2, dtype=complex) / 2
    with pytest.raises(InvariantViolationError):
        Povm((half,))


def test_povm_rejects_nonpsd():
    e = np.diag([1.5, 1.0]).astype(complex)
    f = np.diag([-0.5, 0.0]).astype(complex)
    with pytest.raises(InvariantViolationError):
        Povm((e, f))


def test_overlap_matrix_bistochastic():
    b0 = haar_random_basis(5, seed=1)
    b1 = haar_random_basis(5, seed=2)
    x = overlap_matrix(b1, b0).x
    assert np.abs(x.sum(axis=0) - 1).max() < 1e-12
    assert np.abs(x.sum(axis=1) - 1).max() < 1e-12
    assert x.min() >= 0


def test_overlap_matrix_known_qubit_angle():
    # frozen oracle: Bloch angle pi/3 gives overlaps 3/4 and 1/4
    x = overlap_matrix(rotation_basis(np.pi / 3), Basis.computational(2)).x
    assert np.abs(x - np.array([[0.75, 0.25], [0.25, 0.75]])).max() < 1e-12


def test_overlap_matrix_povm_column_stochastic():
    b0 = haar_random_basis(3, seed=3)
    f = Povm.from_basis(haar_random_basis(3, seed=4))
    x = overlap_matrix_povm(f, b0)
    assert np.abs(x.x.sum(axis=0) - 1).max() < 1e-9
    assert x.stochasticity == "column-stochastic"


def test_fourier_basis_mub():
    for d in (2, 3, 5):
        x = overlap_matrix(fourier_basis(d), Basis.computational(d)).x
        assert np.abs(x - 1.0 / d).max() < 1e-12


def test_dephase_kills_coherence():
    b = haar_random_basis(3, seed=7)
    rho = DensityState.pure(np.array([1.0, 1.0, 0.0]) / np.sqrt(2))
    out = dephase(rho, b)
    in_b = b.u.conj().T @ out.rho @ b.u
    off = in_b - np.diag(np.diag(in_b))
    assert np.abs(off).max() < 1e-12
    assert out.is_diagonal


def test_dephase_operator_idempotent():
    b = haar_random_basis(4, seed=8)
    m = haar_random_basis(4, seed=9).u
    once = dephase_operator(m, b)
    assert np.abs(dephase_operator(once, b) - once).max() < 1e-12


def test_measure_distribution_basis_vs_povm():
    b = haar_random_basis(3, seed=10)
    rho = DensityState.maximally_mixed(3)
    p1 = measure_distribution(rho, b)
    p2 = measure_distribution(rho, Povm.from_basis(b))
    assert np.abs(p1 - p2).max() < 1e-12
    assert np.abs(p1 - 1.0 / 3).max() < 1e-12


def test_diagonal_state_roundtrip():
    b = haar_random_basis(3, seed=12)
    s = DensityState.diagonal([0.5, 0.3, 0.2], b)
    assert np.abs(measure_distribution(s, b) - [0.5, 0.3, 0.2]).max() < 1e-12


def test_pad_povms():
    f = Povm.from_basis(Basis.computational(2))
    g = Povm((np.eye(2, dtype=complex) / 3,) * 3)
    fp, gp = pad_povms(f, g)
    assert fp.n_effects == gp.n_effects == 3
    assert np.abs(fp.effects[2]).max() == 0


def test_bases_equal_up_to_phase_and_order():
    b = haar_random_basis(3, seed=13)
    perm = b.u[:, [2, 0, 1]] * np.exp(1j * np.array([0.3, -1.0, 2.0]))
    assert bases_equal(b, Basis(perm))
    assert not bases_equal(b, haar_random_basis(3, seed=14))
