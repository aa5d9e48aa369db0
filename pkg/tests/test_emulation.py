import numpy as np
import pytest

from qincompat import (
    Basis,
    QincompatError,
    TTransform,
    build_emulation,
    emulation_residual,
    fourier_basis,
    haar_random_basis,
    probability_chain_residual,
    ttransform_product,
    unistochastic_lift,
)

from conftest import rotation_basis


def test_qubit_single_auxiliary():
    b0 = Basis.computational(2)
    seq = build_emulation(b0, rotation_basis(np.pi / 6), rotation_basis(np.pi / 3))
    assert seq.length == 1
    assert emulation_residual(seq) <= 1e-9
    assert probability_chain_residual(seq) <= 1e-9


def test_emulate_to_mub_bottom():
    b0 = Basis.computational(3)
    seq = build_emulation(b0, haar_random_basis(3, seed=31), fourier_basis(3))
    assert emulation_residual(seq) <= 1e-8
    assert probability_chain_residual(seq) <= 1e-8


def planted_three_transform_triple():
    """A (B0, B1, B2) triple whose overlap relation is an exact 3-factor product.

    With B1 = B0 the target overlap must satisfy X(B2,B0) = M.  The factors
    act on the pairs (0,1)-swap, (1,2), (0,1): every matrix entry of the
    unitary product R1 R2 R3 is reached by a single path, so its squared
    moduli reproduce T1 T2 T3 = Mᵀ without interference and B2 = B0 · (R1R2R3)
    realizes M exactly.
    """
    b0 = Basis.computational(3)
    planted = [TTransform(0, 1, 0.0), TTransform(1, 2, 0.6), TTransform(0, 1, 0.8)]
    v = np.eye(3)
    for t in planted:
        v = v @ unistochastic_lift(t, 3)
    m = ttransform_product(planted, 3)
    return b0, b0, Basis(b0.u @ v), m


def test_planted_roundtrip_d3():
    from qincompat import overlap_matrix

    b0, b1, b2, m = planted_three_transform_triple()
    assert np.abs(overlap_matrix(b2, b0).x - m @ overlap_matrix(b1, b0).x).max() < 1e-12
    seq = build_emulation(b0, b1, b2, m=m)
    assert seq.length == 3
    assert emulation_residual(seq) <= 1e-6
    assert probability_chain_residual(seq) <= 1e-6


def test_refuses_nonmajorizing_target():
    b0 = Basis.computational(2)
    with pytest.raises(QincompatError):
        build_emulation(b0, rotation_basis(np.pi / 3), rotation_basis(np.pi / 6))


def test_trivial_emulation_same_basis():
    b0 = Basis.computational(3)
    b1 = haar_random_basis(3, seed=33)
    seq = build_emulation(b0, b1, b1)
    assert emulation_residual(seq) <= 1e-8
