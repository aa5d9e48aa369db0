import numpy as np
import pytest

from qincompat import (
    Basis,
    DensityState,
    check_entropic_bounds,
    fourier_basis,
    haar_random_basis,
    mu_bound,
    overlap_matrix,
    q_bound,
    q_exact,
    renyi_entropy,
    sum_variance_sup,
)

from conftest import rotation_basis


def test_renyi_special_cases():
    p = [0.75, 0.25]
    assert abs(renyi_entropy(p, 1.0) - (-(0.75 * np.log2(0.75) + 0.25 * np.log2(0.25)))) < 1e-12
    # frozen oracle: S_2 = -log2(0.625)
    assert abs(renyi_entropy(p, 2.0) + np.log2(0.625)) < 1e-12
    assert abs(renyi_entropy(p, np.inf) + np.log2(0.75)) < 1e-12
    assert abs(renyi_entropy([0.5, 0.5, 0.0], 0.0) - 1.0) < 1e-12


def test_renyi_rejects_negative_alpha():
    with pytest.raises(ValueError):
        renyi_entropy([1.0], -1.0)


def test_mu_bound_mub():
    b0 = Basis.computational(3)
    assert abs(mu_bound(overlap_matrix(fourier_basis(3), b0)) - np.log2(3)) < 1e-12


def test_q_hadamard_half():
    b0 = Basis.computational(2)
    assert abs(q_exact(fourier_basis(2), b0) - 0.5) < 1e-10


def test_qubit_q_bound_is_sin_squared():
    b0 = Basis.computational(2)
    for theta in (0.2, 0.9, 1.4):
        x = overlap_matrix(rotation_basis(theta), b0)
        assert abs(q_bound(x) - np.sin(theta) ** 2) < 1e-10


def test_q_le_bound():
    for seed in range(6):
        d = 2 + seed % 4
        b0 = haar_random_basis(d, seed=50 + seed)
        b1 = haar_random_basis(d, seed=60 + seed)
        x = overlap_matrix(b1, b0)
        assert q_exact(b1, b0) <= q_bound(x) + 1e-9
        assert q_exact(b1, b0) <= sum_variance_sup(x) + 1e-9


def test_entropic_report_mu_and_coles():
    b1 = haar_random_basis(3, seed=70)
    b2 = haar_random_basis(3, seed=71)
    rho = DensityState.maximally_mixed(3)
    rep = check_entropic_bounds(rho, b1, b2, 1.0, 1.0)
    assert rep.mu_satisfied
    assert rep.coles_satisfied
    assert rep.coles_bound >= rep.mu_bound


def test_entropic_conjugate_pairs():
    b1 = haar_random_basis(2, seed=72)
    b2 = haar_random_basis(2, seed=73)
    rho = DensityState.pure(np.array([0.6, 0.8]))
    for alpha, beta in ((0.5, np.inf), (2.0, 2.0 / 3.0)):
        rep = check_entropic_bounds(rho, b1, b2, alpha, beta)
        assert rep.mu_satisfied
        assert rep.coles_bound is None


def test_entropic_rejects_bad_pair():
    b = Basis.computational(2)
    with pytest.raises(ValueError):
        check_entropic_bounds(DensityState.maximally_mixed(2), b, fourier_basis(2), 2.0, 2.0)
