import numpy as np
import pytest

from qincompat import (
    Basis,
    DensityState,
    REL_ENTROPY,
    TWO_COHERENCE,
    builtin_functionals,
    coherence_average,
    f_phi,
    fourier_basis,
    g_psi,
    haar_random_basis,
    matrix_majorizes,
    overlap_matrix,
    rel_entropy_coherence,
    subentropy,
    two_coherence,
    two_coherence_kappa,
    von_neumann_entropy,
)


def test_von_neumann_entropy_bits():
    assert abs(von_neumann_entropy(np.eye(2) / 2) - 1.0) < 1e-12
    assert abs(von_neumann_entropy(np.diag([1.0, 0.0]))) < 1e-12


def test_rel_entropy_coherence_extremes():
    b = Basis.computational(2)
    plus = DensityState.pure(np.array([1.0, 1.0]) / np.sqrt(2))
    assert abs(rel_entropy_coherence(plus, b) - 1.0) < 1e-12
    diag = DensityState.diagonal([0.3, 0.7], b)
    assert rel_entropy_coherence(diag, b) < 1e-12


def test_two_coherence_pure_plus():
    b = Basis.computational(2)
    plus = DensityState.pure(np.array([1.0, 1.0]) / np.sqrt(2))
    assert abs(two_coherence(plus, b) - 0.5) < 1e-12


def test_subentropy_frozen_oracles():
    # closed forms: Q(1/2,1/2) = 1 - 1/(2 ln 2), Q(3/4,1/4) from the JRW formula
    assert abs(subentropy([0.5, 0.5]) - (1.0 - 1.0 / (2.0 * np.log(2.0)))) < 1e-6
    direct = -(0.75**2 / 0.5) * np.log2(0.75) - (0.25**2 / -0.5) * np.log2(0.25)
    assert abs(subentropy([0.75, 0.25]) - direct) < 1e-12
    assert subentropy([1.0, 0.0]) == 0.0


def test_subentropy_degenerate_continuity():
    base = subentropy([1 / 3, 1 / 3, 1 / 3])
    near = subentropy([1 / 3 + 1e-9, 1 / 3, 1 / 3 - 1e-9])
    assert abs(base - near) < 1e-5


def test_f_phi_monotone_under_majorization():
    b0 = Basis.computational(3)
    x1 = overlap_matrix(haar_random_basis(3, seed=41), b0)
    x2 = overlap_matrix(fourier_basis(3), b0)
    assert matrix_majorizes(x1, x2).holds
    for phi in builtin_functionals(3, seed=0):
        assert f_phi(x2, phi) <= f_phi(x1, phi) + 1e-9


def test_g_psi_requires_homogeneous():
    b0 = Basis.computational(3)
    x = overlap_matrix(fourier_basis(3), b0)
    funs = {phi.name: phi for phi in builtin_functionals(3, seed=0)}
    with pytest.raises(ValueError):
        g_psi(x, funs["neg_shannon_entropy"])
    g_psi(x, funs["euclidean_norm"])


def test_coherence_average_analytic_vs_mc_rel_entropy():
    b0 = Basis.computational(3)
    b = haar_random_basis(3, seed=42)
    ana = coherence_average(b, b0, REL_ENTROPY).value
    mc = coherence_average(b, b0, REL_ENTROPY, method="montecarlo", n=40_000, seed=5)
    assert abs(ana - mc.value) <= 4 * mc.stderr


def test_coherence_average_analytic_vs_mc_two_coherence():
    b0 = Basis.computational(3)
    b = haar_random_basis(3, seed=43)
    ana = coherence_average(b, b0, TWO_COHERENCE).value
    mc = coherence_average(b, b0, TWO_COHERENCE, method="montecarlo", n=40_000, seed=6)
    assert abs(ana - mc.value) <= 4 * mc.stderr


def test_two_coherence_kappa_constant():
    # kappa relates the flat-simplex average to d - sum(X^2) exactly
    b0 = Basis.computational(3)
    for seed in (44, 45, 46):
        b = haar_random_basis(3, seed=seed)
        x = overlap_matrix(b, b0).x
        ana = coherence_average(b, b0, TWO_COHERENCE).value
        assert abs(ana / (3 - (x**2).sum()) - two_coherence_kappa(3)) < 1e-12


def test_mub_average_equals_subentropy_of_flat():
    # for a MUB pair every row of X is flat, so the average is Q(1/d,...,1/d)
    d = 2
    b0 = Basis.computational(d)
    ana = coherence_average(fourier_basis(d), b0, REL_ENTROPY).value
    assert abs(ana - subentropy(np.full(d, 1.0 / d))) < 1e-9
