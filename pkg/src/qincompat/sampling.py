"""Seeded random generation of bases, POVMs and simplex points.

All stochastic operations take an explicit integer seed and are backed by the
counter-based Philox generator, so every draw is reproducible and independent
substreams are cheap to derive.
"""

from __future__ import annotations

import numpy as np

from .core import Basis, Povm
from .errors import QincompatError


def rng_from_seed(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, stream]))


def haar_random_basis(d: int, seed: int) -> Basis:
    """Haar-distributed random basis via QR of a complex Gaussian matrix.

    The phases of the triangular factor's diagonal are absorbed into the
    columns, which makes the distribution exactly Haar.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    rng = rng_from_seed(seed)
    return _haar_from_rng(d, rng)


def _haar_from_rng(d: int, rng: np.random.Generator) -> Basis:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    ph = np.diag(r)
    q = q * (ph.conj() / np.abs(ph))
    return Basis(q)


def random_povm(d: int, n_effects: int, seed: int, max_retries: int = 8) -> Povm:
    """Random POVM: Gaussian Wisharts A_k normalized by S^{-1/2} A_k S^{-1/2}."""
    if n_effects < 1:
        raise ValueError("n_effects must be at least 1")
    for attempt in range(max_retries):
        rng = rng_from_seed(seed, stream=attempt)
        mats = []
        for _ in range(n_effects):
            g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            mats.append(g @ g.conj().T)
        s = sum(mats)
        w, v = np.linalg.eigh(s)
        if w.min() < 1e-10 * w.max():
            continue
        s_inv_half = (v / np.sqrt(w)) @ v.conj().T
        effects = tuple(s_inv_half @ a @ s_inv_half for a in mats)
        return Povm(effects)
    raise QincompatError(f"random_povm: singular normalization after {max_retries} retries")


def random_simplex_points(d: int, n: int, seed: int) -> np.ndarray:
    """n samples from the flat Dirichlet distribution on the d-simplex."""
    rng = rng_from_seed(seed)
    return rng.dirichlet(np.ones(d), size=n)
