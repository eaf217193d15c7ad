"""Shared random-state helpers for the test suite."""

import numpy as np

from qrfasym.qmat import DensityOperator
from qrfasym.symmetry import ChargeSpectrum


def haar_unitary(rng, n):
    """Haar-distributed unitary via QR of a Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_pure_vector(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_pure(rng, n, dims=None):
    return DensityOperator.from_pure(random_pure_vector(rng, n), dims or (n,))


def random_mixed(rng, n, dims=None, rank=None):
    k = rank or n
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    rho = g @ g.conj().T
    return DensityOperator(rho / np.trace(rho), dims or (n,))


def random_state(rng, n, dims=None):
    if rng.random() < 0.5:
        return random_pure(rng, n, dims)
    return random_mixed(rng, n, dims)


def random_charges(rng, n, max_span, modulus=None):
    """Random integer charges with span at least 1 (when n > 1) and at most max_span."""
    while True:
        c = rng.integers(0, max_span + 1, size=n)
        if n == 1 or c.max() > c.min():
            return ChargeSpectrum(tuple(int(x) for x in c), modulus)
