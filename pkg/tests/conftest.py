import itertools

import numpy as np
import pytest


def brute_partial_transpose(rho, qubit, n=3):
    """Entry-by-entry partial transpose; independent of the reshape trick."""
    d = 2 ** n
    k = n - qubit  # bit position, qubit 1 is most significant
    out = np.zeros_like(rho)
    for i in range(d):
        for j in range(d):
            bi, bj = (i >> k) & 1, (j >> k) & 1
            i2 = (i & ~(1 << k)) | (bj << k)
            j2 = (j & ~(1 << k)) | (bi << k)
            out[i2, j2] = rho[i, j]
    return out


def brute_partial_trace(rho, qubit, n=3):
    d = 2 ** n
    k = n - qubit
    out = np.zeros((d // 2, d // 2), dtype=complex)
    for i in range(d):
        for j in range(d):
            if ((i >> k) & 1) != ((j >> k) & 1):
                continue

            def drop(x):
                high = x >> (k + 1)
                low = x & ((1 << k) - 1)
                return (high << k) | low

            out[drop(i), drop(j)] += rho[i, j]
    return out


def random_density(rng, dim=8, rank=None):
    rank = rank or dim
    x = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = x @ x.conj().T
    return rho / np.trace(rho)


def random_unitary(rng, dim=2):
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(x)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def hamming(a, b):
    return bin(a ^ b).count("1")


BITS3 = ["".join(b) for b in itertools.product("01", repeat=3)]
