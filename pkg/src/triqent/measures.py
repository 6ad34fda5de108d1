"""Entanglement measures and state-quality figures.

All functions accept a single density matrix or a stack of them and return a
float or an array accordingly. Raw values below the zero-measure tolerance
are reported as exactly ``0.0`` so sudden-death times are well defined.
"""

from __future__ import annotations

import numpy as np

from .config import get_tolerances
from .qlinalg import (
    SIGMA_YY,
    DimensionError,
    hermitian_eigh,
    hermitian_eigenvalues,
    num_qubits,
    partial_transpose,
    reduce_to,
)

PAIRS = ((1, 2), (1, 3), (2, 3))


def _out(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def _clamp(x: np.ndarray) -> np.ndarray:
    return np.where(x < get_tolerances().zero_measure, 0.0, x)


def _sqrtm_psd(rho: np.ndarray) -> np.ndarray:
    w, v = hermitian_eigh(rho)
    w = np.sqrt(np.maximum(w, 0.0))
    return (v * w[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def concurrence_spectrum(rho2: np.ndarray) -> np.ndarray:
    """Decreasing eigenvalues of ``rho (Y(x)Y) rho* (Y(x)Y)``.

    Obtained from the Hermitian matrix ``sqrt(rho) rho_tilde sqrt(rho)``,
    which is similar to the product above; residues below the zero tolerance
    are set to zero.
    """
    rho2 = np.asarray(rho2, dtype=complex)
    if num_qubits(rho2) != 2:
        raise DimensionError(f"concurrence needs a two-qubit state, got {rho2.shape}")
    flipped = SIGMA_YY @ np.conj(rho2) @ SIGMA_YY
    root = _sqrtm_psd(rho2)
    m = root @ flipped @ root
    return _clamp(hermitian_eigenvalues(m))


def concurrence_lambda(rho2: np.ndarray):
    """Signed ``sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)`` before clipping at zero."""
    lam = np.sqrt(concurrence_spectrum(rho2))
    return _out(lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3])


def concurrence(rho2: np.ndarray):
    return _out(_clamp(np.asarray(concurrence_lambda(rho2))))


def pair_concurrence(rho3: np.ndarray, pair: tuple[int, int]):
    """Concurrence between two qubits after tracing out the third."""
    if num_qubits(rho3) != 3:
        raise DimensionError("pair_concurrence needs a three-qubit state")
    pair = tuple(sorted(pair))
    if pair not in PAIRS:
        raise ValueError(f"pair must be one of {PAIRS}, got {pair}")
    return concurrence(reduce_to(rho3, pair))


def negativity(rho: np.ndarray, qubit: int):
    """Sum of |negative eigenvalues| of the partial transpose on ``qubit``."""
    w = hermitian_eigenvalues(partial_transpose(rho, qubit))
    return _out(_clamp(-np.sum(np.minimum(w, 0.0), axis=-1)))


def _partition_spectra(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if num_qubits(rho) != 3:
        raise DimensionError("partition negativities need a three-qubit state")
    pts = np.stack([partial_transpose(rho, k) for k in (1, 2, 3)], axis=-3)
    return hermitian_eigenvalues(pts)


def partition_negativities(rho: np.ndarray) -> np.ndarray:
    """Negativities for the three one-qubit cuts, stacked on the last axis."""
    w = _partition_spectra(rho)
    return _clamp(-np.sum(np.minimum(w, 0.0), axis=-1))


def partition_min_eigenvalues(rho: np.ndarray) -> np.ndarray:
    """Smallest partial-transpose eigenvalue for each one-qubit cut.

    Unlike the negativity this keeps its sign, so it separates a genuine zero
    crossing from an exponential tail sinking under the zero tolerance.
    """
    return _partition_spectra(rho)[..., -1]


def max_negativity(rho: np.ndarray):
    """Largest single-cut negativity; for GHZ and W mixtures all cuts agree."""
    return _out(np.max(partition_negativities(rho), axis=-1))


def tri_negativity_from(negs: np.ndarray):
    negs = np.asarray(negs, dtype=float)
    return _out(_clamp(np.cbrt(np.prod(negs, axis=-1))))


def tri_negativity(rho: np.ndarray):
    """Cube root of the product of the three one-qubit-cut negativities."""
    return tri_negativity_from(partition_negativities(rho))


def purity(rho: np.ndarray):
    rho = np.asarray(rho, dtype=complex)
    num_qubits(rho)
    return _out(np.einsum("...ij,...ji->...", rho, rho).real)


def fidelity_to_pure(rho: np.ndarray, psi: np.ndarray):
    """``<psi|rho|psi>``."""
    rho = np.asarray(rho, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if rho.shape[-1] != psi.shape[-1]:
        raise DimensionError(f"state of dimension {psi.shape[-1]} vs rho {rho.shape}")
    return _out(np.einsum("i,...ij,j->...", psi.conj(), rho, psi).real)
