"""Pure three-qubit states and their white-noise mixtures."""

from __future__ import annotations

import numpy as np

from .config import get_tolerances
from .qlinalg import I2, kron_all

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


def basis_state(bits: str) -> np.ndarray:
    """Computational basis ket, e.g. ``basis_state("101")``."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"bits must be a non-empty 0/1 string, got {bits!r}")
    psi = np.zeros(2 ** len(bits), dtype=complex)
    psi[int(bits, 2)] = 1.0
    return psi


def standard_form(l0, l1, l2, l3, l4, theta=0.0) -> np.ndarray:
    """Three-qubit pure state in the five-coefficient local-unitary normal form.

    ``l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>``
    """
    lam = np.array([l0, l1, l2, l3, l4], dtype=float)
    if np.any(lam < 0):
        raise ValueError("coefficients must be non-negative")
    if abs(np.sum(lam ** 2) - 1.0) > 1e-10:
        raise ValueError(f"coefficients are not normalised (sum of squares {np.sum(lam**2)!r})")
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    psi = np.zeros(8, dtype=complex)
    psi[0b000] = lam[0]
    psi[0b100] = lam[1] * np.exp(1j * theta)
    psi[0b101] = lam[2]
    psi[0b110] = lam[3]
    psi[0b111] = lam[4]
    return psi


def ghz_state() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[[0, 7]] = 1.0 / SQRT2
    return psi


def w_state() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[[1, 2, 4]] = 1.0 / SQRT3
    return psi


def gb_state() -> np.ndarray:
    """GHZ-type state that also carries pair entanglement between qubits 1 and 2."""
    psi = np.zeros(8, dtype=complex)
    psi[[0, 7]] = 2.0 / 3.0
    psi[6] = 1.0 / 3.0
    return psi


def single_qubit_state(alpha: float) -> np.ndarray:
    """``alpha|0> + beta|1>`` with real ``beta = sqrt(1 - alpha^2) >= 0``."""
    alpha = _check_unit("alpha", alpha)
    return np.array([alpha, np.sqrt(max(1.0 - alpha * alpha, 0.0))], dtype=complex)


def rotation(theta: float) -> np.ndarray:
    """Real half-angle rotation, ``|0> -> c|0> - s|1>``, ``|1> -> s|0> + c|1>``."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, s], [-s, c]], dtype=complex)


def rotated_ghz(theta: float) -> np.ndarray:
    """GHZ state with :func:`rotation` applied to qubit 3."""
    return kron_all(I2, I2, rotation(theta)) @ ghz_state()


def projector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state is not normalised (norm {norm!r})")
    return np.outer(psi, psi.conj())


def noisy_mixture(psi: np.ndarray, q: float) -> np.ndarray:
    """``(1-q)/d * I + q |psi><psi|``."""
    q = _check_unit("q", q)
    p = projector(psi)
    d = p.shape[0]
    return (1.0 - q) / d * np.eye(d, dtype=complex) + q * p


def noisy_mixtures(psi: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Stack of :func:`noisy_mixture` over an array of mixing weights."""
    q = np.asarray(q, dtype=float)
    if np.any((q < 0) | (q > 1)):
        raise ValueError("q must lie in [0, 1]")
    p = projector(psi)
    d = p.shape[0]
    q = q[..., None, None]
    return (1.0 - q) / d * np.eye(d, dtype=complex) + q * p


def fidelity_overlap(a: np.ndarray, b: np.ndarray) -> float:
    """``|<a|b>|^2`` for two kets."""
    return float(abs(np.vdot(a, b)) ** 2)


def is_normalised(psi: np.ndarray) -> bool:
    return abs(np.linalg.norm(psi) - 1.0) <= get_tolerances().equality

