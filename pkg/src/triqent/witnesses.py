"""Projector-based three-qubit entanglement witnesses.

Every witness here has the form ``c * I - |phi><phi|``. ``expectation``
returns ``Tr(W rho)``; a negative value certifies the state is outside the
class the witness bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import optimize

from .qlinalg import HADAMARD, DimensionError, kron_all, num_qubits
from .states import ghz_state, projector, rotated_ghz, w_state


class Detects(str, Enum):
    GHZ = "GHZ-class"
    W = "W-class"


# label -> (constant, detected class)
_SPEC = {
    "W_G": (3 / 4, Detects.GHZ),
    "W_W2": (1 / 2, Detects.W),
    "W_W1": (2 / 3, Detects.W),
    "W_Ggb": (3 / 4, Detects.GHZ),
    "W_Wgb": (1 / 2, Detects.W),
    "W_WH": (1 / 2, Detects.W),
}
LABELS = tuple(_SPEC)
ROTATED = ("W_Ggb", "W_Wgb")


@dataclass(frozen=True)
class Witness:
    label: str
    observable: np.ndarray
    detects: Detects
    constant: float
    theta: float | None = None

    def __post_init__(self):
        self.observable.setflags(write=False)


def _reference_state(label: str, theta: float | None) -> np.ndarray:
    if label in ("W_G", "W_W2"):
        return ghz_state()
    if label == "W_W1":
        return w_state()
    if label in ROTATED:
        return rotated_ghz(theta)
    h3 = kron_all(HADAMARD, HADAMARD, HADAMARD)
    return h3 @ ghz_state()


def build(label: str, theta: float | None = None) -> Witness:
    """Construct one of ``W_G, W_W1, W_W2, W_Ggb, W_Wgb, W_WH``.

    ``theta`` (radians) is the qubit-3 rotation angle and is required for
    ``W_Ggb`` and ``W_Wgb``.
    """
    if label not in _SPEC:
        raise ValueError(f"unknown witness {label!r}; expected one of {LABELS}")
    if label in ROTATED and theta is None:
        raise ValueError(f"{label} needs a rotation angle theta")
    constant, detects = _SPEC[label]
    obs = constant * np.eye(8, dtype=complex) - projector(_reference_state(label, theta))
    return Witness(label, obs, detects, constant, theta if label in ROTATED else None)


def expectation(w: Witness, rho: np.ndarray):
    """``Tr(W rho)`` for one state or a stack of states."""
    rho = np.asarray(rho, dtype=complex)
    if num_qubits(rho) != 3:
        raise DimensionError(f"witnesses act on three qubits, got {rho.shape}")
    val = np.einsum("ij,...ji->...", w.observable, rho).real
    return float(val) if val.ndim == 0 else val


def optimize_theta(
    target: np.ndarray, label: str = "W_Ggb", *, coarse_points: int = 720, xtol: float = 1e-10
) -> tuple[float, float]:
    """Rotation angle in ``[0, 2pi)`` minimising ``Tr(W(theta) |target><target|)``.

    A uniform coarse scan picks the best grid point, then golden-section
    search refines it inside the neighbouring grid cells.
    """
    if label not in ROTATED:
        raise ValueError(f"theta optimisation applies to {ROTATED}, not {label!r}")
    target = np.asarray(target, dtype=complex)
    rho = projector(target)

    def f(theta):
        return expectation(build(label, float(theta)), rho)

    step = 2 * np.pi / coarse_points
    grid = np.arange(coarse_points) * step
    # overlap with the rotated GHZ state, vectorised over the grid
    kets = np.stack([rotated_ghz(t) for t in grid])
    vals = _SPEC[label][0] - np.abs(kets.conj() @ target) ** 2
    i = int(np.argmin(vals))
    lo, mid, hi = grid[i] - step, grid[i], grid[i] + step
    theta = optimize.golden(f, brack=(lo, mid, hi), tol=xtol)
    theta = float(np.mod(theta, 2 * np.pi))
    if np.isclose(theta, 2 * np.pi, rtol=0, atol=1e-9):
        theta = 0.0
    return theta, f(theta)
