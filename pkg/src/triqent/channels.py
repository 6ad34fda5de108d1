"""Phase-damping (dephasing) channel on one or three qubits."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .qlinalg import DimensionError, dagger, num_qubits


@dataclass(frozen=True)
class KrausSet:
    """Kraus operators stacked along axis 0.

    ``operators`` has shape ``(K, *batch, d, d)``; the optional batch axes let a
    single set describe the same channel at many parameter values.
    """

    operators: np.ndarray
    arity: int

    def __post_init__(self):
        ops = np.asarray(self.operators, dtype=complex)
        if ops.ndim < 3 or ops.shape[-1] != ops.shape[-2] or ops.shape[-1] != 2 ** self.arity:
            raise DimensionError(f"bad Kraus stack shape {ops.shape} for arity {self.arity}")
        ops.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    def __len__(self) -> int:
        return self.operators.shape[0]

    @property
    def dim(self) -> int:
        return self.operators.shape[-1]

    def completeness_error(self) -> float:
        """Max entry of ``|sum K^H K - I|`` over the batch."""
        s = np.sum(dagger(self.operators) @ self.operators, axis=0)
        return float(np.max(np.abs(s - np.eye(self.dim))))


def _check_p(p):
    p = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(p)) or np.any((p < 0) | (p > 1)):
        raise ValueError(f"dephasing parameter must lie in [0, 1], got {p}")
    return p


def p_of_time(kappa_t):
    """Dephasing strength ``1 - exp(-kappa t)`` after dimensionless time ``kappa_t``."""
    kt = np.asarray(kappa_t, dtype=float)
    if np.any(~(kt >= 0)):
        raise ValueError(f"kappa_t must be non-negative, got {kappa_t}")
    out = -np.expm1(-kt)
    return float(out) if out.ndim == 0 else out


def _pair(p: np.ndarray) -> np.ndarray:
    k = np.zeros((2,) + p.shape + (2, 2), dtype=complex)
    k[0, ..., 0, 0] = 1.0
    k[0, ..., 1, 1] = np.sqrt(1.0 - p)
    k[1, ..., 1, 1] = np.sqrt(p)
    return k


def dephasing_pair(p) -> KrausSet:
    """Single-qubit ``K1 = diag(1, sqrt(1-p))``, ``K2 = [[0, 0], [0, sqrt(p)]]``."""
    return KrausSet(_pair(_check_p(p)), arity=1)


def three_qubit_dephasing(p1, p2, p3) -> KrausSet:
    """All eight products ``K_i (x) K_j (x) K_k`` of independent per-qubit pairs.

    Each ``p`` may be a scalar or an array; they are broadcast together.
    """
    ps = np.broadcast_arrays(*(_check_p(p) for p in (p1, p2, p3)))
    pairs = [_pair(p) for p in ps]
    batch = ps[0].shape
    ops = np.empty((8,) + batch + (8, 8), dtype=complex)
    for n, (i, j, k) in enumerate(itertools.product(range(2), repeat=3)):
        a, b, c = pairs[0][i], pairs[1][j], pairs[2][k]
        ops[n] = np.einsum("...ab,...cd,...ef->...acebdf", a, b, c).reshape(batch + (8, 8))
    return KrausSet(ops, arity=3)


def equal_dephasing(p) -> KrausSet:
    return three_qubit_dephasing(p, p, p)


def apply_channel(rho: np.ndarray, ks: KrausSet) -> np.ndarray:
    """``sum_l A_l rho A_l^H``; batch axes of ``rho`` and ``ks`` broadcast."""
    rho = np.asarray(rho, dtype=complex)
    if num_qubits(rho) != ks.arity:
        raise DimensionError(
            f"{ks.arity}-qubit channel applied to a {num_qubits(rho)}-qubit state"
        )
    a = ks.operators
    return np.sum(a @ rho[None, ...] @ dagger(a), axis=0)


def dephase(rho: np.ndarray, p) -> np.ndarray:
    """Equal-strength dephasing of every qubit of a three-qubit state."""
    return apply_channel(rho, equal_dephasing(p))
