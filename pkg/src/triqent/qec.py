"""Three-qubit phase-flip code under dephasing.

One logical qubit ``alpha|0> + beta|1>`` (real amplitudes) is encoded with two
CNOTs from qubit 1 followed by Hadamards on all qubits, giving
``alpha|+++> + beta|--->``. After dephasing, the stabilisers ``X1X2`` and
``X2X3`` are measured projectively, the flagged qubit receives a ``Z``
correction, and the encoding circuit is undone to read out qubit 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import measures
from .channels import apply_channel, three_qubit_dephasing
from .config import get_tolerances
from .qlinalg import (
    CNOT,
    HADAMARD,
    I2,
    SIGMA_X,
    SIGMA_Z,
    dagger,
    embed,
    kron_all,
    reduce_to,
)
from .states import single_qubit_state
from .witnesses import build, expectation

MODES = ("single", "all")

_P0 = np.diag([1.0, 0.0]).astype(complex)
_P1 = np.diag([0.0, 1.0]).astype(complex)
CNOT_12 = kron_all(CNOT, I2)
CNOT_13 = kron_all(_P0, I2, I2) + kron_all(_P1, I2, SIGMA_X)
H3 = kron_all(HADAMARD, HADAMARD, HADAMARD)
ENCODER = H3 @ CNOT_13 @ CNOT_12

STABILIZERS = (
    kron_all(SIGMA_X, SIGMA_X, I2),
    kron_all(I2, SIGMA_X, SIGMA_X),
)
# syndrome (eigenvalue of X1X2, eigenvalue of X2X3) -> qubit to flip back
CORRECTION = {(1, 1): None, (-1, 1): 1, (-1, -1): 2, (1, -1): 3}
SYNDROMES = tuple(CORRECTION)


def format_syndrome(s: tuple[int, int]) -> str:
    return "".join("+" if x > 0 else "-" for x in s)


def encode(alpha: float) -> np.ndarray:
    """Encoded three-qubit ket ``alpha|+++> + beta|--->``."""
    psi = single_qubit_state(alpha)
    return ENCODER @ np.kron(psi, np.array([1, 0, 0, 0], dtype=complex))


def apply_error(psi_enc: np.ndarray, p: float, mode: str = "all", qubit: int = 1) -> np.ndarray:
    """Dephase ``qubit`` only (``mode="single"``) or all three qubits equally."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    rho = np.outer(psi_enc, np.conj(psi_enc))
    if mode == "all":
        ks = three_qubit_dephasing(p, p, p)
    else:
        ps = [0.0, 0.0, 0.0]
        ps[qubit - 1] = p
        ks = three_qubit_dephasing(*ps)
    return apply_channel(rho, ks)


@dataclass(frozen=True)
class SyndromeBranch:
    syndrome: tuple[int, int]
    probability: float
    state: np.ndarray | None  # renormalised post-measurement state; None if unreachable

    @property
    def is_null(self) -> bool:
        return self.state is None


def syndrome_projector(syndrome: tuple[int, int]) -> np.ndarray:
    eye = np.eye(8, dtype=complex)
    s1, s2 = syndrome
    return (eye + s1 * STABILIZERS[0]) @ (eye + s2 * STABILIZERS[1]) / 4


def syndrome_project(rho_e: np.ndarray) -> list[SyndromeBranch]:
    """Born probabilities and post-measurement states for all four syndromes."""
    floor = get_tolerances().zero_measure
    out = []
    for s in SYNDROMES:
        proj = syndrome_projector(s)
        post = proj @ rho_e @ proj
        prob = float(np.trace(post).real)
        if prob <= floor:
            out.append(SyndromeBranch(s, max(prob, 0.0), None))
        else:
            out.append(SyndromeBranch(s, prob, post / prob))
    return out


def recover_and_decode(branch: SyndromeBranch) -> np.ndarray:
    """Apply the syndrome's ``Z`` correction, undo the encoder, keep qubit 1."""
    if branch.is_null:
        raise ValueError(f"syndrome {format_syndrome(branch.syndrome)} has zero probability")
    rho = branch.state
    qubit = CORRECTION[branch.syndrome]
    if qubit is not None:
        z = embed(SIGMA_Z, qubit)
        rho = z @ rho @ z
    rho = dagger(ENCODER) @ rho @ ENCODER
    return reduce_to(rho, (1,))


@dataclass(frozen=True)
class Aggregate:
    """Pooled outcome over a group of syndromes.

    An empty group (total probability zero) has nothing to correct and is
    reported with purity and fidelity 1 and no state.
    """

    probability: float
    purity: float
    fidelity: float
    state: np.ndarray | None = None


@dataclass(frozen=True)
class QecRun:
    alpha: float
    p: float
    mode: str
    error_qubit: int | None
    branches: list[tuple[SyndromeBranch, np.ndarray | None]] = field(repr=False)
    no_error: Aggregate
    error: Aggregate
    witness_WH: float  # -Tr(W_WH rho_e); positive means detected
    N: float
    N3: float
    error_state: np.ndarray = field(repr=False)

    def records(self) -> dict[str, float]:
        return {
            "witness_WH": self.witness_WH,
            "N": self.N,
            "N3": self.N3,
            "purity_noerr": self.no_error.purity,
            "purity_err": self.error.purity,
            "prob_err": self.error.probability,
            "fidelity_noerr": self.no_error.fidelity,
            "fidelity_err": self.error.fidelity,
        }


RECORDS = (
    "witness_WH", "N", "N3", "purity_noerr", "purity_err",
    "prob_err", "fidelity_noerr", "fidelity_err",
)


def _pool(parts, psi) -> Aggregate:
    total = sum(b.probability for b, _ in parts if not b.is_null)
    if total <= get_tolerances().zero_measure:
        return Aggregate(0.0, 1.0, 1.0)
    rho = sum(b.probability * rf for b, rf in parts if not b.is_null) / total
    return Aggregate(
        total, measures.purity(rho), measures.fidelity_to_pure(rho, psi), rho
    )


def run(alpha: float, p: float, mode: str = "all", error_qubit: int = 1) -> QecRun:
    """Encode, dephase, measure syndromes, correct and decode."""
    psi = single_qubit_state(alpha)
    rho_e = apply_error(encode(alpha), p, mode, error_qubit)
    branches = []
    for b in syndrome_project(rho_e):
        branches.append((b, None if b.is_null else recover_and_decode(b)))
    no_error = _pool([x for x in branches if x[0].syndrome == (1, 1)], psi)
    error = _pool([x for x in branches if x[0].syndrome != (1, 1)], psi)
    negs = measures.partition_negativities(rho_e)
    return QecRun(
        alpha=float(alpha),
        p=float(p),
        mode=mode,
        error_qubit=error_qubit if mode == "single" else None,
        branches=branches,
        no_error=no_error,
        error=error,
        witness_WH=-expectation(build("W_WH"), rho_e),
        N=float(np.max(negs)),
        N3=measures.tri_negativity_from(negs),
        error_state=rho_e,
    )


def _first_dead_p(indicator, xtol: float) -> float | None:
    """Smallest ``p`` in ``[0, 1]`` where ``indicator`` stops being positive."""
    if not indicator(0.0) > 0:
        return 0.0
    if indicator(1.0) > 0:
        return None
    lo, hi = 0.0, 1.0
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if indicator(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def nondetection_p(alpha: float, mode: str = "all", *, xtol: float = 1e-9) -> float | None:
    """Dephasing strength at which ``W_WH`` stops detecting the error state."""
    psi = encode(alpha)
    w = build("W_WH")
    return _first_dead_p(lambda p: -expectation(w, apply_error(psi, p, mode)), xtol)


def negativity_esd_p(alpha: float, mode: str = "all", *, xtol: float = 1e-9) -> float | None:
    """Dephasing strength at which the error state's negativity vanishes.

    ``None`` means it survives all the way to ``p = 1``.
    """
    psi = encode(alpha)
    return _first_dead_p(
        lambda p: float(np.max(-measures.partition_min_eigenvalues(apply_error(psi, p, mode)))),
        xtol,
    )
