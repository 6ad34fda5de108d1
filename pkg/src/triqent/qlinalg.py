"""Dense complex linear algebra for one-, two- and three-qubit operators.

Matrices are plain ``numpy`` arrays. Every routine that takes a square
operator also accepts a stack of them (leading batch axes), which is what the
sweep and threshold code relies on for speed.

Qubits are numbered 1, 2, 3 from the left, so qubit 1 is the most
significant bit of the basis index ``|q1 q2 q3>``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import get_tolerances

SUPPORTED_DIMS = (2, 4, 8)

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
# control = first (more significant) qubit
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)


class DimensionError(ValueError):
    """Operand shapes are unsupported or incompatible."""


class NotHermitianError(ValueError):
    """A Hermitian operator was required."""


@dataclass(frozen=True)
class Violation:
    invariant: str  # "shape", "hermitian", "trace" or "psd"
    magnitude: float

    def __str__(self) -> str:
        return f"{self.invariant} violated by {self.magnitude:.3g}"


class DensityMatrixError(ValueError):
    """Raised by :func:`validate_density`; carries every failed invariant."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))

    @property
    def magnitude(self) -> float:
        return max(v.magnitude for v in self.violations)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def num_qubits(m: np.ndarray) -> int:
    """Qubit count of a square operator stack of dimension 2, 4 or 8."""
    m = np.asarray(m)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise DimensionError(f"expected square matrices, got shape {m.shape}")
    dim = m.shape[-1]
    if dim not in SUPPORTED_DIMS:
        raise DimensionError(f"dimension {dim} not in {SUPPORTED_DIMS}")
    return dim.bit_length() - 1


def _check_qubit(n: int, qubit: int) -> int:
    if isinstance(qubit, bool) or not isinstance(qubit, (int, np.integer)):
        raise ValueError(f"qubit index must be an integer, got {qubit!r}")
    if not 1 <= qubit <= n:
        raise ValueError(f"qubit index {qubit} out of range 1..{n}")
    return int(qubit) - 1


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two operators, result dimension at most 8."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    for m in (a, b):
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
            raise DimensionError(f"kron operands must be 2x2 or 4x4, got {m.shape}")
    if a.shape[0] * b.shape[0] > 8:
        raise DimensionError(
            f"kron of {a.shape[0]}x{a.shape[0]} and {b.shape[0]}x{b.shape[0]} exceeds 8x8"
        )
    return np.kron(a, b)


def kron_all(*ops: np.ndarray) -> np.ndarray:
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = kron(out, op)
    return out


def embed(op: np.ndarray, qubit: int, n: int = 3) -> np.ndarray:
    """Single-qubit ``op`` acting on ``qubit`` of an ``n``-qubit register."""
    k = _check_qubit(n, qubit)
    factors = [I2] * n
    factors[k] = np.asarray(op, dtype=complex)
    return kron_all(*factors)


def _offdiag_norm(a: np.ndarray) -> np.ndarray:
    off = ~np.eye(a.shape[-1], dtype=bool)
    return np.sqrt(np.sum(np.abs(a[:, off]) ** 2, axis=1))


def hermitian_eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of Hermitian matrices by cyclic complex Jacobi.

    Returns ``(values, vectors)`` with eigenvalues in descending order along
    the last axis and the matching eigenvectors as columns. Works on a single
    matrix or a stack ``(..., d, d)``.
    """
    tol = get_tolerances()
    a = np.array(m, dtype=complex)
    num_qubits(a)
    asym = np.max(np.abs(a - dagger(a)), initial=0.0)
    if asym > tol.hermitian_input:
        raise NotHermitianError(f"matrix is not Hermitian (max |M - M^H| = {asym:.3g})")
    batch_shape = a.shape[:-2]
    n = a.shape[-1]
    a = 0.5 * (a + dagger(a))
    a = a.reshape(-1, n, n)
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    scale = np.linalg.norm(a, axis=(1, 2))
    target = tol.eig_offdiag_rel * scale
    # entries this small cannot move any eigenvalue at double precision
    negligible = np.maximum(1e-24 * scale, np.finfo(float).tiny)

    for _ in range(tol.max_sweeps):
        if np.all(_offdiag_norm(a) <= target):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                mag = np.abs(apq)
                active = mag > negligible
                if not active.any():
                    continue
                safe = np.where(active, mag, 1.0)
                theta = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
                t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                phase = np.where(active, np.conj(apq) / safe, 1.0)
                # U = diag(1, e^{-i arg a_pq}) @ [[c, s], [-s, c]]
                u = np.empty((a.shape[0], 2, 2), dtype=complex)
                u[:, 0, 0] = c
                u[:, 0, 1] = s
                u[:, 1, 0] = -s * phase
                u[:, 1, 1] = c * phase
                idx = [p, q]
                a[:, :, idx] = a[:, :, idx] @ u
                a[:, idx, :] = dagger(u) @ a[:, idx, :]
                v[:, :, idx] = v[:, :, idx] @ u
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
    else:
        if not np.all(_offdiag_norm(a) <= target):
            raise RuntimeError("Jacobi iteration did not converge")

    w = np.einsum("bii->bi", a).real
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w.reshape(batch_shape + (n,)), v.reshape(batch_shape + (n, n))


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Real eigenvalues of Hermitian matrices, descending."""
    return hermitian_eigh(m)[0]


def partial_trace(rho: np.ndarray, qubit: int) -> np.ndarray:
    """Trace out ``qubit`` (1-based). Accepts a stack of density matrices."""
    rho = np.asarray(rho, dtype=complex)
    n = num_qubits(rho)
    if n < 2:
        raise ValueError("partial trace needs at least two qubits")
    k = _check_qubit(n, qubit)
    lead = rho.ndim - 2
    t = rho.reshape(rho.shape[:-2] + (2,) * (2 * n))
    t = np.trace(t, axis1=lead + k, axis2=lead + n + k)
    d = 2 ** (n - 1)
    return t.reshape(rho.shape[:-2] + (d, d))


def reduce_to(rho: np.ndarray, keep: tuple[int, ...]) -> np.ndarray:
    """Reduced state on the qubits in ``keep`` (1-based, ascending)."""
    n = num_qubits(rho)
    for qubit in sorted(set(range(1, n + 1)) - set(keep), reverse=True):
        rho = partial_trace(rho, qubit)
    return rho


def partial_transpose(rho: np.ndarray, qubit: int) -> np.ndarray:
    """Transpose the ``qubit`` factor (1-based). Exact involution."""
    rho = np.asarray(rho, dtype=complex)
    n = num_qubits(rho)
    k = _check_qubit(n, qubit)
    lead = rho.ndim - 2
    t = rho.reshape(rho.shape[:-2] + (2,) * (2 * n))
    t = np.swapaxes(t, lead + k, lead + n + k)
    return t.reshape(rho.shape)


def density_violations(m: np.ndarray) -> list[Violation]:
    """Every density-matrix invariant that ``m`` (or any matrix in a stack) breaks."""
    tol = get_tolerances()
    m = np.asarray(m, dtype=complex)
    try:
        num_qubits(m)
    except DimensionError:
        return [Violation("shape", float("inf"))]
    out = []
    herm = float(np.max(np.abs(m - dagger(m)), initial=0.0))
    if herm > tol.equality:
        out.append(Violation("hermitian", herm))
    trace_err = float(np.max(np.abs(np.trace(m, axis1=-2, axis2=-1) - 1.0)))
    if trace_err > tol.equality:
        out.append(Violation("trace", trace_err))
    if herm <= tol.hermitian_input:
        min_eig = float(np.min(hermitian_eigenvalues(m)))
        if min_eig < -tol.psd_slack:
            out.append(Violation("psd", -min_eig))
    return out


def validate_density(m: np.ndarray) -> np.ndarray:
    """Return ``m`` as a read-only complex array if it is a valid density matrix.

    Raises :class:`DensityMatrixError` naming each failed invariant and how
    far it is off.
    """
    violations = density_violations(m)
    if violations:
        raise DensityMatrixError(violations)
    out = np.array(m, dtype=complex)
    out.setflags(write=False)
    return out
