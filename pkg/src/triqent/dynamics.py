"""Dephasing sweeps, closed-form decay laws and sudden-death thresholds.

Three initial families are studied, each a white-noise mixture
``(1-q)/8 I + q |psi><psi|`` of

* ``GHZ``: ``(|000> + |111>)/sqrt(2)``
* ``W``:   ``(|001> + |010> + |100>)/sqrt(3)``
* ``GB``:  ``2/3 (|000> + |111>) + 1/3 |110>``

evolved under equal dephasing of all three qubits with ``p = 1 - exp(-kappa t)``.

Quantities are reported so that positive means "present / detected":
witnesses as ``-Tr(W rho)``, measures as their non-negative value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import measures
from .channels import apply_channel, equal_dephasing, p_of_time
from .config import get_tolerances
from .qlinalg import reduce_to
from .states import gb_state, ghz_state, noisy_mixtures, w_state
from .witnesses import Witness, build, expectation, optimize_theta

FAMILIES = ("GHZ", "W", "GB")
QUANTITIES = ("witness_G", "witness_W", "N", "N3", "C12", "C13", "C23")
KAPPA_T_MAX = 50.0

_STATES = {"GHZ": ghz_state, "W": w_state, "GB": gb_state}
_PAIR_OF = {"C12": (1, 2), "C13": (1, 3), "C23": (2, 3)}


@dataclass(frozen=True)
class CurveSample:
    family: str
    q: float
    kappa_t: float
    quantity: str
    value: float


@dataclass(frozen=True)
class ThresholdResult:
    """Last zero crossing of a quantity in ``kappa_t``.

    ``kappa_t_star`` is ``None`` when the quantity is still positive at the
    end of the search window ("never" dies).
    """

    family: str
    quantity: str
    q: float
    kappa_t_star: float | None
    bracket_width: float
    diagnostic: str | None = None

    @property
    def never(self) -> bool:
        return self.kappa_t_star is None


def _check_family(family: str) -> str:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return family


@lru_cache(maxsize=None)
def gb_theta() -> float:
    """Qubit-3 rotation angle of the GB witnesses, optimised on the pure GB state."""
    return optimize_theta(gb_state(), "W_Ggb")[0]


def family_witnesses(family: str) -> dict[str, Witness]:
    """Quantity name -> witness used for that family."""
    family = _check_family(family)
    if family == "GHZ":
        return {"witness_G": build("W_G"), "witness_W": build("W_W2")}
    if family == "W":
        return {"witness_W": build("W_W1")}
    theta = gb_theta()
    return {"witness_G": build("W_Ggb", theta), "witness_W": build("W_Wgb", theta)}


def quantities_for(family: str) -> tuple[str, ...]:
    wit = family_witnesses(family)
    return tuple(x for x in QUANTITIES if not x.startswith("witness") or x in wit)


def evolve(family: str, q, kappa_t) -> np.ndarray:
    """Dephased family state; ``q`` and ``kappa_t`` broadcast to a stack."""
    family = _check_family(family)
    q, kt = np.broadcast_arrays(np.asarray(q, dtype=float), np.asarray(kappa_t, dtype=float))
    rho0 = noisy_mixtures(_STATES[family](), q)
    return apply_channel(rho0, equal_dephasing(p_of_time(kt)))


def evaluate(family: str, quantities, q, kappa_t) -> dict[str, np.ndarray]:
    """Numeric values of several quantities from the density-matrix pipeline."""
    if isinstance(quantities, str):
        quantities = (quantities,)
    allowed = quantities_for(family)
    for name in quantities:
        if name not in allowed:
            raise ValueError(f"quantity {name!r} not available for {family}; choose from {allowed}")
    rho = evolve(family, q, kappa_t)
    out: dict[str, np.ndarray] = {}
    wits = family_witnesses(family)
    negs = None
    for name in quantities:
        if name in wits:
            out[name] = -np.asarray(expectation(wits[name], rho))
        elif name in ("N", "N3"):
            if negs is None:
                negs = measures.partition_negativities(rho)
            if name == "N":
                out[name] = np.max(negs, axis=-1)
            else:
                out[name] = np.asarray(measures.tri_negativity_from(negs))
        else:
            out[name] = np.asarray(measures.concurrence(reduce_to(rho, _PAIR_OF[name])))
    return out


def value(family: str, quantity: str, q, kappa_t):
    v = evaluate(family, (quantity,), q, kappa_t)[quantity]
    return float(v) if np.ndim(v) == 0 else v


# ---------------------------------------------------------------------------
# closed forms

def _ghz_closed(quantity, q, kt):
    e3 = np.exp(-1.5 * kt)
    if quantity == "witness_W":
        return -(3 - 3 * q - 4 * q * e3) / 8
    if quantity == "witness_G":
        return -(5 - 3 * q - 4 * q * e3) / 8
    if quantity in ("N", "N3"):
        return np.maximum(0.0, -(1 - q - 4 * q * e3) / 8)
    if quantity == "C12":
        return np.zeros(np.broadcast(q, kt).shape)
    return None


def _w_closed(quantity, q, kt):
    e = np.exp(-kt)
    if quantity == "witness_W":
        return -(13 - q * (5 + 16 * e)) / 24
    if quantity in ("N", "N3"):
        return np.maximum(0.0, -(3 - q * (3 + 8 * np.sqrt(2) * e)) / 24)
    if quantity == "C12":
        return np.maximum(0.0, (4 * q * e - np.sqrt(np.maximum(-3 * (q - 1) * (q + 3), 0.0))) / 6)
    return None


def _gb_closed(quantity, q, kt):
    e = np.exp(-kt)
    e3 = np.exp(-1.5 * kt)
    theta = gb_theta()
    c, s = math.cos(theta), math.sin(theta)
    if quantity in ("witness_W", "witness_G"):
        inner = 9 + 14 * c + 8 * e * s + 8 * e3 * (2 + 2 * c + np.exp(kt) * s)
        wit = -(27 - q * inner) / 72
        return wit if quantity == "witness_W" else wit - 0.25
    if quantity == "N":
        # overall sign chosen so the root sits at q = 9/(9 + 16 sqrt5) ~ .201
        return np.maximum(0.0, (-9 + 9 * q + 16 * q * np.sqrt(np.exp(-3 * kt) * (4 + np.exp(kt)))) / 72)
    if quantity == "C12":
        root = np.sqrt((9 + 7 * q) * (9 + 11 * q))
        base = 81 + q * q * (77 + 64 * e * e)
        minus = np.sqrt(base + 2 * q * (81 - 8 * e * root))
        plus = np.sqrt(base + 2 * q * (81 + 8 * e * root))
        return np.maximum(0.0, (q - 1) / 2 - minus / 36 + plus / 36)
    return None


_CLOSED = {"GHZ": _ghz_closed, "W": _w_closed, "GB": _gb_closed}

# where each closed form comes from: the summary table, the running text,
# a derivation from another cell, or a reconstruction of a damaged cell
CELL_STATUS = {
    ("GHZ", "witness_W"): "table",
    ("GHZ", "witness_G"): "text",
    ("GHZ", "N"): "table",
    ("GHZ", "N3"): "table",
    ("GHZ", "C12"): "table",
    ("W", "witness_W"): "table",
    ("W", "N"): "table",
    ("W", "N3"): "table",
    ("W", "C12"): "table",
    ("GB", "witness_W"): "table",
    ("GB", "witness_G"): "derived",
    ("GB", "N"): "table",
    ("GB", "C12"): "reconstructed",
}


def closed_form(family: str, quantity: str, q, kappa_t, *, include_reconstructed: bool = True):
    """Closed-form decay law, or ``None`` where none is known.

    ``quantity`` may be ``"witness"`` as an alias for ``"witness_W"``.
    Measures are clipped at zero; witnesses are reported as ``-Tr(W rho)``.
    The GB pair-concurrence cell is a reconstruction of a typographically
    damaged expression and can be excluded with ``include_reconstructed``.
    """
    if quantity == "witness":
        quantity = "witness_W"
    status = CELL_STATUS.get((family, quantity))
    if status is None or (status == "reconstructed" and not include_reconstructed):
        return None
    q = np.asarray(q, dtype=float)
    kt = np.asarray(kappa_t, dtype=float)
    out = np.asarray(_CLOSED[family](quantity, q, kt), dtype=float)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# thresholds

def _bisect_last_positive(pred, lo: float, hi: float, xtol: float) -> tuple[float, float]:
    """Shrink ``[lo, hi]`` with ``pred(lo)`` true and ``pred(hi)`` false."""
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), hi - lo


def indicator(family: str, quantity: str, q, kappa_t):
    """Signed, unclipped stand-in for ``quantity``: positive exactly where it is.

    Witnesses use ``-Tr(W rho)``; ``N`` and ``N3`` use the largest/smallest of
    ``-lambda_min`` of the three partial transposes; concurrences use the
    signed Wootters combination. Dead quantities make it clearly negative,
    while an exponentially small survivor leaves it at round-off level.
    """
    if quantity not in quantities_for(family):
        raise ValueError(f"quantity {quantity!r} not available for {family}")
    rho = evolve(family, q, kappa_t)
    wits = family_witnesses(family)
    if quantity in wits:
        out = -np.asarray(expectation(wits[quantity], rho))
    elif quantity in ("N", "N3"):
        neg_min = -measures.partition_min_eigenvalues(rho)
        out = neg_min.max(axis=-1) if quantity == "N" else neg_min.min(axis=-1)
    else:
        out = np.asarray(measures.concurrence_lambda(reduce_to(rho, _PAIR_OF[quantity])))
    return float(out) if np.ndim(out) == 0 else out


def esd_threshold(
    family: str,
    quantity: str,
    q: float,
    *,
    kappa_t_max: float = KAPPA_T_MAX,
    coarse_points: int = 201,
    xtol: float = 1e-8,
) -> ThresholdResult:
    """Time at which ``quantity`` last drops to zero (or below, for witnesses).

    Reports "never" when the quantity has not clearly died by ``kappa_t_max``.
    """
    q = float(q)
    floor = get_tolerances().zero_measure
    grid = np.linspace(0.0, kappa_t_max, coarse_points)
    ind = indicator(family, quantity, q, grid)
    if ind[-1] >= -floor:
        diag = None
        cf = closed_form(family, quantity, q, kappa_t_max)
        # measure closed forms are clipped at zero, so only witnesses are checkable
        if quantity.startswith("witness") and cf is not None and cf < -floor:
            diag = "numerics survive to the window end but the closed form does not"
        return ThresholdResult(family, quantity, q, None, 0.0, diag)
    alive = ind > 0
    if not alive.any():
        return ThresholdResult(
            family, quantity, q, 0.0, 0.0, "quantity is not positive at kappa_t = 0"
        )
    i = int(np.flatnonzero(alive)[-1])
    diag = None
    if not alive[: i + 1].all():
        diag = "quantity revives after an earlier zero; reporting the last crossing"
    star, width = _bisect_last_positive(
        lambda t: indicator(family, quantity, q, t) > 0, grid[i], grid[i + 1], xtol
    )
    return ThresholdResult(family, quantity, q, star, width, diag)


def q_threshold(family: str, quantity: str, *, kappa_t: float = 0.0, xtol: float = 1e-11) -> float:
    """Smallest mixing weight ``q`` at which ``quantity`` becomes positive."""
    def dead(x):
        return not indicator(family, quantity, x, kappa_t) > 0

    if not dead(0.0) or dead(1.0):
        raise ValueError(f"{family} {quantity} has no zero crossing in q on [0, 1]")
    star, _ = _bisect_last_positive(dead, 0.0, 1.0, xtol)
    return star


def sweep(family: str, q_grid, kappa_t_grid, quantities=None) -> list[CurveSample]:
    """Every quantity at every grid point, ordered by (q, kappa_t, quantity)."""
    family = _check_family(family)
    quantities = quantities_for(family) if quantities is None else tuple(quantities)
    order = sorted(quantities, key=QUANTITIES.index)
    qs = np.asarray(sorted(set(float(x) for x in q_grid)))
    kts = np.asarray(sorted(set(float(x) for x in kappa_t_grid)))
    if qs.size == 0 or kts.size == 0:
        raise ValueError("grids must be non-empty")
    if kts.min() < 0:
        raise ValueError("kappa_t must be non-negative")
    vals = evaluate(family, order, qs[:, None], kts[None, :])
    return [
        CurveSample(family, float(q), float(kt), name, float(vals[name][i, j]))
        for i, q in enumerate(qs)
        for j, kt in enumerate(kts)
        for name in order
    ]
