"""Numerical tolerances shared by every module.

The equality tolerance can be overridden through the ``TRIQENT_TOL``
environment variable; everything else is fixed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_VAR = "TRIQENT_TOL"


@dataclass(frozen=True)
class Tolerances:
    equality: float = 1e-12
    psd_slack: float = 1e-10
    hermitian_input: float = 1e-10
    zero_measure: float = 1e-12
    eig_offdiag_rel: float = 1e-14
    max_sweeps: int = 500


DEFAULT = Tolerances()


def get_tolerances() -> Tolerances:
    """Return the active tolerances, honouring ``TRIQENT_TOL`` if set."""
    raw = os.environ.get(ENV_VAR)
    if not raw:
        return DEFAULT
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_VAR} must be a positive float, got {raw!r}") from exc
    if not value > 0:
        raise ValueError(f"{ENV_VAR} must be a positive float, got {raw!r}")
    return replace(DEFAULT, equality=value)
