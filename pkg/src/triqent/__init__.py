"""Three-qubit entanglement under dephasing: witnesses, sudden death and phase-flip QEC."""

from .channels import apply_channel, dephasing_pair, p_of_time, three_qubit_dephasing
from .dynamics import closed_form, esd_threshold, evolve, q_threshold, sweep
from .measures import concurrence, negativity, pair_concurrence, purity, tri_negativity
from .qlinalg import partial_trace, partial_transpose, validate_density
from .states import gb_state, ghz_state, noisy_mixture, rotated_ghz, standard_form, w_state
from .witnesses import build as build_witness, expectation, optimize_theta

__version__ = "0.1.0"
