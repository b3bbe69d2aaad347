"""Maximal steered coherence of two qubits in multiple Lorentzian reservoirs."""

from .entanglement import (
    cnot_convert,
    concurrence_general,
    concurrence_x_state,
    entanglement_ratio,
    optimal_success_probability,
    unsteered_conversion_check,
)
from .evolution import (
    PSI_PLUS,
    BellLikeState,
    Family,
    bell_like_evolved,
    evolve_pair,
    evolve_single,
    transfer_coefficients,
)
from .qcore import (
    BasisChoice,
    InvalidStateError,
    eigensystem_hermitian,
    partial_trace_A,
    partial_trace_B,
    trace_distance,
    validate,
    von_neumann_entropy,
)
from .reservoir import (
    Regime,
    RegimeError,
    ReservoirBank,
    blp_measure,
    blp_numeric_oracle,
    bri_measure,
    critical_reservoir_number,
    d_parameter,
    decay_amplitude,
    peak_time,
    regime,
    zero_time,
)
from .steering import (
    Measure,
    MeasurementDirection,
    conditional_state,
    l1_coherence,
    max_coherence_under_unitary,
    msc_l1_closed_form,
    msc_l1_unitary_optimized,
    msc_numeric,
    msc_peak_value,
    optimal_polar_angle,
    reference_basis,
    rel_entropy_coherence,
    steering_advantage_threshold,
    unassisted_coherence,
)

__version__ = "0.1.0"
