"""Exact decoherence of three central qubits coupled to a transverse-field XY chain."""
from .coherence import (
    CRITICAL_FIELD,
    CoherenceSeries,
    PairSelector,
    ScalingMode,
    ScalingRule,
    SweepGrid,
    apply_scaling,
    coherence_curve,
    coherence_factor,
    coherence_series,
    curve_minimum,
    default_time_step,
    mode_factor,
    scaling_residual,
    size_scan,
    sweep,
    time_grid,
)
from .oracle import build_mode_hamiltonian, ground_state, mode_overlap, oracle_coherence, oracle_curve
from .qstate import (
    coherence_matrix,
    concurrence,
    evolve_reduced,
    fidelity_with_pure,
    npt_negativity,
    partial_trace,
    preset_state,
    von_neumann_entropy,
)
from .spectrum import BASIS_LABELS, ChainParams, ModeData, mode_data, momentum_grid, shifted_lambda

__version__ = "0.1.0"
