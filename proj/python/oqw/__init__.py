"""Open discrete-time quantum walks on odd cycles with a coin-dependent phase kick."""

from ._core import (
    ChannelParams,
    InvalidParams,
    InvariantViolation,
    asymptotic_state,
    attractor_basis,
    bloch_vector,
    build_phase_unitary,
    build_walk_unitary,
    channel_step,
    classify_regime,
    coin_purity,
    dark_states,
    evolve,
    kraus_pair,
    min_pt_eigenvalue,
    partial_transpose_coin,
    position_distribution,
    product_state,
    three_cycle_asymptotics,
    trace_distance,
    verify_eigenoperator,
    walk_eigenvalues,
)

__all__ = [
    "ChannelParams",
    "InvalidParams",
    "InvariantViolation",
    "asymptotic_state",
    "attractor_basis",
    "bloch_vector",
    "build_phase_unitary",
    "build_walk_unitary",
    "channel_step",
    "classify_regime",
    "coin_purity",
    "dark_states",
    "evolve",
    "kraus_pair",
    "min_pt_eigenvalue",
    "partial_transpose_coin",
    "position_distribution",
    "product_state",
    "three_cycle_asymptotics",
    "trace_distance",
    "verify_eigenoperator",
    "walk_eigenvalues",
]
