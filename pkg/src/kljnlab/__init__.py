"""Simulation laboratory for noise-based (KLJN) key exchange.

The package models the resistor/Johnson-noise key exchange loop, the
deterministic battery/switch exchanger it is contrasted with (the "BR"
scheme), the passive and active eavesdropping strategies against both,
and the key-level security arithmetic (per-bit advantage, variational
distance, privacy amplification).
"""

from .noise import (
    BOLTZMANN,
    NoiseSpec,
    RngStream,
    SampleTrace,
    effective_sample_count,
    estimate_psd,
    generate_noise,
    johnson_spectral_density,
)
from .circuits import (
    ChannelTrace,
    LevelTable,
    LoopConfig,
    analytic_levels,
    directional_powers,
    inject_current,
    quasi_static_margin,
    solve_ideal_loop,
    solve_loop_with_wire,
)
from .line import (
    LineModel,
    LineState,
    LineSimulator,
    Termination,
    step_line,
)
from .protocol import (
    BepRecord,
    Classification,
    DefenseConfig,
    Key,
    RandomWalkConfig,
    classify_levels,
    endpoint_comparison_defense,
    leak_cap_filter,
    privacy_amplify,
    run_br_bep,
    run_kljn_bep,
    run_random_walk_bep,
)
from .attacks import (
    AttackVerdict,
    CouplerSpec,
    EveObservables,
    br_damping_attacks,
    br_energy_flow_attacks,
    br_wire_johnson_attack,
    coupler_attack,
    current_injection_attack,
    score_attack,
    transient_attack,
    wire_resistance_attack,
)
from .security import (
    LogDelta,
    QEstimate,
    ScalingFit,
    SecurityReport,
    fit_scaling,
    pa_advantage_map,
    required_q,
    stat_distance_exact,
    stat_distance_linear,
    wilson_interval,
)

__version__ = "0.1.0"
