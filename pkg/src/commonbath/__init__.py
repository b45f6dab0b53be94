"""Steady states, entanglement and heat transport of two coupled qubits
attached to two independent thermal reservoirs and one common reservoir.

The global (eigenbasis, secular) master equation is assembled as an explicit
16x16 generator; steady states come from its SVD null space, with an
independent fixed-step RK4 propagator available as a cross-check.
"""

from .errors import (
    NonXStateError,
    SecularApproximationWarning,
    SolverError,
    ValidationError,
)
from .harness import (
    RatioRow,
    ScenarioConfig,
    SweepAxis,
    SweepRow,
    dephasing_rate_from_times,
    emit_csv,
    emit_ratio_csv,
    parse_config,
    preset_config,
    preset_names,
    ratio_sweep,
    read_config,
    run_implementation_scenario,
    run_scenario,
)
from .lindblad import (
    BathConfig,
    Liouvillian,
    build_liouvillian,
    dissipator_common,
    dissipator_dephasing,
    dissipator_independent,
    propagate,
    steady_state,
    validate_density_matrix,
)
from .model import (
    Eigensystem,
    JumpOperator,
    JumpOperatorSet,
    SystemParams,
    bose_occupation,
    build_hamiltonian,
    diagonalize,
    jump_operators,
)
from .observables import (
    SteadyReport,
    concurrence_wootters,
    concurrence_x,
    effective_temperatures,
    enhancement_threshold,
    find_thermalization_detuning,
    heat_current,
    steady_report,
    to_free_basis,
)

__version__ = "0.1.0"

__all__ = [
    "BathConfig",
    "Eigensystem",
    "JumpOperator",
    "JumpOperatorSet",
    "Liouvillian",
    "NonXStateError",
    "RatioRow",
    "ScenarioConfig",
    "SecularApproximationWarning",
    "SolverError",
    "SteadyReport",
    "SweepAxis",
    "SweepRow",
    "SystemParams",
    "ValidationError",
    "bose_occupation",
    "build_hamiltonian",
    "build_liouvillian",
    "concurrence_wootters",
    "concurrence_x",
    "dephasing_rate_from_times",
    "diagonalize",
    "dissipator_common",
    "dissipator_dephasing",
    "dissipator_independent",
    "effective_temperatures",
    "emit_csv",
    "emit_ratio_csv",
    "enhancement_threshold",
    "find_thermalization_detuning",
    "heat_current",
    "jump_operators",
    "parse_config",
    "preset_config",
    "preset_names",
    "propagate",
    "ratio_sweep",
    "read_config",
    "run_implementation_scenario",
    "run_scenario",
    "steady_report",
    "steady_state",
    "to_free_basis",
    "validate_density_matrix",
]
