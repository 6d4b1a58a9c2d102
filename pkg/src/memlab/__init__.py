"""Simulation and analysis toolkit for memristive one-ports."""

from .core import (
    ConfigError,
    Drive,
    MemlabError,
    MemristiveOnePort,
    ModelEvaluationError,
    OnePort,
    SignalKind,
    Sinusoid,
    SquareWave,
    Trajectory,
    accumulate_integrals,
    terminal_pair,
)
from .models import (
    AxonParams,
    CapacitorCircuitParams,
    PiecewiseR1,
    SwitchedNetworkParams,
    ThermistorParams,
    axon,
    axon_conductance,
    axon_gate_rates,
    capacitor_circuit,
    closed_switch_count,
    switch_thresholds,
    switched_network,
    switched_resistance,
    thermistor,
    thermistor_equilibrium_temperature,
    thermistor_resistance,
    r1_of_t,
)
from .integrate import (
    BlowUpError,
    EventLocalizationError,
    SimControls,
    SimulationError,
    SteadyStateError,
    detect_steady_state,
    locate_events,
    resolve_step,
    simulate,
)
from .analyze import (
    LinearityFit,
    LoopArea,
    PhiQClassification,
    PhiQKind,
    PinchReport,
    SweepPoint,
    frequency_sweep,
    linearity_fit,
    loop_area,
    per_cycle_drifts,
    phi_q_classify,
    phi_spread_at_equal_q,
    pinch_test,
    sweep_monotonicity,
)
from .expdsl import (
    ExperimentConfig,
    ParseError,
    build_model,
    builtin_presets,
    parse_experiment,
    preset_names,
    preset_source,
    serialize_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "AxonParams",
    "BlowUpError",
    "CapacitorCircuitParams",
    "ConfigError",
    "Drive",
    "EventLocalizationError",
    "ExperimentConfig",
    "LinearityFit",
    "LoopArea",
    "MemlabError",
    "MemristiveOnePort",
    "ModelEvaluationError",
    "OnePort",
    "ParseError",
    "PhiQClassification",
    "PhiQKind",
    "PiecewiseR1",
    "PinchReport",
    "SignalKind",
    "SimControls",
    "SimulationError",
    "Sinusoid",
    "SquareWave",
    "SteadyStateError",
    "SweepPoint",
    "SwitchedNetworkParams",
    "ThermistorParams",
    "Trajectory",
    "accumulate_integrals",
    "axon",
    "axon_conductance",
    "axon_gate_rates",
    "build_model",
    "builtin_presets",
    "capacitor_circuit",
    "closed_switch_count",
    "detect_steady_state",
    "frequency_sweep",
    "linearity_fit",
    "locate_events",
    "loop_area",
    "parse_experiment",
    "per_cycle_drifts",
    "phi_q_classify",
    "phi_spread_at_equal_q",
    "pinch_test",
    "preset_names",
    "preset_source",
    "r1_of_t",
    "resolve_step",
    "serialize_experiment",
    "simulate",
    "sweep_monotonicity",
    "switch_thresholds",
    "switched_network",
    "switched_resistance",
    "terminal_pair",
    "thermistor",
    "thermistor_equilibrium_temperature",
    "thermistor_resistance",
]
