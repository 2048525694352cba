"""plagate: design and power analysis of footer-gated programmable logic arrays.

Synthesizes conventional and sleep-transistor-gated two-level array
netlists from .pla descriptions, models subthreshold leakage and the
footer virtual-ground balance, produces calibrated per-vector per-line
power reports, and simulates step-input transients including wake-up of
the virtual-ground node.
"""

from .device import (
    DeviceParams,
    FooterConfig,
    PowerBreakdown,
    SupplyConfig,
    VirtualGround,
    average_power,
    leakage_saving_ratio,
    subthreshold_leakage,
    virtual_ground_closed_form,
    virtual_ground_numeric,
)
from .errors import (
    CalibrationError,
    CapacityError,
    ModeError,
    NoSolutionError,
    ParameterError,
    PlagateError,
    PlaParseError,
    ReportShapeError,
    StabilityError,
    SynthesisError,
    WakeupTimeoutError,
)
from .netlist import (
    GatedNetlist,
    GateInstance,
    SleepDomain,
    evaluate_netlist,
    set_mode,
    synthesize,
)
from .pla import (
    PlaPersonality,
    evaluate,
    expand_minterms,
    load_pla,
    parse_pla,
    serialize,
)
from .power import (
    CalibrationResult,
    ComparisonSummary,
    LineCalibration,
    PowerReport,
    PowerRow,
    calibrate,
    compare_designs,
    derive_calibration,
    line_power,
    load_report_csv,
    sweep_all_vectors,
)
from .transient import (
    RcStage,
    Waveform,
    exact_step_response,
    footer_resistance,
    simulate_step,
    wakeup_latency,
)

__version__ = "0.1.0"

__all__ = [
    "DeviceParams",
    "FooterConfig",
    "PowerBreakdown",
    "SupplyConfig",
    "VirtualGround",
    "average_power",
    "leakage_saving_ratio",
    "subthreshold_leakage",
    "virtual_ground_closed_form",
    "virtual_ground_numeric",
    "CalibrationError",
    "CapacityError",
    "ModeError",
    "NoSolutionError",
    "ParameterError",
    "PlagateError",
    "PlaParseError",
    "ReportShapeError",
    "StabilityError",
    "SynthesisError",
    "WakeupTimeoutError",
    "GatedNetlist",
    "GateInstance",
    "SleepDomain",
    "evaluate_netlist",
    "set_mode",
    "synthesize",
    "PlaPersonality",
    "evaluate",
    "expand_minterms",
    "load_pla",
    "parse_pla",
    "serialize",
    "CalibrationResult",
    "ComparisonSummary",
    "LineCalibration",
    "PowerReport",
    "PowerRow",
    "calibrate",
    "compare_designs",
    "derive_calibration",
    "line_power",
    "load_report_csv",
    "sweep_all_vectors",
    "RcStage",
    "Waveform",
    "exact_step_response",
    "footer_resistance",
    "simulate_step",
    "wakeup_latency",
    "__version__",
]
