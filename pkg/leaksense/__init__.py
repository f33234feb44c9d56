"""
leaksense: scaling-law soft sensor for refrigerant leak detection

Simulates controlled leak dynamics, fits the scaling exponent from
fault-test data, compares exponents across systems and estimates the
degree of leak online from operating temperatures.
"""

__version__ = "1.0.0"

from .analysis import (
    LogRatioPoint,
    ScalingFit,
    SlopeTest,
    build_log_ratios,
    fit_scaling_exponent,
    student_t_two_sided_p,
)
from .core.errors import LeakSenseError
from .core.telemetry import (
    DailySample,
    OperationMode,
    TelemetryRecord,
    celsius_to_kelvin,
    daily_aggregate,
    mode_temperature,
)
from .diagnosis import LeakTrace, ModeParams, detect, diagnose, estimate_leak
from .simulation import (
    SimParams,
    SimTrace,
    control_exponent,
    export_fault_test,
    simulate_analytic,
    simulate_numeric,
)
