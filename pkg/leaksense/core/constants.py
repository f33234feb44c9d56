"""
Core constants for leaksense
Centralized defaults and thresholds
"""

# Units
ABSOLUTE_ZERO_CELSIUS: float = -273.15
SECONDS_PER_DAY: int = 86400

# Diagnosis defaults
DEFAULT_WINDOW_DAYS: int = 7  # initial-temperature collection period and smoothing window
DEFAULT_THRESHOLD: float = 0.5  # leak degree that raises the alarm
DEFAULT_SIGNIFICANCE_LEVEL: float = 0.05

# Regression
MIN_FIT_POINTS: int = 3

# Simulation
MAX_STEP_RATE: float = 0.1  # bound on (1 - c_M) * k * dt for the RK4 path
STATE_CONSISTENCY_RTOL: float = 1e-9

# CLI exit codes
EXIT_OK: int = 0
EXIT_ERROR: int = 1
EXIT_DETECTED: int = 2

# Output formatting
REPORT_SIGNIFICANT_DIGITS: int = 6

# CSV headers
TELEMETRY_COLUMNS = (
    "timestamp",
    "mode",
    "temp_discharge",
    "temp_intake_1",
    "temp_intake_2",
    "mass",
)
GROUND_TRUTH_COLUMNS = ("t_s", "mass_kg", "pressure_pa", "temp_k", "y")
LEAK_TRACE_COLUMNS = ("date", "mode", "y_raw", "y_smooth", "y_mono", "detected")
