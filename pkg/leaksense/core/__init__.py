# Core module for leaksense

from .errors import LeakSenseError
from .logger import LeakSenseLogger, get_logger
from .telemetry import (
    DailySample,
    OperationMode,
    TelemetryRecord,
    TemperatureUnit,
    celsius_to_kelvin,
    daily_aggregate,
    mode_temperature,
)
