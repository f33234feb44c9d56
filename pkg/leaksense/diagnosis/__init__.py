# Online leak-degree diagnosis for leaksense

from .smoothing import enforce_monotone, moving_average
from .soft_sensor import (
    LeakTrace,
    ModeParams,
    compute_initial_temperature,
    detect,
    diagnose,
    estimate_leak,
    on_mode_switch,
)
