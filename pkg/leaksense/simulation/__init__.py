# Leak simulation for leaksense

from .leak_dynamics import (
    SimParams,
    SimTrace,
    control_exponent,
    simulate_analytic,
    simulate_numeric,
)
from .fault_test import export_fault_test
from .field_schedule import FieldRun, ModeControl, ScheduleSegment, simulate_field_schedule
