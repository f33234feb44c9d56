"""
Field-data stand-in: telemetry over a heating/cooling/idle day schedule

Unlike fault-test telemetry, field records carry no mass. Mass decays at
the mode's controlled rate while a leak interval is active, and each
mode's temperature follows its own scaling law against the original
charge.
"""

from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
import pandas as pd

from ..core.constants import SECONDS_PER_DAY
from ..core.errors import ConfigurationError, DomainError
from ..core.logger import get_logger
from ..core.telemetry import OperationMode, TelemetryRecord
from .fault_test import DEFAULT_EPOCH
from .leak_dynamics import control_exponent

logger = get_logger(__name__)


@dataclass(frozen=True)
class ScheduleSegment:
    """A run of whole days in one operation mode"""

    mode: OperationMode
    days: int

    def __post_init__(self):
        if self.days < 1:
            raise DomainError(f"segment must span at least one day, got {self.days}")


@dataclass(frozen=True)
class ModeControl:
    """Constant control parameters of one operation mode"""

    c_m: float
    c_p: float

    @property
    def exponent(self) -> float:
        return control_exponent(self.c_m, self.c_p)


@dataclass
class FieldRun:
    """Simulated field telemetry plus day-level ground truth"""

    records: List[TelemetryRecord]
    truth: pd.DataFrame  # columns: date, mode, y_mean, y_end
    exponents: Dict[OperationMode, float]

    def crossing_date(self, threshold: float):
        """First date whose mean true leak degree reaches threshold, or None"""
        hits = self.truth[self.truth["y_mean"] >= threshold]
        return None if hits.empty else hits["date"].iloc[0]


def simulate_field_schedule(
    segments: Sequence[ScheduleSegment],
    controls: Mapping[OperationMode, ModeControl],
    base_temperatures: Mapping[OperationMode, float],
    leak_rate: float,
    leak_intervals: Sequence[Tuple[float, float]] = (),
    initial_mass: float = 18.0,
    cadence: float = 3600.0,
    noise_sigma: float = 0.0,
    seed: int = 0,
    idle_temperature: float = 293.15,
    epoch: datetime = DEFAULT_EPOCH,
    include_mass: bool = False,
) -> FieldRun:
    """
    Simulate field telemetry for a mode schedule

    Args:
        segments: Consecutive day runs per mode
        controls: (c_M, c_p) for heating and cooling; idle is uncontrolled
        base_temperatures: Leak-free mode temperature (kelvin) per mode
        leak_rate: k = (S / V) * v_z in 1/s
        leak_intervals: (start_day, end_day) pairs during which the leak is active
        initial_mass: Original charge M0 in kg
        cadence: Seconds between records; must divide one day
        noise_sigma: Std-dev of Gaussian noise on log temperature
        seed: PRNG seed
        idle_temperature: Reading of every sensor on idle days
        epoch: UTC instant of day 0, 00:00
        include_mass: Also write the true mass into each record

    Returns:
        FieldRun with records and daily ground truth
    """
    if not segments:
        raise DomainError("schedule must contain at least one segment")
    if not cadence > 0 or SECONDS_PER_DAY % cadence:
        raise DomainError(f"cadence must divide {SECONDS_PER_DAY} s, got {cadence}")
    used = {s.mode for s in segments if s.mode != OperationMode.IDLE}
    missing = used - set(controls) | used - set(base_temperatures)
    if missing:
        raise ConfigurationError(
            f"no control or base temperature for modes: {sorted(m.value for m in missing)}"
        )

    day_modes = [s.mode for s in segments for _ in range(s.days)]
    per_day = int(SECONDS_PER_DAY // cadence)
    n = len(day_modes) * per_day
    times = cadence * np.arange(n)
    day_index = np.arange(n) // per_day
    modes = [day_modes[d] for d in day_index]

    active = np.zeros(n, dtype=bool)
    for start_day, end_day in leak_intervals:
        active |= (times >= start_day * SECONDS_PER_DAY) & (times < end_day * SECONDS_PER_DAY)

    compensation = np.array(
        [0.0 if m == OperationMode.IDLE else controls[m].c_m for m in modes]
    )
    rate = np.where(active, (1.0 - compensation) * leak_rate, 0.0)
    exposure = np.concatenate([[0.0], np.cumsum(rate * cadence)[:-1]])
    mass = initial_mass * np.exp(-exposure)

    rng = np.random.default_rng(seed)
    noise = np.exp(rng.normal(0.0, noise_sigma, n)) if noise_sigma > 0 else np.ones(n)

    heating_base = base_temperatures.get(OperationMode.HEATING, idle_temperature)
    cooling_base = base_temperatures.get(OperationMode.COOLING, idle_temperature)
    records = []
    for i, mode in enumerate(modes):
        timestamp = epoch + timedelta(seconds=float(times[i]))
        if mode == OperationMode.IDLE:
            sensors = (idle_temperature, idle_temperature, idle_temperature)
        else:
            temp = base_temperatures[mode] * np.exp(-controls[mode].exponent * exposure[i]) * noise[i]
            if mode == OperationMode.HEATING:
                sensors = (float(temp), cooling_base, cooling_base)
            else:
                sensors = (heating_base, float(temp), float(temp))
        records.append(
            TelemetryRecord(
                timestamp=timestamp,
                mode=mode,
                temp_discharge=sensors[0],
                temp_intake_1=sensors[1],
                temp_intake_2=sensors[2],
                mass=float(mass[i]) if include_mass else None,
            )
        )

    leak_degree = 1.0 - mass / initial_mass
    truth = (
        pd.DataFrame({"day": day_index, "y": leak_degree})
        .groupby("day")["y"]
        .agg(y_mean="mean", y_end="last")
        .reset_index()
    )
    truth["date"] = [(epoch + timedelta(days=int(d))).date() for d in truth["day"]]
    truth["mode"] = [day_modes[int(d)] for d in truth["day"]]
    truth = truth[["date", "mode", "y_mean", "y_end"]]

    logger.info(
        f"Field schedule simulated: {len(day_modes)} days, {n} records, "
        f"final leak degree {leak_degree[-1]:.4f}"
    )
    return FieldRun(
        records=records,
        truth=truth,
        exponents={m: controls[m].exponent for m in used},
    )
