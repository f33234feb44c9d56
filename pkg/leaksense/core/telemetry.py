"""
Telemetry domain types for leaksense
Operation modes, timestamped readings, and daily aggregation in kelvin
"""

from dataclasses import dataclass
from datetime import date, datetime, timezone
from enum import Enum
from typing import Dict, List, Optional, Sequence

import pandas as pd

from .constants import ABSOLUTE_ZERO_CELSIUS
from .errors import InapplicableModeError, OrderingError, RangeError


class OperationMode(str, Enum):
    """Air-conditioner operation mode"""

    HEATING = "heating"
    COOLING = "cooling"
    IDLE = "idle"

    @classmethod
    def parse(cls, value: str) -> "OperationMode":
        """Case-insensitive lookup by value"""
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise ValueError(f"Unknown operation mode: {value!r}")


class TemperatureUnit(str, Enum):
    """Temperature scale declared by a telemetry file"""

    KELVIN = "kelvin"
    CELSIUS = "celsius"


# Deterministic order used wherever modes are iterated
ACTIVE_MODES = (OperationMode.HEATING, OperationMode.COOLING)


@dataclass(frozen=True)
class TelemetryRecord:
    """
    One timestamped reading

    Temperatures are in kelvin; mass is only present for laboratory
    fault-test data.
    """

    timestamp: datetime
    mode: OperationMode
    temp_discharge: float
    temp_intake_1: float
    temp_intake_2: float
    mass: Optional[float] = None

    def __post_init__(self):
        """Validate reading"""
        for name in ("temp_discharge", "temp_intake_1", "temp_intake_2"):
            value = getattr(self, name)
            if not value > 0:
                raise RangeError(f"{name} must be positive kelvin, got {value}")
        if self.mass is not None and not self.mass > 0:
            raise RangeError(f"mass must be positive, got {self.mass}")
        if self.timestamp.tzinfo is None:
            object.__setattr__(
                self, "timestamp", self.timestamp.replace(tzinfo=timezone.utc)
            )

    @property
    def day(self) -> date:
        return self.timestamp.astimezone(timezone.utc).date()


@dataclass(frozen=True)
class DailySample:
    """Daily mean of the mode-relevant temperature (kelvin) and mass (kg)"""

    date: date
    mode: OperationMode
    temp: float
    mass: Optional[float] = None

    def __post_init__(self):
        if not self.temp > 0:
            raise RangeError(f"temp must be positive kelvin, got {self.temp}")


def celsius_to_kelvin(t_c: float) -> float:
    """
    Convert degrees Celsius to kelvin

    Raises:
        RangeError: If the value is at or below absolute zero
    """
    if not t_c > ABSOLUTE_ZERO_CELSIUS:
        raise RangeError(f"{t_c} °C is at or below absolute zero")
    return t_c - ABSOLUTE_ZERO_CELSIUS


def kelvin_to_celsius(t_k: float) -> float:
    return t_k + ABSOLUTE_ZERO_CELSIUS


def to_kelvin(value: float, unit: TemperatureUnit) -> float:
    """Convert a reading in the declared unit to kelvin"""
    if unit == TemperatureUnit.CELSIUS:
        return celsius_to_kelvin(value)
    if not value > 0:
        raise RangeError(f"{value} K is not a positive absolute temperature")
    return value


def from_kelvin(value: float, unit: TemperatureUnit) -> float:
    return kelvin_to_celsius(value) if unit == TemperatureUnit.CELSIUS else value


def mode_temperature(rec: TelemetryRecord) -> float:
    """
    Temperature that carries the leak signal in the record's mode

    Heating uses the discharge pipe; cooling uses the mean of the two
    intake pipes.

    Raises:
        InapplicableModeError: For idle records
    """
    if rec.mode == OperationMode.HEATING:
        return rec.temp_discharge
    if rec.mode == OperationMode.COOLING:
        return (rec.temp_intake_1 + rec.temp_intake_2) / 2.0
    raise InapplicableModeError(
        "idle records have no mode temperature",
        details={"timestamp": rec.timestamp.isoformat()},
    )


def check_sorted(records: Sequence[TelemetryRecord]) -> None:
    """Raise OrderingError unless timestamps are non-decreasing"""
    for i in range(1, len(records)):
        if records[i].timestamp < records[i - 1].timestamp:
            raise OrderingError(
                f"record {i} ({records[i].timestamp.isoformat()}) precedes "
                f"record {i - 1} ({records[i - 1].timestamp.isoformat()})"
            )


def _dominant_mode(
    counts: Dict[OperationMode, int], previous: Optional[OperationMode]
) -> OperationMode:
    top = max(counts.values())
    tied = [m for m in ACTIVE_MODES if counts.get(m, 0) == top]
    if len(tied) == 1:
        return tied[0]
    if previous in tied:
        return previous
    return OperationMode.HEATING


def daily_aggregate(records: Sequence[TelemetryRecord]) -> List[DailySample]:
    """
    Aggregate sorted telemetry into one sample per UTC day

    The day's dominant mode is the one with most non-idle records; ties go
    to the previous day's dominant mode, then to heating. Idle-only days
    are omitted.

    Args:
        records: Telemetry sorted by timestamp

    Returns:
        Daily samples, strictly increasing in date
    """
    if not records:
        return []
    check_sorted(records)

    active = [r for r in records if r.mode != OperationMode.IDLE]
    if not active:
        return []

    frame = pd.DataFrame(
        {
            "date": [r.day for r in active],
            "mode": [r.mode for r in active],
            "temp": [mode_temperature(r) for r in active],
            "mass": [float("nan") if r.mass is None else r.mass for r in active],
        }
    )
    grouped = frame.groupby(["date", "mode"], sort=False).agg(
        n=("temp", "size"),
        temp=("temp", "mean"),
        mass=("mass", "mean"),
        n_mass=("mass", "count"),
    )

    samples: List[DailySample] = []
    previous: Optional[OperationMode] = None
    for day in sorted(frame["date"].unique()):
        per_mode = grouped.loc[day]
        counts = {mode: int(row["n"]) for mode, row in per_mode.iterrows()}
        mode = _dominant_mode(counts, previous)
        row = per_mode.loc[mode]
        mass = float(row["mass"]) if int(row["n_mass"]) == int(row["n"]) else None
        samples.append(DailySample(date=day, mode=mode, temp=float(row["temp"]), mass=mass))
        previous = mode
    return samples


def record_samples(records: Sequence[TelemetryRecord]) -> List[DailySample]:
    """One sample per non-idle record, for fitting at raw granularity"""
    return [
        DailySample(date=r.day, mode=r.mode, temp=mode_temperature(r), mass=r.mass)
        for r in records
        if r.mode != OperationMode.IDLE
    ]
