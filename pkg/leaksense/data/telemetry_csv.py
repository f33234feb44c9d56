"""
Telemetry CSV ingestion and export

Header: timestamp,mode,temp_discharge,temp_intake_1,temp_intake_2,mass
Timestamps are ISO-8601 (UTC assumed when no offset is given); mass may be
empty. Temperatures are converted from the declared unit to kelvin.
"""

import math
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Sequence, Union

import pandas as pd
from dateutil import parser as date_parser

from ..core.constants import GROUND_TRUTH_COLUMNS, TELEMETRY_COLUMNS
from ..core.errors import OrderingError, RangeError, SchemaError
from ..core.logger import get_logger
from ..core.telemetry import (
    OperationMode,
    TelemetryRecord,
    TemperatureUnit,
    from_kelvin,
    to_kelvin,
)
from ..simulation.leak_dynamics import SimTrace
from ..utils.helpers import write_frame_atomic

logger = get_logger(__name__)

TIMESTAMP_FORMAT = "%Y-%m-%dT%H:%M:%SZ"

# Data rows start on line 2 of the file; blank lines still count
_HEADER_LINES = 2


def _parse_timestamp(value: str, line: int) -> datetime:
    try:
        parsed = date_parser.isoparse(value.strip())
    except (ValueError, OverflowError) as e:
        raise RangeError(f"invalid ISO-8601 timestamp {value!r}: {e}", line=line)
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def _parse_float(value: str, column: str, line: int) -> float:
    try:
        number = float(value)
    except ValueError:
        raise RangeError(f"{column} is not a number: {value!r}", line=line)
    if not math.isfinite(number):
        raise RangeError(f"{column} must be finite, got {value!r}", line=line)
    return number


def _is_blank(row: pd.Series) -> bool:
    return all(pd.isna(v) or not str(v).strip() for v in row)


def _parse_row(row: pd.Series, line: int, unit: TemperatureUnit) -> TelemetryRecord:
    try:
        mode = OperationMode.parse(row["mode"])
    except ValueError as e:
        raise RangeError(str(e), line=line)

    temps = []
    for column in ("temp_discharge", "temp_intake_1", "temp_intake_2"):
        value = _parse_float(row[column], column, line)
        try:
            temps.append(to_kelvin(value, unit))
        except RangeError as e:
            raise RangeError(f"{column}: {e.message}", line=line)

    raw_mass = row["mass"].strip()
    mass: Optional[float] = None
    if raw_mass:
        mass = _parse_float(raw_mass, "mass", line)
        if not mass > 0:
            raise RangeError(f"mass must be positive, got {raw_mass}", line=line)

    return TelemetryRecord(
        timestamp=_parse_timestamp(row["timestamp"], line),
        mode=mode,
        temp_discharge=temps[0],
        temp_intake_1=temps[1],
        temp_intake_2=temps[2],
        mass=mass,
    )


def parse_telemetry_csv(
    path: Union[str, Path], unit: TemperatureUnit = TemperatureUnit.CELSIUS
) -> List[TelemetryRecord]:
    """
    Read a telemetry CSV into kelvin records

    Args:
        path: CSV file with the telemetry header
        unit: Unit of the temperature columns

    Returns:
        Records in file order

    Raises:
        SchemaError: A required column is missing
        RangeError: A value is malformed or not a positive absolute temperature
        OrderingError: Timestamps decrease
    """
    frame = pd.read_csv(
        path, dtype=str, keep_default_na=False, skipinitialspace=True, skip_blank_lines=False
    )
    frame.columns = [c.strip() for c in frame.columns]
    missing = [c for c in TELEMETRY_COLUMNS if c not in frame.columns]
    if missing:
        raise SchemaError(
            f"{path}: missing column(s) {', '.join(missing)}",
            details={"expected": list(TELEMETRY_COLUMNS), "found": list(frame.columns)},
        )

    unit = TemperatureUnit(unit)
    records: List[TelemetryRecord] = []
    for index, row in frame.iterrows():
        line = int(index) + _HEADER_LINES
        if _is_blank(row):
            continue
        record = _parse_row(row, line, unit)
        if records and record.timestamp < records[-1].timestamp:
            raise OrderingError(
                f"timestamp {record.timestamp.isoformat()} precedes the previous row",
                line=line,
            )
        records.append(record)

    logger.info(f"Parsed {len(records)} telemetry records from {path} ({unit.value})")
    return records


def telemetry_frame(
    records: Sequence[TelemetryRecord], unit: TemperatureUnit = TemperatureUnit.KELVIN
) -> pd.DataFrame:
    """Records as a DataFrame with the telemetry header, temperatures in unit"""
    unit = TemperatureUnit(unit)
    return pd.DataFrame(
        {
            "timestamp": [r.timestamp.strftime(TIMESTAMP_FORMAT) for r in records],
            "mode": [r.mode.value for r in records],
            "temp_discharge": [from_kelvin(r.temp_discharge, unit) for r in records],
            "temp_intake_1": [from_kelvin(r.temp_intake_1, unit) for r in records],
            "temp_intake_2": [from_kelvin(r.temp_intake_2, unit) for r in records],
            "mass": [r.mass for r in records],
        },
        columns=list(TELEMETRY_COLUMNS),
    )


def write_telemetry_csv(
    records: Sequence[TelemetryRecord],
    path: Union[str, Path],
    unit: TemperatureUnit = TemperatureUnit.KELVIN,
) -> Path:
    """Write records atomically; absent mass becomes an empty field"""
    return write_frame_atomic(telemetry_frame(records, unit), path)


def write_ground_truth_csv(trace: SimTrace, path: Union[str, Path]) -> Path:
    """Write t_s,mass_kg,pressure_pa,temp_k,y for a simulated trace"""
    frame = pd.DataFrame(
        {
            "t_s": trace.times,
            "mass_kg": trace.mass,
            "pressure_pa": trace.pressure,
            "temp_k": trace.temperature,
            "y": trace.leak_degree,
        },
        columns=list(GROUND_TRUTH_COLUMNS),
    )
    return write_frame_atomic(frame, path)
