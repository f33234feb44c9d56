"""
Tests for telemetry CSV ingestion and export
"""

from datetime import datetime, timezone

import pandas as pd
import pytest

from leaksense.core.errors import OrderingError, RangeError, SchemaError
from leaksense.core.telemetry import OperationMode, TemperatureUnit
from leaksense.data.telemetry_csv import (
    parse_telemetry_csv,
    write_ground_truth_csv,
    write_telemetry_csv,
)

ROWS = [
    "2024-01-01T00:00:00Z,heating,76.85,20.0,20.0,18.0",
    "2024-01-01T01:00:00Z,heating,77.0,20.0,20.0,",
    "2024-01-01T02:00:00,Cooling,20.0,6.85,6.85,17.5",
]


@pytest.mark.unit
class TestParseTelemetryCsv:
    """Test cases for reading telemetry files"""

    def test_reads_rows(self, write_telemetry):
        records = parse_telemetry_csv(write_telemetry(ROWS))
        assert len(records) == 3
        assert [r.mode for r in records] == [
            OperationMode.HEATING,
            OperationMode.HEATING,
            OperationMode.COOLING,
        ]

    def test_celsius_converted(self, write_telemetry):
        first = parse_telemetry_csv(write_telemetry(ROWS))[0]
        assert first.temp_discharge == pytest.approx(350.0, abs=1e-9)
        assert first.temp_intake_1 == pytest.approx(293.15, abs=1e-9)

    def test_kelvin_passthrough(self, write_telemetry):
        path = write_telemetry(["2024-01-01T00:00:00Z,heating,350.0,293.15,293.15,18.0"])
        (record,) = parse_telemetry_csv(path, unit=TemperatureUnit.KELVIN)
        assert record.temp_discharge == 350.0

    def test_empty_mass(self, write_telemetry):
        records = parse_telemetry_csv(write_telemetry(ROWS))
        assert records[0].mass == 18.0
        assert records[1].mass is None

    def test_naive_timestamp_is_utc(self, write_telemetry):
        records = parse_telemetry_csv(write_telemetry(ROWS))
        assert records[2].timestamp == datetime(2024, 1, 1, 2, tzinfo=timezone.utc)

    def test_offset_timestamp_normalized(self, write_telemetry):
        path = write_telemetry(["2024-01-01T02:00:00+02:00,heating,77.0,20.0,20.0,"])
        (record,) = parse_telemetry_csv(path)
        assert record.timestamp == datetime(2024, 1, 1, 0, tzinfo=timezone.utc)

    def test_below_absolute_zero_names_line(self, write_telemetry):
        rows = ROWS[:2] + ["2024-01-01T02:00:00Z,heating,-300.0,20.0,20.0,"]
        with pytest.raises(RangeError, match="line 4"):
            parse_telemetry_csv(write_telemetry(rows))

    def test_blank_lines_counted_in_line_number(self, write_telemetry):
        rows = ROWS[:1] + ["", "", "2024-01-01T02:00:00Z,heating,-300.0,20.0,20.0,"]
        with pytest.raises(RangeError) as excinfo:
            parse_telemetry_csv(write_telemetry(rows))
        assert excinfo.value.line == 5
        assert "line 5" in str(excinfo.value)

    def test_blank_lines_skipped(self, write_telemetry):
        rows = ROWS[:1] + [""] + ROWS[1:2] + [""]
        records = parse_telemetry_csv(write_telemetry(rows))
        assert len(records) == 2
        assert records[1].mass is None

    def test_non_numeric(self, write_telemetry):
        with pytest.raises(RangeError, match="line 2"):
            parse_telemetry_csv(write_telemetry(["2024-01-01T00:00:00Z,heating,hot,20.0,20.0,"]))

    def test_unknown_mode(self, write_telemetry):
        with pytest.raises(RangeError, match="line 2"):
            parse_telemetry_csv(write_telemetry(["2024-01-01T00:00:00Z,defrost,77.0,20.0,20.0,"]))

    def test_missing_column(self, write_telemetry):
        header = "timestamp,mode,temp_discharge,temp_intake_1,mass"
        path = write_telemetry(["2024-01-01T00:00:00Z,heating,77.0,20.0,18.0"], header=header)
        with pytest.raises(SchemaError, match="temp_intake_2"):
            parse_telemetry_csv(path)

    def test_unsorted(self, write_telemetry):
        rows = [ROWS[1], ROWS[0]]
        with pytest.raises(OrderingError, match="line 3"):
            parse_telemetry_csv(write_telemetry(rows))

    def test_equal_timestamps_allowed(self, write_telemetry):
        rows = [ROWS[0], ROWS[0]]
        assert len(parse_telemetry_csv(write_telemetry(rows))) == 2

    def test_header_only(self, write_telemetry):
        assert parse_telemetry_csv(write_telemetry([])) == []


@pytest.mark.unit
class TestWriteTelemetryCsv:
    """Test cases for exporting telemetry"""

    def test_kelvin_round_trip_is_exact(self, heating_records, tmp_path):
        path = write_telemetry_csv(heating_records, tmp_path / "telemetry.csv")
        parsed = parse_telemetry_csv(path, unit=TemperatureUnit.KELVIN)
        assert parsed == heating_records

    def test_celsius_round_trip(self, heating_records, tmp_path):
        path = write_telemetry_csv(
            heating_records, tmp_path / "telemetry.csv", unit=TemperatureUnit.CELSIUS
        )
        parsed = parse_telemetry_csv(path, unit=TemperatureUnit.CELSIUS)
        for before, after in zip(heating_records, parsed):
            assert after.temp_discharge == pytest.approx(before.temp_discharge, abs=1e-9)
            assert after.timestamp == before.timestamp

    def test_absent_mass_written_empty(self, write_telemetry, tmp_path):
        records = parse_telemetry_csv(write_telemetry(ROWS))
        path = write_telemetry_csv(records, tmp_path / "out" / "telemetry.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "timestamp,mode,temp_discharge,temp_intake_1,temp_intake_2,mass"
        assert lines[2].endswith(",")
        assert lines[1].startswith("2024-01-01T00:00:00Z,heating,")

    def test_ground_truth(self, heating_trace, tmp_path):
        path = write_ground_truth_csv(heating_trace, tmp_path / "ground_truth.csv")
        frame = pd.read_csv(path)
        assert list(frame.columns) == ["t_s", "mass_kg", "pressure_pa", "temp_k", "y"]
        assert len(frame) == len(heating_trace)
        assert frame["mass_kg"].iloc[-1] == heating_trace.mass[-1]
        assert frame["y"].iloc[0] == 0.0
