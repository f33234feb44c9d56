"""
Pytest fixtures for leaksense tests
Shared simulated traces, telemetry and file helpers
"""

import os
from datetime import date, timedelta
from pathlib import Path
from typing import Callable, List, Sequence

import pytest

from leaksense.core.telemetry import DailySample, OperationMode, TelemetryRecord
from leaksense.simulation.fault_test import export_fault_test
from leaksense.simulation.field_schedule import ModeControl
from leaksense.simulation.leak_dynamics import SimParams, SimTrace, simulate_analytic

TELEMETRY_HEADER = "timestamp,mode,temp_discharge,temp_intake_1,temp_intake_2,mass"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Keep LEAKSENSE_* variables from the host out of configuration tests"""
    for key in list(os.environ):
        if key.upper().startswith("LEAKSENSE_"):
            monkeypatch.delenv(key, raising=False)


@pytest.fixture
def fast_params() -> SimParams:
    """
    Ten-day noise-free leak scenario on an hourly grid

    Returns:
        SimParams with the default heating controls (c ≈ -0.0874)
    """
    return SimParams(t_end=10 * 86400.0, noise_sigma=0.0)


@pytest.fixture
def heating_trace(fast_params) -> SimTrace:
    return simulate_analytic(fast_params)


@pytest.fixture
def heating_records(heating_trace) -> List[TelemetryRecord]:
    return export_fault_test(heating_trace, OperationMode.HEATING, 3600.0)


@pytest.fixture
def make_daily() -> Callable[..., List[DailySample]]:
    """
    Factory for consecutive daily samples

    Returns:
        Function (temps, mode=HEATING, start=2024-01-01, masses=None) -> samples
    """

    def _make(
        temps: Sequence[float],
        mode: OperationMode = OperationMode.HEATING,
        start: date = date(2024, 1, 1),
        masses: Sequence[float] = None,
    ) -> List[DailySample]:
        return [
            DailySample(
                date=start + timedelta(days=i),
                mode=mode,
                temp=float(t),
                mass=None if masses is None else float(masses[i]),
            )
            for i, t in enumerate(temps)
        ]

    return _make


@pytest.fixture
def write_telemetry(tmp_path) -> Callable[..., Path]:
    """
    Factory writing raw telemetry rows below the standard header

    Returns:
        Function (rows, name="telemetry.csv", header=TELEMETRY_HEADER) -> path
    """

    def _write(rows: Sequence[str], name: str = "telemetry.csv", header: str = TELEMETRY_HEADER) -> Path:
        path = tmp_path / name
        path.write_text("\n".join([header, *rows]) + "\n", encoding="utf-8")
        return path

    return _write


@pytest.fixture
def field_controls():
    """Per-mode controls and leak-free base temperatures (kelvin) for field schedules"""
    controls = {
        OperationMode.HEATING: ModeControl(c_m=0.1, c_p=0.17866),
        OperationMode.COOLING: ModeControl(c_m=0.1, c_p=0.25),
    }
    base_temperatures = {OperationMode.HEATING: 350.0, OperationMode.COOLING: 280.0}
    return controls, base_temperatures
