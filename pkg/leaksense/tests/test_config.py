"""
Tests for core configuration module
"""

from datetime import datetime, timezone
from pathlib import Path

import pytest

from leaksense.core.config import FitGranularity, RunConfig, load_config
from leaksense.core.errors import ConfigurationError
from leaksense.core.telemetry import OperationMode, TemperatureUnit

ENV_EXAMPLE = Path(__file__).parents[2] / "config" / "leaksense.env.example"


def _write_env(tmp_path, text: str) -> Path:
    path = tmp_path / "leaksense.env"
    path.write_text(text, encoding="utf-8")
    return path


@pytest.mark.unit
class TestRunConfig:
    """Test cases for RunConfig defaults and validation"""

    def test_defaults(self):
        config = load_config()
        assert config.window_days == 7
        assert config.threshold == 0.5
        assert config.initial_leak_degree == 0.0
        assert config.mode_exponents == {}
        assert config.significance_level == 0.05
        assert config.with_intercept is True
        assert config.fit_granularity == FitGranularity.RAW
        assert config.temperature_unit == TemperatureUnit.CELSIUS
        assert config.sim_mode == OperationMode.HEATING
        assert config.epoch == datetime(2024, 1, 1, tzinfo=timezone.utc)

    def test_default_simulation_state(self):
        sim = load_config().sim
        assert sim.initial_mass == 18.0
        assert sim.initial_pressure == pytest.approx(0.9 * 30.0 * 159.9 * 350.0)

    @pytest.mark.parametrize("threshold", [0.0, 1.0, 1.5])
    def test_threshold_must_be_open_interval(self, threshold):
        with pytest.raises(ConfigurationError, match="threshold"):
            load_config(threshold=threshold)

    def test_window_must_be_positive(self):
        with pytest.raises(ConfigurationError):
            load_config(window_days=0)

    def test_idle_exponent_rejected(self):
        with pytest.raises(ConfigurationError):
            load_config(mode_exponents={"idle": -0.1})

    def test_zero_exponent_rejected(self):
        with pytest.raises(ConfigurationError):
            load_config(mode_exponents={"heating": 0.0})

    def test_idle_sim_mode_rejected(self):
        with pytest.raises(ConfigurationError):
            load_config(sim_mode="idle")

    def test_invalid_log_level(self):
        with pytest.raises(ConfigurationError):
            load_config(log_level="LOUD")

    def test_summary(self):
        lines = load_config(threshold=0.3).summary()
        assert "threshold = 0.3" in lines
        assert "sim.c_m = 0.1" in lines
        assert all(" = " in line for line in lines)


@pytest.mark.unit
class TestConfigLayers:
    """Test cases for defaults, file, environment and override precedence"""

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="not found"):
            load_config(tmp_path / "absent.env")

    def test_file_values(self, tmp_path):
        path = _write_env(
            tmp_path,
            "LEAKSENSE_THRESHOLD=0.4\n"
            'LEAKSENSE_MODE_EXPONENTS={"heating": -0.09}\n'
            "LEAKSENSE_SIM__C_P=0.5\n",
        )
        config = load_config(path)
        assert config.threshold == 0.4
        assert config.mode_exponents == {OperationMode.HEATING: -0.09}
        assert config.sim.c_p == 0.5

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("LEAKSENSE_WINDOW_DAYS", "5")
        monkeypatch.setenv("LEAKSENSE_TEMPERATURE_UNIT", "kelvin")
        config = load_config()
        assert config.window_days == 5
        assert config.temperature_unit == TemperatureUnit.KELVIN

    def test_nested_environment(self, monkeypatch):
        monkeypatch.setenv("LEAKSENSE_SIM__C_M", "0.2")
        assert load_config().sim.c_m == 0.2

    def test_environment_beats_file(self, tmp_path, monkeypatch):
        path = _write_env(tmp_path, "LEAKSENSE_THRESHOLD=0.4\n")
        monkeypatch.setenv("LEAKSENSE_THRESHOLD", "0.6")
        assert load_config(path).threshold == 0.6

    def test_overrides_beat_environment(self, monkeypatch):
        monkeypatch.setenv("LEAKSENSE_THRESHOLD", "0.6")
        assert load_config(threshold=0.7).threshold == 0.7

    def test_none_overrides_fall_through(self, monkeypatch):
        monkeypatch.setenv("LEAKSENSE_THRESHOLD", "0.6")
        assert load_config(threshold=None).threshold == 0.6

    def test_partial_sim_override_merges(self, tmp_path):
        path = _write_env(tmp_path, "LEAKSENSE_SIM__C_P=0.5\n")
        config = load_config(path, sim={"seed": 9})
        assert config.sim.seed == 9
        assert config.sim.c_p == 0.5

    def test_example_file_loads(self):
        config = load_config(ENV_EXAMPLE)
        assert config.mode_exponents == {
            OperationMode.HEATING: -0.0874,
            OperationMode.COOLING: -0.0874,
        }
        assert config.sim.t_end == 5184000.0
        assert config.epoch == datetime(2024, 1, 1, tzinfo=timezone.utc)


@pytest.mark.unit
def test_run_config_is_settings_model():
    config = RunConfig(threshold=0.25)
    assert config.threshold == 0.25
