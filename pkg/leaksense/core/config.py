"""
Core configuration management for leaksense
Effective run configuration from defaults, a dotenv config file,
LEAKSENSE_* environment variables and command-line overrides
"""

from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..simulation.leak_dynamics import SimParams
from .constants import DEFAULT_SIGNIFICANCE_LEVEL, DEFAULT_THRESHOLD, DEFAULT_WINDOW_DAYS
from .errors import ConfigurationError
from .logger import LeakSenseLogger
from .telemetry import OperationMode, TemperatureUnit

structured_logger = LeakSenseLogger.get_structured_logger("config_manager")


class FitGranularity(str, Enum):
    """Points used for exponent fitting"""

    RAW = "raw"
    DAILY = "daily"


class RunConfig(BaseSettings):
    """Main leaksense run configuration"""

    # Diagnosis
    window_days: int = Field(DEFAULT_WINDOW_DAYS, ge=1)
    threshold: float = Field(DEFAULT_THRESHOLD, gt=0, lt=1)
    initial_leak_degree: float = Field(0.0, ge=0, lt=1)
    mode_exponents: Dict[OperationMode, float] = Field(default_factory=dict)

    # Fitting and slope test
    significance_level: float = Field(DEFAULT_SIGNIFICANCE_LEVEL, gt=0, lt=1)
    with_intercept: bool = True
    trim_leading: int = Field(0, ge=0)
    trim_trailing: int = Field(0, ge=0)
    fit_granularity: FitGranularity = FitGranularity.RAW

    # Ingestion
    temperature_unit: TemperatureUnit = TemperatureUnit.CELSIUS

    # Simulation
    sim: SimParams = Field(default_factory=SimParams)
    sim_mode: OperationMode = OperationMode.HEATING
    cadence_s: float = Field(3600.0, gt=0)
    epoch: datetime = datetime(2024, 1, 1, tzinfo=timezone.utc)

    # System parameters
    log_level: str = "INFO"
    log_dir: Optional[str] = None

    model_config = SettingsConfigDict(
        env_prefix="LEAKSENSE_",
        env_nested_delimiter="__",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("mode_exponents")
    @classmethod
    def _check_exponents(cls, value: Dict[OperationMode, float]) -> Dict[OperationMode, float]:
        if OperationMode.IDLE in value:
            raise ValueError("idle mode has no scaling exponent")
        for mode, c in value.items():
            if c == 0:
                raise ValueError(f"scaling exponent for {mode.value} must be non-zero")
        return value

    @field_validator("log_level")
    @classmethod
    def _check_log_level(cls, value: str) -> str:
        level = value.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Invalid log_level: {value}")
        return level

    @field_validator("epoch")
    @classmethod
    def _utc_epoch(cls, value: datetime) -> datetime:
        if value.tzinfo is None:
            return value.replace(tzinfo=timezone.utc)
        return value.astimezone(timezone.utc)

    @model_validator(mode="after")
    def _check_simulation_mode(self) -> "RunConfig":
        if self.sim_mode == OperationMode.IDLE:
            raise ValueError("sim_mode must be heating or cooling")
        return self

    def summary(self) -> List[str]:
        """Effective configuration as "key = value" lines for report echoing"""
        lines = []
        for name, value in self.model_dump(mode="json").items():
            if isinstance(value, dict) and name == "sim":
                lines.extend(f"sim.{key} = {sub}" for key, sub in value.items())
            else:
                lines.append(f"{name} = {value}")
        return lines


def _format_errors(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item["loc"]) or "config"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def load_config(path: Optional[Union[str, Path]] = None, **overrides: Any) -> RunConfig:
    """
    Build the effective configuration

    Precedence is overrides > environment > config file > defaults.
    Overrides that are None are ignored, so unset command-line flags fall
    through to the lower layers.

    Args:
        path: Optional dotenv-format config file
        **overrides: Field values from the command line

    Returns:
        Validated RunConfig

    Raises:
        ConfigurationError: Missing file or invalid values
    """
    if path is not None and not Path(path).is_file():
        raise ConfigurationError(f"config file not found: {path}")

    explicit = {k: v for k, v in overrides.items() if v is not None}
    structured_logger.log_event(
        "config_load",
        "Loading configuration",
        {"config_path": str(path) if path else None, "overrides": sorted(explicit)},
    )
    try:
        if "sim" in explicit and isinstance(explicit["sim"], dict):
            # Merge partial simulation overrides onto the file/env block
            base = RunConfig(_env_file=path)  # type: ignore[call-arg]
            explicit["sim"] = SimParams(**{**base.sim.model_dump(), **explicit["sim"]})
        config = RunConfig(_env_file=path, **explicit)  # type: ignore[call-arg]
    except ValidationError as e:
        message = _format_errors(e)
        structured_logger.log_event(
            "config_load_error",
            message,
            {"config_path": str(path) if path else None},
            level="error",
        )
        raise ConfigurationError(f"invalid configuration: {message}") from e

    LeakSenseLogger.configure(config.log_level, config.log_dir)
    return config
