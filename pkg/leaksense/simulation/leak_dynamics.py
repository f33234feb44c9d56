"""
Controlled refrigerant-leak dynamics
Closed-form and RK4 solutions of the density, pressure and temperature
equations under constant EEV/CMP compensation
"""

import math
from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.constants import MAX_STEP_RATE, STATE_CONSISTENCY_RTOL
from ..core.errors import ConfigurationError, FullCompensationError
from ..core.logger import LeakSenseLogger, get_logger

logger = get_logger(__name__)
structured_logger = LeakSenseLogger.get_structured_logger("leak_dynamics")


class SimParams(BaseModel):
    """
    Physical and control parameters of a leak scenario (SI units, kelvin)

    initial_pressure may be omitted and is then derived from the equation
    of state; either initial_mass or pipe_volume may be omitted and is
    derived from initial_mass = initial_density * pipe_volume.
    """

    model_config = ConfigDict(frozen=True)

    hole_area: float = Field(1.0e-6, gt=0)  # S, m^2
    hole_volume: float = Field(1.0e-4, gt=0)  # V, m^3
    leak_velocity: float = Field(1.5e-5, gt=0)  # v_z, m/s
    c_m: float = Field(0.1, ge=0, le=1)  # EEV replenishment
    c_p: float = Field(0.17866, ge=0, le=1)  # CMP pressurization
    initial_mass: Optional[float] = Field(None, gt=0)  # M0, kg
    initial_temperature: float = Field(350.0, gt=0)  # T0, K
    initial_pressure: Optional[float] = Field(None, gt=0)  # p0, Pa
    initial_density: float = Field(30.0, gt=0)  # rho0, kg/m^3
    pipe_volume: Optional[float] = Field(None, gt=0)  # V0, m^3
    gamma: float = Field(1.1, gt=1)
    z_c: float = Field(0.9, gt=0)
    fluid_constant: float = Field(159.9, gt=0)  # R, J/(kg K)
    leak_start: float = Field(0.0, ge=0)  # t0, s
    t_start: float = Field(0.0, ge=0)
    t_end: float = Field(60 * 86400.0, ge=0)
    dt: float = Field(3600.0, gt=0)
    noise_sigma: float = Field(0.0, ge=0)
    seed: int = 0

    @model_validator(mode="before")
    @classmethod
    def _derive_state(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)

        def value(name: str) -> float:
            raw = data.get(name)
            if raw is None:
                raw = cls.model_fields[name].default
            return float(raw)

        if data.get("initial_pressure") is None:
            data["initial_pressure"] = (
                value("z_c")
                * value("initial_density")
                * value("fluid_constant")
                * value("initial_temperature")
            )
        if data.get("initial_mass") is None and data.get("pipe_volume") is None:
            data["initial_mass"] = 18.0
        if data.get("pipe_volume") is None:
            data["pipe_volume"] = value("initial_mass") / value("initial_density")
        if data.get("initial_mass") is None:
            data["initial_mass"] = value("initial_density") * value("pipe_volume")
        return data

    @model_validator(mode="after")
    def _check_consistency(self) -> "SimParams":
        if not self.t_start <= self.leak_start <= self.t_end:
            raise ValueError("require t_start <= leak_start <= t_end")
        expected_p0 = self.z_c * self.initial_density * self.fluid_constant * self.initial_temperature
        if not math.isclose(self.initial_pressure, expected_p0, rel_tol=STATE_CONSISTENCY_RTOL):
            raise ValueError(
                f"initial_pressure {self.initial_pressure} violates p0 = z_c rho0 R T0 = {expected_p0}"
            )
        expected_m0 = self.initial_density * self.pipe_volume
        if not math.isclose(self.initial_mass, expected_m0, rel_tol=STATE_CONSISTENCY_RTOL):
            raise ValueError(
                f"initial_mass {self.initial_mass} violates M0 = rho0 V0 = {expected_m0}"
            )
        return self

    @property
    def leak_rate(self) -> float:
        """k = (S / V) * v_z, in 1/s"""
        return self.hole_area / self.hole_volume * self.leak_velocity

    def time_grid(self) -> np.ndarray:
        """Sample times from t_start to t_end, always containing leak_start and t_end"""
        pre = np.arange(self.t_start, self.leak_start, self.dt)
        n_post = int(math.floor((self.t_end - self.leak_start) / self.dt + 1e-9))
        post = self.leak_start + self.dt * np.arange(n_post + 1)
        times = np.concatenate([pre, post])
        if times[-1] < self.t_end - 1e-9 * max(self.dt, 1.0):
            times = np.append(times, self.t_end)
        return times


@dataclass(frozen=True)
class SimTrace:
    """Simulated state over time; leak_degree is 1 - M/M0"""

    params: SimParams
    times: np.ndarray
    mass: np.ndarray
    pressure: np.ndarray
    temperature: np.ndarray
    leak_degree: np.ndarray

    def __len__(self) -> int:
        return len(self.times)

    @property
    def exponent(self) -> float:
        return control_exponent(self.params.c_m, self.params.c_p)


def control_exponent(c_m: float, c_p: float) -> float:
    """
    Ground-truth scaling exponent c = -(c_p - c_M) / (1 - c_M)

    Raises:
        FullCompensationError: When c_M = 1 (the EEV fully compensates the leak)
    """
    if c_m == 1.0:
        raise FullCompensationError(
            "c_M = 1 fully compensates the leak; the scaling exponent is undefined",
            details={"c_m": c_m, "c_p": c_p},
        )
    return -(c_p - c_m) / (1.0 - c_m)


def _temperature_noise(params: SimParams, n: int) -> np.ndarray:
    if params.noise_sigma == 0:
        return np.ones(n)
    rng = np.random.default_rng(params.seed)
    return np.exp(rng.normal(0.0, params.noise_sigma, n))


def _build_trace(params: SimParams, times, mass, pressure, temperature) -> SimTrace:
    temperature = temperature * _temperature_noise(params, len(times))
    return SimTrace(
        params=params,
        times=times,
        mass=mass,
        pressure=pressure,
        temperature=temperature,
        leak_degree=1.0 - mass / params.initial_mass,
    )


def simulate_analytic(params: SimParams) -> SimTrace:
    """
    Evaluate the closed-form solution for constant leak velocity

    Args:
        params: Scenario parameters

    Returns:
        Trace on params.time_grid(); states are constant before leak_start
    """
    times = params.time_grid()
    k = params.leak_rate
    elapsed = np.maximum(times - params.leak_start, 0.0)
    mass = params.initial_mass * np.exp(-(1.0 - params.c_m) * k * elapsed)
    pressure = params.initial_pressure * np.exp(-(1.0 - params.c_p) * k * elapsed)
    temperature = params.initial_temperature * np.exp((params.c_p - params.c_m) * k * elapsed)
    trace = _build_trace(params, times, mass, pressure, temperature)
    structured_logger.log_event(
        "simulation_complete",
        "Analytic leak simulation finished",
        {"samples": len(times), "final_leak_degree": float(trace.leak_degree[-1])},
    )
    return trace


def rk4_step(
    fn: Callable[[float, np.ndarray], np.ndarray], t: float, w: np.ndarray, h: float
) -> np.ndarray:
    """One classical 4th-order Runge-Kutta step of w' = fn(t, w)"""
    k1 = h * fn(t, w)
    k2 = h * fn(t + h / 2, w + k1 / 2)
    k3 = h * fn(t + h / 2, w + k2 / 2)
    k4 = h * fn(t + h, w + k3)
    return w + (k1 + 2 * k2 + 2 * k3 + k4) / 6


def simulate_numeric(params: SimParams) -> SimTrace:
    """
    Integrate density, pressure and temperature with fixed-step RK4

    Mass is density times pipe volume. The grid places a node at
    leak_start, so no step straddles the onset of the leak.

    Raises:
        ConfigurationError: If (1 - c_M) * k * dt >= 0.1
    """
    k = params.leak_rate
    step_rate = (1.0 - params.c_m) * k * params.dt
    if step_rate >= MAX_STEP_RATE:
        raise ConfigurationError(
            f"step too large for RK4: (1 - c_M) k dt = {step_rate:.3g} >= {MAX_STEP_RATE}",
            details={"dt": params.dt, "leak_rate": k},
        )

    rates = np.array(
        [-(1.0 - params.c_m) * k, -(1.0 - params.c_p) * k, (params.c_p - params.c_m) * k]
    )

    def derivative(t: float, w: np.ndarray) -> np.ndarray:
        return rates * w

    times = params.time_grid()
    states = np.empty((len(times), 3))
    states[0] = (params.initial_density, params.initial_pressure, params.initial_temperature)
    for i in range(1, len(times)):
        h = times[i] - times[i - 1]
        if times[i - 1] < params.leak_start:
            states[i] = states[i - 1]
        else:
            states[i] = rk4_step(derivative, times[i - 1], states[i - 1], h)

    # M = rho * V0, written relative to rho0 so that M(t0) == M0 exactly
    mass = states[:, 0] / params.initial_density * params.initial_mass
    trace = _build_trace(params, times, mass, states[:, 1], states[:, 2])
    logger.debug(f"RK4 integration finished: {len(times)} samples, step rate {step_rate:.3g}")
    return trace
