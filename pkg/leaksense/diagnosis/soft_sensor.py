"""
Scaling-law soft sensor for the degree of refrigerant leak

Each mode takes its initial temperature from a collection window and then
inverts the scaling law day by day. The estimate carries across
operation-mode switches.
"""

from dataclasses import dataclass, field
from datetime import date
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from ..core.constants import DEFAULT_THRESHOLD, DEFAULT_WINDOW_DAYS
from ..core.errors import (
    ConfigurationError,
    DegenerateExponentError,
    InapplicableModeError,
    InsufficientDataError,
    ModeConsistencyError,
    RangeError,
    SaturationError,
)
from ..core.logger import LeakSenseLogger, get_logger
from ..core.telemetry import DailySample, OperationMode
from .smoothing import check_threshold, enforce_monotone, moving_average

logger = get_logger(__name__)
structured_logger = LeakSenseLogger.get_structured_logger("soft_sensor")


@dataclass(frozen=True)
class ModeParams:
    """
    Estimation state of one operation mode

    T0 is the mode's initial temperature and y0 the leak degree at the
    start of the mode's first estimated episode.
    """

    mode: OperationMode
    c: float
    T0: float
    y0: float = 0.0

    def __post_init__(self):
        if self.mode == OperationMode.IDLE:
            raise InapplicableModeError("idle mode has no scaling law")
        if self.c == 0:
            raise DegenerateExponentError("scaling exponent c = 0 cannot be inverted")
        if not self.T0 > 0:
            raise RangeError(f"T0 must be positive kelvin, got {self.T0}")
        if not 0.0 <= self.y0 < 1.0:
            raise RangeError(f"y0 must lie in [0, 1), got {self.y0}")


@dataclass
class LeakTrace:
    """Per-day leak degree: raw, smoothed, monotone, and alarm flag"""

    dates: List[date]
    modes: List[OperationMode]
    y_raw: np.ndarray
    y_smooth: np.ndarray
    y_mono: np.ndarray
    detected: np.ndarray
    threshold: float = DEFAULT_THRESHOLD
    mode_params: Dict[OperationMode, ModeParams] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.dates)

    @property
    def detection_date(self) -> Optional[date]:
        return detect(self, self.threshold)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "date": [d.isoformat() for d in self.dates],
                "mode": [m.value for m in self.modes],
                "y_raw": self.y_raw,
                "y_smooth": self.y_smooth,
                "y_mono": self.y_mono,
                "detected": self.detected.astype(bool),
            }
        )


def compute_initial_temperature(samples: Sequence[DailySample], window_days: int) -> float:
    """
    Mean temperature of the first window_days samples

    Raises:
        InsufficientDataError: Fewer than window_days samples
        ModeConsistencyError: The window mixes operation modes
    """
    if window_days < 1:
        raise InsufficientDataError(f"window_days must be >= 1, got {window_days}")
    if len(samples) < window_days:
        raise InsufficientDataError(
            f"need {window_days} samples to set the initial temperature, got {len(samples)}"
        )
    head = samples[:window_days]
    modes = {s.mode for s in head}
    if len(modes) > 1:
        raise ModeConsistencyError(
            "initial-temperature window mixes operation modes",
            details={"modes": sorted(m.value for m in modes)},
        )
    return float(np.mean([s.temp for s in head]))


def estimate_leak(T: float, params: ModeParams) -> float:
    """
    Unclamped leak degree y = 1 - (1 - y0) (T / T0)^(1/c)

    Reduces to y = 1 - (T / T0)^(1/c) for y0 = 0. Noise can push the value
    below zero; an overflowing power gives -inf.
    """
    if not T > 0:
        raise RangeError(f"temperature must be positive kelvin, got {T}")
    if params.c == 0:
        raise DegenerateExponentError("scaling exponent c = 0 cannot be inverted")
    with np.errstate(over="ignore"):
        ratio = np.power(np.float64(T) / params.T0, 1.0 / params.c)
    return float(1.0 - (1.0 - params.y0) * ratio)


def on_mode_switch(
    prev_estimate: float,
    new_mode_T0: float,
    new_mode_c: float,
    mode: OperationMode,
    stored: Optional[ModeParams] = None,
) -> ModeParams:
    """
    Parameters of the mode being entered

    The leak degree is unchanged by the switch, so the new mode starts
    from the previous estimate (clamped at 0). A mode that was already
    established keeps its stored T0 and y0.

    Raises:
        SaturationError: If the previous estimate is >= 1 (total loss)
    """
    if prev_estimate >= 1.0:
        raise SaturationError(
            f"leak degree {prev_estimate} at mode switch indicates total refrigerant loss"
        )
    if stored is not None:
        return stored
    return ModeParams(mode=mode, c=new_mode_c, T0=new_mode_T0, y0=max(prev_estimate, 0.0))


def detect(trace: LeakTrace, threshold: float = DEFAULT_THRESHOLD) -> Optional[date]:
    """First date whose monotone leak degree reaches threshold, or None"""
    check_threshold(threshold)
    hits = np.flatnonzero(np.asarray(trace.y_mono) >= threshold)
    return trace.dates[int(hits[0])] if hits.size else None


def diagnose(
    samples: Sequence[DailySample],
    mode_exponents: Mapping[OperationMode, float],
    window_days: int = DEFAULT_WINDOW_DAYS,
    threshold: float = DEFAULT_THRESHOLD,
    initial_leak_degree: float = 0.0,
) -> LeakTrace:
    """
    Run the soft sensor over daily samples

    Args:
        samples: Daily samples in date order; idle days are skipped
        mode_exponents: Scaling exponent per operation mode
        window_days: Initial-temperature window and smoothing window
        threshold: Leak degree that raises the alarm
        initial_leak_degree: y0 at the start of diagnosis

    Returns:
        LeakTrace with raw, smoothed and monotone estimates

    Raises:
        ConfigurationError: An encountered mode has no exponent
        InsufficientDataError: The head window is too short or mixes modes
    """
    check_threshold(threshold)
    if not 0.0 <= initial_leak_degree < 1.0:
        raise RangeError(f"initial leak degree must lie in [0, 1), got {initial_leak_degree}")

    active = [s for s in samples if s.mode != OperationMode.IDLE]
    missing = {s.mode for s in active} - set(mode_exponents)
    if missing:
        raise ConfigurationError(
            f"no scaling exponent for modes: {sorted(m.value for m in missing)}"
        )
    compute_initial_temperature(active, window_days)

    states: Dict[OperationMode, ModeParams] = {}
    params: Optional[ModeParams] = None
    pending: List[float] = []
    current: Optional[OperationMode] = None
    carried = initial_leak_degree
    raw: List[float] = []

    for sample in active:
        if sample.mode != current:
            if current is not None:
                last = raw[-1]
                if last >= 1.0:
                    raise SaturationError(
                        f"leak degree {last} at mode switch on {sample.date} indicates total loss"
                    )
                carried = max(last, 0.0)
                structured_logger.log_event(
                    "mode_switch",
                    f"Operation mode switched to {sample.mode.value}",
                    {"date": sample.date, "from": current.value, "carried_y0": carried},
                )
            current = sample.mode
            pending = []
            params = states.get(current)
            if params is not None:
                params = on_mode_switch(
                    carried, params.T0, params.c, mode=current, stored=params
                )

        if params is None:
            # Mode not yet established: collect its initial temperature
            pending.append(sample.temp)
            if len(pending) == window_days:
                params = on_mode_switch(
                    carried,
                    float(np.mean(pending)),
                    mode_exponents[current],
                    mode=current,
                )
                states[current] = params
                logger.info(
                    f"Initial temperature for {current.value}: {params.T0:.6g} K (y0={params.y0:.6g})"
                )
            raw.append(carried)
        else:
            raw.append(estimate_leak(sample.temp, params))

    y_raw = np.array(raw, dtype=float)
    y_smooth = moving_average(y_raw, window_days)
    y_mono = enforce_monotone(y_smooth)
    trace = LeakTrace(
        dates=[s.date for s in active],
        modes=[s.mode for s in active],
        y_raw=y_raw,
        y_smooth=y_smooth,
        y_mono=y_mono,
        detected=y_mono >= threshold,
        threshold=threshold,
        mode_params=dict(states),
    )
    fired = trace.detection_date
    if fired is not None:
        structured_logger.log_event(
            "leak_detected",
            f"Leak degree reached {threshold}",
            {"date": fired, "y_mono": float(y_mono[trace.dates.index(fired)])},
            level="warning",
        )
    return trace
