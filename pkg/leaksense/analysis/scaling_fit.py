"""
Scaling-exponent estimation
Ordinary least squares of log(T/T0) on log(M/M0) for one operation mode
"""

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..core.constants import MIN_FIT_POINTS
from ..core.errors import (
    DegenerateDesignError,
    FittingDataError,
    InsufficientDataError,
    RangeError,
)
from ..core.logger import LeakSenseLogger, get_logger
from ..core.telemetry import DailySample

logger = get_logger(__name__)
structured_logger = LeakSenseLogger.get_structured_logger("scaling_fit")


@dataclass(frozen=True)
class LogRatioPoint:
    """x = log(M/M0), y = log(T/T0)"""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise RangeError(f"log ratios must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class ScalingFit:
    """
    Regression line of one operation mode

    sxx is the sum of squares of x used for the slope's standard error
    (centered with an intercept, uncentered through the origin) and
    residual_ss the residual sum of squares; both feed the slope test.
    """

    c: float
    intercept: float
    se_c: float
    se_intercept: float
    n: int
    residual_variance: float
    r_squared: float
    with_intercept: bool = True
    sxx: float = 0.0
    residual_ss: float = 0.0

    @property
    def dof(self) -> int:
        return self.n - 2 if self.with_intercept else self.n - 1


def build_log_ratios(
    samples: Sequence[DailySample], m0: float, t0: float
) -> List[LogRatioPoint]:
    """
    Convert samples with measured mass into log-ratio points

    Args:
        samples: Samples of one operation mode, each carrying mass
        m0: Initial refrigerant mass (kg)
        t0: Initial temperature (kelvin)

    Raises:
        RangeError: If m0 or t0 is not positive
        FittingDataError: If any sample lacks mass
    """
    if not (m0 > 0 and t0 > 0):
        raise RangeError(f"M0 and T0 must be positive, got M0={m0}, T0={t0}")
    points = []
    for i, sample in enumerate(samples):
        if sample.mass is None:
            raise FittingDataError(
                "refrigerant mass must be measured for every fitting sample",
                details={"index": i, "date": str(sample.date)},
            )
        points.append(LogRatioPoint(math.log(sample.mass / m0), math.log(sample.temp / t0)))
    return points


def _as_arrays(points: Sequence[LogRatioPoint]):
    x = np.array([p.x for p in points], dtype=float)
    y = np.array([p.y for p in points], dtype=float)
    return x, y


def fit_scaling_exponent(
    points: Sequence[LogRatioPoint],
    with_intercept: bool = True,
    trim_leading: int = 0,
    trim_trailing: int = 0,
) -> ScalingFit:
    """
    Fit the scaling exponent by ordinary least squares

    Args:
        points: Log-ratio points in time order
        with_intercept: Fit an intercept; otherwise force the line through the origin
        trim_leading: Points dropped from the start (transient exclusion)
        trim_trailing: Points dropped from the end

    Returns:
        ScalingFit with slope c and its standard error

    Raises:
        InsufficientDataError: Fewer than three points remain
        DegenerateDesignError: All x values are equal
    """
    if trim_leading < 0 or trim_trailing < 0:
        raise InsufficientDataError("trim counts must be non-negative")
    points = list(points)[trim_leading : len(points) - trim_trailing]
    n = len(points)
    if n < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"need at least {MIN_FIT_POINTS} points to fit, got {n}",
            details={"trim_leading": trim_leading, "trim_trailing": trim_trailing},
        )

    x, y = _as_arrays(points)
    if np.ptp(x) == 0:
        raise DegenerateDesignError(
            "refrigerant mass ratio does not vary; the slope is not identifiable"
        )

    if with_intercept:
        x_mean = x.mean()
        y_mean = y.mean()
        dx = x - x_mean
        sxx = float(np.dot(dx, dx))
        c = float(np.dot(dx, y - y_mean) / sxx)
        intercept = float(y_mean - c * x_mean)
        residual = y - (intercept + c * x)
        dof = n - 2
        total = float(np.sum((y - y_mean) ** 2))
    else:
        sxx = float(np.dot(x, x))
        c = float(np.dot(x, y) / sxx)
        intercept = 0.0
        residual = y - c * x
        dof = n - 1
        total = float(np.dot(y, y))

    residual_ss = float(np.dot(residual, residual))
    residual_variance = residual_ss / dof
    se_c = math.sqrt(residual_variance / sxx)
    if with_intercept:
        se_intercept = math.sqrt(residual_variance * (1.0 / n + x_mean**2 / sxx))
    else:
        se_intercept = 0.0
    r_squared = 1.0 if total == 0 else min(max(1.0 - residual_ss / total, 0.0), 1.0)

    fit = ScalingFit(
        c=c,
        intercept=intercept,
        se_c=se_c,
        se_intercept=se_intercept,
        n=n,
        residual_variance=residual_variance,
        r_squared=r_squared,
        with_intercept=with_intercept,
        sxx=sxx,
        residual_ss=residual_ss,
    )
    structured_logger.log_event(
        "fit_complete",
        "Scaling exponent fitted",
        {"c": c, "se_c": se_c, "n": n, "with_intercept": with_intercept},
    )
    return fit


def residuals(points: Sequence[LogRatioPoint], fit: ScalingFit) -> np.ndarray:
    """Residuals y - (intercept + c x), for checking that they stay flat over x"""
    x, y = _as_arrays(points)
    return y - (fit.intercept + fit.c * x)
