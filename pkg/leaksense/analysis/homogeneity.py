"""
Homogeneity-of-slopes test for scaling exponents of two systems
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import betainc

from ..core.constants import DEFAULT_SIGNIFICANCE_LEVEL, MIN_FIT_POINTS
from ..core.errors import DomainError, FittingDataError, InsufficientDataError
from ..core.logger import LeakSenseLogger
from .scaling_fit import LogRatioPoint, ScalingFit

structured_logger = LeakSenseLogger.get_structured_logger("homogeneity")


@dataclass(frozen=True)
class SlopeTest:
    """Two-sided Student t test of equal slopes"""

    t_value: float
    dof: int
    p_value: float

    def rejected(self, alpha: float = DEFAULT_SIGNIFICANCE_LEVEL) -> bool:
        """True when equal slopes (parallel lines) are rejected at level alpha"""
        return self.p_value < alpha

    def verdict(self, alpha: float = DEFAULT_SIGNIFICANCE_LEVEL) -> str:
        return "parallelism rejected" if self.rejected(alpha) else "parallelism not rejected"


def student_t_two_sided_p(t: float, dof: float) -> float:
    """
    Two-sided p-value 2 (1 - F(|t|; dof)) of Student's t distribution

    Uses the identity 2 (1 - F(|t|)) = I_x(dof/2, 1/2) with
    x = dof / (dof + t^2), I the regularized incomplete beta function.

    Raises:
        DomainError: If dof < 1
    """
    if not dof >= 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {dof}")
    if math.isnan(t):
        raise DomainError("t statistic is NaN")
    if math.isinf(t):
        return 0.0
    x = dof / (dof + t * t)
    return float(min(max(betainc(dof / 2.0, 0.5, x), 0.0), 1.0))


def _check_group(fit: ScalingFit, points: Sequence[LogRatioPoint], label: str) -> float:
    if len(points) < MIN_FIT_POINTS or fit.n != len(points):
        raise InsufficientDataError(
            f"group {label} needs at least {MIN_FIT_POINTS} points matching its fit",
            details={"points": len(points), "fit_n": fit.n},
        )
    x = np.array([p.x for p in points], dtype=float)
    sxx = float(np.sum((x - x.mean()) ** 2)) if fit.with_intercept else float(np.dot(x, x))
    if sxx <= 0:
        raise InsufficientDataError(f"group {label} has no variation in log(M/M0)")
    return sxx


def test_slope_homogeneity(
    fit_a: ScalingFit,
    points_a: Sequence[LogRatioPoint],
    fit_b: ScalingFit,
    points_b: Sequence[LogRatioPoint],
) -> SlopeTest:
    """
    Test whether two systems share the same scaling exponent

    Pooled-variance comparison of two regression slopes, equivalent to the
    group-by-covariate interaction term of an ANCOVA. With intercepts the
    pooled variance has n_a + n_b - 4 degrees of freedom; two
    through-origin fits use uncentered sums of squares and n_a + n_b - 2.

    Args:
        fit_a: Fit of system A, with the points it was fitted on
        points_a: Points of system A
        fit_b: Fit of system B
        points_b: Points of system B

    Returns:
        SlopeTest with t value, degrees of freedom and two-sided p-value
    """
    if fit_a.with_intercept != fit_b.with_intercept:
        raise FittingDataError("both fits must agree on whether an intercept is fitted")
    sxx_a = _check_group(fit_a, points_a, "A")
    sxx_b = _check_group(fit_b, points_b, "B")

    n_params = 4 if fit_a.with_intercept else 2
    dof = fit_a.n + fit_b.n - n_params
    if dof < 1:
        raise InsufficientDataError(f"pooled degrees of freedom must be >= 1, got {dof}")

    pooled = (fit_a.residual_ss + fit_b.residual_ss) / dof
    se_diff = math.sqrt(pooled * (1.0 / sxx_a + 1.0 / sxx_b))
    diff = fit_a.c - fit_b.c
    if diff == 0:
        t_value = 0.0
    elif se_diff == 0:
        t_value = math.copysign(math.inf, diff)
    else:
        t_value = diff / se_diff

    result = SlopeTest(t_value=t_value, dof=dof, p_value=student_t_two_sided_p(t_value, dof))
    structured_logger.log_event(
        "slope_test",
        "Homogeneity of slopes tested",
        {"t_value": t_value, "dof": dof, "p_value": result.p_value},
    )
    return result


# Library function, not a pytest test
test_slope_homogeneity.__test__ = False  # type: ignore[attr-defined]
