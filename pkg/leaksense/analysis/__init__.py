# Scaling-exponent analysis for leaksense

from .homogeneity import SlopeTest, student_t_two_sided_p, test_slope_homogeneity
from .scaling_fit import (
    LogRatioPoint,
    ScalingFit,
    build_log_ratios,
    fit_scaling_exponent,
    residuals,
)
