"""
Post-processing of daily leak estimates: trailing moving average,
monotone enforcement and threshold detection
"""

from typing import Sequence

import numpy as np
import pandas as pd

from ..core.errors import DomainError


def moving_average(values: Sequence[float], window: int) -> np.ndarray:
    """
    Trailing (causal) moving average

    output[i] is the mean of values[max(0, i - window + 1) .. i]; the head
    averages over the samples available so far.

    Raises:
        DomainError: If window < 1
    """
    if window < 1:
        raise DomainError(f"window must be >= 1, got {window}")
    series = pd.Series(np.asarray(values, dtype=float))
    return series.rolling(window=window, min_periods=1).mean().to_numpy()


def enforce_monotone(values: Sequence[float]) -> np.ndarray:
    """Running maximum clamped to [0, 1]; leaked refrigerant does not come back"""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return arr
    return np.clip(np.maximum.accumulate(arr), 0.0, 1.0)


def check_threshold(threshold: float) -> None:
    if not 0.0 < threshold < 1.0:
        raise DomainError(f"threshold must lie in (0, 1), got {threshold}")
