"""
Tests for moving average, monotone enforcement and threshold checks
"""

import numpy as np
import pytest

from leaksense.core.errors import DomainError
from leaksense.diagnosis.smoothing import check_threshold, enforce_monotone, moving_average


@pytest.mark.unit
class TestMovingAverage:
    """Test cases for the trailing moving average"""

    def test_window_one_is_identity(self):
        values = [0.3, -0.1, 0.7]
        np.testing.assert_allclose(moving_average(values, 1), values, atol=1e-15)

    def test_head_shrinks(self):
        np.testing.assert_allclose(moving_average([0.0, 1.0], 2), [0.0, 0.5])

    def test_hand_computed(self):
        np.testing.assert_allclose(moving_average([1, 2, 3, 4], 3), [1.0, 1.5, 2.0, 3.0])

    def test_same_length(self):
        assert len(moving_average(np.arange(20), 7)) == 20

    def test_preserves_constants(self):
        np.testing.assert_allclose(moving_average([0.2] * 10, 7), [0.2] * 10)

    def test_commutes_with_shift(self):
        rng = np.random.default_rng(2)
        values = rng.normal(size=30)
        np.testing.assert_allclose(
            moving_average(values + 5.0, 7), moving_average(values, 7) + 5.0, atol=1e-12
        )

    def test_empty(self):
        assert moving_average([], 3).size == 0

    def test_zero_window(self):
        with pytest.raises(DomainError):
            moving_average([1.0, 2.0], 0)


@pytest.mark.unit
class TestEnforceMonotone:
    """Test cases for the clamped running maximum"""

    def test_running_max(self):
        np.testing.assert_array_equal(enforce_monotone([0.1, 0.3, 0.2]), [0.1, 0.3, 0.3])

    def test_fixed_point(self):
        values = [0.0, 0.1, 0.1, 0.4, 1.0]
        np.testing.assert_array_equal(enforce_monotone(values), values)

    def test_lower_clamp(self):
        np.testing.assert_array_equal(enforce_monotone([-0.05, 0.1]), [0.0, 0.1])

    def test_upper_clamp(self):
        np.testing.assert_array_equal(enforce_monotone([0.5, 1.2, 0.9]), [0.5, 1.0, 1.0])

    def test_idempotent_and_dominating(self):
        rng = np.random.default_rng(4)
        values = rng.uniform(-0.2, 1.2, 50)
        once = enforce_monotone(values)
        np.testing.assert_array_equal(enforce_monotone(once), once)
        assert np.all(np.diff(once) >= 0)
        assert np.all(once >= np.clip(values, 0.0, 1.0))

    def test_empty(self):
        assert enforce_monotone([]).size == 0


@pytest.mark.unit
@pytest.mark.parametrize("threshold", [0.0, 1.0, -0.5, 1.5])
def test_threshold_outside_open_interval(threshold):
    with pytest.raises(DomainError):
        check_threshold(threshold)


@pytest.mark.unit
def test_threshold_inside_open_interval():
    check_threshold(0.5)
