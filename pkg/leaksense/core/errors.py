"""
Error types for leaksense
Every failure raised by the library derives from LeakSenseError
"""

from datetime import datetime, timezone
from typing import Any, Dict, Optional


class LeakSenseError(Exception):
    """Base exception for leaksense errors"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}
        self.timestamp = datetime.now(timezone.utc)


class RangeError(LeakSenseError, ValueError):
    """Raised when a value is outside its physical range (e.g. below absolute zero)"""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, details)
        self.line = line


class InapplicableModeError(LeakSenseError, ValueError):
    """Raised when an operation needs heating or cooling but got idle"""

    pass


class OrderingError(LeakSenseError, ValueError):
    """Raised when telemetry is not sorted by timestamp"""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, details)
        self.line = line


class SchemaError(LeakSenseError, ValueError):
    """Raised when a telemetry file lacks required columns"""

    pass


class ConfigurationError(LeakSenseError, ValueError):
    """Raised for invalid or incomplete configuration"""

    pass


class FittingDataError(LeakSenseError, ValueError):
    """Raised when fitting data lacks measured refrigerant mass"""

    pass


class InsufficientDataError(LeakSenseError, ValueError):
    """Raised when there are too few samples for an operation"""

    pass


class ModeConsistencyError(InsufficientDataError):
    """Raised when a window that must be single-mode mixes modes"""

    pass


class DegenerateDesignError(LeakSenseError, ValueError):
    """Raised when the regressor has zero variance"""

    pass


class DegenerateExponentError(LeakSenseError, ValueError):
    """Raised when a scaling exponent of zero would be inverted"""

    pass


class SaturationError(LeakSenseError, ValueError):
    """Raised when the carried leak degree has reached total loss"""

    pass


class DomainError(LeakSenseError, ValueError):
    """Raised when an argument lies outside the function's domain"""

    pass


class FullCompensationError(LeakSenseError, ZeroDivisionError):
    """Raised when c_M = 1, where the scaling exponent is undefined"""

    pass
