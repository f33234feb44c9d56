"""
Utility helper functions for leaksense
"""

import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional, Union

import pandas as pd

from ..core.constants import REPORT_SIGNIFICANT_DIGITS

PathLike = Union[str, Path]


def format_sig(value: Optional[float], digits: int = REPORT_SIGNIFICANT_DIGITS) -> str:
    """
    Format a number with a fixed count of significant digits

    Args:
        value: Number to format; None renders as "-"
        digits: Significant digits

    Returns:
        Formatted string
    """
    if value is None:
        return "-"
    return f"{value:.{digits}g}"


def ensure_directory(path: PathLike) -> Path:
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


@contextmanager
def atomic_write(path: PathLike, encoding: str = "utf-8") -> Iterator:
    """
    Open a temporary file next to path and move it into place on success

    The target is never left half-written; on error the temporary file is
    removed and the previous content (if any) is untouched.
    """
    target = Path(path)
    ensure_directory(target.parent)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding=encoding, newline="") as handle:
            yield handle
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def write_frame_atomic(frame: pd.DataFrame, path: PathLike) -> Path:
    """Write a DataFrame as CSV at full float precision, atomically"""
    with atomic_write(path) as handle:
        frame.to_csv(handle, index=False, float_format="%.17g")
    return Path(path)
