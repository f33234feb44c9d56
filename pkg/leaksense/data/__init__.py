"""
Telemetry file ingestion and export
"""

from .telemetry_csv import (
    parse_telemetry_csv,
    telemetry_frame,
    write_ground_truth_csv,
    write_telemetry_csv,
)

__all__ = [
    "parse_telemetry_csv",
    "telemetry_frame",
    "write_ground_truth_csv",
    "write_telemetry_csv",
]
