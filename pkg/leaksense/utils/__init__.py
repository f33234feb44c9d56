# Utilities for leaksense

from .helpers import atomic_write, ensure_directory, format_sig, write_frame_atomic
