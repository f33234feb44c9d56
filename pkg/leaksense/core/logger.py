"""
Centralized logging system for leaksense
Provides structured logging with console and JSON file handlers
"""

import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

from pythonjsonlogger import jsonlogger


class StructuredLogger:
    def __init__(self, logger: logging.Logger):
        self.logger = logger

    def log_event(
        self,
        event_type: str,
        message: str,
        context: Optional[Dict[str, Any]] = None,
        level: str = "info",
    ) -> None:
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "event_type": event_type,
            "message": message,
            "context": context or {},
        }
        log_str = json.dumps(log_entry, default=str)
        if level == "info":
            self.logger.info(log_str)
        elif level == "warning":
            self.logger.warning(log_str)
        elif level == "error":
            self.logger.error(log_str)
        else:
            self.logger.debug(log_str)


class LeakSenseLogger:
    """
    leaksense logging manager
    Provides structured logging with JSON format support
    """

    _loggers: Dict[str, logging.Logger] = {}

    @classmethod
    def get_logger(
        cls,
        name: str,
        log_level: str = "INFO",
        log_dir: Optional[str] = None,
    ) -> logging.Logger:
        """
        Get or create a logger instance

        Args:
            name: Logger name (typically module name)
            log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
            log_dir: Directory for JSON log files; console only when None

        Returns:
            Configured logger instance
        """
        if name in cls._loggers:
            return cls._loggers[name]

        logger = logging.getLogger(name)
        logger.setLevel(getattr(logging, log_level.upper()))

        if logger.handlers:
            cls._loggers[name] = logger
            return logger

        # Reports go to stdout, so the console handler writes to stderr
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(logging.DEBUG)
        console_formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        console_handler.setFormatter(console_formatter)
        logger.addHandler(console_handler)

        if log_dir:
            cls.attach_file_handlers(logger, log_dir)

        cls._loggers[name] = logger
        return logger

    @classmethod
    def attach_file_handlers(cls, logger: logging.Logger, log_dir: str) -> None:
        """Add JSON file handlers (all records and errors only) to a logger"""
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)
        stamp = datetime.now(timezone.utc).strftime("%Y%m%d")

        json_formatter = jsonlogger.JsonFormatter(
            "%(asctime)s %(name)s %(levelname)s %(message)s"
        )

        file_handler = logging.FileHandler(log_path / f"{logger.name}_{stamp}.log")
        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(json_formatter)
        logger.addHandler(file_handler)

        error_handler = logging.FileHandler(
            log_path / f"{logger.name}_error_{stamp}.log"
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(json_formatter)
        logger.addHandler(error_handler)

    @classmethod
    def configure(cls, log_level: str = "INFO", log_dir: Optional[str] = None) -> None:
        """Apply a level (and optional file logging) to every leaksense logger"""
        level = getattr(logging, log_level.upper())
        for logger in cls._loggers.values():
            logger.setLevel(level)
            if log_dir and not any(
                isinstance(h, logging.FileHandler) for h in logger.handlers
            ):
                cls.attach_file_handlers(logger, log_dir)

    @classmethod
    def get_structured_logger(cls, name: str, log_level: str = "INFO") -> StructuredLogger:
        logger = get_logger(name, log_level)
        return StructuredLogger(logger)

    @classmethod
    def log_error(
        cls,
        logger: logging.Logger,
        error: Exception,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Log error with context"""
        error_data = {
            "error_type": type(error).__name__,
            "error_message": str(error),
            "context": context or {},
        }
        logger.error("Error occurred", extra=error_data, exc_info=True)


def get_logger(name: str, log_level: str = "INFO") -> logging.Logger:
    """
    Convenience function to get a logger

    Args:
        name: Logger name
        log_level: Logging level

    Returns:
        Configured logger
    """
    return LeakSenseLogger.get_logger(name, log_level)
