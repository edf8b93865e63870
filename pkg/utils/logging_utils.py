"""
Logging utilities for the ore-kernel project.

Results go to stdout as JSON, so every handler configured here writes to
stderr. Module loggers live under the ``ore_kernel`` namespace and carry
optional key/value context appended to each message.
"""

import logging
import os
import sys
from typing import Any, Dict, Optional, Union

# Configure the base logger
logger = logging.getLogger("ore_kernel")

DEFAULT_LOG_FORMAT = "%(asctime)s - %(levelname)s - %(module)s - %(message)s"

DEFAULT_LOG_LEVEL = logging.WARNING


def setup_logging(
    log_level: Union[int, str] = DEFAULT_LOG_LEVEL,
    log_format: str = DEFAULT_LOG_FORMAT,
    log_file: Optional[str] = None,
) -> None:
    """
    Set up logging configuration for the kernel.

    Args:
        log_level: Logging level (default: WARNING)
        log_format: Log format string
        log_file: Optional path to a log file written in addition to stderr
    """
    if isinstance(log_level, str):
        log_level = getattr(logging, log_level.upper(), DEFAULT_LOG_LEVEL)

    logger.setLevel(log_level)

    # Remove existing handlers to avoid duplicate logs
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    formatter = logging.Formatter(log_format)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        os.makedirs(os.path.dirname(os.path.abspath(log_file)), exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Get a logger under the ``ore_kernel`` namespace.

    Args:
        name: Module name (default: None, which returns the package logger)

    Returns:
        Logger instance
    """
    if name:
        return logging.getLogger(f"ore_kernel.{name}")
    return logger


class ContextLogger:
    """
    Logger wrapper that appends key/value context to every message.

    Long-running searches bind the set and the budget they run under, so that
    a warning about an exhausted search can be traced back to its query.
    """

    def __init__(
        self, name: Optional[str] = None, context: Optional[Dict[str, Any]] = None
    ):
        self.logger = get_logger(name)
        self.context = dict(context or {})

    def bind(self, **kwargs: Any) -> "ContextLogger":
        """Child logger with extra context; the receiver is unchanged."""
        child = ContextLogger(context={**self.context, **kwargs})
        child.logger = self.logger
        return child

    def _format_message(self, msg: str) -> str:
        if not self.context:
            return msg
        context_str = " | ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{msg} [Context: {context_str}]"

    def debug(self, msg: str, *args: Any, **kwargs: Any) -> None:
        if self.logger.isEnabledFor(logging.DEBUG):
            self.logger.debug(self._format_message(msg), *args, **kwargs)

    def info(self, msg: str, *args: Any, **kwargs: Any) -> None:
        self.logger.info(self._format_message(msg), *args, **kwargs)

    def warning(self, msg: str, *args: Any, **kwargs: Any) -> None:
        self.logger.warning(self._format_message(msg), *args, **kwargs)

    def error(self, msg: str, *args: Any, **kwargs: Any) -> None:
        self.logger.error(self._format_message(msg), *args, **kwargs)


# Initialize logging with default configuration
setup_logging()
