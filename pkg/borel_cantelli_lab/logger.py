"""
Logging configuration utilities for the Borel-Cantelli lab.

All handlers write to stderr: stdout carries the machine-readable reports and
has to stay byte-identical between runs with the same seed.
"""

import logging
import sys

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configure_logging(level: str = "WARNING", logger_name: str | None = None) -> logging.Logger:
    """
    Configure logging for the application.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        logger_name: Optional specific logger name, defaults to root logger

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(logger_name) if logger_name else logging.getLogger()

    # Clear existing handlers to avoid duplicates
    logger.handlers.clear()
    logger.setLevel(getattr(logging, level.upper(), logging.WARNING))

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)

    return logger


def get_logger(name: str, level: str | None = None) -> logging.Logger:
    """
    Get a logger instance.

    Module loggers get no handler of their own and propagate to the root
    logger, so ``configure_logging`` decides where and at which level records
    appear; before it runs, warnings still reach stderr through logging's
    last-resort handler.

    Args:
        name: Logger name (typically __name__)
        level: Optional level pinned on this logger only

    Returns:
        Logger instance
    """
    logger = logging.getLogger(name)
    if level is not None:
        logger.setLevel(level.upper())
    return logger
