"""
Environment Configuration Module

Optional environment overrides for the lab's defaults. Nothing is required:
every value falls back to a reproducible default.

Environment Variables:
    BCLAB_SEED: Default master seed for simulations (default: 0)
    BCLAB_LOG_LEVEL: Default logging level (default: WARNING)
    BCLAB_WORKERS: Default number of simulation worker processes (default: 1)
    BCLAB_OUTPUT_FORMAT: Default output format, table or json-lines (default: table)
"""

import os
from typing import Any

__all__ = ["get_default_seed", "get_log_level", "get_output_format", "get_workers"]

_OUTPUT_FORMATS = ("table", "json-lines")


def _int_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip())
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def get_default_seed() -> int:
    """Get the default simulation seed from the environment."""
    return _int_env("BCLAB_SEED", 0, 0)


def get_log_level() -> str:
    """Get the default logging level from the environment."""
    return str(os.getenv("BCLAB_LOG_LEVEL", "WARNING")).strip().upper() or "WARNING"


def get_workers() -> int:
    """Get the default number of worker processes from the environment."""
    return _int_env("BCLAB_WORKERS", 1, 1)


def get_output_format() -> str:
    """Get the default output format from the environment."""
    value = str(os.getenv("BCLAB_OUTPUT_FORMAT", "table")).strip().lower()
    if value not in _OUTPUT_FORMATS:
        raise ValueError(f"BCLAB_OUTPUT_FORMAT must be one of {_OUTPUT_FORMATS}, got {value!r}")
    return value


def __getattr__(name: str) -> Any:
    """Resolve environment-backed settings at access time.

    Tests that set variables late get current values without module reloads.
    """
    getters = {
        "BCLAB_SEED": get_default_seed,
        "BCLAB_LOG_LEVEL": get_log_level,
        "BCLAB_WORKERS": get_workers,
        "BCLAB_OUTPUT_FORMAT": get_output_format,
    }
    if name in getters:
        return getters[name]()
    raise AttributeError(f"module '{__name__}' has no attribute '{name}'")


def __dir__() -> list[str]:
    """List available attributes for better IDE support."""
    return sorted(list(globals().keys()) + __all__)
