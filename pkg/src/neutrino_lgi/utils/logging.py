"""Logging helpers."""

from __future__ import annotations

import logging
from typing import Optional, Union

_LOGGING_CONFIGURED = False
_DEFAULT_LEVEL = logging.WARNING


def configure_logging(level: Union[int, str, None] = None) -> None:
    """Install the package log format once and (re)apply `level`."""
    global _LOGGING_CONFIGURED
    resolved = _resolve_level(level)
    if not _LOGGING_CONFIGURED:
        logging.basicConfig(
            level=resolved,
            format="[%(asctime)s] %(levelname)s %(name)s - %(message)s",
        )
        _LOGGING_CONFIGURED = True
    logging.getLogger().setLevel(resolved)


def get_logger(name: Optional[str] = None) -> logging.Logger:
    if not _LOGGING_CONFIGURED:
        configure_logging()
    return logging.getLogger(name)


def _resolve_level(level: Union[int, str, None]) -> int:
    if level is None:
        return _DEFAULT_LEVEL
    if isinstance(level, int):
        return level
    value = logging.getLevelName(level.strip().upper())
    if not isinstance(value, int):
        raise ValueError(f"Unknown log level: {level}")
    return value
