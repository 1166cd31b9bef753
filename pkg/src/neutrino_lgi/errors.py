"""Exception types shared across the package."""

from __future__ import annotations


class NeutrinoLgiError(Exception):
    """Base class for every error raised by neutrino-lgi."""


class ParameterError(NeutrinoLgiError, ValueError):
    """Raised when a physical or numerical input is outside its domain."""


class OrderingError(ParameterError):
    """Raised when measurement lengths are given out of order."""

    def __init__(self, first: float, second: float) -> None:
        self.first = first
        self.second = second
        super().__init__(
            f"Second measurement length {second} km precedes the first ({first} km)"
        )


class ConfigError(ParameterError):
    """Raised when a configuration document is malformed."""

    def __init__(self, key_path: str, message: str) -> None:
        self.key_path = key_path
        super().__init__(f"{key_path}: {message}")


class EstimationError(NeutrinoLgiError, RuntimeError):
    """Raised when a Monte Carlo estimate cannot be formed."""

    def __init__(self, orientation: str, message: str) -> None:
        self.orientation = orientation
        super().__init__(f"[{orientation}] {message}")
