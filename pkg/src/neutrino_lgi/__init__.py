"""Leggett-Garg inequality violation in three-flavour neutrino oscillations."""

from .config import AppConfig, load_config
from .correlator import BaselineSchedule, CorrelatorResult, lgi_correlator
from .oscillation import Flavor, OscillationParams

__all__ = [
    "AppConfig",
    "load_config",
    "BaselineSchedule",
    "CorrelatorResult",
    "lgi_correlator",
    "Flavor",
    "OscillationParams",
]
