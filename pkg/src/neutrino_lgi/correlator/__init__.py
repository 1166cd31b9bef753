"""Leggett-Garg correlators built on the series expansion."""

from .models import CLASSICAL_BOUND, BaselineSchedule, CorrelatorResult, ScriptedProbabilities
from .lgi import lgi_correlator, lgi_surface, pair_correlator, scripted_probabilities

__all__ = [
    "CLASSICAL_BOUND",
    "BaselineSchedule",
    "CorrelatorResult",
    "ScriptedProbabilities",
    "lgi_correlator",
    "lgi_surface",
    "pair_correlator",
    "scripted_probabilities",
]
