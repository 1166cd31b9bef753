"""Negative-result-measurement Monte Carlo."""

from .models import Estimate, LgiEstimate, Orientation, OrientationCounts, PairEstimate, RunConfig
from .nrm import estimate_from_counts, simulate_lgi, simulate_orientation, simulate_pair
from .streams import DEFAULT_CHUNK_SIZE, chunk_sizes, chunk_stream

__all__ = [
    "Estimate",
    "LgiEstimate",
    "Orientation",
    "OrientationCounts",
    "PairEstimate",
    "RunConfig",
    "estimate_from_counts",
    "simulate_lgi",
    "simulate_orientation",
    "simulate_pair",
    "DEFAULT_CHUNK_SIZE",
    "chunk_sizes",
    "chunk_stream",
]
