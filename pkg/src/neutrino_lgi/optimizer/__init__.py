"""Scans, refinement and parameter sweeps over (L1, delta L)."""

from .models import Evaluator, MaximumReport, ScanGrid, ScanSurface, SweepAxis, SweepPoint
from .scan import (
    evaluate_point,
    grid_scan,
    line_scan,
    locate_maximum,
    locate_spacing_maximum,
    parameter_sweep,
    refine_maximum,
    refine_spacing,
    surface_function,
)

__all__ = [
    "Evaluator",
    "MaximumReport",
    "ScanGrid",
    "ScanSurface",
    "SweepAxis",
    "SweepPoint",
    "evaluate_point",
    "grid_scan",
    "line_scan",
    "locate_maximum",
    "locate_spacing_maximum",
    "parameter_sweep",
    "refine_maximum",
    "refine_spacing",
    "surface_function",
]
