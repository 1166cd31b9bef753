"""Data models for scans, maxima and parameter sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, Optional, Tuple

import numpy as np

from ..errors import ParameterError
from ..oscillation import OscillationParams, wrap_phase


class Evaluator(str, Enum):
    """Which probability model a scan evaluates C with."""

    EXPANSION = "expansion"
    ORACLE = "oracle"


class SweepAxis(str, Enum):
    """Parameter varied by a sweep. Angles are given in radians."""

    THETA13 = "theta13"
    ALPHA = "alpha"
    DELTA_CP = "delta_cp"

    def apply(self, params: OscillationParams, value: float) -> OscillationParams:
        if self is SweepAxis.THETA13:
            return params.with_changes(theta13=float(value))
        if self is SweepAxis.ALPHA:
            return params.with_changes(alpha_override=float(value))
        return params.with_changes(delta_cp=wrap_phase(float(value)))


@dataclass(frozen=True)
class ScanGrid:
    """Rectangular (L1, delta L) grid in km, nodes spaced evenly and inclusive."""

    l1_min: float
    l1_max: float
    l1_steps: int
    dl_min: float
    dl_max: float
    dl_steps: int

    def __post_init__(self) -> None:
        for name in ("l1_min", "l1_max", "dl_min", "dl_max"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise ParameterError(f"{name} must be finite and non-negative, got {value}")
        if self.l1_min > self.l1_max:
            raise ParameterError(f"l1_min {self.l1_min} exceeds l1_max {self.l1_max}")
        if self.dl_min > self.dl_max:
            raise ParameterError(f"dl_min {self.dl_min} exceeds dl_max {self.dl_max}")
        for name in ("l1_steps", "dl_steps"):
            steps = getattr(self, name)
            if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
                raise ParameterError(f"{name} must be a positive integer, got {steps!r}")

    @classmethod
    def default(cls) -> "ScanGrid":
        """L1 in [0, 1500] km x delta L in [0, 3000] km at 10 km spacing."""
        return cls(l1_min=0.0, l1_max=1500.0, l1_steps=151, dl_min=0.0, dl_max=3000.0, dl_steps=301)

    @classmethod
    def point(cls, l1: float, dl: float) -> "ScanGrid":
        return cls(l1_min=l1, l1_max=l1, l1_steps=1, dl_min=dl, dl_max=dl, dl_steps=1)

    @classmethod
    def line(cls, l1: float, dl_min: float, dl_max: float, dl_steps: int) -> "ScanGrid":
        return cls(l1_min=l1, l1_max=l1, l1_steps=1, dl_min=dl_min, dl_max=dl_max, dl_steps=dl_steps)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.l1_steps, self.dl_steps)

    @property
    def dl_step(self) -> float:
        if self.dl_steps == 1:
            return 0.0
        return (self.dl_max - self.dl_min) / (self.dl_steps - 1)

    def l1_axis(self) -> np.ndarray:
        return np.linspace(self.l1_min, self.l1_max, self.l1_steps)

    def dl_axis(self) -> np.ndarray:
        return np.linspace(self.dl_min, self.dl_max, self.dl_steps)


@dataclass(frozen=True)
class ScanSurface:
    """C sampled on a grid; ``values[i, j]`` sits at (l1[i], dl[j])."""

    grid: ScanGrid
    l1: np.ndarray
    dl: np.ndarray
    values: np.ndarray
    evaluator: Evaluator

    def samples(self) -> Iterator[Tuple[float, float, float]]:
        """(l1, dl, C) triples in row-major order."""
        for i, l1 in enumerate(self.l1):
            for j, dl in enumerate(self.dl):
                yield float(l1), float(dl), float(self.values[i, j])

    def argmax(self) -> Tuple[int, int]:
        """Index of the largest sample; ties go to the smallest l1, then dl."""
        flat = int(np.argmax(self.values))
        i, j = np.unravel_index(flat, self.values.shape)
        return int(i), int(j)

    def best(self) -> Tuple[float, float, float]:
        i, j = self.argmax()
        return float(self.l1[i]), float(self.dl[j]), float(self.values[i, j])

    @property
    def size(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class MaximumReport:
    l1_star: float
    dl_star: float
    c_star: float
    evaluations: int
    refined: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "l1_star": self.l1_star,
            "dl_star": self.dl_star,
            "c_star": self.c_star,
            "evaluations": self.evaluations,
            "refined": self.refined,
        }


@dataclass(frozen=True)
class SweepPoint:
    """Maximum of C at one sweep value, plus the fixed-L1 maximum when requested."""

    axis: SweepAxis
    value: float
    maximum: MaximumReport
    fixed_l1: Optional[MaximumReport] = None
