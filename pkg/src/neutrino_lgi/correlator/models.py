"""Data models for Leggett-Garg correlators."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Tuple

from ..errors import ParameterError

# Macrorealist bound on C12 + C23 + C34 - C14.
CLASSICAL_BOUND = 2.0


@dataclass(frozen=True)
class BaselineSchedule:
    """Four equally spaced measurement points L1 < L2 < L3 < L4 (km)."""

    l1: float
    spacing: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.l1) or self.l1 < 0.0:
            raise ParameterError(f"l1 must be non-negative, got {self.l1}")
        if not math.isfinite(self.spacing) or self.spacing < 0.0:
            raise ParameterError(f"spacing must be non-negative, got {self.spacing}")

    @property
    def l2(self) -> float:
        return self.l1 + self.spacing

    @property
    def l3(self) -> float:
        return self.l1 + 2.0 * self.spacing

    @property
    def l4(self) -> float:
        return self.l1 + 3.0 * self.spacing

    @property
    def lengths(self) -> Tuple[float, float, float, float]:
        return (self.l1, self.l2, self.l3, self.l4)

    def pairs(self) -> Tuple[Tuple[float, float], ...]:
        """(first, second) lengths of the pairs entering C, in 12, 23, 34, 14 order."""
        return (
            (self.l1, self.l2),
            (self.l2, self.l3),
            (self.l3, self.l4),
            (self.l1, self.l4),
        )


@dataclass(frozen=True)
class CorrelatorResult:
    """Pair correlators and their Leggett-Garg combination at one schedule."""

    c12: float
    c23: float
    c34: float
    c14: float
    c_total: float
    schedule: BaselineSchedule

    @classmethod
    def from_pairs(
        cls, c12: float, c23: float, c34: float, c14: float, schedule: BaselineSchedule
    ) -> "CorrelatorResult":
        c12, c23, c34, c14 = float(c12), float(c23), float(c34), float(c14)
        return cls(
            c12=c12,
            c23=c23,
            c34=c34,
            c14=c14,
            c_total=c12 + c23 + c34 - c14,
            schedule=schedule,
        )

    @property
    def violation(self) -> float:
        """Excess of C over the classical bound."""
        return self.c_total - CLASSICAL_BOUND

    @property
    def violates_bound(self) -> bool:
        return self.c_total > CLASSICAL_BOUND

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["schedule"] = {
            "l1": self.schedule.l1,
            "spacing": self.schedule.spacing,
            "l2": self.schedule.l2,
            "l3": self.schedule.l3,
            "l4": self.schedule.l4,
        }
        return payload


@dataclass(frozen=True)
class ScriptedProbabilities:
    """Joint probabilities grouped by Q value, as measured in the lab."""

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    @property
    def correlator(self) -> float:
        return self.p_pp - self.p_pm - self.p_mp + self.p_mm

    @property
    def total(self) -> float:
        return self.p_pp + self.p_pm + self.p_mp + self.p_mm
