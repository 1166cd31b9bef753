"""Data models for the negative-result-measurement simulator."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from ..correlator.models import CLASSICAL_BOUND, BaselineSchedule
from ..errors import ParameterError

_SEED_LIMIT = 2**64


class Orientation(str, Enum):
    """Which first-measurement outcome fires the detector.

    Triggered runs are discarded, so an orientation only ever retains runs
    whose first outcome is the other one.
    """

    TRIGGER_ON_E = "trigger-on-e"
    TRIGGER_ON_NOT_E = "trigger-on-not-e"

    @property
    def retained_q(self) -> int:
        """Q value of the first outcome in every retained run."""
        return -1 if self is Orientation.TRIGGER_ON_E else 1

    @property
    def stream_index(self) -> int:
        return 0 if self is Orientation.TRIGGER_ON_E else 1


@dataclass(frozen=True)
class RunConfig:
    """Budget and stream identity of one simulated pair.

    ``orientation`` is None for the paired protocol, where ``simulate_pair``
    gives each orientation half of ``n_runs``.
    """

    n_runs: int
    seed: int
    pair: Tuple[float, float]
    orientation: Optional[Orientation] = None
    pair_index: int = 0

    def __post_init__(self) -> None:
        if isinstance(self.n_runs, bool) or not isinstance(self.n_runs, int) or self.n_runs < 1:
            raise ParameterError(f"n_runs must be a positive integer, got {self.n_runs!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or not 0 <= self.seed < _SEED_LIMIT:
            raise ParameterError(f"seed must be an integer in [0, 2**64), got {self.seed!r}")
        if self.pair_index < 0:
            raise ParameterError(f"pair_index must be non-negative, got {self.pair_index}")
        first, second = self.pair
        if not (math.isfinite(first) and math.isfinite(second)) or first < 0.0:
            raise ParameterError(f"Pair lengths must be finite and non-negative, got {self.pair}")
        if second < first:
            raise ParameterError(f"Second length {second} km precedes the first ({first} km)")

    @property
    def separation(self) -> float:
        return self.pair[1] - self.pair[0]

    def split(self) -> Tuple["RunConfig", "RunConfig"]:
        """Per-orientation configs; trigger-on-e takes the smaller half of an odd budget."""
        on_e = self.n_runs // 2
        on_not_e = self.n_runs - on_e
        if on_e < 1:
            raise ParameterError("n_runs must be at least 2 to run both orientations")
        return (
            replace(self, n_runs=on_e, orientation=Orientation.TRIGGER_ON_E),
            replace(self, n_runs=on_not_e, orientation=Orientation.TRIGGER_ON_NOT_E),
        )


@dataclass(frozen=True)
class OrientationCounts:
    """Tallies from one orientation: retained runs and their second outcomes."""

    orientation: Orientation
    n_runs: int
    retained: int
    second_plus: int

    @property
    def second_minus(self) -> int:
        return self.retained - self.second_plus

    @property
    def retention(self) -> float:
        return self.retained / self.n_runs if self.n_runs else 0.0

    def __add__(self, other: "OrientationCounts") -> "OrientationCounts":
        if other.orientation is not self.orientation:
            raise ParameterError("Cannot add counts from different orientations")
        return OrientationCounts(
            orientation=self.orientation,
            n_runs=self.n_runs + other.n_runs,
            retained=self.retained + other.retained,
            second_plus=self.second_plus + other.second_plus,
        )


@dataclass(frozen=True)
class Estimate:
    value: float
    std_error: float

    def to_dict(self) -> Dict[str, float]:
        return {"value": self.value, "std_error": self.std_error}


@dataclass(frozen=True)
class PairEstimate:
    """Scripted probabilities and the pair correlator estimated from counts."""

    p_pp: Estimate
    p_pm: Estimate
    p_mp: Estimate
    p_mm: Estimate
    c12_hat: Estimate
    on_e: OrientationCounts
    on_not_e: OrientationCounts

    @property
    def n_used(self) -> Dict[str, int]:
        return {
            Orientation.TRIGGER_ON_E.value: self.on_e.retained,
            Orientation.TRIGGER_ON_NOT_E.value: self.on_not_e.retained,
        }

    @property
    def probability_sum(self) -> float:
        return self.p_pp.value + self.p_pm.value + self.p_mp.value + self.p_mm.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p_pp": self.p_pp.to_dict(),
            "p_pm": self.p_pm.to_dict(),
            "p_mp": self.p_mp.to_dict(),
            "p_mm": self.p_mm.to_dict(),
            "c12_hat": self.c12_hat.to_dict(),
            "n_used": self.n_used,
            "retention": {
                Orientation.TRIGGER_ON_E.value: self.on_e.retention,
                Orientation.TRIGGER_ON_NOT_E.value: self.on_not_e.retention,
            },
        }


@dataclass(frozen=True)
class LgiEstimate:
    """Monte Carlo estimate of C = C12 + C23 + C34 - C14 with its error."""

    c12: PairEstimate
    c23: PairEstimate
    c34: PairEstimate
    c14: PairEstimate
    c_total: Estimate
    schedule: BaselineSchedule
    n_runs: int
    seed: int

    @property
    def significance(self) -> float:
        """(C - 2) in units of its standard error."""
        excess = self.c_total.value - CLASSICAL_BOUND
        if self.c_total.std_error > 0.0:
            return excess / self.c_total.std_error
        if excess == 0.0:
            return 0.0
        return math.copysign(math.inf, excess)

    def pairs(self) -> Dict[str, PairEstimate]:
        return {"c12": self.c12, "c23": self.c23, "c34": self.c34, "c14": self.c14}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "c_total": self.c_total.to_dict(),
            "significance": self.significance,
            "pairs": {name: pair.to_dict() for name, pair in self.pairs().items()},
            "schedule": {"l1": self.schedule.l1, "spacing": self.schedule.spacing},
            "n_runs": self.n_runs,
            "seed": self.seed,
        }
