"""Data models for the oscillation layer."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Union

import numpy as np

from ..errors import ParameterError
from .units import TWO_PI, phase_from_degrees, potential_from_density

FloatOrArray = Union[float, np.ndarray]

_HALF_PI = 0.5 * math.pi

class Flavor(Enum):
    """Flavour outcomes of a measurement, in PMNS row order."""

    E = "e"
    MU = "mu"
    TAU = "tau"

    @property
    def index(self) -> int:
        return _FLAVOR_INDEX[self]

    @property
    def q_value(self) -> int:
        """Dichotomic Q: +1 for nu_e, -1 otherwise."""
        return 1 if self is Flavor.E else -1

    @classmethod
    def from_index(cls, index: int) -> "Flavor":
        return _FLAVOR_ORDER[index]


_FLAVOR_ORDER = (Flavor.E, Flavor.MU, Flavor.TAU)
_FLAVOR_INDEX = {flavor: i for i, flavor in enumerate(_FLAVOR_ORDER)}

# 按行顺序排列的 Q 值，用于向量化求和
Q_VALUES = np.array([flavor.q_value for flavor in _FLAVOR_ORDER], dtype=float)


@dataclass(frozen=True)
class OscillationParams:
    """Physical inputs of an oscillation probability.

    Angles and the CP phase are in radians, mass splittings in eV^2, the
    beam energy in GeV and the matter potential in eV. ``alpha_override``
    replaces alpha = dm21_sq / dm31_sq wherever it appears in the series
    expansion while dm31_sq (and so the phase and matter parameter) stays
    fixed.
    """

    dm21_sq: float
    dm31_sq: float
    theta12: float
    theta13: float
    theta23: float
    delta_cp: float
    energy: float
    potential: float
    alpha_override: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("dm21_sq", "dm31_sq", "theta12", "theta13", "theta23",
                     "delta_cp", "energy", "potential"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value}")
        if self.dm31_sq == 0.0:
            raise ParameterError("dm31_sq must be non-zero")
        if self.energy <= 0.0:
            raise ParameterError(f"Beam energy must be positive, got {self.energy} GeV")
        if self.potential < 0.0:
            raise ParameterError(f"Matter potential must be non-negative, got {self.potential} eV")
        for name in ("theta12", "theta13", "theta23"):
            angle = getattr(self, name)
            if not 0.0 <= angle <= _HALF_PI:
                raise ParameterError(f"{name} must lie in [0, pi/2], got {angle}")
        if not 0.0 <= self.delta_cp < TWO_PI:
            raise ParameterError(f"delta_cp must lie in [0, 2pi), got {self.delta_cp}")
        if self.alpha_override is not None and not math.isfinite(self.alpha_override):
            raise ParameterError(f"alpha_override must be finite, got {self.alpha_override}")

    @classmethod
    def from_degrees(
        cls,
        *,
        dm21_sq: float,
        dm31_sq: float,
        theta12_deg: float,
        theta13_deg: float,
        theta23_deg: float,
        delta_cp_deg: float,
        energy_gev: float,
        potential_ev: Optional[float] = None,
        density_g_cm3: float = 3.0,
        electron_fraction: float = 0.5,
        alpha_override: Optional[float] = None,
    ) -> "OscillationParams":
        """Build parameters from laboratory units (degrees, g/cm^3)."""
        if potential_ev is None:
            potential_ev = potential_from_density(density_g_cm3, electron_fraction)
        return cls(
            dm21_sq=dm21_sq,
            dm31_sq=dm31_sq,
            theta12=math.radians(theta12_deg),
            theta13=math.radians(theta13_deg),
            theta23=math.radians(theta23_deg),
            delta_cp=phase_from_degrees(delta_cp_deg),
            energy=energy_gev,
            potential=potential_ev,
            alpha_override=alpha_override,
        )

    @classmethod
    def reference(cls) -> "OscillationParams":
        """Global-fit point used for the published maxima (1 GeV, rho = 3 g/cm^3)."""
        return cls.from_degrees(
            dm21_sq=7.50e-5,
            dm31_sq=2.457e-3,
            theta12_deg=33.48,
            theta13_deg=8.50,
            theta23_deg=42.3,
            delta_cp_deg=306.0,
            energy_gev=1.0,
            density_g_cm3=3.0,
            electron_fraction=0.5,
        )

    @property
    def alpha(self) -> float:
        if self.alpha_override is not None:
            return self.alpha_override
        return self.dm21_sq / self.dm31_sq

    def with_changes(self, **changes: object) -> "OscillationParams":
        return replace(self, **changes)  # type: ignore[arg-type]


@dataclass(frozen=True)
class KinematicFactors:
    """Dimensionless building blocks of the series expansion.

    delta: Delta m^2_31 L / 4E
    a_mat: A = 2EV / Delta m^2_31
    f: sin(VL/2) / A = sin(A delta) / A
    g: sin((A - 1) delta) / (A - 1)
    """

    delta: FloatOrArray
    a_mat: float
    f: FloatOrArray
    g: FloatOrArray


@dataclass(frozen=True)
class ValidityReport:
    """Whether a parameter point sits inside the expansion's regime."""

    alpha: float
    s13: float
    energy: float
    small_alpha: bool
    small_s13: bool
    energy_in_range: bool

    @property
    def ok(self) -> bool:
        return self.small_alpha and self.small_s13 and self.energy_in_range
