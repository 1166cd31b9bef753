"""Unit conversions between laboratory and natural units.

Lengths enter the library in km, energies in GeV, mass splittings in eV^2
and the matter potential in eV. Internally every phase is evaluated in
natural units (hbar = c = 1), so a baseline is converted to eV^-1 once:

    L[eV^-1] = L[km] * 1e3 / (hbar c [eV m])

with hbar c = 197.3269804 MeV fm. With these constants the vacuum phase
Delta m^2 L / 4E reproduces the familiar 1.26693 * dm2[eV^2] L[km] / E[GeV].
"""

from __future__ import annotations

import math

from ..errors import ParameterError

HBAR_C_EV_M = 197.3269804e-9
KM_TO_INV_EV = 1.0e3 / HBAR_C_EV_M  # 5.0677307e9 eV^-1 per km
GEV_TO_EV = 1.0e9

# V = 7.56e-14 (rho / g cm^-3) Y_e eV
MATTER_POTENTIAL_COEFF_EV = 7.56e-14

TWO_PI = 2.0 * math.pi


def km_to_inverse_ev(length_km):
    return length_km * KM_TO_INV_EV


def gev_to_ev(energy_gev: float) -> float:
    return energy_gev * GEV_TO_EV


def potential_from_density(rho: float, ye: float) -> float:
    """Constant-density MSW potential in eV.

    Args:
        rho: matter density in g/cm^3
        ye: electrons per nucleon

    Raises:
        ParameterError: negative density or Y_e outside [0, 1]
    """
    if not math.isfinite(rho) or rho < 0.0:
        raise ParameterError(f"Matter density must be non-negative, got {rho}")
    if not math.isfinite(ye) or not 0.0 <= ye <= 1.0:
        raise ParameterError(f"Electron fraction must lie in [0, 1], got {ye}")
    return MATTER_POTENTIAL_COEFF_EV * rho * ye


def wrap_phase(value_rad: float) -> float:
    """Reduce a phase to [0, 2pi)."""
    wrapped = value_rad % TWO_PI
    # 极小的负相位会舍入成恰好 2pi，归零
    return 0.0 if wrapped >= TWO_PI else wrapped


def phase_from_degrees(value_deg: float) -> float:
    return wrap_phase(math.radians(value_deg))
