"""Second-order series expansion of three-flavour probabilities in matter.

The neutrino starts as nu_e at L = 0 and crosses matter of constant
potential V. Probabilities are kept to second order in the small
parameters alpha = dm21_sq / dm31_sq and s13, so three structures appear:

    solar      alpha^2 sin^2(2 theta12) f^2
    atmospheric 4 s13^2 g^2
    interference 2 alpha s13 sin(2 theta12) sin(2 theta23) f g

with f, g from :func:`kinematic_factors`. Values are never clamped to
[0, 1]; outside the small-parameter regime they may leave it slightly,
while the three probabilities always sum to one.

All functions accept scalar or numpy-array lengths and broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import OrderingError, ParameterError
from .models import Flavor, FloatOrArray, KinematicFactors, OscillationParams, ValidityReport
from .units import gev_to_ev, km_to_inverse_ev

# Below this |x| the ratio sin(k x) / x is replaced by its Taylor series.
SERIES_THRESHOLD = 1e-6

ProbabilityTriple = Tuple[FloatOrArray, FloatOrArray, FloatOrArray]


def _sin_ratio(k: FloatOrArray, x: float) -> FloatOrArray:
    """sin(k x) / x, continuous through x = 0."""
    if abs(x) < SERIES_THRESHOLD:
        return k - k**3 * x * x / 6.0
    return np.sin(k * x) / x


def _as_length(length: FloatOrArray, name: str = "length") -> FloatOrArray:
    if np.ndim(length):
        values = np.asarray(length, dtype=float)
        if np.any(values < 0.0):
            raise ParameterError(f"{name} must be non-negative")
        return values
    value = float(length)
    if value < 0.0:
        raise ParameterError(f"{name} must be non-negative, got {value}")
    return value


def matter_parameter(params: OscillationParams) -> float:
    """A = 2EV / dm31_sq."""
    return 2.0 * gev_to_ev(params.energy) * params.potential / params.dm31_sq


def oscillation_phase(params: OscillationParams, length: FloatOrArray) -> FloatOrArray:
    """Delta = dm31_sq L / 4E in radians, L in km."""
    return params.dm31_sq * km_to_inverse_ev(length) / (4.0 * gev_to_ev(params.energy))


def kinematic_factors(params: OscillationParams, length: FloatOrArray) -> KinematicFactors:
    delta = oscillation_phase(params, _as_length(length))
    a_mat = matter_parameter(params)
    return KinematicFactors(
        delta=delta,
        a_mat=a_mat,
        f=_sin_ratio(delta, a_mat),
        g=_sin_ratio(delta, a_mat - 1.0),
    )


def alpha_value(params: OscillationParams) -> float:
    return params.alpha


@dataclass(frozen=True)
class _Terms:
    delta: FloatOrArray
    solar: FloatOrArray
    atmospheric: FloatOrArray
    interference: FloatOrArray


def _expansion_terms(params: OscillationParams, length: FloatOrArray) -> _Terms:
    kin = kinematic_factors(params, length)
    alpha = params.alpha
    s13 = math.sin(params.theta13)
    sin_2t12 = math.sin(2.0 * params.theta12)
    sin_2t23 = math.sin(2.0 * params.theta23)
    return _Terms(
        delta=kin.delta,
        solar=alpha * alpha * sin_2t12 * sin_2t12 * kin.f * kin.f,
        atmospheric=4.0 * s13 * s13 * kin.g * kin.g,
        interference=2.0 * alpha * s13 * sin_2t12 * sin_2t23 * kin.f * kin.g,
    )


def flavor_probabilities_from_e(params: OscillationParams, length: FloatOrArray) -> ProbabilityTriple:
    """(P_e, P_mu, P_tau) after a nu_e travels `length` km."""
    terms = _expansion_terms(params, length)
    c23_sq = math.cos(params.theta23) ** 2
    s23_sq = math.sin(params.theta23) ** 2
    phase = np.cos(terms.delta - params.delta_cp)

    p_e = 1.0 - terms.solar - terms.atmospheric
    p_mu = terms.solar * c23_sq + terms.atmospheric * s23_sq + terms.interference * phase
    p_tau = terms.solar * s23_sq + terms.atmospheric * c23_sq - terms.interference * phase
    return p_e, p_mu, p_tau


def interference_phase_factor(
    delta: FloatOrArray, delta_cp: float, *, literal: bool = True
) -> FloatOrArray:
    """Phase factor of the return-leg interference term.

    The literal form is {cos(Delta - delta_cp) - sin(delta_cp) sin(Delta)},
    which equals cos(Delta) cos(delta_cp).
    """
    if literal:
        return np.cos(delta - delta_cp) - math.sin(delta_cp) * np.sin(delta)
    return np.cos(delta) * math.cos(delta_cp)


def conditional_return_probabilities(
    params: OscillationParams, separation: FloatOrArray, *, literal_phase: bool = True
) -> ProbabilityTriple:
    """(P_ee, P_mu->e, P_tau->e) over a second leg of `separation` km.

    These are the second-leg factors of the pair correlator: each bracket
    of the correlator equals 2P - 1 of one of them. The interference term
    carries the literal phase factor with + for the mu row and - for the
    tau row; ``literal_phase=False`` uses its simplified product form.
    """
    terms = _expansion_terms(params, _as_length(separation, "separation"))
    c23_sq = math.cos(params.theta23) ** 2
    s23_sq = math.sin(params.theta23) ** 2
    phase = interference_phase_factor(terms.delta, params.delta_cp, literal=literal_phase)

    p_ee = 1.0 - terms.solar - terms.atmospheric
    p_mu_e = terms.solar * c23_sq + terms.atmospheric * s23_sq + terms.interference * phase
    p_tau_e = terms.solar * s23_sq + terms.atmospheric * c23_sq - terms.interference * phase
    return p_ee, p_mu_e, p_tau_e


def joint_probability_e_then(
    params: OscillationParams, target: Flavor, l1: float, l2: float
) -> float:
    """Probability of finding nu_e at l1 and then `target` at l2.

    Collapse-chain model: the first measurement projects onto nu_e, which
    then propagates afresh over l2 - l1.
    """
    if l1 < 0.0:
        raise ParameterError(f"l1 must be non-negative, got {l1}")
    if l2 < l1:
        raise OrderingError(l1, l2)
    p_first = flavor_probabilities_from_e(params, l1)[0]
    second = flavor_probabilities_from_e(params, l2 - l1)[target.index]
    return float(p_first * second)


def validity_report(params: OscillationParams) -> ValidityReport:
    alpha = params.alpha
    s13 = math.sin(params.theta13)
    return ValidityReport(
        alpha=alpha,
        s13=s13,
        energy=params.energy,
        small_alpha=abs(alpha) < 0.2,
        small_s13=s13 < 0.2,
        energy_in_range=0.1 <= params.energy <= 10.0,
    )
