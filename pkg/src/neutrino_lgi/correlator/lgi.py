"""Pair correlators and the four-measurement Leggett-Garg combination.

The pair correlator follows the fully expanded expression

    C = P_e(L1) [2 P_ee(S) - 1]
        - P_mu(L1) [2 P_mu->e(S) - 1]
        - P_tau(L1) [2 P_tau->e(S) - 1]

with S = L2 - L1, the first factors taken from the source (the beam is
nu_e at L = 0 for every pair) and the brackets taken verbatim from the
return-leg factors in :mod:`neutrino_lgi.oscillation.expansion`.
"""

from __future__ import annotations

import numpy as np

from ..oscillation import (
    OscillationParams,
    conditional_return_probabilities,
    flavor_probabilities_from_e,
)
from ..oscillation.models import FloatOrArray
from .models import BaselineSchedule, CorrelatorResult, ScriptedProbabilities


def pair_correlator(
    params: OscillationParams,
    l_first: FloatOrArray,
    separation: FloatOrArray,
    *,
    literal_phase: bool = True,
) -> FloatOrArray:
    """<Q(L1) Q(L1 + separation)> from the series expansion; broadcasts."""
    p_e, p_mu, p_tau = flavor_probabilities_from_e(params, l_first)
    p_ee, p_mu_e, p_tau_e = conditional_return_probabilities(params, separation, literal_phase=literal_phase)
    return (
        p_e * (2.0 * p_ee - 1.0)
        - p_mu * (2.0 * p_mu_e - 1.0)
        - p_tau * (2.0 * p_tau_e - 1.0)
    )


def lgi_surface(params: OscillationParams, l1: FloatOrArray, spacing: FloatOrArray) -> FloatOrArray:
    """C = C12 + C23 + C34 - C14 for equally spaced schedules; broadcasts."""
    l1 = np.asarray(l1, dtype=float)
    spacing = np.asarray(spacing, dtype=float)
    c12 = pair_correlator(params, l1, spacing)
    c23 = pair_correlator(params, l1 + spacing, spacing)
    c34 = pair_correlator(params, l1 + 2.0 * spacing, spacing)
    c14 = pair_correlator(params, l1, 3.0 * spacing)
    return c12 + c23 + c34 - c14


def lgi_correlator(
    params: OscillationParams, schedule: BaselineSchedule, *, literal_phase: bool = True
) -> CorrelatorResult:
    spacing = schedule.spacing
    return CorrelatorResult.from_pairs(
        c12=pair_correlator(params, schedule.l1, spacing, literal_phase=literal_phase),
        c23=pair_correlator(params, schedule.l2, spacing, literal_phase=literal_phase),
        c34=pair_correlator(params, schedule.l3, spacing, literal_phase=literal_phase),
        c14=pair_correlator(params, schedule.l1, 3.0 * spacing, literal_phase=literal_phase),
        schedule=schedule,
    )


def scripted_probabilities(
    params: OscillationParams, l_first: float, separation: float
) -> ScriptedProbabilities:
    """Q-grouped joint probabilities predicted by the expansion.

    P++ = P_e P_ee, P+- = P_e (1 - P_ee), P-+ = P_mu P_mu->e + P_tau P_tau->e,
    and P-- takes the remainder of the Q = -1 branch.
    """
    p_e, p_mu, p_tau = flavor_probabilities_from_e(params, l_first)
    p_ee, p_mu_e, p_tau_e = conditional_return_probabilities(params, separation)
    p_mp = p_mu * p_mu_e + p_tau * p_tau_e
    return ScriptedProbabilities(
        p_pp=float(p_e * p_ee),
        p_pm=float(p_e * (1.0 - p_ee)),
        p_mp=float(p_mp),
        p_mm=float(p_mu + p_tau - p_mp),
    )
