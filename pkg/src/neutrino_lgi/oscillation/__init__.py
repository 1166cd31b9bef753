"""Oscillation probabilities from the second-order series expansion.

- OscillationParams / Flavor / KinematicFactors: input and helper types
- potential_from_density: MSW potential from density and Y_e
- flavor_probabilities_from_e: survival and appearance from a nu_e source
- conditional_return_probabilities: second-leg factors of the correlator
- joint_probability_e_then: collapse-chain joint probability
"""

from .models import Flavor, KinematicFactors, OscillationParams, Q_VALUES, ValidityReport
from .units import KM_TO_INV_EV, phase_from_degrees, potential_from_density, wrap_phase
from .expansion import (
    alpha_value,
    conditional_return_probabilities,
    flavor_probabilities_from_e,
    interference_phase_factor,
    joint_probability_e_then,
    kinematic_factors,
    matter_parameter,
    oscillation_phase,
    validity_report,
)

__all__ = [
    "Flavor",
    "KinematicFactors",
    "OscillationParams",
    "Q_VALUES",
    "ValidityReport",
    "KM_TO_INV_EV",
    "phase_from_degrees",
    "potential_from_density",
    "wrap_phase",
    "alpha_value",
    "conditional_return_probabilities",
    "flavor_probabilities_from_e",
    "interference_phase_factor",
    "joint_probability_e_then",
    "kinematic_factors",
    "matter_parameter",
    "oscillation_phase",
    "validity_report",
]
