"""Exact constant-density evolution used to cross-check the expansion.

- pmns_matrix: standard-parameterization mixing matrix
- hamiltonian / evolution_operator: exp(-i H L) from an eigendecomposition
- exact_transition_matrix: doubly stochastic flavour transitions
- exact_lgi_correlator: Leggett-Garg combination from exact probabilities
"""

from .pmns import PmnsMatrix, pmns_matrix
from .evolution import (
    TransitionMatrix,
    evolution_operator,
    exact_transition_matrix,
    hamiltonian,
    max_expansion_deviation,
    transition_probabilities,
)
from .correlator import exact_lgi_correlator, exact_lgi_surface, exact_pair_correlator

__all__ = [
    "PmnsMatrix",
    "pmns_matrix",
    "TransitionMatrix",
    "evolution_operator",
    "exact_transition_matrix",
    "hamiltonian",
    "max_expansion_deviation",
    "transition_probabilities",
    "exact_lgi_correlator",
    "exact_lgi_surface",
    "exact_pair_correlator",
]
