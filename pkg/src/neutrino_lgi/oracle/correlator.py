"""Leggett-Garg correlators from exact probabilities.

Same collapse-chain measurement model as the expansion: a projective
flavour measurement at the first length, then fresh propagation of the
collapsed flavour state over the separation.
"""

from __future__ import annotations

from typing import Union

import numpy as np
from numpy.typing import NDArray

from ..correlator.models import BaselineSchedule, CorrelatorResult
from ..oscillation import OscillationParams, Q_VALUES
from .evolution import transition_probabilities

ArrayOrFloat = Union[float, NDArray]


def exact_pair_correlator(
    params: OscillationParams, l_first: ArrayOrFloat, separation: ArrayOrFloat
) -> ArrayOrFloat:
    """sum_ab Q(a) Q(b) P_e->a(l_first) P_a->b(separation); broadcasts."""
    l_first, separation = np.broadcast_arrays(
        np.asarray(l_first, dtype=float), np.asarray(separation, dtype=float)
    )
    first = transition_probabilities(params, l_first)[..., 0, :]
    second = transition_probabilities(params, separation)
    value = np.einsum("...a,a,...ab,b->...", first, Q_VALUES, second, Q_VALUES)
    return value if np.ndim(value) else float(value)


def exact_lgi_surface(
    params: OscillationParams, l1: ArrayOrFloat, spacing: ArrayOrFloat
) -> ArrayOrFloat:
    l1 = np.asarray(l1, dtype=float)
    spacing = np.asarray(spacing, dtype=float)
    return (
        exact_pair_correlator(params, l1, spacing)
        + exact_pair_correlator(params, l1 + spacing, spacing)
        + exact_pair_correlator(params, l1 + 2.0 * spacing, spacing)
        - exact_pair_correlator(params, l1, 3.0 * spacing)
    )


def exact_lgi_correlator(params: OscillationParams, schedule: BaselineSchedule) -> CorrelatorResult:
    spacing = schedule.spacing
    return CorrelatorResult.from_pairs(
        c12=exact_pair_correlator(params, schedule.l1, spacing),
        c23=exact_pair_correlator(params, schedule.l2, spacing),
        c34=exact_pair_correlator(params, schedule.l3, spacing),
        c14=exact_pair_correlator(params, schedule.l1, 3.0 * spacing),
        schedule=schedule,
    )
