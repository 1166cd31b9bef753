"""PMNS mixing matrix in the standard parameterization."""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray

PmnsMatrix = NDArray[np.complex128]


def pmns_matrix(theta12: float, theta13: float, theta23: float, delta_cp: float) -> PmnsMatrix:
    """U indexed (flavour row e, mu, tau) x (mass column 1, 2, 3); angles in radians."""
    s12, c12 = math.sin(theta12), math.cos(theta12)
    s13, c13 = math.sin(theta13), math.cos(theta13)
    s23, c23 = math.sin(theta23), math.cos(theta23)
    phase = complex(math.cos(delta_cp), math.sin(delta_cp))  # e^{i delta}

    return np.array(
        [
            [c12 * c13, s12 * c13, s13 * phase.conjugate()],
            [
                -s12 * c23 - c12 * s13 * s23 * phase,
                c12 * c23 - s12 * s13 * s23 * phase,
                c13 * s23,
            ],
            [
                s12 * s23 - c12 * s13 * c23 * phase,
                -c12 * s23 - s12 * s13 * c23 * phase,
                c13 * c23,
            ],
        ],
        dtype=np.complex128,
    )
