"""Exact three-flavour evolution in matter of constant density.

The flavour-basis Hamiltonian (eV) is

    H = U diag(0, dm21_sq, dm31_sq) U^dagger / 2E + diag(V, 0, 0)

where the m1^2 / 2E zero-point is dropped; a global phase does not change
probabilities. H is constant along the path, so exp(-i H L) follows from a
single Hermitian eigendecomposition, which is cached per parameter point.
When the decomposition is unusable the operator is rebuilt with scipy's
scaling-and-squaring matrix exponential instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from ..errors import ParameterError
from ..oscillation import Flavor, OscillationParams
from ..oscillation.expansion import flavor_probabilities_from_e
from ..oscillation.units import gev_to_ev, km_to_inverse_ev
from ..utils.logging import get_logger
from .pmns import pmns_matrix

logger = get_logger(__name__)

# Tolerance on the eigen-residual |H v - lambda v| relative to |H|.
_EIGEN_RESIDUAL_TOL = 1e-12

ComplexArray = NDArray[np.complex128]
FloatArray = NDArray[np.float64]


def hamiltonian(params: OscillationParams) -> ComplexArray:
    """Flavour-basis Hamiltonian in eV.

    dm21_sq is taken as alpha * dm31_sq, so an alpha override acts on the
    exact evolution the same way it acts on the series expansion.
    """
    u = pmns_matrix(params.theta12, params.theta13, params.theta23, params.delta_cp)
    two_e = 2.0 * gev_to_ev(params.energy)
    masses = np.array([0.0, params.alpha * params.dm31_sq, params.dm31_sq]) / two_e
    h = (u * masses) @ u.conj().T
    h[0, 0] += params.potential
    # 强制精确的厄米对称
    return 0.5 * (h + h.conj().T)


@lru_cache(maxsize=256)
def _spectrum(params: OscillationParams) -> Optional[Tuple[FloatArray, ComplexArray]]:
    """Eigenvalues and eigenvectors of H, or None when they cannot be trusted."""
    h = hamiltonian(params)
    try:
        eigvals, eigvecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        logger.warning("Hermitian eigendecomposition failed (%s); using expm", exc)
        return None

    scale = max(float(np.max(np.abs(h))), np.finfo(float).tiny)
    residual = float(np.max(np.abs(h @ eigvecs - eigvecs * eigvals))) / scale
    orthogonality = float(np.max(np.abs(eigvecs.conj().T @ eigvecs - np.eye(3))))
    if residual > _EIGEN_RESIDUAL_TOL or orthogonality > _EIGEN_RESIDUAL_TOL:
        logger.warning(
            "Eigendecomposition residual %.3g / orthogonality %.3g too large; using expm",
            residual,
            orthogonality,
        )
        return None
    eigvals.setflags(write=False)
    eigvecs.setflags(write=False)
    return eigvals, eigvecs


def _as_lengths(length: Union[float, NDArray]) -> FloatArray:
    lengths = np.asarray(length, dtype=float)
    if np.any(lengths < 0.0) or not np.all(np.isfinite(lengths)):
        raise ParameterError("Propagation length must be finite and non-negative")
    return lengths


def evolution_operator(params: OscillationParams, length: Union[float, NDArray]) -> ComplexArray:
    """exp(-i H L) for L in km; an array of lengths gives a (..., 3, 3) stack."""
    lengths = _as_lengths(length)
    path = np.asarray(km_to_inverse_ev(lengths))
    spectrum = _spectrum(params)

    if spectrum is not None:
        eigvals, eigvecs = spectrum
        phases = np.exp(-1j * path[..., None] * eigvals)
        operator = np.einsum("ik,...k,jk->...ij", eigvecs, phases, eigvecs.conj())
    else:
        h = hamiltonian(params)
        flat = [scipy.linalg.expm(-1j * h * float(x)) for x in path.ravel()]
        operator = np.array(flat, dtype=np.complex128).reshape(path.shape + (3, 3))

    # 零长度传播恰为单位矩阵
    operator = np.where(np.asarray(lengths == 0.0)[..., None, None], np.eye(3), operator)
    return operator


def transition_probabilities(params: OscillationParams, length: Union[float, NDArray]) -> FloatArray:
    """P[..., a, b] = |<b| exp(-i H L) |a>|^2."""
    operator = evolution_operator(params, length)
    return np.abs(np.swapaxes(operator, -1, -2)) ** 2


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic flavour-transition probabilities over one segment."""

    probabilities: FloatArray
    length: float

    def __getitem__(self, key: Tuple[Union[Flavor, int], Union[Flavor, int]]) -> float:
        a, b = key
        return float(self.probabilities[_index(a), _index(b)])

    def row(self, flavor: Union[Flavor, int]) -> FloatArray:
        return self.probabilities[_index(flavor)]

    def row_sums(self) -> FloatArray:
        return self.probabilities.sum(axis=1)

    def column_sums(self) -> FloatArray:
        return self.probabilities.sum(axis=0)

    def is_doubly_stochastic(self, tol: float = 1e-10) -> bool:
        p = self.probabilities
        return bool(
            np.all(p >= -tol)
            and np.all(p <= 1.0 + tol)
            and np.allclose(self.row_sums(), 1.0, rtol=0.0, atol=tol)
            and np.allclose(self.column_sums(), 1.0, rtol=0.0, atol=tol)
        )


def _index(flavor: Union[Flavor, int]) -> int:
    return flavor.index if isinstance(flavor, Flavor) else int(flavor)


def exact_transition_matrix(params: OscillationParams, length: float) -> TransitionMatrix:
    probabilities = transition_probabilities(params, float(length))
    probabilities.setflags(write=False)
    return TransitionMatrix(probabilities=probabilities, length=float(length))


def max_expansion_deviation(params: OscillationParams, lengths: Union[float, NDArray]) -> float:
    """Largest |expansion - exact| over the nu_e-row probabilities at `lengths`."""
    lengths = _as_lengths(lengths)
    exact = transition_probabilities(params, lengths)[..., 0, :]
    expanded = np.stack(flavor_probabilities_from_e(params, lengths), axis=-1)
    return float(np.max(np.abs(exact - expanded)))
