"""Tests for the exact constant-density evolution."""

from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.linalg

from neutrino_lgi.correlator import BaselineSchedule
from neutrino_lgi.errors import ParameterError
from neutrino_lgi.oracle import (
    evolution_operator,
    exact_lgi_correlator,
    exact_lgi_surface,
    exact_pair_correlator,
    exact_transition_matrix,
    hamiltonian,
    max_expansion_deviation,
    pmns_matrix,
    transition_probabilities,
)
from neutrino_lgi.oscillation import KM_TO_INV_EV, Flavor

from .conftest import any_params


def test_pmns_unitary(rng):
    identity = np.eye(3)
    for _ in range(1000):
        theta12, theta13, theta23 = rng.uniform(0.0, math.pi / 2, size=3)
        u = pmns_matrix(theta12, theta13, theta23, rng.uniform(0.0, 2 * math.pi))
        np.testing.assert_allclose(u @ u.conj().T, identity, rtol=0.0, atol=1e-12)


def test_hamiltonian_hermitian(reference_params):
    h = hamiltonian(reference_params)
    np.testing.assert_array_equal(h, h.conj().T)


class TestTransitionMatrix:
    def test_doubly_stochastic(self, rng):
        for _ in range(1000):
            params = any_params(rng)
            matrix = exact_transition_matrix(params, rng.uniform(0.0, 3000.0))
            assert matrix.is_doubly_stochastic(tol=1e-10)

    def test_identity_at_zero_length(self, reference_params):
        matrix = exact_transition_matrix(reference_params, 0.0)
        np.testing.assert_array_equal(matrix.probabilities, np.eye(3))

    def test_read_only(self, reference_params):
        matrix = exact_transition_matrix(reference_params, 500.0)
        with pytest.raises(ValueError):
            matrix.probabilities[0, 0] = 1.0

    def test_reference_e_row(self, reference_params):
        matrix = exact_transition_matrix(reference_params, 140.15)
        assert matrix[Flavor.E, Flavor.E] == pytest.approx(0.9846946560, abs=1e-6)
        assert matrix[Flavor.E, Flavor.MU] == pytest.approx(0.0072432658, abs=1e-6)
        assert matrix[Flavor.E, Flavor.TAU] == pytest.approx(0.0080620782, abs=1e-6)
        assert matrix.row(Flavor.E) == pytest.approx(matrix.probabilities[0])

    def test_vacuum_closed_form(self, reference_params):
        # theta12 = 0 decouples nu_e from the solar splitting
        params = reference_params.with_changes(theta12=0.0, potential=0.0)
        s13, c13 = math.sin(params.theta13), math.cos(params.theta13)
        for length in (100.0, 640.0, 1255.7, 2900.0):
            phase = params.dm31_sq * length * KM_TO_INV_EV / 4.0e9
            expected = 1.0 - 4.0 * s13**2 * c13**2 * math.sin(phase) ** 2
            assert exact_transition_matrix(params, length)[Flavor.E, Flavor.E] == pytest.approx(expected, abs=1e-10)

    def test_negative_length(self, reference_params):
        with pytest.raises(ParameterError):
            transition_probabilities(reference_params, -5.0)


class TestEvolutionOperator:
    def test_matches_matrix_exponential(self, reference_params):
        h = hamiltonian(reference_params)
        for length in (1.0, 250.0, 1255.7, 3000.0):
            expected = scipy.linalg.expm(-1j * h * length * KM_TO_INV_EV)
            np.testing.assert_allclose(evolution_operator(reference_params, length), expected, rtol=0.0, atol=1e-9)

    def test_composition(self, rng):
        for _ in range(50):
            params = any_params(rng)
            first, second = rng.uniform(0.0, 1500.0, size=2)
            combined = evolution_operator(params, first + second)
            chained = evolution_operator(params, second) @ evolution_operator(params, first)
            np.testing.assert_allclose(combined, chained, rtol=0.0, atol=1e-9)

    def test_stacked_lengths(self, reference_params):
        lengths = np.array([[0.0, 100.0], [500.0, 1000.0]])
        stack = evolution_operator(reference_params, lengths)
        assert stack.shape == (2, 2, 3, 3)
        np.testing.assert_allclose(stack[1, 0], evolution_operator(reference_params, 500.0), atol=1e-14)


class TestExpansionAgreement:
    def test_deviation_small_in_regime(self, reference_params):
        deviation = max_expansion_deviation(reference_params, np.linspace(0.0, 2000.0, 401))
        assert 0.0 < deviation <= 1e-2

    def test_no_mixing_agrees_exactly(self, reference_params):
        params = reference_params.with_changes(theta13=0.0, alpha_override=0.0)
        assert max_expansion_deviation(params, np.linspace(0.0, 3000.0, 31)) == pytest.approx(0.0, abs=1e-12)


class TestExactCorrelator:
    def test_headline_point(self, reference_params):
        result = exact_lgi_correlator(reference_params, BaselineSchedule(140.15, 1255.7))
        assert result.c_total == pytest.approx(2.167984, abs=1e-5)
        assert result.c_total == pytest.approx(2.17036, abs=1e-2)
        assert result.c12 == pytest.approx(0.948620, abs=1e-5)

    def test_zero_spacing(self, rng):
        for _ in range(50):
            params = any_params(rng)
            value = exact_lgi_surface(params, rng.uniform(0.0, 3000.0), 0.0)
            assert value == pytest.approx(2.0, abs=1e-12)

    def test_pair_broadcasts(self, reference_params):
        values = exact_pair_correlator(reference_params, np.array([140.15, 140.15]), 1255.7)
        assert values.shape == (2,)
        assert values[0] == pytest.approx(exact_pair_correlator(reference_params, 140.15, 1255.7))
        assert isinstance(exact_pair_correlator(reference_params, 140.15, 1255.7), float)
