"""Tests for the Leggett-Garg correlator built on the expansion."""

from __future__ import annotations

import numpy as np
import pytest

from neutrino_lgi.correlator import (
    CLASSICAL_BOUND,
    BaselineSchedule,
    lgi_correlator,
    lgi_surface,
    pair_correlator,
    scripted_probabilities,
)
from neutrino_lgi.errors import ParameterError

from .conftest import random_params

HEADLINE = BaselineSchedule(l1=140.15, spacing=1255.7)


class TestSchedule:
    def test_lengths(self):
        assert HEADLINE.lengths == pytest.approx((140.15, 1395.85, 2651.55, 3907.25))
        assert HEADLINE.pairs()[3] == pytest.approx((140.15, 3907.25))

    @pytest.mark.parametrize("l1,spacing", [(-1.0, 10.0), (10.0, -1.0), (float("nan"), 1.0)])
    def test_rejects_negative(self, l1, spacing):
        with pytest.raises(ParameterError):
            BaselineSchedule(l1=l1, spacing=spacing)


class TestPairCorrelator:
    def test_reference_pairs(self, reference_params):
        result = lgi_correlator(reference_params, HEADLINE)
        assert result.c12 == pytest.approx(0.9442240641138, abs=1e-9)
        assert result.c23 == pytest.approx(0.9460846472420, abs=1e-9)
        assert result.c34 == pytest.approx(0.9490534899202, abs=1e-9)
        assert result.c14 == pytest.approx(0.6711643517386, abs=1e-9)
        assert result.c_total == pytest.approx(2.1681978495374, abs=1e-9)

    def test_zero_separation_is_one(self, rng):
        for _ in range(200):
            params = random_params(rng)
            assert pair_correlator(params, rng.uniform(0.0, 3000.0), 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_alpha_override_identity(self, reference_params):
        explicit = reference_params.with_changes(alpha_override=reference_params.alpha)
        assert lgi_correlator(explicit, HEADLINE).c_total == lgi_correlator(reference_params, HEADLINE).c_total


class TestLgiCorrelator:
    def test_zero_spacing_is_classical_bound(self, rng):
        for _ in range(100):
            params = random_params(rng)
            result = lgi_correlator(params, BaselineSchedule(l1=rng.uniform(0.0, 3000.0), spacing=0.0))
            assert result.c_total == pytest.approx(CLASSICAL_BOUND, abs=1e-12)

    def test_headline_violation(self, reference_params):
        result = lgi_correlator(reference_params, HEADLINE)
        assert result.violates_bound
        assert result.c_total == pytest.approx(2.17036, abs=1e-2)
        assert result.violation == pytest.approx(result.c_total - 2.0)

    @pytest.mark.parametrize(
        "changes,schedule,expected",
        [
            ({"delta_cp": 0.0}, BaselineSchedule(140.15, 1253.8), 2.1668872113640),
            ({"theta13": 0.0}, BaselineSchedule(638.0, 1376.34), 2.0777437329808),
            ({"alpha_override": 0.0}, BaselineSchedule(140.15, 1252.74), 2.0889315166426),
        ],
    )
    def test_variant_values(self, reference_params, changes, schedule, expected):
        params = reference_params.with_changes(**changes)
        assert lgi_correlator(params, schedule).c_total == pytest.approx(expected, abs=1e-9)

    def test_literal_and_simplified_phase_agree(self, rng):
        for _ in range(500):
            params = random_params(rng)
            schedule = BaselineSchedule(l1=rng.uniform(0.0, 3000.0), spacing=rng.uniform(0.0, 2000.0))
            literal = lgi_correlator(params, schedule)
            simplified = lgi_correlator(params, schedule, literal_phase=False)
            assert literal.c_total == pytest.approx(simplified.c_total, abs=1e-12)
            assert literal.c14 == pytest.approx(simplified.c14, abs=1e-12)

    def test_cp_free_phase_paths_agree(self, reference_params):
        params = reference_params.with_changes(delta_cp=0.0)
        schedule = BaselineSchedule(140.15, 1253.8)
        simplified = lgi_correlator(params, schedule, literal_phase=False).c_total
        assert simplified == pytest.approx(lgi_correlator(params, schedule).c_total, abs=1e-14)
        assert simplified == pytest.approx(2.1668872113640, abs=1e-9)

    def test_surface_matches_point_evaluation(self, reference_params):
        l1 = np.array([[0.0, 140.15], [500.0, 900.0]])
        spacing = np.array([[1255.7, 1255.7], [10.0, 0.0]])
        surface = lgi_surface(reference_params, l1, spacing)
        assert surface.shape == (2, 2)
        for index in np.ndindex(surface.shape):
            point = lgi_correlator(reference_params, BaselineSchedule(l1[index], spacing[index]))
            assert surface[index] == pytest.approx(point.c_total, abs=1e-12)

    def test_to_dict(self, reference_params):
        payload = lgi_correlator(reference_params, HEADLINE).to_dict()
        assert payload["schedule"]["l4"] == pytest.approx(3907.25)
        assert set(payload) >= {"c12", "c23", "c34", "c14", "c_total"}


class TestScriptedProbabilities:
    def test_sum_and_correlator(self, reference_params):
        scripted = scripted_probabilities(reference_params, 140.15, 1255.7)
        assert scripted.total == pytest.approx(1.0, abs=1e-12)
        for value in (scripted.p_pp, scripted.p_pm, scripted.p_mp, scripted.p_mm):
            assert value >= 0.0
        assert scripted.correlator == pytest.approx(0.9442240641138, abs=1e-9)

    def test_matches_pair_correlator(self, rng):
        for _ in range(100):
            params = random_params(rng)
            l1, separation = rng.uniform(0.0, 3000.0, size=2)
            scripted = scripted_probabilities(params, l1, separation)
            assert scripted.correlator == pytest.approx(pair_correlator(params, l1, separation), abs=1e-10)
