"""Tests for the negative-result-measurement simulator."""

from __future__ import annotations

import math

import numpy as np
import pytest

from neutrino_lgi.correlator import BaselineSchedule
from neutrino_lgi.errors import EstimationError, ParameterError
from neutrino_lgi.oracle import exact_lgi_correlator, exact_pair_correlator
from neutrino_lgi.simulation import (
    Orientation,
    OrientationCounts,
    RunConfig,
    chunk_sizes,
    estimate_from_counts,
    simulate_lgi,
    simulate_orientation,
    simulate_pair,
)

HEADLINE = BaselineSchedule(l1=140.15, spacing=1255.7)
HEADLINE_PAIR = (140.15, 1395.85)


class TestRunConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n_runs": 0},
            {"n_runs": 1.5},
            {"n_runs": True},
            {"seed": -1},
            {"seed": 2**64},
            {"pair": (10.0, 5.0)},
            {"pair": (-1.0, 5.0)},
            {"pair": (0.0, math.nan)},
        ],
    )
    def test_validation(self, kwargs):
        fields = {"n_runs": 10, "seed": 1, "pair": (0.0, 100.0)}
        fields.update(kwargs)
        with pytest.raises(ParameterError):
            RunConfig(**fields)

    def test_split(self):
        on_e, on_not_e = RunConfig(n_runs=5, seed=3, pair=(0.0, 10.0)).split()
        assert (on_e.n_runs, on_not_e.n_runs) == (2, 3)
        assert on_e.orientation is Orientation.TRIGGER_ON_E
        assert on_not_e.orientation is Orientation.TRIGGER_ON_NOT_E

    def test_split_needs_two_runs(self):
        with pytest.raises(ParameterError):
            RunConfig(n_runs=1, seed=3, pair=(0.0, 10.0)).split()


def test_chunk_sizes():
    assert chunk_sizes(10, 4) == [4, 4, 2]
    assert chunk_sizes(8, 4) == [4, 4]
    with pytest.raises(ValueError):
        chunk_sizes(8, 0)


def test_counts_must_share_orientation():
    on_e = OrientationCounts(Orientation.TRIGGER_ON_E, 10, 2, 1)
    on_not_e = OrientationCounts(Orientation.TRIGGER_ON_NOT_E, 10, 8, 7)
    assert (on_e + on_e).retained == 4
    with pytest.raises(ParameterError):
        on_e + on_not_e


class TestEstimateFromCounts:
    def test_worked_example(self):
        on_not_e = OrientationCounts(Orientation.TRIGGER_ON_NOT_E, n_runs=1000, retained=800, second_plus=600)
        on_e = OrientationCounts(Orientation.TRIGGER_ON_E, n_runs=1000, retained=200, second_plus=50)
        estimate = estimate_from_counts(on_e, on_not_e)
        assert estimate.c12_hat.value == pytest.approx(0.5, abs=1e-12)
        assert estimate.c12_hat.std_error == pytest.approx(0.027386127875, abs=1e-10)
        assert estimate.p_pp.value == pytest.approx(0.6)
        assert estimate.p_pm.value == pytest.approx(0.2)
        assert estimate.p_mp.value == pytest.approx(0.05)
        assert estimate.p_mm.value == pytest.approx(0.15)
        assert estimate.probability_sum == pytest.approx(1.0, abs=1e-12)
        assert estimate.n_used == {"trigger-on-e": 200, "trigger-on-not-e": 800}

    def test_argument_order(self):
        on_not_e = OrientationCounts(Orientation.TRIGGER_ON_NOT_E, 10, 8, 7)
        on_e = OrientationCounts(Orientation.TRIGGER_ON_E, 10, 2, 1)
        with pytest.raises(ParameterError):
            estimate_from_counts(on_not_e, on_e)

    def test_no_retained_runs(self):
        on_not_e = OrientationCounts(Orientation.TRIGGER_ON_NOT_E, 10, 10, 9)
        on_e = OrientationCounts(Orientation.TRIGGER_ON_E, 10, 0, 0)
        with pytest.raises(EstimationError) as info:
            estimate_from_counts(on_e, on_not_e)
        assert info.value.orientation == "trigger-on-e"


class TestSimulatePair:
    def test_deterministic(self, reference_params):
        config = RunConfig(n_runs=20000, seed=7, pair=HEADLINE_PAIR)
        first = simulate_pair(reference_params, config)
        second = simulate_pair(reference_params, config)
        assert first == second
        other = simulate_pair(reference_params, RunConfig(n_runs=20000, seed=8, pair=HEADLINE_PAIR))
        assert other.c12_hat.value != first.c12_hat.value

    def test_independent_of_workers(self, reference_params):
        config = RunConfig(n_runs=10000, seed=11, pair=HEADLINE_PAIR, orientation=Orientation.TRIGGER_ON_NOT_E)
        serial = simulate_orientation(reference_params, config, workers=1, chunk_size=1000)
        parallel = simulate_orientation(reference_params, config, workers=4, chunk_size=1000)
        assert serial == parallel
        assert serial.n_runs == 10000

    def test_needs_orientation(self, reference_params):
        with pytest.raises(ParameterError):
            simulate_orientation(reference_params, RunConfig(n_runs=10, seed=1, pair=HEADLINE_PAIR))

    def test_zero_separation(self, reference_params):
        estimate = simulate_pair(reference_params, RunConfig(n_runs=5000, seed=3, pair=(500.0, 500.0)))
        assert estimate.c12_hat.value == 1.0
        assert estimate.c12_hat.std_error == 0.0
        assert estimate.n_used == {"trigger-on-e": 0, "trigger-on-not-e": 0}
        assert estimate.probability_sum == pytest.approx(1.0, abs=1e-12)
        assert estimate.p_pm.value == estimate.p_mp.value == 0.0

    def test_source_never_untriggered(self, reference_params):
        with pytest.raises(EstimationError) as info:
            simulate_pair(reference_params, RunConfig(n_runs=1000, seed=3, pair=(0.0, 500.0)))
        assert "trigger-on-e" in str(info.value)

    def test_agrees_with_oracle(self, reference_params):
        estimate = simulate_pair(reference_params, RunConfig(n_runs=1_000_000, seed=20150917, pair=HEADLINE_PAIR))
        exact = exact_pair_correlator(reference_params, 140.15, 1255.7)
        assert exact == pytest.approx(0.948620, abs=1e-5)
        assert abs(estimate.c12_hat.value - exact) <= 3.0 * estimate.c12_hat.std_error
        assert estimate.probability_sum == pytest.approx(1.0, abs=1e-12)
        assert 0.0 < estimate.on_e.retention < 0.05

    def test_error_scales_with_budget(self, reference_params):
        small = simulate_pair(reference_params, RunConfig(n_runs=100_000, seed=5, pair=HEADLINE_PAIR))
        large = simulate_pair(reference_params, RunConfig(n_runs=200_000, seed=5, pair=HEADLINE_PAIR))
        ratio = small.c12_hat.std_error / large.c12_hat.std_error
        assert ratio == pytest.approx(math.sqrt(2.0), rel=0.2)

    def test_unbiased_over_seeds(self, reference_params):
        exact = exact_pair_correlator(reference_params, 140.15, 1255.7)
        estimates = [
            simulate_pair(reference_params, RunConfig(n_runs=20000, seed=seed, pair=HEADLINE_PAIR)).c12_hat
            for seed in range(100)
        ]
        values = np.array([estimate.value for estimate in estimates])
        errors = np.array([estimate.std_error for estimate in estimates])
        assert abs(values.mean() - exact) <= 3.0 * errors.mean() / math.sqrt(len(values))
        assert values.std(ddof=1) == pytest.approx(errors.mean(), rel=0.3)


class TestSimulateLgi:
    def test_violation_detected(self, reference_params):
        estimate = simulate_lgi(reference_params, HEADLINE, n_runs=1_000_000, seed=20150917)
        exact = exact_lgi_correlator(reference_params, HEADLINE).c_total
        assert abs(estimate.c_total.value - exact) <= 3.0 * estimate.c_total.std_error
        assert estimate.significance >= 5.0
        assert set(estimate.pairs()) == {"c12", "c23", "c34", "c14"}

    def test_zero_spacing(self, reference_params):
        estimate = simulate_lgi(reference_params, BaselineSchedule(l1=300.0, spacing=0.0), n_runs=2000, seed=1)
        assert estimate.c_total.value == 2.0
        assert estimate.c_total.std_error == 0.0
        assert estimate.significance == 0.0

    def test_zero_spacing_at_source(self, reference_params):
        estimate = simulate_lgi(reference_params, BaselineSchedule(l1=0.0, spacing=0.0), n_runs=2000, seed=1)
        assert estimate.c_total.value == 2.0
        assert estimate.c_total.std_error == 0.0
        assert estimate.c12.p_pp.value == pytest.approx(1.0, abs=1e-12)

    def test_pairs_draw_independent_streams(self, reference_params):
        estimate = simulate_lgi(reference_params, HEADLINE, n_runs=20000, seed=9)
        single = simulate_pair(reference_params, RunConfig(n_runs=20000, seed=9, pair=HEADLINE.pairs()[1], pair_index=1))
        assert estimate.c23 == single
        assert estimate.c12.on_e != estimate.c23.on_e

    def test_to_dict(self, reference_params):
        payload = simulate_lgi(reference_params, HEADLINE, n_runs=4000, seed=2).to_dict()
        assert payload["seed"] == 2
        assert set(payload["pairs"]["c14"]["n_used"]) == {"trigger-on-e", "trigger-on-not-e"}
