import json
import math

import numpy as np
import pytest

from pmsets import oracle
from pmsets.model import Correlations, DomainError, Thresholds
from pmsets.sets import classical_avg_membership, det_avg_interval

W15 = Thresholds(0.15, 0.15)


def test_report_json_keys_and_nonfinite():
    _, r = oracle.sample_quantum_points(W15, 0, 1)
    d = json.loads(r.to_json())
    assert {"claim", "samples", "seed", "worst_violation", "tolerance", "passed"} <= set(d)
    assert d["worst_violation"] is None and d["passed"] is True and d["samples"] == 0


class TestSoundness:
    def test_points_are_quantum(self):
        pts, r = oracle.sample_quantum_points(W15, 20_000, 3)
        assert len(pts) == 20_000 and r.passed and r.worst_violation >= -1e-9

    def test_zero_thresholds_stay_on_diagonal(self):
        pts, r = oracle.sample_quantum_points(Thresholds(0, 0), 2000, 3)
        assert r.passed
        assert max(abs(p.e1 - p.e2) for p in pts) < 1e-12

    def test_reproducible(self):
        a = oracle.sample_quantum_points(W15, 500, 11)
        b = oracle.sample_quantum_points(W15, 500, 11)
        assert a == b

    def test_negative_count(self):
        with pytest.raises(DomainError):
            oracle.sample_quantum_points(W15, -1, 0)


class TestHull:
    def test_small_run(self):
        r = oracle.hull_vs_boundary(Thresholds(0.2, 0.1), 2000, 5, sweeps=30)
        assert r.passed, r.details

    def test_preconditions(self):
        with pytest.raises(DomainError):
            oracle.hull_vs_boundary(W15, 999, 0)
        with pytest.raises(DomainError):
            oracle.hull_vs_boundary(W15, 2000, 0, directions=90)


class TestOverlap:
    @pytest.mark.parametrize("dim", [2, 4])
    def test_bound_holds_and_is_attained(self, dim):
        r = oracle.overlap_bound_check(0.2, 0.3, dim, 5000, 2)
        assert r.passed
        assert r.details["explicit_overlap"] == pytest.approx(r.details["bound"], abs=1e-12)
        assert r.details["max_mean_error"] <= 1e-12

    def test_ground_states(self):
        r = oracle.overlap_bound_check(0.0, 0.0, 3, 100, 2)
        assert r.passed and r.details["min_sampled_overlap"] == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("args", [(0.6, 0.5, 2, 10), (0.1, 0.1, 1, 10), (0.1, 0.1, 2, 0)])
    def test_preconditions(self, args):
        with pytest.raises(DomainError):
            oracle.overlap_bound_check(*args, seed=0)


class TestClassicalLP:
    def test_reference_decomposition(self):
        d = oracle.classical_decomposition(Correlations(1, 0.4), W15)
        assert d.feasible
        assert d.weights == pytest.approx((0.7, 0.0, 0.15, 0.15, 0.0, 0.0), abs=1e-9)

    def test_infeasible_example(self):
        d = oracle.classical_decomposition(Correlations(0.4, -0.4), W15)
        assert not d.feasible and d.weights is None
        assert d.residual == pytest.approx(0.2, abs=1e-9)

    @pytest.mark.parametrize("c", [-1, -0.3, 0, 0.8, 1])
    def test_diagonal_costs_nothing(self, c):
        d = oracle.classical_decomposition(Correlations(c, c), Thresholds(0, 0))
        assert d.feasible
        costs = np.array(d.to_dict()["costs"]).sum(axis=1)
        assert float(np.dot(d.weights, costs)) == pytest.approx(0.0, abs=1e-12)

    def test_weights_reproduce_point(self):
        e = Correlations(-0.2, 0.3)
        d = oracle.classical_decomposition(e, Thresholds(0.1, 0.2))
        behaviours = np.array(d.to_dict()["behaviours"])
        assert np.dot(d.weights, behaviours) == pytest.approx(e.as_tuple(), abs=1e-9)

    @pytest.mark.parametrize("w", [(0.05, 0.1), (0.3, 0.2), (0.0, 0.0)])
    def test_grid_agreement(self, w):
        r = oracle.classical_lp_check(Thresholds(*w), grid=31)
        assert r.passed, r.details["disagreements"]


class TestDetAvg:
    @pytest.mark.parametrize("x", [1, 2])
    @pytest.mark.parametrize("w", [(0.15, 0.15), (0.3, 0.05), (0.0, 0.0)])
    def test_agreement(self, x, w):
        r = oracle.det_avg_oracle(x, Thresholds(*w), grid=61)
        assert r.passed, r.details

    def test_coincides_with_classical_without_second_budget(self):
        r = oracle.det_avg_oracle(1, Thresholds(0.51, 0.0), grid=101)
        assert r.passed and r.details["classical_coincidence_gap"] <= 1e-9

    @pytest.mark.parametrize("w", [(0.6, 0.4), (0.25, 0.75), (1.0, 0.0)])
    def test_full_budget_edge(self, w):
        # Thresholds summing to one: the rescaled budgets leave the simplex.
        r = oracle.det_avg_oracle(1, Thresholds(*w), grid=81)
        assert r.passed, r.details

    def test_zero_budget_is_diagonal(self):
        for ex in np.linspace(-1, 1, 11):
            assert det_avg_interval(ex, Thresholds(0, 0)) == pytest.approx((ex, ex), abs=1e-12)

    def test_preconditions(self):
        with pytest.raises(DomainError):
            oracle.det_avg_oracle(1, W15, grid=10)
        with pytest.raises(DomainError):
            oracle.det_avg_oracle(3, W15)


class TestConcavity:
    def test_function_values(self):
        assert oracle.overlap_square(0.5, 0.5) == pytest.approx(1.0)
        xs = np.linspace(0, 1, 11)
        assert np.allclose(oracle.overlap_square(xs, xs), 1.0)

    def test_passes(self):
        r = oracle.concavity_check(5000, 9)
        assert r.passed and r.details["max_trace"] <= 1e-6

    def test_preconditions(self):
        with pytest.raises(DomainError):
            oracle.concavity_check(0, 1)


class TestMixing:
    @pytest.mark.parametrize("w", [(0.15, 0.15), (0.0, 0.3), (0.4, 0.6)])
    def test_closure(self, w):
        r = oracle.mixing_closure_check(Thresholds(*w), 3000, 4)
        assert r.passed, r.worst_violation

    def test_single_component_sits_on_boundary(self):
        r = oracle.mixing_closure_check(W15, 500, 4, max_terms=1)
        assert r.passed and abs(r.worst_violation) < 1e-9

    def test_preconditions(self):
        with pytest.raises(DomainError):
            oracle.mixing_closure_check(W15, 0, 1)


def test_rng_is_philox():
    assert isinstance(oracle.rng(1).bit_generator, np.random.Philox)
    assert oracle.rng(5).random() == oracle.rng(5).random()
