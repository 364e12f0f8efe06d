"""
Optical settings and the simulated coincidence experiment.
"""
import math

import numpy as np
import pytest

from hardy_lib.apparatus import (CountRecord, analyzer_settings, estimate_probability, optical_settings,
                                 row_seed, settings_for_state, simulate_counts, simulated_report,
                                 simulated_scan)
from hardy_lib.errors import DomainError, EmptyRecordError
from hardy_lib.ladder import LadderConfig, evaluate_ladder, ladder_angles
from hardy_lib.quantum import OUTCOMES, AnalyzerSetting, JointDistribution, NoisyState, Party, distribution, make_state


OUTCOME_PAIRS = [(oa, ob) for oa in OUTCOMES for ob in OUTCOMES]


def _record(c_pp, c_pm, c_mp, c_mm) -> CountRecord:
    return CountRecord((0, 0), c_pp, c_pm, c_mp, c_mm, seed=0)


class TestOptics:
    def test_balanced_preparation(self) -> None:
        preparation = settings_for_state(1.)
        assert preparation.vbs1_T_a == pytest.approx(0.5)
        assert preparation.vbs1_R_b == pytest.approx(0.5)
        assert np.degrees(preparation.hwp1_a) == pytest.approx(22.5)

    @pytest.mark.parametrize("t", [0.05, 0.46, 0.57, 0.9, 1.])
    def test_preparation_reproduces_ratio(self, t) -> None:
        preparation = settings_for_state(t)
        assert preparation.implied_t() == pytest.approx(t, rel=1e-12)
        assert preparation.implied_t_from_waveplates() == pytest.approx(t, rel=1e-12)
        assert preparation.vbs1_T_a + preparation.vbs1_R_a == pytest.approx(1.)

    @pytest.mark.parametrize("t", [0., -0.2, 1.5, np.nan])
    def test_preparation_rejects_ratio(self, t) -> None:
        with pytest.raises(DomainError):
            settings_for_state(t)

    def test_analyzer_at_quarter_turn(self) -> None:
        optics = analyzer_settings(np.pi / 4)
        assert optics.hwp2 == pytest.approx(np.pi / 8)
        assert optics.vbs2_R == pytest.approx(0.5)
        assert optics.vbs2_T == pytest.approx(0.5)

    def test_analyzer_at_single_step_optimum(self) -> None:
        theta_0, theta_1 = ladder_angles(1, 0.46).thetas
        assert analyzer_settings(theta_0).vbs2_R == pytest.approx(0.46 / 1.46, abs=1e-12)
        assert analyzer_settings(theta_1).vbs2_T == pytest.approx(1 / (1 + 0.46 ** 3), abs=1e-12)
        assert np.degrees(analyzer_settings(theta_1).hwp2) == pytest.approx(-8.67, abs=0.05)

    def test_full_bench(self) -> None:
        bench = optical_settings(LadderConfig(2, 0.57))
        assert len(bench.analyzers_a) == len(bench.analyzers_b) == 3
        assert bench.preparation.implied_t() == pytest.approx(0.57)
        assert bench.phase == pytest.approx(np.pi)
        for optics in bench.analyzers_a:
            assert optics.vbs2_R + optics.vbs2_T == pytest.approx(1.)


class TestSimulateCounts:
    def test_degenerate_distribution(self) -> None:
        record = simulate_counts(JointDistribution(1., 0., 0., 0.), 500, seed=123)
        assert (record.c_pp, record.c_pm, record.c_mp, record.c_mm) == (500, 0, 0, 0)
        record = simulate_counts(JointDistribution(0., 0., 0., 1.), 1000, seed=3)
        assert (record.c_pp, record.c_pm, record.c_mp, record.c_mm) == (0, 0, 0, 1000)

    def test_counts_sum_to_total(self) -> None:
        record = simulate_counts(JointDistribution(0.1, 0.2, 0.3, 0.4), 12345, seed=5, setting=(1, 0))
        assert record.total == 12345
        assert record.setting == (1, 0)
        assert record.seed == 5

    def test_same_seed_same_counts(self) -> None:
        dist = JointDistribution(0.25, 0.25, 0.25, 0.25)
        assert simulate_counts(dist, 1000, 11, (1, 1)) == simulate_counts(dist, 1000, 11, (1, 1))
        assert simulate_counts(dist, 1000, 11, (1, 1)) != simulate_counts(dist, 1000, 11, (0, 1))

    @pytest.mark.parametrize("counts", [0, -5, 1.5, True])
    def test_bad_counts(self, counts) -> None:
        with pytest.raises(DomainError):
            simulate_counts(JointDistribution(0.25, 0.25, 0.25, 0.25), counts, seed=0)

    @pytest.mark.parametrize("seed", [-1, 2 ** 64, 0.5])
    def test_bad_seed(self, seed) -> None:
        with pytest.raises(DomainError):
            simulate_counts(JointDistribution(0.25, 0.25, 0.25, 0.25), 10, seed=seed)

    def test_unnormalized_distribution(self) -> None:
        with pytest.raises(DomainError):
            simulate_counts(JointDistribution(0.5, 0.5, 0.5, 0.), 10, seed=0)

    def test_frequencies_follow_born_rule(self) -> None:
        n = 10 ** 5
        state = NoisyState(make_state(0.46), 0.96)
        dist = distribution(state, AnalyzerSetting(0.3, Party.A), AnalyzerSetting(-0.7, Party.B))
        record = simulate_counts(dist, n, seed=42)
        for p, c in zip(dist.as_array(), (record.c_pp, record.c_pm, record.c_mp, record.c_mm)):
            assert abs(c / n - p) <= 4 * math.sqrt(p * (1 - p) / n) + 1e-12


class TestEstimate:
    def test_uniform(self) -> None:
        estimate = estimate_probability(_record(25, 25, 25, 25))
        assert estimate.p == pytest.approx(0.25)
        assert estimate.sigma == pytest.approx(0.0433, abs=1e-4)

    def test_selected_outcome(self) -> None:
        record = _record(95, 5, 5, 895)
        assert estimate_probability(record).p == pytest.approx(0.095)
        assert estimate_probability(record, 1, -1).p == pytest.approx(0.005)
        assert estimate_probability(record, -1, -1).p == pytest.approx(0.895)

    def test_no_hits(self) -> None:
        estimate = estimate_probability(_record(0, 0, 0, 100))
        assert estimate.p == 0.
        assert estimate.sigma == 0.

    def test_empty_record(self) -> None:
        with pytest.raises(EmptyRecordError):
            estimate_probability(_record(0, 0, 0, 0))

    def test_large_sample_consistency(self) -> None:
        dist = JointDistribution(0.0901, 0.3, 0.3, 0.3099)
        estimate = estimate_probability(simulate_counts(dist, 10 ** 6, seed=1))
        assert estimate.p == pytest.approx(0.0901, abs=4 * estimate.sigma)
        assert estimate.sigma == pytest.approx(math.sqrt(0.0901 * 0.9099 / 10 ** 6), rel=0.05)


class TestSimulatedReport:
    def test_pure_single_step(self) -> None:
        report = simulated_report(LadderConfig(1, 0.46), visibility=1., counts=10 ** 5, seed=0)
        assert report.s_value == pytest.approx(0.09015, abs=4 * report.uncertainties.s_value)
        assert report.s_value > 0
        assert report.error_model == "binomial"
        assert len(report.records) == 4

    def test_noisy_single_step(self) -> None:
        report = simulated_report(LadderConfig(1, 0.46), visibility=0.96, counts=10 ** 5, seed=1)
        assert report.s_value == pytest.approx(0.078, abs=0.02)

    def test_noisy_two_steps(self) -> None:
        model = evaluate_ladder(LadderConfig(2, 0.57), visibility=0.96).s_value
        assert model == pytest.approx(0.124, abs=0.03)
        report = simulated_report(LadderConfig(2, 0.57), visibility=0.96, counts=10 ** 5, seed=2)
        assert report.s_value == pytest.approx(model, abs=4 * report.uncertainties.s_value)

    def test_s_uncertainty_adds_in_quadrature(self) -> None:
        report = simulated_report(LadderConfig(2, 0.57), visibility=0.96, counts=10 ** 4, seed=3)
        sigmas = report.uncertainties
        total = sigmas.hardy_fraction ** 2 + sigmas.bottom ** 2 + sum(s ** 2 for s in sigmas.side_terms)
        assert sigmas.s_value ** 2 == pytest.approx(total, rel=1e-12)

    def test_reproducible(self) -> None:
        config = LadderConfig(1, 0.46)
        assert simulated_report(config, counts=5000, seed=9) == simulated_report(config, counts=5000, seed=9)

    def test_seed_controls_counts(self) -> None:
        config = LadderConfig(1, 0.46)
        first = simulated_report(config, visibility=0.96, counts=5000, seed=9)
        second = simulated_report(config, visibility=0.96, counts=5000, seed=10)
        assert first.records != second.records

    def test_uncertainty_matches_spread(self) -> None:
        config = LadderConfig(1, 0.46)
        model = evaluate_ladder(config, visibility=0.96).s_value
        reports = [simulated_report(config, visibility=0.96, counts=10 ** 5, seed=seed)
                   for seed in range(50)]
        values = np.array([r.s_value for r in reports])
        sigmas = np.array([r.uncertainties.s_value for r in reports])
        ratio = np.std(values, ddof=1) / np.mean(sigmas)
        assert 1 / 1.3 <= ratio <= 1.3
        assert np.mean(np.abs(values - model) <= 4 * sigmas) >= 0.99

        state = NoisyState(make_state(0.46), 0.96)
        angles = ladder_angles(1, 0.46)
        hits = []
        for report in reports:
            for record in report.records:
                i, j = record.setting
                born = distribution(state, angles.setting(i, Party.A), angles.setting(j, Party.B))
                for (outcome_a, outcome_b), p in zip(OUTCOME_PAIRS, born.as_array()):
                    p_hat = estimate_probability(record, outcome_a, outcome_b).p
                    hits.append(abs(p_hat - p) <= 4 * math.sqrt(p * (1 - p) / record.total) + 1e-12)
        assert len(hits) == 50 * 4 * 4
        assert np.mean(hits) >= 0.99


class TestSimulatedScan:
    def test_one_report_per_point(self) -> None:
        ts = [0.3, 0.46, 0.7]
        reports = simulated_scan(1, ts, visibility=0.96, counts=2000, seed=4)
        assert [r.config.t for r in reports] == ts
        assert len({r.seed for r in reports}) == 3
        assert [r.seed for r in reports] == [row_seed(4, row) for row in range(3)]

    def test_reproducible(self) -> None:
        ts = np.linspace(0.2, 0.8, 4)
        assert simulated_scan(2, ts, counts=1000, seed=8) == simulated_scan(2, ts, counts=1000, seed=8)
