"""
Optical parameters of the interferometric setup and finite-count simulation.

VBS1 on each arm prepares the state ratio t through sqrt(T_A T_B / (R_A R_B)) = t;
in the bench version a HWP1 in front of PBS1 sends transmitted H light into the
short arm and reflected V light into the long arm.  VBS2 projects onto the
ladder basis with sqrt(R) = sin(theta_k), sqrt(T) = cos(theta_k), realized as a
HWP2 at theta_k / 2 followed by PBS3.

Counts are drawn from numpy's PCG64 generator.  Every setting pair (i, j) gets
its own stream seeded by SeedSequence([seed, i, j]), so a published seed
reproduces published counts regardless of evaluation order.
"""
from dataclasses import dataclass
from numbers import Integral
import logging
import math
import numpy as np

from . import config
from .errors import DomainError, EmptyRecordError
from .ladder import (HardyReport, HardyUncertainties, LadderConfig, ladder_angles,
                     ladder_terms, s_statistic)
from .quantum import OUTCOMES, JointDistribution, NoisyState, Party, check_outcome, distribution, make_state

logger = logging.getLogger(__name__)

ERROR_MODEL = "binomial"


@dataclass(frozen=True)
class PreparationSettings:
    hwp1_a: float
    hwp1_b: float
    vbs1_T_a: float
    vbs1_T_b: float

    @property
    def vbs1_R_a(self) -> float:
        return 1. - self.vbs1_T_a

    @property
    def vbs1_R_b(self) -> float:
        return 1. - self.vbs1_T_b

    def implied_t(self) -> float:
        return math.sqrt(self.vbs1_T_a * self.vbs1_T_b / (self.vbs1_R_a * self.vbs1_R_b))

    def implied_t_from_waveplates(self) -> float:
        # amplitude ratio cos(2h_a) cos(2h_b) / (sin(2h_a) sin(2h_b))
        return 1. / (math.tan(2 * self.hwp1_a) * math.tan(2 * self.hwp1_b))


@dataclass(frozen=True)
class AnalyzerOptics:
    theta: float
    hwp2: float
    vbs2_R: float
    vbs2_T: float


@dataclass(frozen=True)
class OpticalSettings:
    preparation: PreparationSettings
    analyzers_a: tuple
    analyzers_b: tuple
    phase: float


@dataclass(frozen=True)
class CountRecord:
    setting: tuple
    c_pp: int
    c_pm: int
    c_mp: int
    c_mm: int
    seed: int

    @property
    def total(self) -> int:
        return self.c_pp + self.c_pm + self.c_mp + self.c_mm

    def count(self, outcome_a: int, outcome_b: int) -> int:
        counts = (self.c_pp, self.c_pm, self.c_mp, self.c_mm)
        return counts[2 * OUTCOMES.index(check_outcome(outcome_a)) + OUTCOMES.index(check_outcome(outcome_b))]


@dataclass(frozen=True)
class Estimate:
    p: float
    sigma: float


def settings_for_state(t: float) -> PreparationSettings:
    """Symmetric VBS1 split T_a = T_b = t / (1 + t); HWP1 at h with tan(2h) = 1 / sqrt(t)."""
    if not (math.isfinite(t) and 0. < t <= 1.):
        raise DomainError("t must lie in (0, 1], got {}".format(t))
    transmittivity = t / (1. + t)
    hwp1 = 0.5 * math.atan(1. / math.sqrt(t))
    return PreparationSettings(hwp1, hwp1, transmittivity, transmittivity)


def analyzer_settings(theta_k: float) -> AnalyzerOptics:
    return AnalyzerOptics(theta=theta_k, hwp2=theta_k / 2,
                          vbs2_R=math.sin(theta_k) ** 2, vbs2_T=math.cos(theta_k) ** 2)


def optical_settings(ladder_config: LadderConfig, phi=np.pi) -> OpticalSettings:
    angles = ladder_angles(ladder_config.K, ladder_config.t)
    analyzers = tuple(analyzer_settings(theta) for theta in angles.thetas)
    return OpticalSettings(settings_for_state(ladder_config.t), analyzers, analyzers, float(phi))


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, Integral) or not 0 <= seed < config.params["max_seed"]:
        raise DomainError("seed must be an unsigned 64-bit integer, got {}".format(seed))
    return int(seed)


def setting_rng(seed: int, setting=(0, 0)) -> np.random.Generator:
    i, j = setting
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([check_seed(seed), i, j])))


def simulate_counts(dist: JointDistribution, counts: int, seed: int, setting=(0, 0)) -> CountRecord:
    if isinstance(counts, bool) or not isinstance(counts, Integral) or counts < 1:
        raise DomainError("number of pairs must be a positive integer, got {}".format(counts))
    if not dist.is_normalized():
        raise DomainError("distribution sums to {}, not 1".format(np.sum(dist.as_array())))
    pvals = dist.as_array() / np.sum(dist.as_array())
    drawn = setting_rng(seed, setting).multinomial(int(counts), pvals)
    logger.debug("settings %s: %d pairs drawn with seed %d -> %s", setting, counts, seed, drawn)
    return CountRecord(tuple(setting), *[int(c) for c in drawn], seed=int(seed))


def estimate_probability(record: CountRecord, outcome_a=1, outcome_b=1) -> Estimate:
    """P = C(a_i, b_j) / C_TOT with a binomial standard deviation."""
    total = record.total
    if total == 0:
        raise EmptyRecordError("no coincidences recorded for settings {}".format(record.setting))
    p = record.count(outcome_a, outcome_b) / total
    return Estimate(p, math.sqrt(p * (1. - p) / total))


def simulated_report(ladder_config: LadderConfig, phi=np.pi, visibility=1., counts=None, seed=None) -> HardyReport:
    if counts is None:
        counts = config.params["counts"]
    if seed is None:
        seed = config.params["seed"]
    state = NoisyState(make_state(ladder_config.t, phi), visibility)
    angles = ladder_angles(ladder_config.K, ladder_config.t)
    hardy, bottom, sides = ladder_terms(ladder_config.K)

    records = []
    estimates = []
    for term in (hardy, bottom) + sides:
        dist = distribution(state, angles.setting(term.a_index, Party.A), angles.setting(term.b_index, Party.B))
        record = simulate_counts(dist, counts, seed, (term.a_index, term.b_index))
        records.append(record)
        estimates.append(estimate_probability(record, term.outcome_a, term.outcome_b))

    values = [e.p for e in estimates]
    sigmas = [e.sigma for e in estimates]
    # settings are measured independently
    sigma_s = math.sqrt(math.fsum(s ** 2 for s in sigmas))
    return HardyReport(
        config=ladder_config,
        phi=float(phi),
        visibility=float(visibility),
        angles=angles,
        hardy_fraction=values[0],
        bottom=values[1],
        side_terms=tuple(values[2:]),
        s_value=s_statistic(values[0], values[1], values[2:]),
        uncertainties=HardyUncertainties(sigmas[0], sigmas[1], tuple(sigmas[2:]), sigma_s),
        records=tuple(records),
        seed=int(seed),
        error_model=ERROR_MODEL,
    )


def row_seed(seed: int, row: int) -> int:
    return int(np.random.SeedSequence([check_seed(seed), row]).generate_state(1, dtype=np.uint64)[0])


def simulated_scan(K: int, ts, visibility=1., phi=np.pi, counts=None, seed=None) -> list:
    """Simulated experimental points along a t grid, one derived seed per row."""
    if seed is None:
        seed = config.params["seed"]
    return [simulated_report(LadderConfig(K, float(t)), phi, visibility, counts, row_seed(seed, row))
            for row, t in enumerate(ts)]
