r"""
Hardy ladder: angle schedule, S_K statistic and optimization over t.

For K ladder steps the statistic is

    S_K = P(a_K, b_K) - P(a_0, b_0) - \sum_{k=1}^{K} [P(a_k, ~b_{k-1}) + P(~a_{k-1}, b_k)]

which is <= 0 for every local hidden variable model.  The analyzer angles

    tan(theta_k) = (-1)^k t^{k + 1/2}

make every subtracted term vanish for the phi = pi state, leaving the Hardy
fraction t^2 (t^{2K} - 1)^2 / ((t^{2K+1} + 1)^2 (1 + t^2)).
"""
from dataclasses import dataclass
from multiprocessing import Pool
from numbers import Integral
from typing import Optional
import logging
import math
import numpy as np

from . import config, search, utils
from .errors import DomainError
from .quantum import AnalyzerSetting, NoisyState, Party, make_state, noisy_joint_probability

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LadderConfig:
    K: int
    t: float

    def __post_init__(self):
        if isinstance(self.K, bool) or not isinstance(self.K, Integral) or self.K < 1:
            raise DomainError("K must be an integer >= 1, got {}".format(self.K))
        if not (math.isfinite(self.t) and 0. < self.t <= 1.):
            raise DomainError("t must lie in (0, 1], got {}".format(self.t))


@dataclass(frozen=True)
class LadderAngles:
    thetas: tuple

    def __post_init__(self):
        assert len(self.thetas) >= 2, "a ladder needs at least two settings per party"
        object.__setattr__(self, "thetas", tuple(float(theta) for theta in self.thetas))

    @property
    def K(self) -> int:
        return len(self.thetas) - 1

    def setting(self, k: int, party=Party.A) -> AnalyzerSetting:
        return AnalyzerSetting(self.thetas[k], party)

    def degrees(self) -> tuple:
        return tuple(float(np.degrees(theta)) for theta in self.thetas)


@dataclass(frozen=True)
class LadderTerm:
    """One joint probability of S_K: settings (a_index, b_index) and the outcomes counted."""
    label: str
    a_index: int
    b_index: int
    outcome_a: int
    outcome_b: int


@dataclass(frozen=True)
class HardyUncertainties:
    hardy_fraction: float
    bottom: float
    side_terms: tuple
    s_value: float


@dataclass(frozen=True)
class HardyReport:
    config: LadderConfig
    phi: float
    visibility: float
    angles: LadderAngles
    hardy_fraction: float
    bottom: float
    side_terms: tuple
    s_value: float
    uncertainties: Optional[HardyUncertainties] = None
    records: tuple = ()
    seed: Optional[int] = None
    error_model: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "side_terms", tuple(self.side_terms))
        assert len(self.side_terms) == 2 * self.config.K
        for p in (self.hardy_fraction, self.bottom) + self.side_terms:
            if not 0. <= p <= 1.:
                raise DomainError("probability {} outside [0, 1]".format(p))
        assert abs(self.s_value - s_statistic(self.hardy_fraction, self.bottom, self.side_terms)) \
            <= config.params["zero_tolerance"]

    def labelled_terms(self) -> list:
        """
        Every term in the order of the probability table with its uncertainty (None when not simulated).

        return: [(label, value, sigma), ...]
        """
        hardy, bottom, sides = ladder_terms(self.config.K)
        sigmas = self.uncertainties
        rows = [(hardy.label, self.hardy_fraction, sigmas.hardy_fraction if sigmas else None)]
        for index in _table_order(self.config.K):
            rows.append((sides[index].label, self.side_terms[index],
                         sigmas.side_terms[index] if sigmas else None))
        rows.append((bottom.label, self.bottom, sigmas.bottom if sigmas else None))
        return rows


def ladder_terms(K: int) -> tuple:
    """
    Setting pairs and outcomes of every probability in S_K.

    return: (hardy term, bottom term, side terms), the side terms ordered
        P(a_k, ~b_{k-1}), P(~a_{k-1}, b_k) for k = 1, ..., K
    """
    hardy = LadderTerm("P(a{0},b{0})".format(K), K, K, 1, 1)
    bottom = LadderTerm("P(a0,b0)", 0, 0, 1, 1)
    sides = []
    for k in range(1, K + 1):
        sides.append(LadderTerm("P(a{},~b{})".format(k, k - 1), k, k - 1, 1, -1))
        sides.append(LadderTerm("P(~a{},b{})".format(k - 1, k), k - 1, k, -1, 1))
    return hardy, bottom, tuple(sides)


def _table_order(K: int) -> list:
    # k = K, ..., 1; P(a_k, ~b_{k-1}) before P(~a_{k-1}, b_k)
    return [index for k in range(K, 0, -1) for index in (2 * (k - 1), 2 * (k - 1) + 1)]


def term_labels(K: int) -> list:
    hardy, bottom, sides = ladder_terms(K)
    return [hardy.label] + [sides[index].label for index in _table_order(K)] + [bottom.label]


def term_probability(state, angles: LadderAngles, term: LadderTerm) -> float:
    return noisy_joint_probability(state, angles.setting(term.a_index, Party.A),
                                   angles.setting(term.b_index, Party.B),
                                   term.outcome_a, term.outcome_b)


def ladder_angles(K: int, t: float) -> LadderAngles:
    LadderConfig(K, t)
    thetas = []
    for k in range(K + 1):
        # t^{k+1/2}; its square is t^{2k+1}
        x = t ** (k + 0.5)
        norm = math.sqrt(x ** 2 + 1.)
        thetas.append(math.atan2((-1) ** k * x / norm, 1. / norm))
    return LadderAngles(tuple(thetas))


def hardy_fraction_closed_form(K: int, t: float) -> float:
    LadderConfig(K, t)
    return t ** 2 * (t ** (2 * K) - 1.) ** 2 / ((t ** (2 * K + 1) + 1.) ** 2 * (1. + t ** 2))


def condition_residuals(state, angles: LadderAngles) -> list:
    """[P(a0,b0)] followed by P(~a_{k-1}, b_k), P(a_k, ~b_{k-1}) for k = 1, ..., K."""
    _, bottom, sides = ladder_terms(angles.K)
    residuals = [term_probability(state, angles, bottom)]
    for k in range(angles.K):
        a_k_not_b, not_a_b_k = sides[2 * k], sides[2 * k + 1]
        residuals.append(term_probability(state, angles, not_a_b_k))
        residuals.append(term_probability(state, angles, a_k_not_b))
    return residuals


def s_statistic(hardy_fraction: float, bottom: float, side_terms) -> float:
    side_terms = list(side_terms)
    for p in [hardy_fraction, bottom] + side_terms:
        if not 0. <= p <= 1.:
            raise DomainError("probability {} outside [0, 1]".format(p))
    return hardy_fraction - bottom - math.fsum(side_terms)


def evaluate_ladder(ladder_config: LadderConfig, phi=np.pi, visibility=1.) -> HardyReport:
    state = NoisyState(make_state(ladder_config.t, phi), visibility)
    angles = ladder_angles(ladder_config.K, ladder_config.t)
    hardy, bottom, sides = ladder_terms(ladder_config.K)

    hardy_fraction = term_probability(state, angles, hardy)
    bottom_p = term_probability(state, angles, bottom)
    side_terms = [term_probability(state, angles, term) for term in sides]
    return HardyReport(
        config=ladder_config,
        phi=float(phi),
        visibility=float(visibility),
        angles=angles,
        hardy_fraction=hardy_fraction,
        bottom=bottom_p,
        side_terms=tuple(side_terms),
        s_value=s_statistic(hardy_fraction, bottom_p, side_terms),
    )


def s_value(K: int, t: float, visibility=1., phi=np.pi) -> float:
    return evaluate_ladder(LadderConfig(K, float(t)), phi, visibility).s_value


def optimize_t(K: int, visibility=1., phi=np.pi) -> tuple:
    """
    Maximize S_K over t in (0, 1): coarse grid, then golden-section refinement.

    return: (t_star, s_star)
    """
    LadderConfig(K, 1.)
    step = config.params["grid_step"]
    grid = step * np.arange(1, int(round(1. / step)))

    best_t, best_s = None, -np.inf
    for t in grid:
        s = s_value(K, t, visibility, phi)
        if s > best_s:
            best_t, best_s = float(t), s
    logger.debug("grid optimum for K=%d: t=%r S=%r", K, best_t, best_s)

    # interior points of the bracket stay inside (0, 1]
    t_star, s_star = search.golden_section_max(
        lambda t: s_value(K, t, visibility, phi),
        best_t - step, min(best_t + step, 1.),
        tolerance=config.params["golden_tolerance"])
    if best_s > s_star:
        t_star, s_star = best_t, best_s
    logger.info("optimum for K=%d, V=%r: t*=%.6f S*=%.6f", K, visibility, t_star, s_star)
    return float(t_star), float(s_star)


def violation_threshold(K: int, visibility=1., phi=np.pi) -> Optional[float]:
    """
    Smallest t above the optimum where S_K stops being positive.

    return: the crossing (to the bisection tolerance), or None when S_K stays
        positive on (t*, 1)
    """
    t_star, s_star = optimize_t(K, visibility, phi)
    if s_star <= 0:
        logger.info("no violation for K=%d, V=%r at any t", K, visibility)
        return None

    step = config.params["grid_step"]
    tolerance = config.params["bisection_tolerance"]
    count = int(np.floor((1. - tolerance - t_star) / step))
    candidates = [t_star + step * i for i in range(1, count + 1)] + [1. - tolerance]

    def s_of_t(t):
        return s_value(K, t, visibility, phi)

    previous = t_star
    for t in candidates:
        if s_of_t(t) <= 0:
            t_cross = search.bisect_sign_change(s_of_t, previous, t, tolerance)
            logger.info("violation lost for K=%d, V=%r at t=%.4f", K, visibility, t_cross)
            return float(t_cross)
        previous = t
    logger.info("S_%d stays positive on (t*, 1) for V=%r", K, visibility)
    return None


def _scan_row(args) -> tuple:
    K, t, visibility, phi = args
    report = evaluate_ladder(LadderConfig(K, float(t)), phi, visibility)
    return (float(t), report.hardy_fraction, report.s_value) + report.angles.thetas


def scan_ladder(K: int, ts, visibility=1., phi=np.pi, workers=None) -> list:
    """
    Evaluate the ladder along a t grid.

    return: [(t, P_K, S_K, theta_0, ..., theta_K), ...] in the order of ts
    """
    if workers is None:
        workers = config.exec_params["worker_processes"]
    jobs = [(K, float(t), visibility, phi) for t in ts]
    if workers > 1:
        with Pool(processes=workers, initializer=utils.mute) as pool:
            return pool.map(_scan_row, jobs)
    return [_scan_row(job) for job in jobs]
