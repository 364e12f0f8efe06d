r"""
Two-mode energy-time state and Born-rule joint probabilities.

The state lives in the {S,L}x{S,L} span,

    |Phi> = alpha |S_A S_B> + e^{i phi} beta |L_A L_B>,    t = alpha / beta,

and each party projects onto cos(theta)|S> + sin(theta)|L> (outcome +1) or
sin(theta)|S> - cos(theta)|L> (outcome -1).  Finite visibility is modelled as
the coherence-damped mixture V |Phi><Phi| + (1 - V) (alpha^2 |SS><SS| +
beta^2 |LL><LL|).
"""
from dataclasses import dataclass
from enum import Enum
import math
import numpy as np

from . import config
from .errors import DomainError

OUTCOMES = (1, -1)


class Party(Enum):
    A = "A"
    B = "B"


def normalize_angle(theta: float) -> float:
    """Map theta onto (-pi/2, pi/2]; a shift by pi only flips the basis vector sign."""
    if -np.pi / 2 < theta <= np.pi / 2:
        return float(theta)
    return float(np.pi / 2 - np.mod(np.pi / 2 - theta, np.pi))


def check_outcome(outcome: int) -> int:
    if outcome not in OUTCOMES:
        raise DomainError("outcome must be +1 or -1, got {}".format(outcome))
    return outcome


@dataclass(frozen=True)
class PureState:
    t: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.t) and self.t > 0):
            raise DomainError("t must be positive and finite, got {}".format(self.t))
        if not math.isfinite(self.phi):
            raise DomainError("phi must be finite, got {}".format(self.phi))

    @property
    def alpha(self) -> float:
        return self.t / math.hypot(self.t, 1.)

    @property
    def beta(self) -> float:
        return 1. / math.hypot(self.t, 1.)


@dataclass(frozen=True)
class NoisyState:
    pure: PureState
    visibility: float = 1.

    def __post_init__(self):
        if not 0. <= self.visibility <= 1.:
            raise DomainError("visibility must lie in [0, 1], got {}".format(self.visibility))

    @property
    def t(self) -> float:
        return self.pure.t

    @property
    def phi(self) -> float:
        return self.pure.phi


@dataclass(frozen=True)
class AnalyzerSetting:
    theta: float
    party: Party = Party.A

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise DomainError("theta must be finite, got {}".format(self.theta))
        # frozen dataclass: normalize in place once
        object.__setattr__(self, "theta", normalize_angle(self.theta))
        object.__setattr__(self, "party", Party(self.party))


@dataclass(frozen=True)
class JointDistribution:
    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float
    theta_a: float = 0.
    theta_b: float = 0.

    def __post_init__(self):
        for p in self.as_array():
            if not 0. <= p <= 1.:
                raise DomainError("probability {} outside [0, 1]".format(p))

    def as_array(self) -> np.ndarray:
        # order: (+,+), (+,-), (-,+), (-,-)
        return np.array([self.p_pp, self.p_pm, self.p_mp, self.p_mm])

    def probability(self, outcome_a: int, outcome_b: int) -> float:
        index = 2 * OUTCOMES.index(check_outcome(outcome_a)) + OUTCOMES.index(check_outcome(outcome_b))
        return float(self.as_array()[index])

    def is_normalized(self, tolerance=None) -> bool:
        if tolerance is None:
            tolerance = config.params["normalization_tolerance"]
        return abs(float(np.sum(self.as_array())) - 1.) <= tolerance

    def marginal_a(self, outcome: int) -> float:
        # P_A(a) = P(a, b) + P(a, ~b)
        return self.probability(outcome, 1) + self.probability(outcome, -1)

    def marginal_b(self, outcome: int) -> float:
        # P_B(b) = P(a, b) + P(~a, b)
        return self.probability(1, outcome) + self.probability(-1, outcome)


def clamp_probability(p: float) -> float:
    """Round-off past [0, 1] is clipped; anything beyond zero_tolerance is an error."""
    tolerance = config.params["zero_tolerance"]
    if not -tolerance <= p <= 1. + tolerance:
        raise DomainError("probability {} outside [0, 1] beyond tolerance {}".format(p, tolerance))
    return min(max(float(p), 0.), 1.)


def make_state(t: float, phi: float = np.pi) -> PureState:
    return PureState(float(t), float(phi))


def as_noisy(state) -> NoisyState:
    if isinstance(state, NoisyState):
        return state
    assert isinstance(state, PureState)
    return NoisyState(state, 1.)


def basis_amplitudes(theta: float, outcome: int) -> tuple:
    """Return the (S, L) amplitudes of the projector for the given outcome."""
    if check_outcome(outcome) == 1:
        return np.cos(theta), np.sin(theta)
    return np.sin(theta), -np.cos(theta)


def _amplitudes(setting_a: AnalyzerSetting, setting_b: AnalyzerSetting, outcome_a: int, outcome_b: int):
    a_s, a_l = basis_amplitudes(setting_a.theta, outcome_a)
    b_s, b_l = basis_amplitudes(setting_b.theta, outcome_b)
    return a_s * b_s, a_l * b_l


def joint_probability(state: PureState, setting_a: AnalyzerSetting, setting_b: AnalyzerSetting,
                      outcome_a: int, outcome_b: int) -> float:
    ss, ll = _amplitudes(setting_a, setting_b, outcome_a, outcome_b)
    amplitude = state.alpha * ss + np.exp(1j * state.phi) * state.beta * ll
    return clamp_probability(float(np.abs(amplitude) ** 2))


def _dephased_probability(state: PureState, setting_a: AnalyzerSetting, setting_b: AnalyzerSetting,
                          outcome_a: int, outcome_b: int) -> float:
    ss, ll = _amplitudes(setting_a, setting_b, outcome_a, outcome_b)
    return float(state.alpha ** 2 * ss ** 2 + state.beta ** 2 * ll ** 2)


def noisy_joint_probability(state, setting_a: AnalyzerSetting, setting_b: AnalyzerSetting,
                            outcome_a: int, outcome_b: int) -> float:
    state = as_noisy(state)
    coherent = joint_probability(state.pure, setting_a, setting_b, outcome_a, outcome_b)
    if state.visibility == 1.:
        return coherent
    dephased = _dephased_probability(state.pure, setting_a, setting_b, outcome_a, outcome_b)
    return clamp_probability(state.visibility * coherent + (1. - state.visibility) * dephased)


def distribution(state, setting_a: AnalyzerSetting, setting_b: AnalyzerSetting) -> JointDistribution:
    probabilities = [noisy_joint_probability(state, setting_a, setting_b, oa, ob)
                     for oa in OUTCOMES for ob in OUTCOMES]
    dist = JointDistribution(*probabilities, theta_a=setting_a.theta, theta_b=setting_b.theta)
    assert dist.is_normalized(), "Born probabilities do not sum to one: {}".format(probabilities)
    return dist
