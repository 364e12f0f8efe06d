"""
Classical side of the Hardy test.

Deterministic local strategies are the vertices of the local polytope, so the
largest S_K any local hidden variable model reaches is the maximum over them.
"""
from dataclasses import dataclass
from itertools import product
from typing import Mapping
import logging
import numpy as np

from . import config
from .errors import DomainError, SizeGuardError
from .ladder import LadderConfig, LadderAngles, evaluate_ladder, ladder_terms, s_statistic
from .quantum import OUTCOMES, JointDistribution, Party, distribution

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeterministicStrategy:
    a_assign: tuple
    b_assign: tuple

    def __post_init__(self):
        object.__setattr__(self, "a_assign", tuple(self.a_assign))
        object.__setattr__(self, "b_assign", tuple(self.b_assign))
        if len(self.a_assign) != len(self.b_assign) or len(self.a_assign) < 2:
            raise DomainError("both parties need the same number (>= 2) of settings")
        for outcome in self.a_assign + self.b_assign:
            if outcome not in OUTCOMES:
                raise DomainError("outcome must be +1 or -1, got {}".format(outcome))

    @property
    def K(self) -> int:
        return len(self.a_assign) - 1


@dataclass(frozen=True)
class BehaviorTable:
    """Joint distributions for every setting pair (i, j) in {0..K}^2."""
    K: int
    distributions: Mapping

    def __post_init__(self):
        expected = set(product(range(self.K + 1), repeat=2))
        if set(self.distributions.keys()) != expected:
            raise DomainError("table must hold every setting pair of a K={} ladder".format(self.K))
        for pair, dist in self.distributions.items():
            if not dist.is_normalized():
                raise DomainError("distribution for settings {} is not normalized".format(pair))

    def p(self, i: int, j: int, outcome_a=1, outcome_b=1) -> float:
        return self.distributions[(i, j)].probability(outcome_a, outcome_b)

    def is_no_signaling(self, tolerance=None) -> bool:
        if tolerance is None:
            tolerance = config.params["zero_tolerance"]
        settings = range(self.K + 1)
        for i in settings:
            marginals = [self.distributions[(i, j)].marginal_a(1) for j in settings]
            if max(marginals) - min(marginals) > tolerance:
                return False
        for j in settings:
            marginals = [self.distributions[(i, j)].marginal_b(1) for i in settings]
            if max(marginals) - min(marginals) > tolerance:
                return False
        return True

    def s_value(self) -> float:
        hardy, bottom, sides = ladder_terms(self.K)

        def term(t):
            return self.p(t.a_index, t.b_index, t.outcome_a, t.outcome_b)
        return s_statistic(term(hardy), term(bottom), [term(t) for t in sides])

    @classmethod
    def mixture(cls, tables, weights):
        weights = np.asarray(weights, dtype=float)
        assert len(tables) == len(weights) and np.all(weights >= 0)
        weights = weights / np.sum(weights)
        K = tables[0].K
        mixed = {}
        for pair in tables[0].distributions:
            probabilities = sum(w * tab.distributions[pair].as_array() for w, tab in zip(weights, tables))
            mixed[pair] = JointDistribution(*np.clip(probabilities, 0., 1.))
        return cls(K, mixed)


def strategy_count(K: int) -> int:
    LadderConfig(K, 1.)
    count = 2 ** (2 * (K + 1))
    if count >= config.params["max_strategies"]:
        raise SizeGuardError("K={} needs {} strategies, limit is below {}".format(
            K, count, config.params["max_strategies"]))
    return count


def enumerate_strategies(K: int):
    """Every deterministic strategy of a K-step ladder, exactly once (Alice's assignment varies slowest)."""
    strategy_count(K)

    def strategies():
        for a_assign in product((1, -1), repeat=K + 1):
            for b_assign in product((1, -1), repeat=K + 1):
                yield DeterministicStrategy(a_assign, b_assign)
    return strategies()


def strategy_table(strategy: DeterministicStrategy) -> BehaviorTable:
    distributions = {}
    for i, a in enumerate(strategy.a_assign):
        for j, b in enumerate(strategy.b_assign):
            distributions[(i, j)] = JointDistribution(*[float(a == oa and b == ob)
                                                        for oa in OUTCOMES for ob in OUTCOMES])
    return BehaviorTable(strategy.K, distributions)


def quantum_table(state, angles: LadderAngles) -> BehaviorTable:
    distributions = {}
    for i in range(angles.K + 1):
        for j in range(angles.K + 1):
            distributions[(i, j)] = distribution(state, angles.setting(i, Party.A), angles.setting(j, Party.B))
    return BehaviorTable(angles.K, distributions)


def strategy_s_value(strategy: DeterministicStrategy) -> float:
    hardy, bottom, sides = ladder_terms(strategy.K)

    def hit(term) -> float:
        return float(strategy.a_assign[term.a_index] == term.outcome_a
                     and strategy.b_assign[term.b_index] == term.outcome_b)
    return s_statistic(hit(hardy), hit(bottom), [hit(term) for term in sides])


def lhv_max(K: int) -> float:
    """
    Largest S_K over all deterministic strategies.

    Evaluated on the (Alice assignment x Bob assignment) grid at once: each term
    is an outer product of 0/1 indicator columns.
    """
    count = strategy_count(K)
    assignments = np.array(list(product((1, -1), repeat=K + 1)), dtype=np.int8)
    hardy, bottom, sides = ladder_terms(K)

    def indicator(term) -> np.ndarray:
        a_hit = (assignments[:, term.a_index] == term.outcome_a).astype(np.int32)
        b_hit = (assignments[:, term.b_index] == term.outcome_b).astype(np.int32)
        return np.outer(a_hit, b_hit)

    s_grid = indicator(hardy) - indicator(bottom)
    for term in sides:
        s_grid -= indicator(term)
    assert s_grid.size == count
    best = float(np.max(s_grid))
    logger.info("LHV maximum of S_%d over %d strategies: %r", K, count, best)
    return best


def ch_equivalence_residual(table: BehaviorTable) -> float:
    """
    |CH form - Hardy form| for a K=1 table after substituting the marginals
    P_A(a1) = P(a1,b0) + P(a1,~b0) and P_B(b1) = P(a0,b1) + P(~a0,b1).
    """
    if table.K != 1:
        raise DomainError("the CH comparison needs a K=1 table, got K={}".format(table.K))
    p = table.p
    p_a1 = table.distributions[(1, 0)].marginal_a(1)
    p_b1 = table.distributions[(0, 1)].marginal_b(1)
    ch = p(1, 1) + p(0, 1) + p(1, 0) - p(0, 0) - p_a1 - p_b1
    hardy = p(1, 1) - p(0, 0) - p(0, 1, -1, 1) - p(1, 0, 1, -1)
    return abs(ch - hardy)


def quantum_vs_lhv(ladder_config: LadderConfig, visibility=1., phi=np.pi) -> float:
    """Violation margin S_K(quantum) - max S_K(LHV); positive certifies nonlocality."""
    return evaluate_ladder(ladder_config, phi, visibility).s_value - lhv_max(ladder_config.K)
