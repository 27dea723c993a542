"""
ELECTRE Relational Model
Crisp outranking sigma(x, y) >= lambda with indifference, preference,
pre-veto and veto thresholds, and Pareto dominance as D.
"""

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from relational_core import (
    PerformanceVector,
    RelationalModel,
    check_dimensions,
)

# Distinct (x, y) score pairs kept per model
SIGMA_CACHE_SIZE = 65536


class ParameterError(ValueError):
    """Invalid model parameters"""


def default_tolerance() -> float:
    return float(os.getenv("ORDINAL_TOLERANCE", "1e-9"))


@dataclass(frozen=True)
class ElectreParameters:
    """Per-criterion weights and thresholds plus the credibility threshold"""
    weights: Tuple[float, ...]
    q: Tuple[float, ...]
    p: Tuple[float, ...]
    u: Tuple[Optional[float], ...]
    v: Tuple[Optional[float], ...]
    lam: float
    tolerance: float = 1e-9

    def __post_init__(self):
        m = len(self.weights)
        for field_name in ("q", "p", "u", "v"):
            values = tuple(getattr(self, field_name))
            if len(values) != m:
                raise ParameterError(f"{field_name}: expected {m} values, got {len(values)}")
            object.__setattr__(self, field_name, values)
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

        # A veto without pre-veto is a step at v
        u = list(self.u)
        for j in range(m):
            if self.v[j] is None and u[j] is not None:
                raise ParameterError(f"u[{j}]: pre-veto threshold given without veto threshold")
            if u[j] is None and self.v[j] is not None:
                u[j] = self.v[j]
        object.__setattr__(self, "u", tuple(u))

        for j in range(m):
            if self.weights[j] < 0:
                raise ParameterError(f"weights[{j}]: weights must be nonnegative")
            chain = [self.q[j], self.p[j]] + ([self.u[j], self.v[j]] if self.v[j] is not None else [])
            if chain[0] < 0 or any(a > b for a, b in zip(chain, chain[1:])):
                raise ParameterError(
                    f"thresholds of criterion {j}: need 0 <= q <= p <= u <= v, got "
                    f"q={self.q[j]}, p={self.p[j]}, u={self.u[j]}, v={self.v[j]}"
                )
        total = sum(self.weights)
        if abs(total - 1.0) > self.tolerance:
            raise ParameterError(f"weights: must sum to 1, got {total:.6g}")
        if not 0.5 < self.lam <= 1.0:
            raise ParameterError(f"lambda: must lie in ]0.5, 1], got {self.lam}")

    @property
    def m(self) -> int:
        return len(self.weights)

    @cached_property
    def w_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    @cached_property
    def q_array(self) -> np.ndarray:
        return np.asarray(self.q, dtype=float)

    @cached_property
    def p_array(self) -> np.ndarray:
        return np.asarray(self.p, dtype=float)

    @cached_property
    def u_array(self) -> np.ndarray:
        return np.asarray([np.nan if t is None else t for t in self.u], dtype=float)

    @cached_property
    def v_array(self) -> np.ndarray:
        return np.asarray([np.nan if t is None else t for t in self.v], dtype=float)


def _check_criteria(params: ElectreParameters, x: PerformanceVector, y: PerformanceVector):
    check_dimensions(x, y)
    if x.dimension != params.m:
        raise ParameterError(f"parameters define {params.m} criteria, {x.label} has {x.dimension}")


def _marginal_concordance(params: ElectreParameters, deficit: np.ndarray) -> np.ndarray:
    q, p = params.q_array, params.p_array
    with np.errstate(divide="ignore", invalid="ignore"):
        ramp = (p - deficit) / (p - q)
    return np.where(deficit <= q, 1.0, np.where(deficit >= p, 0.0, ramp))


def _marginal_discordance(params: ElectreParameters, deficit: np.ndarray) -> np.ndarray:
    u, v = params.u_array, params.v_array
    with np.errstate(divide="ignore", invalid="ignore"):
        ramp = (deficit - u) / (v - u)
    d = np.where(deficit <= u, 0.0, np.where(deficit >= v, 1.0, ramp))
    return np.where(np.isnan(v), 0.0, d)


def credibility_matrix(params: ElectreParameters, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """sigma for every (row action, column action) pair; inputs are (n, m) score arrays"""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    cols = np.atleast_2d(np.asarray(cols, dtype=float))
    deficit = cols[None, :, :] - rows[:, None, :]
    c = (_marginal_concordance(params, deficit) * params.w_array).sum(axis=-1)
    veto = np.prod(1.0 - _marginal_discordance(params, deficit), axis=-1)
    return c * veto


def concordance(params: ElectreParameters, x: PerformanceVector, y: PerformanceVector) -> float:
    _check_criteria(params, x, y)
    deficit = np.asarray(y.scores, dtype=float) - np.asarray(x.scores, dtype=float)
    return float((_marginal_concordance(params, deficit) * params.w_array).sum(axis=-1))


def discordance_marginal(params: ElectreParameters, j: int, x: PerformanceVector, y: PerformanceVector) -> float:
    _check_criteria(params, x, y)
    deficit = np.asarray(y.scores, dtype=float) - np.asarray(x.scores, dtype=float)
    return float(_marginal_discordance(params, deficit)[j])


def credibility(params: ElectreParameters, x: PerformanceVector, y: PerformanceVector) -> float:
    _check_criteria(params, x, y)
    return float(credibility_matrix(params, [x.scores], [y.scores])[0, 0])


def crisp_s(params: ElectreParameters, x: PerformanceVector, y: PerformanceVector) -> bool:
    return credibility(params, x, y) >= params.lam - params.tolerance


def pareto_dominates(x: PerformanceVector, y: PerformanceVector) -> bool:
    """Weak Pareto dominance"""
    check_dimensions(x, y)
    return all(a >= b for a, b in zip(x.scores, y.scores))


class ElectreModel(RelationalModel):
    """(Pareto dominance, crisp outranking) relational system"""

    name = "electre"
    s_transitive = False

    def __init__(self, params: ElectreParameters, cache_size: int = SIGMA_CACHE_SIZE):
        self.params = params
        self._cached_sigma = lru_cache(maxsize=cache_size)(self._sigma_of_scores)

    def _sigma_of_scores(self, x_scores: tuple, y_scores: tuple) -> float:
        return credibility(self.params, PerformanceVector(x_scores), PerformanceVector(y_scores))

    def sigma(self, x: PerformanceVector, y: PerformanceVector) -> float:
        _check_criteria(self.params, x, y)
        return self._cached_sigma(x.scores, y.scores)

    def cache_info(self):
        return self._cached_sigma.cache_info()

    def s(self, x: PerformanceVector, y: PerformanceVector) -> bool:
        return self.sigma(x, y) >= self.params.lam - self.params.tolerance

    def d(self, x: PerformanceVector, y: PerformanceVector) -> bool:
        return pareto_dominates(x, y)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ElectreModel) and self.params == other.params

    def __hash__(self) -> int:
        return hash(self.params)

    def matrices(self, actions: Sequence[PerformanceVector]) -> Tuple[np.ndarray, np.ndarray]:
        if not actions:
            return np.zeros((0, 0), dtype=bool), np.zeros((0, 0), dtype=bool)
        scores = np.asarray([a.scores for a in actions], dtype=float).reshape(len(actions), self.params.m)
        sigma = credibility_matrix(self.params, scores, scores)
        s_matrix = sigma >= self.params.lam - self.params.tolerance
        d_matrix = (scores[:, None, :] >= scores[None, :, :]).all(axis=-1)
        return s_matrix, d_matrix
