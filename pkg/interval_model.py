"""
Interval Model
Possibility degree between interval numbers, alpha-dominance over mixed
real/interval criteria and the imprecise weighted-sum value model.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Optional, Sequence, Tuple

from electre_model import ParameterError
from relational_core import PerformanceVector, RelationalModel, check_dimensions

UTILITY_CACHE_SIZE = 65536


@dataclass(frozen=True)
class IntervalNumber:
    """Closed interval [lo, hi]"""
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval bounds must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"interval lower bound exceeds upper bound: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def of(cls, value: Any) -> "IntervalNumber":
        """Coerce a number, a (lo, hi) pair or an interval"""
        if isinstance(value, IntervalNumber):
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ValueError(f"interval needs exactly two bounds, got {value!r}")
            return cls(value[0], value[1])
        return cls(value, value)

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2

    def __neg__(self) -> "IntervalNumber":
        return IntervalNumber(-self.hi, -self.lo)

    def __str__(self) -> str:
        return f"[{self.lo:g}, {self.hi:g}]"


def possibility(b: IntervalNumber, c: IntervalNumber) -> float:
    """Degree of credibility of b >= c"""
    if b.degenerate and c.degenerate:
        return 1.0 if b.lo >= c.lo else 0.0
    ratio = (b.hi - c.lo) / (b.width + c.width)
    return min(1.0, max(0.0, ratio))


def interval_dominates(x: PerformanceVector, y: PerformanceVector, alpha: float,
                       partition: Optional[Sequence[bool]] = None) -> bool:
    """
    alpha-dominance of x over y.

    partition[j] is True for interval-valued criteria; when omitted, a criterion
    is interval-valued if either score is an IntervalNumber.
    """
    check_dimensions(x, y)
    if not 0.5 <= alpha <= 1.0:
        raise ParameterError(f"alpha: must lie in [0.5, 1], got {alpha}")
    if partition is None:
        partition = [isinstance(a, IntervalNumber) or isinstance(b, IntervalNumber)
                     for a, b in zip(x.scores, y.scores)]
    elif len(partition) != x.dimension:
        raise ParameterError(f"partition: expected {x.dimension} flags, got {len(partition)}")

    for gx, gy, is_interval in zip(x.scores, y.scores, partition):
        if is_interval:
            if possibility(IntervalNumber.of(gx), IntervalNumber.of(gy)) < alpha:
                return False
        elif _real(gx) < _real(gy):
            return False
    return True


def _real(score: Any) -> float:
    if isinstance(score, IntervalNumber):
        if not score.degenerate:
            raise ParameterError(f"real-valued criterion received a proper interval {score}")
        return score.lo
    return float(score)


def interval_weighted_sum(weights: Sequence[IntervalNumber], scores: Sequence[Any]) -> IntervalNumber:
    """U = sum of w_j * g_j with nonnegative interval scores"""
    lo = hi = 0.0
    for w, s in zip(weights, scores):
        s = IntervalNumber.of(s)
        if s.lo < 0:
            raise ParameterError(f"interval scores must be nonnegative, got {s}")
        lo += w.lo * s.lo
        hi += w.hi * s.hi
    return IntervalNumber(lo, hi)


class IntervalValueModel(RelationalModel):
    """Imprecise weighted-sum value model: S at possibility 0.5, D at alpha_d

    S is reflexive here since Poss(U(x) >= U(x)) = 0.5, unlike a possibility-based
    outranking on raw interval scores, which is not.
    """

    name = "interval-value"
    s_transitive = True

    def __init__(self, weights: Sequence[Any], alpha_d: float, tolerance: float = 1e-9,
                 cache_size: int = UTILITY_CACHE_SIZE):
        self.weights: Tuple[IntervalNumber, ...] = tuple(IntervalNumber.of(w) for w in weights)
        self.alpha_d = float(alpha_d)
        self.tolerance = tolerance
        for j, w in enumerate(self.weights):
            if w.lo < 0:
                raise ParameterError(f"weights[{j}]: interval weights must be nonnegative, got {w}")
        total = sum(w.mid for w in self.weights)
        if abs(total - 1.0) > tolerance:
            raise ParameterError(f"weights: midpoints must sum to 1, got {total:.6g}")
        if not 0.5 < self.alpha_d <= 1.0:
            raise ParameterError(f"alpha_d: must lie in ]0.5, 1], got {self.alpha_d}")
        self._cached_utility = lru_cache(maxsize=cache_size)(self._utility_of_scores)

    @property
    def m(self) -> int:
        return len(self.weights)

    def utility(self, x: PerformanceVector) -> IntervalNumber:
        if x.dimension != self.m:
            raise ParameterError(f"model defines {self.m} criteria, {x.label} has {x.dimension}")
        return self._cached_utility(x.scores)

    def _utility_of_scores(self, scores: tuple) -> IntervalNumber:
        return interval_weighted_sum(self.weights, scores)

    def cache_info(self):
        return self._cached_utility.cache_info()

    def s(self, x: PerformanceVector, y: PerformanceVector) -> bool:
        return interval_value_s(self, x, y)

    def d(self, x: PerformanceVector, y: PerformanceVector) -> bool:
        return interval_value_d(self, x, y)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, IntervalValueModel) and self.weights == other.weights
                and self.alpha_d == other.alpha_d)

    def __hash__(self) -> int:
        return hash((self.weights, self.alpha_d))


def interval_value_s(model: IntervalValueModel, x: PerformanceVector, y: PerformanceVector) -> bool:
    check_dimensions(x, y)
    return possibility(model.utility(x), model.utility(y)) >= 0.5


def interval_value_d(model: IntervalValueModel, x: PerformanceVector, y: PerformanceVector) -> bool:
    check_dimensions(x, y)
    return possibility(model.utility(x), model.utility(y)) >= model.alpha_d
