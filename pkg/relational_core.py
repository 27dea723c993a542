"""
Relational Core
Abstract relational system (D, S), the derived preference P and the
exhaustive Condition 1 and P-D composition checks over finite action sets.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from classification_state import ViolationReport


class DimensionMismatchError(ValueError):
    """Raised when two performance vectors have different criterion counts"""

    def __init__(self, x: "PerformanceVector", y: "PerformanceVector"):
        super().__init__(
            f"criterion count mismatch: {x.label} has {x.dimension} scores, "
            f"{y.label} has {y.dimension}"
        )
        self.left = x
        self.right = y


def _check_score(score: Any):
    if isinstance(score, bool):
        raise TypeError("boolean is not a criterion score")
    if isinstance(score, (int, float, np.floating, np.integer)):
        if not math.isfinite(score):
            raise ValueError(f"criterion scores must be finite, got {score}")
        return
    # Interval scores validate their own bounds
    if not (hasattr(score, "lo") and hasattr(score, "hi")):
        raise TypeError(f"unsupported criterion score: {score!r}")


@dataclass(frozen=True)
class PerformanceVector:
    """An action's evaluation on m criteria, preference-increasing"""
    scores: Tuple[Any, ...]
    id: Optional[str] = None

    def __post_init__(self):
        scores = tuple(
            float(s) if isinstance(s, (int, np.integer, np.floating)) and not isinstance(s, bool) else s
            for s in self.scores
        )
        for score in scores:
            _check_score(score)
        object.__setattr__(self, "scores", scores)

    @property
    def dimension(self) -> int:
        return len(self.scores)

    @property
    def label(self) -> str:
        return self.id if self.id is not None else str(self.scores)

    def with_id(self, new_id: str) -> "PerformanceVector":
        return PerformanceVector(self.scores, new_id)

    def negated(self) -> "PerformanceVector":
        return PerformanceVector(tuple(-s for s in self.scores), self.id)


def check_dimensions(x: PerformanceVector, y: PerformanceVector):
    if x.dimension != y.dimension:
        raise DimensionMismatchError(x, y)


class RelationalModel(ABC):
    """A pair of crisp relations (D, S) over performance vectors"""

    name: str = "relational-model"
    s_transitive: bool = False

    @abstractmethod
    def s(self, x: PerformanceVector, y: PerformanceVector) -> bool:
        """x is at least as good as y"""

    @abstractmethod
    def d(self, x: PerformanceVector, y: PerformanceVector) -> bool:
        """x dominates y"""

    def p(self, x: PerformanceVector, y: PerformanceVector) -> bool:
        return derive_preference(self, x, y)

    def matrices(self, actions: Sequence[PerformanceVector]) -> Tuple[np.ndarray, np.ndarray]:
        """Boolean S and D matrices, entry [i, j] for the pair (actions[i], actions[j])"""
        n = len(actions)
        s_matrix = np.zeros((n, n), dtype=bool)
        d_matrix = np.zeros((n, n), dtype=bool)
        for i, x in enumerate(actions):
            for j, y in enumerate(actions):
                s_matrix[i, j] = self.s(x, y)
                d_matrix[i, j] = self.d(x, y)
        return s_matrix, d_matrix


class ExplicitRelationModel(RelationalModel):
    """Relational model given by explicit S and D pairs of action ids

    Actions without an id take part in no pair; reflexivity still holds for them.
    """

    name = "explicit"

    def __init__(self, s_pairs: Iterable[Tuple[str, str]], d_pairs: Iterable[Tuple[str, str]] = (),
                 reflexive: bool = True, s_transitive: bool = False):
        self.s_pairs: Set[Tuple[str, str]] = set(s_pairs)
        self.d_pairs: Set[Tuple[str, str]] = set(d_pairs)
        self.reflexive = reflexive
        self.s_transitive = s_transitive

    def s(self, x: PerformanceVector, y: PerformanceVector) -> bool:
        if self.reflexive and (x == y or (x.id is not None and x.id == y.id)):
            return True
        return (x.id, y.id) in self.s_pairs

    def d(self, x: PerformanceVector, y: PerformanceVector) -> bool:
        return (x.id, y.id) in self.d_pairs


class RelationKind(str, Enum):
    """Full relation between an ordered pair, in Table-2 display precedence"""
    D_FORWARD = "D-forward"
    D_BACKWARD = "D-backward"
    S_ONLY_FORWARD = "S-only-forward"
    S_ONLY_BACKWARD = "S-only-backward"
    S_BOTH = "S-both"
    P_FORWARD = "P-forward"
    P_BACKWARD = "P-backward"
    INCOMPARABLE = "incomparable"

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    def mirror(self) -> "RelationKind":
        return _MIRRORS[self]


_SYMBOLS = {
    RelationKind.D_FORWARD: "D, P",
    RelationKind.D_BACKWARD: "D⁻¹, P⁻¹",
    RelationKind.S_ONLY_FORWARD: "D, S",
    RelationKind.S_ONLY_BACKWARD: "D⁻¹, S",
    RelationKind.S_BOTH: "S",
    RelationKind.P_FORWARD: "P",
    RelationKind.P_BACKWARD: "P⁻¹",
    RelationKind.INCOMPARABLE: "Inc",
}

_MIRRORS = {
    RelationKind.D_FORWARD: RelationKind.D_BACKWARD,
    RelationKind.D_BACKWARD: RelationKind.D_FORWARD,
    RelationKind.S_ONLY_FORWARD: RelationKind.S_ONLY_BACKWARD,
    RelationKind.S_ONLY_BACKWARD: RelationKind.S_ONLY_FORWARD,
    RelationKind.S_BOTH: RelationKind.S_BOTH,
    RelationKind.P_FORWARD: RelationKind.P_BACKWARD,
    RelationKind.P_BACKWARD: RelationKind.P_FORWARD,
    RelationKind.INCOMPARABLE: RelationKind.INCOMPARABLE,
}


def derive_preference(model: RelationalModel, x: PerformanceVector, y: PerformanceVector) -> bool:
    """xPy iff xSy and not ySx"""
    check_dimensions(x, y)
    return model.s(x, y) and not model.s(y, x)


def classify_pair(model: RelationalModel, x: PerformanceVector, y: PerformanceVector) -> RelationKind:
    check_dimensions(x, y)
    s_xy, s_yx = model.s(x, y), model.s(y, x)
    d_xy, d_yx = model.d(x, y), model.d(y, x)

    # Mutual dominance reads as indifference
    if d_xy and not d_yx:
        return RelationKind.D_FORWARD if s_xy and not s_yx else RelationKind.S_ONLY_FORWARD
    if d_yx and not d_xy:
        return RelationKind.D_BACKWARD if s_yx and not s_xy else RelationKind.S_ONLY_BACKWARD
    if s_xy and s_yx:
        return RelationKind.S_BOTH
    if s_xy:
        return RelationKind.P_FORWARD
    if s_yx:
        return RelationKind.P_BACKWARD
    return RelationKind.INCOMPARABLE


def relation_matrices(model: RelationalModel, actions: Sequence[PerformanceVector]) -> Tuple[np.ndarray, np.ndarray]:
    for other in actions[1:]:
        check_dimensions(actions[0], other)
    return model.matrices(list(actions))


def action_labels(actions: Sequence[PerformanceVector]) -> List[str]:
    return [a.id if a.id is not None else f"a{i}" for i, a in enumerate(actions)]


def _triples(mask: np.ndarray, labels: List[str]) -> List[List[str]]:
    return [[labels[i], labels[j], labels[k]] for i, j, k in np.argwhere(mask)]


def check_condition1(model: RelationalModel, actions: Sequence[PerformanceVector]) -> ViolationReport:
    """Exhaustive check of Condition 1 (i-iii), D transitivity and S reflexivity"""
    actions = list(actions)
    report = ViolationReport(subject="condition 1")
    if not actions:
        return report

    labels = action_labels(actions)
    s_matrix, d_matrix = relation_matrices(model, actions)

    for i in np.flatnonzero(~np.diag(s_matrix)):
        report.add("1.reflexive", f"not {labels[i]} S {labels[i]}", [labels[i]])

    for i, j in np.argwhere(d_matrix & ~s_matrix):
        report.add("1.i", f"{labels[i]} D {labels[j]} but not {labels[i]} S {labels[j]}",
                   [labels[i], labels[j]])

    not_s_xz = ~s_matrix[:, None, :]
    clause_ii = s_matrix[:, :, None] & d_matrix[None, :, :] & not_s_xz
    for x, y, z in _triples(clause_ii, labels):
        report.add("1.ii", f"{x} S {y} and {y} D {z} but not {x} S {z}", [x, y, z])

    clause_iii = d_matrix[:, :, None] & s_matrix[None, :, :] & not_s_xz
    for x, y, z in _triples(clause_iii, labels):
        report.add("1.iii", f"{x} D {y} and {y} S {z} but not {x} S {z}", [x, y, z])

    transitivity = d_matrix[:, :, None] & d_matrix[None, :, :] & ~d_matrix[:, None, :]
    for x, y, z in _triples(transitivity, labels):
        report.add("1.transitive-D", f"{x} D {y} and {y} D {z} but not {x} D {z}", [x, y, z])

    return report


def check_proposition1(model: RelationalModel, actions: Sequence[PerformanceVector]) -> ViolationReport:
    """Exhaustive check of xPy and yDz => xPz, and xDy and yPz => xPz"""
    actions = list(actions)
    report = ViolationReport(subject="P-D composition")
    if not actions:
        return report

    labels = action_labels(actions)
    s_matrix, d_matrix = relation_matrices(model, actions)
    p_matrix = s_matrix & ~s_matrix.T
    not_p_xz = ~p_matrix[:, None, :]

    clause_i = p_matrix[:, :, None] & d_matrix[None, :, :] & not_p_xz
    for x, y, z in _triples(clause_i, labels):
        report.add("P1.i", f"{x} P {y} and {y} D {z} but not {x} P {z}", [x, y, z])

    clause_ii = d_matrix[:, :, None] & p_matrix[None, :, :] & not_p_xz
    for x, y, z in _triples(clause_ii, labels):
        report.add("P1.ii", f"{x} D {y} and {y} P {z} but not {x} P {z}", [x, y, z])

    return report
