"""
Boundary System
Ordered classes separated by two-layer limiting boundaries, the validators
for Conditions 2, 3 and 4, and class merging / splitting.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from classification_state import ViolationReport
from relational_core import PerformanceVector, RelationalModel, check_condition1


class BoundaryIndexError(IndexError):
    """Boundary or class index outside the system"""


class SplitRejectedError(ValueError):
    """A split would produce a system failing the requested conditions"""

    def __init__(self, report: ViolationReport):
        clauses = ", ".join(report.failed_clauses())
        super().__init__(f"split rejected, failed clauses: {clauses}")
        self.report = report


@dataclass(frozen=True)
class Boundary:
    """Limiting boundary B_k: upper layer in C_k, lower layer in C_{k+1}"""
    upper: Tuple[PerformanceVector, ...] = ()
    lower: Tuple[PerformanceVector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))

    @property
    def actions(self) -> Tuple[PerformanceVector, ...]:
        return self.upper + self.lower

    @property
    def is_empty(self) -> bool:
        return not self.upper and not self.lower

    def swapped(self) -> "Boundary":
        return Boundary(upper=self.lower, lower=self.upper)

    def negated(self) -> "Boundary":
        return Boundary(upper=tuple(a.negated() for a in self.upper),
                        lower=tuple(a.negated() for a in self.lower))


@dataclass(frozen=True)
class BoundarySystem:
    """M ordered classes and the M-1 boundaries between them; B_0 and B_M are virtual"""
    class_names: Tuple[str, ...]
    boundaries: Tuple[Boundary, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "class_names", tuple(self.class_names))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if not self.class_names:
            raise ValueError("a boundary system needs at least one class")
        if len(self.boundaries) != len(self.class_names) - 1:
            raise ValueError(
                f"{len(self.class_names)} classes need {len(self.class_names) - 1} boundaries, "
                f"got {len(self.boundaries)}"
            )

    @property
    def M(self) -> int:
        return len(self.class_names)

    def boundary(self, k: int) -> Boundary:
        if not 1 <= k <= self.M - 1:
            raise BoundaryIndexError(f"boundary index {k} outside 1..{self.M - 1}")
        return self.boundaries[k - 1]

    def class_name(self, k: int) -> str:
        if not 1 <= k <= self.M:
            raise BoundaryIndexError(f"class index {k} outside 1..{self.M}")
        return self.class_names[k - 1]

    def all_actions(self) -> List[PerformanceVector]:
        return [a for b in self.boundaries for a in b.actions]

    def declared_classes(self) -> List[Tuple[PerformanceVector, int, str]]:
        """(action, declared class, layer) for every limiting action"""
        declared = []
        for k, b in enumerate(self.boundaries, start=1):
            declared.extend((a, k, "upper") for a in b.upper)
            declared.extend((a, k + 1, "lower") for a in b.lower)
        return declared

    def layer_labels(self) -> Dict[int, str]:
        """Display label per limiting action position in all_actions()"""
        labels = {}
        position = 0
        for k, b in enumerate(self.boundaries, start=1):
            for layer, members in (("U", b.upper), ("L", b.lower)):
                for i, a in enumerate(members, start=1):
                    labels[position] = a.id if a.id is not None else f"b_{layer}{k},{i}"
                    position += 1
        return labels


class _LayerRelations:
    """S, D and P matrices over every limiting action of a system"""

    def __init__(self, system: BoundarySystem, model: RelationalModel):
        self.system = system
        actions = system.all_actions()
        self.labels = system.layer_labels()
        self.s, self.d = model.matrices(actions) if actions else (np.zeros((0, 0), bool),) * 2
        self.p = self.s & ~self.s.T
        self.upper: Dict[int, List[int]] = {}
        self.lower: Dict[int, List[int]] = {}
        position = 0
        for k, b in enumerate(system.boundaries, start=1):
            self.upper[k] = list(range(position, position + len(b.upper)))
            position += len(b.upper)
            self.lower[k] = list(range(position, position + len(b.lower)))
            position += len(b.lower)

    def layer(self, k: int, which: str) -> List[int]:
        if which == "upper":
            return self.upper[k]
        if which == "lower":
            return self.lower[k]
        return self.upper[k] + self.lower[k]

    def name(self, i: int) -> str:
        return self.labels[i]


_LAYER_SYMBOL = {"upper": "B_U", "lower": "B_L", "full": "B_"}


def _no_relation(report: ViolationReport, rel: _LayerRelations, matrix: np.ndarray, relation: str,
                 clause: str, k: int, sources: List[int], h: int, targets: List[int]):
    for w in sources:
        for z in targets:
            if matrix[w, z]:
                report.add(clause, f"{rel.name(w)} {relation} {rel.name(z)} (boundaries {k}, {h})",
                           [rel.name(w), rel.name(z)], [k, h])


def _existence(report: ViolationReport, rel: _LayerRelations, clause: str,
               k: int, source: str, h: int, target: str, holds):
    """For every z in the source layer of B_k some y in the target layer of B_h satisfies holds(z, y)"""
    sources = rel.layer(k, source)
    targets = rel.layer(h, target)
    if not sources:
        report.add(clause, f"{_LAYER_SYMBOL[source]}{k} empty, clause vacuous",
                   boundaries=[k, h], warning=True)
        return
    for z in sources:
        if not any(holds(z, y) for y in targets):
            reason = "target layer empty" if not targets else "no witness"
            report.add(clause, f"{rel.name(z)} has no partner in {_LAYER_SYMBOL[target]}{h} ({reason})",
                       [rel.name(z)], [k, h])


def validate_condition2(system: BoundarySystem, model: RelationalModel) -> ViolationReport:
    """Layer disjointness and no preference inside a layer"""
    report = ViolationReport(subject="condition 2")
    rel = _LayerRelations(system, model)
    for k, b in enumerate(system.boundaries, start=1):
        if b.is_empty:
            report.add("2.empty", f"both layers of B_{k} are empty", boundaries=[k], warning=True)
        for a in b.upper:
            if a in b.lower:
                report.add("2.disjoint", f"{a.label} appears in both layers of B_{k}", [a.label], [k])
        for clause, members in (("2.iii", rel.lower[k]), ("2.iv", rel.upper[k])):
            for w in members:
                for z in members:
                    if w != z and rel.p[w, z]:
                        report.add(clause, f"{rel.name(w)} P {rel.name(z)} inside layer of B_{k}",
                                   [rel.name(w), rel.name(z)], [k])
    return report


def _separability(report: ViolationReport, rel: _LayerRelations, prefix: str):
    last = rel.system.M - 1
    for k in range(1, last + 1):
        _no_relation(report, rel, rel.s, "S", f"{prefix}.i", k, rel.upper[k], k, rel.lower[k])
        for h in range(k + 1, last + 1):
            _no_relation(report, rel, rel.s, "S", f"{prefix}.ii", k, rel.layer(k, "full"),
                         h, rel.layer(h, "full"))


def validate_condition3(system: BoundarySystem, model: RelationalModel) -> ViolationReport:
    report = ViolationReport(subject="condition 3")
    rel = _LayerRelations(system, model)
    s, d = rel.s, rel.d
    _separability(report, rel, "3")

    last = system.M - 1
    for k in range(1, last + 1):
        if k > 1:
            _existence(report, rel, "3.iii", k, "upper", k - 1, "lower", lambda z, y: s[z, y])
            _existence(report, rel, "3.vi", k, "upper", k - 1, "upper", lambda z, w: d[z, w])
            _existence(report, rel, "3.vii", k, "lower", k - 1, "lower", lambda z, y: d[z, y])
        if k < last:
            _existence(report, rel, "3.iv", k, "lower", k + 1, "upper", lambda z, y: s[y, z])
            _existence(report, rel, "3.v", k, "upper", k + 1, "upper", lambda z, w: d[w, z])
            _existence(report, rel, "3.viii", k, "lower", k + 1, "lower", lambda z, y: d[y, z])
    return report


def validate_condition4(system: BoundarySystem, model: RelationalModel) -> ViolationReport:
    report = ViolationReport(subject="condition 4")
    rel = _LayerRelations(system, model)
    s, d = rel.s, rel.d
    _separability(report, rel, "4")

    last = system.M - 1
    for k in range(1, last + 1):
        _existence(report, rel, "4.iii", k, "upper", k, "lower", lambda z, y: s[y, z])
        if k < last:
            _existence(report, rel, "4.iv", k, "full", k + 1, "full", lambda z, w: d[w, z])
        if k > 1:
            _existence(report, rel, "4.v", k, "full", k - 1, "full", lambda z, w: d[z, w])
    return report


_VALIDATORS = {
    2: validate_condition2,
    3: validate_condition3,
    4: validate_condition4,
}


def validate_all(system: BoundarySystem, model: RelationalModel,
                 conditions: Iterable[int] = (2, 3, 4),
                 extra_actions: Sequence[PerformanceVector] = ()) -> Dict[str, ViolationReport]:
    """Condition 1 on the limiting actions (plus extras) and the requested boundary conditions"""
    reports = {"1": check_condition1(model, system.all_actions() + list(extra_actions))}
    for condition in sorted(set(conditions)):
        if condition not in _VALIDATORS:
            raise ValueError(f"unknown condition {condition}; expected one of 2, 3, 4")
        reports[str(condition)] = _VALIDATORS[condition](system, model)
    return reports


def merge_classes(system: BoundarySystem, k: int) -> BoundarySystem:
    """Fuse C_k and C_{k+1} by removing boundary B_k"""
    system.boundary(k)
    names = list(system.class_names)
    fused = f"{names[k - 1]}+{names[k]}"
    names[k - 1:k + 1] = [fused]
    boundaries = system.boundaries[:k - 1] + system.boundaries[k:]
    return BoundarySystem(tuple(names), boundaries)


def _split_names(name: str) -> Tuple[str, str]:
    parts = name.split("+")
    if len(parts) == 2:
        return parts[0], parts[1]
    return f"{name}.1", f"{name}.2"


def split_class(system: BoundarySystem, k: int, new_boundary: Boundary, model: RelationalModel,
                condition: int = 3, names: Optional[Tuple[str, str]] = None) -> BoundarySystem:
    """Separate C_k in two with new_boundary; rejects systems failing Condition 2 or the given one"""
    system.class_name(k)
    if condition not in (3, 4):
        raise ValueError(f"split validates against Condition 3 or 4, got {condition}")
    lower_name, upper_name = names or _split_names(system.class_names[k - 1])
    class_names = system.class_names[:k - 1] + (lower_name, upper_name) + system.class_names[k:]
    boundaries = system.boundaries[:k - 1] + (new_boundary,) + system.boundaries[k - 1:]
    candidate = BoundarySystem(class_names, boundaries)

    report = ViolationReport(subject=f"split of class {k}")
    report.extend(validate_condition2(candidate, model))
    report.extend(_VALIDATORS[condition](candidate, model))
    if not report.is_valid:
        raise SplitRejectedError(report)
    return candidate


def strip_upper_layers(system: BoundarySystem) -> BoundarySystem:
    return BoundarySystem(system.class_names, tuple(Boundary(lower=b.lower) for b in system.boundaries))
