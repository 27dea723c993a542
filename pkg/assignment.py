"""
Assignment Rules
Action-to-boundary relations, the S-based and P-based primal/dual rules,
conjoint class intervals and the transposition of a classification problem.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from boundary_system import BoundaryIndexError, BoundarySystem
from classification_state import (
    FAMILY_RULES,
    RULES,
    AssignmentOutcome,
    BoundaryRelation,
    ConjointOutcome,
)
from electre_model import ElectreModel
from relational_core import PerformanceVector, RelationalModel


@dataclass(frozen=True)
class ClassificationInstance:
    """A relational model, its boundary system and the criteria metadata of the model file"""
    model: RelationalModel
    system: BoundarySystem
    criterion_names: Tuple[str, ...]
    directions: Tuple[str, ...]
    actions: Tuple[PerformanceVector, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "criterion_names", tuple(self.criterion_names))
        object.__setattr__(self, "directions", tuple(self.directions))
        object.__setattr__(self, "actions", tuple(self.actions))

    @property
    def kind(self) -> str:
        return self.model.name

    @property
    def m(self) -> int:
        return len(self.criterion_names)

    def with_actions(self, actions: Sequence[PerformanceVector]) -> "ClassificationInstance":
        return ClassificationInstance(self.model, self.system, self.criterion_names,
                                      self.directions, tuple(actions))


def _check_index(system: BoundarySystem, k: int):
    if not 0 <= k <= system.M:
        raise BoundaryIndexError(f"boundary index {k} outside 0..{system.M}")


def _prefers(model: RelationalModel, a: PerformanceVector, b: PerformanceVector) -> bool:
    return model.s(a, b) and not model.s(b, a)


def s_boundary_relation(model: RelationalModel, x: PerformanceVector,
                        system: BoundarySystem, k: int) -> BoundaryRelation:
    """x S B_k and B_k S x; B_0 and B_M are the anti-ideal and ideal sentinels"""
    _check_index(system, k)
    if k == 0:
        return BoundaryRelation(k=0, x_S_B=True)
    if k == system.M:
        return BoundaryRelation(k=k, B_S_x=True)

    b = system.boundary(k)
    x_s_b = any(model.s(x, w) for w in b.lower) and not any(_prefers(model, z, x) for z in b.actions)
    b_s_x = any(model.s(w, x) for w in b.upper) and not any(_prefers(model, x, z) for z in b.actions)
    return BoundaryRelation(k=k, x_S_B=x_s_b, B_S_x=b_s_x)


def p_boundary_relation(model: RelationalModel, x: PerformanceVector,
                        system: BoundarySystem, k: int) -> BoundaryRelation:
    """x P B_k and B_k P x, quantified over both layers of B_k"""
    _check_index(system, k)
    if k == 0:
        return BoundaryRelation(k=0, x_P_B=True)
    if k == system.M:
        return BoundaryRelation(k=k, B_P_x=True)

    members = system.boundary(k).actions
    x_beats = [_prefers(model, x, w) for w in members]
    beats_x = [_prefers(model, w, x) for w in members]
    return BoundaryRelation(
        k=k,
        x_P_B=any(x_beats) and not any(beats_x),
        B_P_x=any(beats_x) and not any(x_beats),
    )


def _outcome(rule: str, x: PerformanceVector, system: BoundarySystem, class_index: int,
             trace: List[BoundaryRelation]) -> AssignmentOutcome:
    return AssignmentOutcome(
        action_id=x.id,
        rule=rule,
        class_index=class_index,
        class_name=system.class_names[class_index - 1],
        trace=trace,
    )


def assign_s_primal(model: RelationalModel, x: PerformanceVector, system: BoundarySystem) -> AssignmentOutcome:
    trace = []
    for k in range(system.M - 1, -1, -1):
        relation = s_boundary_relation(model, x, system, k)
        trace.append(relation)
        if relation.x_S_B:
            return _outcome("s-primal", x, system, k + 1, trace)
    raise AssertionError("anti-ideal sentinel always stops the scan")


def assign_s_dual(model: RelationalModel, x: PerformanceVector, system: BoundarySystem) -> AssignmentOutcome:
    trace = []
    for k in range(1, system.M + 1):
        relation = s_boundary_relation(model, x, system, k)
        trace.append(relation)
        if relation.B_S_x:
            return _outcome("s-dual", x, system, k, trace)
    raise AssertionError("ideal sentinel always stops the scan")


def assign_p_primal(model: RelationalModel, x: PerformanceVector, system: BoundarySystem) -> AssignmentOutcome:
    trace = []
    for k in range(1, system.M + 1):
        relation = p_boundary_relation(model, x, system, k)
        trace.append(relation)
        if relation.B_P_x:
            return _outcome("p-primal", x, system, k, trace)
    raise AssertionError("ideal sentinel always stops the scan")


def assign_p_dual(model: RelationalModel, x: PerformanceVector, system: BoundarySystem) -> AssignmentOutcome:
    trace = []
    for k in range(system.M - 1, -1, -1):
        relation = p_boundary_relation(model, x, system, k)
        trace.append(relation)
        if relation.x_P_B:
            return _outcome("p-dual", x, system, k + 1, trace)
    raise AssertionError("anti-ideal sentinel always stops the scan")


RULE_FUNCTIONS: Dict[str, Callable[[RelationalModel, PerformanceVector, BoundarySystem], AssignmentOutcome]] = {
    "s-primal": assign_s_primal,
    "s-dual": assign_s_dual,
    "p-primal": assign_p_primal,
    "p-dual": assign_p_dual,
}


def assign(model: RelationalModel, x: PerformanceVector, system: BoundarySystem, rule: str) -> AssignmentOutcome:
    if rule not in RULE_FUNCTIONS:
        raise ValueError(f"unknown rule '{rule}'; expected one of {', '.join(RULES)}")
    return RULE_FUNCTIONS[rule](model, x, system)


def assign_conjoint(model: RelationalModel, x: PerformanceVector, system: BoundarySystem,
                    family: str) -> ConjointOutcome:
    if family not in FAMILY_RULES:
        raise ValueError(f"unknown family '{family}'; expected S or P")
    primal_rule, dual_rule = FAMILY_RULES[family]
    return ConjointOutcome(
        action_id=x.id,
        family=family,
        primal_class=assign(model, x, system, primal_rule).class_index,
        dual_class=assign(model, x, system, dual_rule).class_index,
    )


def assign_batch(model: RelationalModel, system: BoundarySystem, actions: Sequence[PerformanceVector],
                 rules: Optional[Sequence[str]] = None) -> List[Dict[str, AssignmentOutcome]]:
    """Outcomes per action, in input order"""
    rules = list(rules or RULES)
    return [{rule: assign(model, x, system, rule) for rule in rules} for x in actions]


def transpose_problem(instance: ClassificationInstance) -> ClassificationInstance:
    """Invert every criterion direction and the class order"""
    if not isinstance(instance.model, ElectreModel):
        raise TypeError(f"transposition needs an ELECTRE instance, got '{instance.kind}'")
    system = instance.system
    flipped = BoundarySystem(
        class_names=tuple(reversed(system.class_names)),
        boundaries=tuple(b.negated().swapped() for b in reversed(system.boundaries)),
    )
    return ClassificationInstance(
        model=instance.model,
        system=flipped,
        criterion_names=instance.criterion_names,
        directions=tuple("min" if d == "max" else "max" for d in instance.directions),
        actions=tuple(a.negated() for a in instance.actions),
    )
