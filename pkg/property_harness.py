"""
Property Harness
Executable structural properties of the assignment rules, evaluated on a
model, a boundary system and a finite audit set of actions.
"""

import math
import os
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

from assignment import (
    ClassificationInstance,
    assign_batch,
    p_boundary_relation,
    s_boundary_relation,
    transpose_problem,
)
from boundary_system import (
    BoundarySystem,
    SplitRejectedError,
    merge_classes,
    split_class,
    strip_upper_layers,
    validate_all,
)
from classification_state import FAMILY_RULES, RULES, PropertyReport, PropertyResult, ViolationReport
from electre_model import ElectreModel
from interval_model import IntervalNumber
from relational_core import PerformanceVector, RelationalModel, action_labels, classify_pair
from trinb_reference import (
    trib_optimistic,
    trib_pessimistic,
    trinb_pseudo_conjunctive,
    trinb_pseudo_disjunctive,
)

Validation = Dict[str, ViolationReport]

PROPERTY_NAMES = [
    "homogeneity",
    "monotonicity",
    "conformity",
    "stability",
    "scan-monotonicity",
    "transposition",
    "trinb-reduction",
    "transitive-outranking",
    "independence",
]

# Clauses each family's scan monotonicity (and hence stability) rests on
SCAN_CLAUSES = {
    "S": ("3", ["3.v", "3.vi", "3.vii", "3.viii"]),
    "P": ("4", ["4.iv", "4.v"]),
}

CONFORMITY_CONDITIONS = {
    "S": {"2": None, "3": ["3.i", "3.ii", "3.iii", "3.iv"]},
    "P": {"2": None, "4": None},
}


def _result(name: str, witnesses: List[Dict], checked: int) -> PropertyResult:
    return PropertyResult(
        name=name,
        status="fail" if witnesses else "pass",
        checked=checked,
        witnesses=witnesses,
    )


def _skipped(name: str, reason: str) -> PropertyResult:
    return PropertyResult(name=name, status="skipped", reason=reason)


def _validation(system: BoundarySystem, model: RelationalModel, validation: Optional[Validation]) -> Validation:
    return validation if validation is not None else validate_all(system, model)


def unmet_clauses(validation: Validation, requirements: Dict[str, Optional[List[str]]]) -> List[str]:
    """Failed clause ids among the required ones (None requires the whole condition)"""
    unmet = []
    for condition, clauses in requirements.items():
        report = validation.get(condition)
        if report is None:
            unmet.append(f"{condition}.unchecked")
            continue
        for clause in report.failed_clauses():
            if clauses is None or clause in clauses:
                unmet.append(clause)
    return unmet


def blocked(name: str, model: RelationalModel, validation: Validation) -> Optional[str]:
    """Reason a whole property cannot run, or None"""
    if name == "transposition" and not isinstance(model, ElectreModel):
        return f"transposition needs an ELECTRE model, got '{model.name}'"
    if name == "transitive-outranking" and not model.s_transitive:
        return f"'{model.name}' does not declare S transitive"
    if name == "monotonicity":
        unmet = unmet_clauses(validation, {"1": None})
        if unmet:
            return f"unmet: {', '.join(unmet)}"
    return None


def _classes(model: RelationalModel, system: BoundarySystem,
             actions: Sequence[PerformanceVector], rules: Sequence[str] = RULES) -> List[Dict[str, int]]:
    return [
        {rule: outcome.class_index for rule, outcome in outcomes.items()}
        for outcomes in assign_batch(model, system, actions, rules)
    ]


def check_homogeneity(model: RelationalModel, system: BoundarySystem,
                      actions: Sequence[PerformanceVector], **_) -> PropertyReport:
    """Actions relating identically to every limiting action share their class under every rule"""
    actions = list(actions)
    labels = action_labels(actions)
    limiting = system.all_actions()
    classes = _classes(model, system, actions)

    groups: Dict[tuple, List[int]] = {}
    for i, x in enumerate(actions):
        profile = tuple(classify_pair(model, x, b) for b in limiting)
        groups.setdefault(profile, []).append(i)

    witnesses, checked = [], 0
    for members in groups.values():
        first = members[0]
        for other in members[1:]:
            checked += 1
            for rule in RULES:
                if classes[first][rule] != classes[other][rule]:
                    witnesses.append({
                        "actions": [labels[first], labels[other]],
                        "rule": rule,
                        "classes": [classes[first][rule], classes[other][rule]],
                    })
    return PropertyReport(results=[_result("homogeneity", witnesses, checked)])


def check_monotonicity(model: RelationalModel, system: BoundarySystem,
                       actions: Sequence[PerformanceVector],
                       validation: Optional[Validation] = None, **_) -> PropertyReport:
    """yDx implies class(y) >= class(x) under each rule"""
    reason = blocked("monotonicity", model, _validation(system, model, validation))
    if reason:
        return PropertyReport(results=[_skipped("monotonicity", reason)])

    actions = list(actions)
    labels = action_labels(actions)
    classes = _classes(model, system, actions)
    _, d_matrix = model.matrices(actions)

    witnesses, checked = [], 0
    for y, x in np.argwhere(d_matrix):
        if y == x:
            continue
        checked += 1
        for rule in RULES:
            if classes[y][rule] < classes[x][rule]:
                witnesses.append({
                    "dominating": labels[y],
                    "dominated": labels[x],
                    "rule": rule,
                    "classes": [classes[y][rule], classes[x][rule]],
                })
    return PropertyReport(results=[_result("monotonicity", witnesses, checked)])


def check_conformity(model: RelationalModel, system: BoundarySystem, family: str,
                     validation: Optional[Validation] = None) -> PropertyReport:
    """Every limiting action lands in its declared class under both rules of the family"""
    name = f"conformity:{family}"
    validation = _validation(system, model, validation)
    unmet = unmet_clauses(validation, CONFORMITY_CONDITIONS[family])
    if unmet:
        return PropertyReport(results=[_skipped(name, f"unmet: {', '.join(unmet)}")])
    empty = [k for k, b in enumerate(system.boundaries, start=1) if not b.upper or not b.lower]
    if empty:
        return PropertyReport(results=[_skipped(name, f"empty layer at boundaries {empty}")])

    declared = system.declared_classes()
    labels = system.layer_labels()
    witnesses = []
    for position, (action, expected, layer) in enumerate(declared):
        for rule in FAMILY_RULES[family]:
            assigned = _classes(model, system, [action], [rule])[0][rule]
            if assigned != expected:
                witnesses.append({
                    "action": labels[position],
                    "layer": layer,
                    "rule": rule,
                    "declared": expected,
                    "assigned": assigned,
                })
    return PropertyReport(results=[_result(name, witnesses, len(declared))])


def _merged_class(c: int, k: int) -> int:
    if c < k:
        return c
    if c <= k + 1:
        return k
    return c - 1


def check_stability(model: RelationalModel, system: BoundarySystem, actions: Sequence[PerformanceVector],
                    k: Optional[int] = None, validation: Optional[Validation] = None, **_) -> PropertyReport:
    """Assignments survive merging C_k with C_{k+1} and re-splitting with the removed boundary"""
    if k is not None:
        system.boundary(k)
    merge_indices = [k] if k is not None else list(range(1, system.M))
    validation = _validation(system, model, validation)
    actions = list(actions)
    labels = action_labels(actions)

    results = []
    for family, rules in FAMILY_RULES.items():
        name = f"stability:{family}"
        condition, clauses = SCAN_CLAUSES[family]
        unmet = unmet_clauses(validation, {condition: clauses})
        if unmet:
            results.append(_skipped(name, f"unmet: {', '.join(unmet)}"))
            continue

        split_condition = 3 if family == "S" else 4
        original = _classes(model, system, actions, rules)
        witnesses, checked, unsplit = [], 0, []
        for kk in merge_indices:
            merged = merge_classes(system, kk)
            after_merge = _classes(model, merged, actions, rules)
            try:
                resplit = split_class(merged, kk, system.boundary(kk), model, condition=split_condition,
                                      names=(system.class_names[kk - 1], system.class_names[kk]))
                after_split = _classes(model, resplit, actions, rules)
            except SplitRejectedError:
                unsplit.append(kk)
                after_split = None

            for i in range(len(actions)):
                for rule in rules:
                    checked += 1
                    expected = _merged_class(original[i][rule], kk)
                    if after_merge[i][rule] != expected:
                        witnesses.append({"action": labels[i], "rule": rule, "merge": kk, "step": "merge",
                                          "classes": [original[i][rule], after_merge[i][rule]]})
                    if after_split is not None and after_split[i][rule] != original[i][rule]:
                        witnesses.append({"action": labels[i], "rule": rule, "merge": kk, "step": "split",
                                          "classes": [original[i][rule], after_split[i][rule]]})
        result = _result(name, witnesses, checked)
        if unsplit:
            result.reason = f"split direction not exercised at k={unsplit}: system fails condition {split_condition}"
        results.append(result)
    return PropertyReport(results=results)


def _monotone(flags: List[bool], increasing: bool) -> bool:
    pairs = zip(flags, flags[1:])
    if increasing:
        return all(not a or b for a, b in pairs)
    return all(a or not b for a, b in pairs)


def check_boundary_scan_monotonicity(model: RelationalModel, system: BoundarySystem,
                                     actions: Sequence[PerformanceVector],
                                     validation: Optional[Validation] = None, **_) -> PropertyReport:
    """x-over-B_k flags are down-closed and B_k-over-x flags up-closed in k"""
    validation = _validation(system, model, validation)
    actions = list(actions)
    labels = action_labels(actions)

    results = []
    for family, relation in (("S", s_boundary_relation), ("P", p_boundary_relation)):
        name = f"scan-monotonicity:{family}"
        condition, clauses = SCAN_CLAUSES[family]
        unmet = unmet_clauses(validation, {condition: clauses})
        if unmet:
            results.append(_skipped(name, f"unmet: {', '.join(unmet)}"))
            continue

        witnesses = []
        for i, x in enumerate(actions):
            flags = [relation(model, x, system, k) for k in range(system.M + 1)]
            if family == "S":
                x_over = [f.x_S_B for f in flags]
                over_x = [f.B_S_x for f in flags]
            else:
                x_over = [f.x_P_B for f in flags]
                over_x = [f.B_P_x for f in flags]
            if not _monotone(x_over, increasing=False):
                witnesses.append({"action": labels[i], "flag": f"x_{family}_B", "profile": x_over})
            if not _monotone(over_x, increasing=True):
                witnesses.append({"action": labels[i], "flag": f"B_{family}_x", "profile": over_x})
        results.append(_result(name, witnesses, len(actions)))
    return PropertyReport(results=results)


def check_transposition(model: RelationalModel, system: BoundarySystem,
                        actions: Sequence[PerformanceVector], **_) -> PropertyReport:
    """Primal rules on the transposed problem mirror the dual rules on the original"""
    reason = blocked("transposition", model, {})
    if reason:
        return PropertyReport(results=[_skipped("transposition", reason)])

    actions = list(actions)
    labels = action_labels(actions)
    m = model.params.m
    instance = ClassificationInstance(model, system, tuple(f"g{j + 1}" for j in range(m)),
                                      ("max",) * m, tuple(actions))
    flipped = transpose_problem(instance)
    original = _classes(model, system, actions)
    transposed = _classes(model, flipped.system, flipped.actions)

    mirror = {"s-primal": "s-dual", "s-dual": "s-primal", "p-primal": "p-dual", "p-dual": "p-primal"}
    M = system.M
    witnesses = []
    for i in range(len(actions)):
        for rule, counterpart in mirror.items():
            if transposed[i][rule] != M + 1 - original[i][counterpart]:
                witnesses.append({
                    "action": labels[i],
                    "rule": rule,
                    "transposed": transposed[i][rule],
                    "original": {counterpart: original[i][counterpart]},
                })
    return PropertyReport(results=[_result("transposition", witnesses, len(actions))])


def check_trinb_reduction(model: RelationalModel, system: BoundarySystem,
                          actions: Sequence[PerformanceVector], **_) -> PropertyReport:
    """With upper layers stripped, the primal rules agree with the TRI-nB (and TRI-B) references"""
    actions = list(actions)
    labels = action_labels(actions)
    stripped = strip_upper_layers(system)
    profiles = [b.lower for b in stripped.boundaries]
    single = all(len(layer) == 1 for layer in profiles)
    classes = _classes(model, stripped, actions, ["s-primal", "p-primal"])

    witnesses = []
    for i, x in enumerate(actions):
        references = {
            "s-primal": trinb_pseudo_conjunctive(model.s, x, profiles),
            "p-primal": trinb_pseudo_disjunctive(model.s, x, profiles),
        }
        if single:
            references["s-primal/tri-b"] = trib_pessimistic(model.s, x, [layer[0] for layer in profiles])
            references["p-primal/tri-b"] = trib_optimistic(model.s, x, [layer[0] for layer in profiles])
        for key, expected in references.items():
            rule = key.split("/")[0]
            if classes[i][rule] != expected:
                witnesses.append({"action": labels[i], "rule": key,
                                  "engine": classes[i][rule], "reference": expected})
    return PropertyReport(results=[_result("trinb-reduction", witnesses, len(actions))])


def check_transitive_outranking(model: RelationalModel, system: BoundarySystem,
                               actions: Sequence[PerformanceVector], **_) -> PropertyReport:
    """With transitive S, ySx implies class(y) >= class(x)"""
    reason = blocked("transitive-outranking", model, {})
    if reason:
        return PropertyReport(results=[_skipped("transitive-outranking", reason)])

    actions = list(actions)
    labels = action_labels(actions)
    classes = _classes(model, system, actions)
    s_matrix, _ = model.matrices(actions)

    witnesses, checked = [], 0
    for y, x in np.argwhere(s_matrix):
        if y == x:
            continue
        checked += 1
        for rule in RULES:
            if classes[y][rule] < classes[x][rule]:
                witnesses.append({"outranking": labels[y], "outranked": labels[x], "rule": rule,
                                  "classes": [classes[y][rule], classes[x][rule]]})
    return PropertyReport(results=[_result("transitive-outranking", witnesses, checked)])


def check_independence(model: RelationalModel, system: BoundarySystem, actions: Sequence[PerformanceVector],
                       seed: Optional[int] = None, **_) -> PropertyReport:
    """Batch assignment does not depend on the other actions or their order"""
    actions = list(actions)
    labels = action_labels(actions)
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(actions))

    in_order = _classes(model, system, actions)
    shuffled = _classes(model, system, [actions[i] for i in order])
    witnesses = []
    for position, i in enumerate(order):
        if shuffled[position] != in_order[i]:
            witnesses.append({"action": labels[i], "in_order": in_order[i], "permuted": shuffled[position]})
    return PropertyReport(results=[_result("independence", witnesses, len(actions))])


def _conformity_both(model: RelationalModel, system: BoundarySystem, actions: Sequence[PerformanceVector],
                     validation: Optional[Validation] = None, **_) -> PropertyReport:
    validation = _validation(system, model, validation)
    return PropertyReport.merge([check_conformity(model, system, family, validation) for family in FAMILY_RULES])


PROPERTY_CHECKS: Dict[str, Callable[..., PropertyReport]] = {
    "homogeneity": check_homogeneity,
    "monotonicity": check_monotonicity,
    "conformity": _conformity_both,
    "stability": check_stability,
    "scan-monotonicity": check_boundary_scan_monotonicity,
    "transposition": check_transposition,
    "trinb-reduction": check_trinb_reduction,
    "transitive-outranking": check_transitive_outranking,
    "independence": check_independence,
}


def run_property(name: str, model: RelationalModel, system: BoundarySystem,
                 actions: Sequence[PerformanceVector], validation: Optional[Validation] = None,
                 seed: Optional[int] = None) -> PropertyReport:
    if name not in PROPERTY_CHECKS:
        raise ValueError(f"unknown property '{name}'; expected one of {', '.join(PROPERTY_NAMES)}")
    return PROPERTY_CHECKS[name](model, system, actions, validation=validation, seed=seed)


def run_properties(model: RelationalModel, system: BoundarySystem, actions: Sequence[PerformanceVector],
                   names: Optional[Iterable[str]] = None, seed: Optional[int] = None) -> PropertyReport:
    """Run the named properties (all by default) and merge their verdicts by name"""
    validation = validate_all(system, model)
    names = list(names or PROPERTY_NAMES)
    reports = [run_property(name, model, system, actions, validation, seed) for name in names]
    return PropertyReport.merge(reports, seed=seed)


def build_audit_set(system: BoundarySystem, actions: Sequence[PerformanceVector] = (),
                    samples: Optional[int] = None, seed: Optional[int] = None) -> List[PerformanceVector]:
    """Limiting actions, the supplied actions and seeded grid points around the boundaries"""
    if samples is None:
        samples = int(os.getenv("ORDINAL_GRID_SAMPLES", "256"))
    limiting = system.all_actions()
    audit = [a.with_id(label) for a, label in zip(limiting, system.layer_labels().values())] + list(actions)
    reference = limiting or list(actions)
    if samples <= 0 or not reference:
        return audit

    rng = np.random.default_rng(seed)
    m = reference[0].dimension
    interval = any(isinstance(s, IntervalNumber) for a in reference for s in a.scores)
    if interval:
        top = max(s.hi for a in reference for s in a.scores) + 1
        for i in range(samples):
            lows = rng.integers(0, int(math.ceil(top)) * 2 + 1, size=m) * 0.5
            widths = rng.integers(0, 3, size=m) * 0.5
            scores = tuple(IntervalNumber(lo, lo + w) for lo, w in zip(lows, widths))
            audit.append(PerformanceVector(scores, f"g{i + 1}"))
        return audit

    scores = np.asarray([a.scores for a in reference], dtype=float)
    low = np.floor(scores.min(axis=0)) - 1
    high = np.ceil(scores.max(axis=0)) + 1
    steps = ((high - low) * 2).astype(int)
    for i in range(samples):
        point = low + rng.integers(0, steps + 1) * 0.5
        audit.append(PerformanceVector(tuple(point), f"g{i + 1}"))
    return audit
