#!/usr/bin/env python3
"""
Tests for boundary relations, the four assignment rules and transposition
"""

from pathlib import Path

import pytest

from assignment import (
    assign,
    assign_batch,
    assign_conjoint,
    assign_p_dual,
    assign_p_primal,
    assign_s_dual,
    assign_s_primal,
    p_boundary_relation,
    s_boundary_relation,
    transpose_problem,
)
from boundary_system import BoundaryIndexError
from model_files import load_model
from relational_core import PerformanceVector

MODELS = Path(__file__).parent / "models"

X1 = PerformanceVector((2, 1, 2, 1, 2), "x")
X2 = PerformanceVector((4, 4, 4, 4), "x")


def _load(name: str):
    return load_model(MODELS / name)


def test_s_relations_example1():
    instance = _load("example1.model")
    first = s_boundary_relation(instance.model, X1, instance.system, 1)
    second = s_boundary_relation(instance.model, X1, instance.system, 2)
    assert (first.x_S_B, first.B_S_x) == (True, False)
    assert (second.x_S_B, second.B_S_x) == (False, True)
    assert first.s_symbol() == "S"
    assert second.s_symbol() == "S⁻¹"


def test_p_relations_example1():
    instance = _load("example1.model")
    symbols = [p_boundary_relation(instance.model, X1, instance.system, k).p_symbol() for k in (1, 2)]
    assert symbols == ["P", "Inc_P"]


def test_sentinel_relations():
    instance = _load("example1.model")
    anti_ideal = s_boundary_relation(instance.model, X1, instance.system, 0)
    ideal = p_boundary_relation(instance.model, X1, instance.system, 3)
    assert anti_ideal.x_S_B and not anti_ideal.B_S_x
    assert ideal.B_P_x and not ideal.x_P_B
    with pytest.raises(BoundaryIndexError):
        s_boundary_relation(instance.model, X1, instance.system, 4)
    with pytest.raises(BoundaryIndexError):
        p_boundary_relation(instance.model, X1, instance.system, -1)


def test_rules_example1():
    instance = _load("example1.model")
    model, system = instance.model, instance.system
    assert assign_s_primal(model, X1, system).class_index == 2
    assert assign_s_dual(model, X1, system).class_index == 2
    assert assign_p_primal(model, X1, system).class_index == 3
    assert assign_p_dual(model, X1, system).class_index == 2
    assert assign(model, X1, system, "p-primal").class_name == "C3"


def test_rules_example2():
    instance = _load("example2.model")
    model, system = instance.model, instance.system
    assert assign_s_primal(model, X2, system).class_name == "Average"
    assert assign_s_dual(model, X2, system).class_name == "Average"

    zero = PerformanceVector((0, 0, 0, 0), "zero")
    assert assign_s_primal(model, zero, system).class_index == 1
    assert assign_p_dual(model, zero, system).class_index == 1


def test_extreme_actions():
    instance = _load("example1.model")
    top = PerformanceVector((3, 3, 3, 3, 3), "top")
    assert assign_s_dual(instance.model, top, instance.system).class_index == 3
    assert assign_p_primal(instance.model, top, instance.system).class_index == 3
    assert assign_s_primal(instance.model, top, instance.system).class_index == 3


def test_trace_follows_scan_order():
    instance = _load("example1.model")
    primal = assign_s_primal(instance.model, X1, instance.system)
    assert [relation.k for relation in primal.trace] == [2, 1]
    dual = assign_s_dual(instance.model, X1, instance.system)
    assert [relation.k for relation in dual.trace] == [1, 2]
    assert dual.action_id == "x"
    assert dual.rule == "s-dual"


def test_conjoint_intervals():
    instance = _load("example1.model")
    s_outcome = assign_conjoint(instance.model, X1, instance.system, "S")
    p_outcome = assign_conjoint(instance.model, X1, instance.system, "P")
    assert s_outcome.interval == [2]
    assert s_outcome.is_precise
    assert (p_outcome.primal_class, p_outcome.dual_class) == (3, 2)
    assert p_outcome.interval == [2, 3]
    assert not p_outcome.is_precise

    example2 = _load("example2.model")
    assert assign_conjoint(example2.model, X2, example2.system, "S").interval == [4]


def test_limiting_actions_land_in_declared_class():
    instance = _load("example1.model")
    for action, declared, _ in instance.system.declared_classes():
        for rule in ("s-primal", "s-dual", "p-primal", "p-dual"):
            assert assign(instance.model, action, instance.system, rule).class_index == declared


def test_unknown_rule_and_family():
    instance = _load("example1.model")
    with pytest.raises(ValueError):
        assign(instance.model, X1, instance.system, "s-median")
    with pytest.raises(ValueError):
        assign_conjoint(instance.model, X1, instance.system, "Q")


def test_batch_keeps_input_order():
    instance = _load("example1.model")
    actions = [X1, PerformanceVector((3, 3, 3, 3, 3), "top"), PerformanceVector((0, 0, 0, 0, 0), "bottom")]
    outcomes = assign_batch(instance.model, instance.system, actions, ["s-primal"])
    assert [o["s-primal"].action_id for o in outcomes] == ["x", "top", "bottom"]
    assert [o["s-primal"].class_index for o in outcomes] == [2, 3, 1]


def test_transposition():
    instance = _load("example1.model").with_actions([X1])
    flipped = transpose_problem(instance)
    assert flipped.system.class_names == ("C3", "C2", "C1")
    assert flipped.directions == ("min",) * 5
    assert [a.id for a in flipped.system.boundary(1).upper] == ["b_L2,1", "b_L2,2"]
    assert transpose_problem(flipped) == instance

    x = flipped.actions[0]
    assert x.scores == (-2, -1, -2, -1, -2)
    assert assign_s_primal(flipped.model, x, flipped.system).class_index == 2
    assert assign_p_primal(flipped.model, x, flipped.system).class_index == 2
    assert assign_p_dual(flipped.model, x, flipped.system).class_index == 1


def test_transposition_needs_electre():
    with pytest.raises(TypeError):
        transpose_problem(_load("interval_example.model"))


def test_interval_example_classes():
    instance = _load("interval_example.model")
    classes = {a.id: assign_s_primal(instance.model, a, instance.system).class_name for a in instance.actions}
    assert classes == {"a1": "Low", "a2": "Medium", "a3": "High"}


def run_all_tests():
    """Run every test in this module and print a summary"""
    tests = [
        test_s_relations_example1,
        test_p_relations_example1,
        test_sentinel_relations,
        test_rules_example1,
        test_rules_example2,
        test_extreme_actions,
        test_trace_follows_scan_order,
        test_conjoint_intervals,
        test_limiting_actions_land_in_declared_class,
        test_unknown_rule_and_family,
        test_batch_keeps_input_order,
        test_transposition,
        test_transposition_needs_electre,
        test_interval_example_classes,
    ]
    passed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
            passed += 1
        except Exception as e:
            print(f"❌ {test.__name__}: {e}")
    print(f"\n📊 {passed}/{len(tests)} tests passed")
    return passed == len(tests)


if __name__ == "__main__":
    run_all_tests()
