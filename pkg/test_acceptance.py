#!/usr/bin/env python3
"""
End-to-end acceptance checks on the two worked examples and seeded random instances
"""

from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

from assignment import assign, assign_p_primal, assign_s_primal
from boundary_system import strip_upper_layers, validate_all
from electre_model import pareto_dominates
from instance_generator import random_actions, random_instance
from interval_model import IntervalNumber, interval_dominates, possibility
from model_files import load_model
from property_harness import build_audit_set, check_conformity, run_properties
from relational_core import PerformanceVector, check_condition1, classify_pair
from trinb_reference import trinb_pseudo_conjunctive, trinb_pseudo_disjunctive

MODELS = Path(__file__).parent / "models"
RANDOM_SEEDS = range(20)

LIMITING_ORDER = ["b_L2,1", "b_L2,2", "b_U2,1", "b_L1,1", "b_U1,1"]
LIMITING_RELATIONS = {
    "b_L2,1": ["S", "Inc", "P", "D, P", "D, P"],
    "b_L2,2": ["Inc", "S", "P", "D, P", "D, P"],
    "b_U2,1": ["P⁻¹", "P⁻¹", "S", "P", "D, P"],
    "b_L1,1": ["D⁻¹, P⁻¹", "D⁻¹, P⁻¹", "P⁻¹", "S", "P"],
    "b_U1,1": ["D⁻¹, P⁻¹", "D⁻¹, P⁻¹", "D⁻¹, P⁻¹", "P⁻¹", "S"],
}

SUITE = ["homogeneity", "monotonicity", "scan-monotonicity", "stability", "transposition"]
SUITE_RESULTS = ["homogeneity", "monotonicity", "scan-monotonicity:S", "scan-monotonicity:P",
                 "stability:S", "stability:P", "transposition"]


@lru_cache(maxsize=None)
def _example(name: str):
    return load_model(MODELS / name)


@lru_cache(maxsize=None)
def _random(seed: int):
    return random_instance(seed=seed)


def _instances():
    return [_example("example1.model"), _example("example2.model")] + [_random(s) for s in RANDOM_SEEDS]


def test_boundary_credibility_reproduced():
    model = _example("example2.model").model
    system = _example("example2.model").system
    expected = [0.809, 0.761, 0.677, 0.804, 0.804, 0.809, 0.544]
    observed = [model.sigma(system.boundary(k).upper[0], system.boundary(k).lower[0]) for k in range(1, 8)]
    assert observed == pytest.approx(expected, abs=1e-3)


def test_scan_credibility_reproduced():
    instance = _example("example2.model")
    x = PerformanceVector((4, 4, 4, 4), "x")
    b = {a.id: a for a in instance.system.all_actions()}
    assert instance.model.sigma(x, b["b_L4,1"]) == pytest.approx(0.76, abs=1e-3)
    assert instance.model.sigma(b["b_U4,1"], x) == pytest.approx(0.863, abs=1e-3)
    assert instance.model.sigma(b["b_U3,1"], x) == pytest.approx(0.033, abs=1e-3)


def test_relation_matrix_example1():
    instance = _example("example1.model")
    b = {a.id: a for a in instance.system.all_actions()}
    for row, symbols in LIMITING_RELATIONS.items():
        for column, symbol in zip(LIMITING_ORDER, symbols):
            assert classify_pair(instance.model, b[row], b[column]).symbol == symbol, (row, column)


def test_worked_assignments():
    example1 = _example("example1.model")
    x = PerformanceVector((2, 1, 2, 1, 2), "x")
    observed = {rule: assign(example1.model, x, example1.system, rule).class_name
                for rule in ("s-primal", "s-dual", "p-primal", "p-dual")}
    assert observed == {"s-primal": "C2", "s-dual": "C2", "p-primal": "C3", "p-dual": "C2"}

    example2 = _example("example2.model")
    y = PerformanceVector((4, 4, 4, 4), "x")
    assert assign(example2.model, y, example2.system, "s-primal").class_index == 4
    assert assign(example2.model, y, example2.system, "s-dual").class_index == 4


def test_validation_verdicts():
    example1 = _example("example1.model")
    assert all(report.is_valid for report in validate_all(example1.system, example1.model).values())

    example2 = _example("example2.model")
    reports = validate_all(example2.system, example2.model)
    assert reports["2"].is_valid and reports["3"].is_valid
    assert any(v.condition == "4.iii" and v.boundaries == [1, 1] for v in reports["4"].violations)


def test_conformity_of_limiting_actions():
    example2 = _example("example2.model")
    declared = example2.system.declared_classes()
    assert len(declared) == 14
    for action, expected, _ in declared:
        for rule in ("s-primal", "s-dual"):
            assert assign(example2.model, action, example2.system, rule).class_index == expected

    example1 = _example("example1.model")
    for family in ("S", "P"):
        result = check_conformity(example1.model, example1.system, family).results[0]
        assert result.status == "pass"
        assert result.checked == 5


def test_random_instances_are_valid():
    for seed in RANDOM_SEEDS:
        instance = _random(seed)
        assert 2 <= instance.system.M <= 5
        assert 3 <= instance.m <= 5
        reports = validate_all(instance.system, instance.model, (2, 3))
        assert all(report.is_valid for report in reports.values()), seed


def test_property_suite():
    for number, instance in enumerate(_instances()):
        actions = build_audit_set(instance.system, instance.actions, samples=30, seed=number)
        report = run_properties(instance.model, instance.system, actions, SUITE, seed=number)
        statuses = report.statuses()
        for name in SUITE_RESULTS:
            assert statuses[name] == "pass", (number, name, report.by_name()[name].witnesses[:3])


def test_reduction_oracle():
    for number, instance in enumerate(_instances()):
        model = instance.model
        stripped = strip_upper_layers(instance.system)
        profiles = [b.lower for b in stripped.boundaries]
        for x in random_actions(instance.system, 500, seed=1000 + number):
            assert assign_s_primal(model, x, stripped).class_index == \
                trinb_pseudo_conjunctive(model.s, x, profiles), (number, x)
            assert assign_p_primal(model, x, stripped).class_index == \
                trinb_pseudo_disjunctive(model.s, x, profiles), (number, x)


def test_condition1_exhaustive():
    for number, instance in enumerate(_instances()):
        actions = instance.system.all_actions() + random_actions(instance.system, 50, seed=number)
        assert check_condition1(instance.model, actions).violations == [], number

    interval = _example("interval_example.model")
    rng = np.random.default_rng(50)
    lows = rng.uniform(0, 10, size=(50, 3))
    widths = rng.uniform(0, 3, size=(50, 3))
    actions = [
        PerformanceVector(tuple(IntervalNumber(lo, lo + w) for lo, w in zip(row_lo, row_w)), f"i{i}")
        for i, (row_lo, row_w) in enumerate(zip(lows, widths))
    ]
    assert check_condition1(interval.model, actions).violations == []


def test_interval_unit_facts():
    rng = np.random.default_rng(10)
    lows = rng.uniform(-10, 10, size=(1000, 2))
    widths = rng.uniform(0.1, 5, size=(1000, 2))
    for (b_lo, c_lo), (b_w, c_w) in zip(lows, widths):
        b, c = IntervalNumber(b_lo, b_lo + b_w), IntervalNumber(c_lo, c_lo + c_w)
        assert abs(possibility(b, c) + possibility(c, b) - 1.0) <= 1e-12

    xs = rng.integers(0, 4, size=(1000, 4)).astype(float)
    ys = rng.integers(0, 4, size=(1000, 4)).astype(float)
    for x_row, y_row in zip(xs, ys):
        x = PerformanceVector(tuple(IntervalNumber.of(s) for s in x_row))
        y = PerformanceVector(tuple(IntervalNumber.of(s) for s in y_row))
        expected = pareto_dominates(PerformanceVector(tuple(x_row)), PerformanceVector(tuple(y_row)))
        assert interval_dominates(x, y, 0.75) == expected


def run_all_tests():
    """Run every acceptance check and print a summary"""
    tests = [
        test_boundary_credibility_reproduced,
        test_scan_credibility_reproduced,
        test_relation_matrix_example1,
        test_worked_assignments,
        test_validation_verdicts,
        test_conformity_of_limiting_actions,
        test_random_instances_are_valid,
        test_property_suite,
        test_reduction_oracle,
        test_condition1_exhaustive,
        test_interval_unit_facts,
    ]
    passed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
            passed += 1
        except Exception as e:
            print(f"❌ {test.__name__}: {e}")
    print(f"\n📊 {passed}/{len(tests)} acceptance checks passed")
    return passed == len(tests)


if __name__ == "__main__":
    run_all_tests()
