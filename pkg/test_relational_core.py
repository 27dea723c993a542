#!/usr/bin/env python3
"""
Tests for the relational core: preference, pair classification, Condition 1
"""

from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from model_files import load_model
from relational_core import (
    DimensionMismatchError,
    ExplicitRelationModel,
    PerformanceVector,
    RelationKind,
    check_condition1,
    check_proposition1,
    classify_pair,
    derive_preference,
)

MODELS = Path(__file__).parent / "models"


def _example1():
    instance = load_model(MODELS / "example1.model")
    actions = {a.id: a for a in instance.system.all_actions()}
    return instance.model, actions


def test_derive_preference_example1():
    model, b = _example1()
    assert derive_preference(model, b["b_L2,1"], b["b_U2,1"])
    assert not derive_preference(model, b["b_U2,1"], b["b_L2,1"])
    assert not derive_preference(model, b["b_L2,1"], b["b_L2,2"])
    assert not derive_preference(model, b["b_L2,1"], b["b_L2,1"])


def test_derive_preference_dimension_mismatch():
    model, _ = _example1()
    with pytest.raises(DimensionMismatchError):
        derive_preference(model, PerformanceVector((1, 2, 3)), PerformanceVector((1, 2)))


def test_classify_pair_example1():
    model, b = _example1()
    x = PerformanceVector((2, 1, 2, 1, 2), "x")
    assert classify_pair(model, b["b_L2,1"], b["b_L1,1"]) == RelationKind.D_FORWARD
    assert classify_pair(model, b["b_L1,1"], b["b_L2,1"]) == RelationKind.D_BACKWARD
    assert classify_pair(model, x, b["b_U2,1"]) == RelationKind.S_BOTH
    assert classify_pair(model, b["b_L2,1"], b["b_L2,2"]) == RelationKind.INCOMPARABLE
    assert classify_pair(model, x, x) == RelationKind.S_BOTH
    assert RelationKind.D_FORWARD.symbol == "D, P"
    assert RelationKind.P_BACKWARD.symbol == "P⁻¹"


def test_classify_pair_mirrors():
    model, b = _example1()
    actions = list(b.values()) + [PerformanceVector((2, 1, 2, 1, 2), "x")]
    for x in actions:
        for y in actions:
            assert classify_pair(model, y, x) == classify_pair(model, x, y).mirror()


def test_condition1_example1_clean():
    model, b = _example1()
    actions = list(b.values()) + [PerformanceVector((2, 1, 2, 1, 2), "x")]
    report = check_condition1(model, actions)
    assert report.is_valid
    assert report.violations == []
    assert check_proposition1(model, actions).is_valid


def test_condition1_counterexample():
    a, b, c = (PerformanceVector((float(i),), name) for i, name in enumerate("abc"))
    model = ExplicitRelationModel(s_pairs={("a", "b"), ("b", "c")}, d_pairs={("b", "c")})
    report = check_condition1(model, [a, b, c])
    assert report.failed_clauses() == ["1.ii"]
    assert len(report.violations) == 1
    assert report.violations[0].witnesses == ["a", "b", "c"]


def test_condition1_detects_missing_reflexivity_and_d_without_s():
    a, b = PerformanceVector((0.0,), "a"), PerformanceVector((1.0,), "b")
    model = ExplicitRelationModel(s_pairs=set(), d_pairs={("b", "a")}, reflexive=False)
    clauses = check_condition1(model, [a, b]).failed_clauses()
    assert "1.reflexive" in clauses
    assert "1.i" in clauses


def test_condition1_trivial_sets():
    model = ExplicitRelationModel(s_pairs=set())
    assert check_condition1(model, [PerformanceVector((1.0,), "a")]).is_valid
    assert check_condition1(model, []).is_valid
    assert check_proposition1(model, []).is_valid


def test_explicit_model_unlabeled_actions():
    model = ExplicitRelationModel(s_pairs={("a", "b")})
    low, high = PerformanceVector((0.0,)), PerformanceVector((9.0,))
    assert not model.s(low, high)
    assert not model.s(high, low)
    assert model.s(low, PerformanceVector((0.0,)))
    assert model.s(PerformanceVector((0.0,), "a"), PerformanceVector((9.0,), "b"))


def test_performance_vector_rejects_non_finite():
    with pytest.raises(ValueError):
        PerformanceVector((1.0, float("inf")))
    with pytest.raises(TypeError):
        PerformanceVector((True, 1.0))


scores = st.lists(st.floats(min_value=0, max_value=8, allow_nan=False), min_size=5, max_size=5)


@settings(max_examples=200, deadline=None)
@given(scores, scores)
def test_preference_is_asymmetric(xs, ys):
    model, _ = _example1()
    x, y = PerformanceVector(tuple(xs)), PerformanceVector(tuple(ys))
    assert not (derive_preference(model, x, y) and derive_preference(model, y, x))


def run_all_tests():
    """Run every test in this module and print a summary"""
    tests = [
        test_derive_preference_example1,
        test_derive_preference_dimension_mismatch,
        test_classify_pair_example1,
        test_classify_pair_mirrors,
        test_condition1_example1_clean,
        test_condition1_counterexample,
        test_condition1_detects_missing_reflexivity_and_d_without_s,
        test_condition1_trivial_sets,
        test_explicit_model_unlabeled_actions,
        test_performance_vector_rejects_non_finite,
        test_preference_is_asymmetric,
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
