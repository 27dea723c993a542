#!/usr/bin/env python3
"""
Tests for the LangGraph audit workflow
"""

import io
import os
from contextlib import redirect_stdout
from pathlib import Path
from unittest.mock import patch

import pytest

from audit_graph import AuditGraph, graph
from model_files import load_model

MODELS = Path(__file__).parent / "models"


def test_graph_compiles():
    nodes = set(graph.get_graph().nodes)
    assert {"validation", "planning", "property", "summary"} <= nodes
    assert "property" in AuditGraph(verbose=False).get_graph_visualization()


def test_audit_example1():
    instance = load_model(MODELS / "example1.model")
    outcome = AuditGraph(verbose=False).run(instance, seed=9, grid_samples=30)
    report = outcome["report"]
    assert outcome["success"]
    assert outcome["audit_size"] == 5 + 30
    assert report.seed == 9
    assert report.by_name()["transitive-outranking"].status == "skipped"
    assert report.by_name()["transposition"].status == "pass"
    assert all(r.is_valid for r in outcome["validation"].values())


def test_audit_example2_skips_p_conformity():
    instance = load_model(MODELS / "example2.model")
    outcome = AuditGraph(verbose=False).run(instance, properties=["conformity", "stability"], grid_samples=20)
    statuses = outcome["report"].statuses()
    assert statuses["conformity:S"] == "pass"
    assert statuses["conformity:P"] == "skipped"
    assert statuses["stability:S"] == "pass"
    assert not outcome["validation"]["4"].is_valid


def test_audit_interval_model():
    instance = load_model(MODELS / "interval_example.model")
    outcome = AuditGraph(verbose=False).run(
        instance, properties=["transposition", "transitive-outranking", "conformity"], grid_samples=25)
    statuses = outcome["report"].statuses()
    assert statuses["transposition"] == "skipped"
    assert statuses["transitive-outranking"] == "pass"
    assert statuses["conformity:S"] == "pass"


def test_seed_from_environment():
    instance = load_model(MODELS / "example1.model")
    with patch.dict(os.environ, {"ORDINAL_SEED": "77", "ORDINAL_GRID_SAMPLES": "12"}):
        outcome = AuditGraph(verbose=False).run(instance, properties=["independence"])
    assert outcome["report"].seed == 77
    assert outcome["audit_size"] == 5 + 12


def test_verbose_progress_lines():
    instance = load_model(MODELS / "example1.model")
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        AuditGraph(verbose=True).run(instance, properties=["homogeneity"], grid_samples=5)
    output = buffer.getvalue()
    assert "🔍 Validating boundary conditions..." in output
    assert "✅ homogeneity: pass" in output


def test_unknown_property_rejected():
    instance = load_model(MODELS / "example1.model")
    with pytest.raises(ValueError):
        AuditGraph(verbose=False).run(instance, properties=["symmetry"])


def run_all_tests():
    """Run every test in this module and print a summary"""
    tests = [
        test_graph_compiles,
        test_audit_example1,
        test_audit_example2_skips_p_conformity,
        test_audit_interval_model,
        test_seed_from_environment,
        test_verbose_progress_lines,
        test_unknown_property_rejected,
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
