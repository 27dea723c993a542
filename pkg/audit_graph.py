from langgraph.graph import StateGraph, START, END
from classification_state import AuditState, PropertyReport, PropertyResult
from boundary_system import validate_all
from property_harness import PROPERTY_NAMES, blocked, build_audit_set, run_property
from typing import Dict, Any, List, Optional, Sequence
import os


class AuditGraph:
    """LangGraph workflow: validate the boundaries, plan the properties, run them one by one"""

    def __init__(self, verbose: bool = True):
        self.verbose = verbose
        self.graph = self._build_graph()

    def _build_graph(self):
        """Build the LangGraph workflow"""
        graph = StateGraph(AuditState)

        graph.add_node("validation", self.validation_node)
        graph.add_node("planning", self.planning_node)
        graph.add_node("property", self.property_node)
        graph.add_node("summary", self.summary_node)

        graph.add_edge(START, "validation")
        graph.add_edge("validation", "planning")

        # Loop over the plan until it is exhausted
        for node in ["planning", "property"]:
            graph.add_conditional_edges(
                node,
                self._route_to_next_property,
                {
                    "property": "property",
                    "summary": "summary"
                }
            )

        graph.add_edge("summary", END)

        # State carries live model objects, so no checkpointer
        return graph.compile()

    def _status(self, state: AuditState, line: str):
        if state.get("verbose", self.verbose):
            print(line)

    def validation_node(self, state: AuditState) -> Dict[str, Any]:
        instance = state["instance"]
        self._status(state, "🔍 Validating boundary conditions...")
        validation = validate_all(instance.system, instance.model, (2, 3, 4), instance.actions)
        for condition, report in validation.items():
            if report.is_valid:
                self._status(state, f"✅ Condition {condition}: validated")
            else:
                failed = ", ".join(report.failed_clauses())
                self._status(state, f"⚠️  Condition {condition}: failed clauses {failed}")
        return {"validation": validation}

    def planning_node(self, state: AuditState) -> Dict[str, Any]:
        instance = state["instance"]
        plan, skipped = [], []
        for name in state["requested"]:
            reason = blocked(name, instance.model, state["validation"])
            if reason:
                skipped.append(PropertyResult(name=name, status="skipped", reason=reason))
            else:
                plan.append(name)
        self._status(state, f"📋 Plan: {', '.join(plan) or 'nothing to run'} "
                            f"({len(state['actions'])} audit actions)")
        return {"plan": plan, "results": skipped}

    def property_node(self, state: AuditState) -> Dict[str, Any]:
        instance = state["instance"]
        name, remaining = state["plan"][0], state["plan"][1:]
        report = run_property(name, instance.model, instance.system, state["actions"],
                              validation=state["validation"], seed=state["seed"])
        for result in report.results:
            glyph = {"pass": "✅", "fail": "❌", "skipped": "⚠️ "}[result.status]
            self._status(state, f"{glyph} {result.name}: {result.status} ({result.checked} checked)")
        return {"plan": remaining, "results": report.results}

    def summary_node(self, state: AuditState) -> Dict[str, Any]:
        report = PropertyReport.merge([PropertyReport(results=state["results"])], seed=state["seed"])
        return {"report": report}

    def _route_to_next_property(self, state: AuditState) -> str:
        return "property" if state.get("plan") else "summary"

    def _initialize_state(self, instance, properties: Sequence[str], seed: int,
                          grid_samples: int) -> AuditState:
        actions = build_audit_set(instance.system, instance.actions, grid_samples, seed)
        return AuditState(
            instance=instance,
            actions=actions,
            requested=list(properties),
            seed=seed,
            grid_samples=grid_samples,
            verbose=self.verbose,
            validation={},
            plan=[],
            results=[],
            report=None
        )

    def run(self, instance, properties: Optional[List[str]] = None, seed: Optional[int] = None,
            grid_samples: Optional[int] = None) -> Dict[str, Any]:
        """Run the audit workflow on a classification instance"""
        seed = seed if seed is not None else int(os.getenv("ORDINAL_SEED", "2021"))
        if grid_samples is None:
            grid_samples = int(os.getenv("ORDINAL_GRID_SAMPLES", "256"))
        properties = properties or list(PROPERTY_NAMES)
        unknown = [name for name in properties if name not in PROPERTY_NAMES]
        if unknown:
            raise ValueError(f"unknown properties: {', '.join(unknown)}")

        initial_state = self._initialize_state(instance, properties, seed, grid_samples)
        final_state = self.graph.invoke(initial_state, {"recursion_limit": 50})
        report = final_state["report"]
        return {
            "success": report.passed,
            "report": report,
            "validation": final_state["validation"],
            "audit_size": len(final_state["actions"]),
        }

    def get_graph_visualization(self) -> str:
        """Get a text representation of the graph structure"""
        return """
Audit Workflow Graph:
START → validation → planning ─┬─→ property ⟲ (one property per pass)
                               └─→ summary → END

Routing Logic:
- validation → planning (always)
- planning / property → property while the plan has entries, else summary
- summary → END (always)
"""


# Module-level compiled graph for langgraph tooling
graph = AuditGraph(verbose=False).graph
