#!/usr/bin/env python3
"""
CLI Tools for validating boundary systems, assigning actions and auditing properties
"""

import argparse
import os
import sys
from typing import Dict, List, Optional

import pandas as pd

from assignment import assign, assign_conjoint, transpose_problem
from audit_graph import AuditGraph
from boundary_system import validate_all
from classification_state import RULES, AssignmentOutcome
from electre_model import ElectreModel, credibility_matrix
from model_files import RunReport, load_actions, load_model, save_model, write_report
from property_harness import PROPERTY_NAMES
from relational_core import PerformanceVector, classify_pair

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_PROPERTY = 4

CONJOINT_RULES = {"s-conjoint": "S", "p-conjoint": "P"}


def _common_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('model', help='Model file (looked up in ORDINAL_MODELS_DIR when not found)')
    parser.add_argument('--quiet', action='store_true', help='Suppress progress lines')
    parser.add_argument('--report', help='Write a JSON report to this path')


def setup_model_commands(subparsers):
    """Setup model inspection commands"""

    # Validate boundary conditions
    validate_parser = subparsers.add_parser('validate', help='Validate the boundary conditions')
    _common_arguments(validate_parser)
    validate_parser.add_argument('--conditions', default='2,3,4', help='Conditions to check (comma-separated)')

    # Relation matrix
    relations_parser = subparsers.add_parser('relations', help='Print relations between actions and limiting actions')
    _common_arguments(relations_parser)
    relations_parser.add_argument('actions', nargs='?', help='Action table (CSV); omit for limiting actions only')
    relations_parser.add_argument('--sigma', action='store_true', help='Also print credibility values (ELECTRE)')

    # Transposed instance
    transpose_parser = subparsers.add_parser('transpose', help='Write the transposed model')
    _common_arguments(transpose_parser)
    transpose_parser.add_argument('-o', '--output', required=True, help='Output model file')


def setup_assignment_commands(subparsers):
    """Setup assignment commands"""
    assign_parser = subparsers.add_parser('assign', help='Assign actions to classes')
    _common_arguments(assign_parser)
    assign_parser.add_argument('actions', help='Action table (CSV)')
    assign_parser.add_argument('--rule', default='s-conjoint', choices=RULES + list(CONJOINT_RULES),
                               help='Assignment rule')
    assign_parser.add_argument('--trace', action='store_true', help='Print the boundary relations consulted')


def setup_audit_commands(subparsers):
    """Setup property audit commands"""
    check_parser = subparsers.add_parser('check', help='Run the property harness')
    _common_arguments(check_parser)
    check_parser.add_argument('--actions', help='Extra audit actions (CSV)')
    check_parser.add_argument('--properties', help=f'Properties (comma-separated): {", ".join(PROPERTY_NAMES)}')
    check_parser.add_argument('--grid-samples', type=int, help='Random grid points added to the audit set')
    check_parser.add_argument('--seed', type=int, help='Seed for the audit grid')


def _progress(args, line: str):
    if not args.quiet:
        print(line)


def _decimals() -> int:
    return int(os.getenv("ORDINAL_DECIMALS", "3"))


def _split(value: Optional[str]) -> List[str]:
    return [part.strip() for part in value.split(',') if part.strip()] if value else []


def _finish(args, report: RunReport):
    if args.report:
        write_report(report, args.report)
        _progress(args, f"📋 Report written to {args.report}")


def handle_validate(args) -> int:
    try:
        conditions = [int(c) for c in _split(args.conditions)]
    except ValueError:
        print(f"❌ Error: --conditions expects numbers, got '{args.conditions}'")
        return EXIT_USAGE
    if any(c not in (2, 3, 4) for c in conditions):
        print(f"❌ Error: conditions must be among 2, 3, 4, got '{args.conditions}'")
        return EXIT_USAGE

    instance = load_model(args.model)
    _progress(args, f"🔍 Validating {args.model} ({instance.system.M} classes, {instance.m} criteria)")
    reports = validate_all(instance.system, instance.model, conditions)

    for condition, report in reports.items():
        if report.is_valid:
            print(f"✅ Condition {condition}: validated")
        else:
            print(f"❌ Condition {condition}: {len(report.violations)} violation(s)")
            for violation in report.violations:
                print(f"   {violation.condition}: {violation.message}")
        for warning in report.warnings:
            print(f"⚠️  {warning.condition}: {warning.message}")

    _finish(args, RunReport(command="validate", model=str(args.model), validation=reports))
    return EXIT_OK if all(report.is_valid for report in reports.values()) else EXIT_VALIDATION


def _trace_lines(outcome: AssignmentOutcome) -> List[str]:
    p_rule = outcome.rule.startswith("p-")
    return [f"     B_{rel.k}: {rel.p_symbol() if p_rule else rel.s_symbol()}" for rel in outcome.trace]


def handle_assign(args) -> int:
    instance = load_model(args.model)
    actions = load_actions(args.actions, instance)
    names = instance.system.class_names
    _progress(args, f"🔍 Assigning {len(actions)} action(s) with {args.rule}")

    report = RunReport(command="assign", model=str(args.model))
    for x in actions:
        if args.rule in CONJOINT_RULES:
            outcome = assign_conjoint(instance.model, x, instance.system, CONJOINT_RULES[args.rule])
            report.conjoint.append(outcome)
            print(f"{x.id}: [{', '.join(names[c - 1] for c in outcome.interval)}]")
            if args.trace:
                rules = ["s-primal", "s-dual"] if outcome.family == "S" else ["p-primal", "p-dual"]
                for rule in rules:
                    print(f"   {rule}:")
                    print("\n".join(_trace_lines(assign(instance.model, x, instance.system, rule))))
        else:
            outcome = assign(instance.model, x, instance.system, args.rule)
            report.assignments.append(outcome)
            print(f"{x.id}: {outcome.class_name}")
            if args.trace:
                print("\n".join(_trace_lines(outcome)))

    _finish(args, report)
    return EXIT_OK


def _relation_table(instance, rows: List[PerformanceVector], labels: List[str]) -> Dict[str, Dict[str, str]]:
    columns = instance.system.all_actions()
    column_labels = list(instance.system.layer_labels().values())
    return {
        row_label: {
            column_label: classify_pair(instance.model, x, b).symbol
            for b, column_label in zip(columns, column_labels)
        }
        for x, row_label in zip(rows, labels)
    }


def handle_relations(args) -> int:
    instance = load_model(args.model)
    limiting = instance.system.all_actions()
    limiting_labels = list(instance.system.layer_labels().values())
    if args.actions:
        rows = load_actions(args.actions, instance)
        labels = [x.id for x in rows]
    else:
        rows, labels = limiting, limiting_labels
    _progress(args, f"🔍 Relations of {len(rows)} action(s) against {len(limiting)} limiting action(s)")

    table = _relation_table(instance, rows, labels)
    print(pd.DataFrame.from_dict(table, orient="index")[limiting_labels].to_string())

    if args.sigma:
        if not isinstance(instance.model, ElectreModel):
            print("⚠️  Credibility values exist for ELECTRE models only")
        else:
            sigma = credibility_matrix(instance.model.params,
                                       [x.scores for x in rows], [b.scores for b in limiting])
            frame = pd.DataFrame(sigma, index=labels, columns=limiting_labels).round(_decimals())
            print()
            print(frame.to_string())

    _finish(args, RunReport(command="relations", model=str(args.model), relations=table))
    return EXIT_OK


def handle_check(args) -> int:
    instance = load_model(args.model)
    if args.actions:
        instance = instance.with_actions(list(instance.actions) + load_actions(args.actions, instance))
    properties = _split(args.properties) or list(PROPERTY_NAMES)
    unknown = [name for name in properties if name not in PROPERTY_NAMES]
    if unknown:
        print(f"❌ Error: unknown properties: {', '.join(unknown)}")
        return EXIT_USAGE

    outcome = AuditGraph(verbose=not args.quiet).run(
        instance, properties=properties, seed=args.seed, grid_samples=args.grid_samples)
    report = outcome["report"]

    print(f"{'Property':<28} {'Status':<8} {'Checked':>8}  Notes")
    print("-" * 72)
    for result in report.results:
        notes = result.reason or (f"{len(result.witnesses)} witness(es)" if result.witnesses else "")
        print(f"{result.name:<28} {result.status:<8} {result.checked:>8}  {notes}")
    print(f"📋 seed={report.seed}, audit set of {outcome['audit_size']} actions")

    _finish(args, RunReport(command="check", model=str(args.model),
                            validation=outcome["validation"], properties=report))
    return EXIT_OK if report.passed else EXIT_PROPERTY


def handle_transpose(args) -> int:
    instance = load_model(args.model)
    if not isinstance(instance.model, ElectreModel):
        print(f"❌ Error: transposition needs an ELECTRE model, got '{instance.kind}'")
        return EXIT_ERROR
    save_model(transpose_problem(instance), args.output)
    print(f"✅ Transposed model written to {args.output}")
    _finish(args, RunReport(command="transpose", model=str(args.model)))
    return EXIT_OK


HANDLERS = {
    'validate': handle_validate,
    'assign': handle_assign,
    'relations': handle_relations,
    'check': handle_check,
    'transpose': handle_transpose,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Ordinal classification with two-layer limiting boundaries')
    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # Setup command groups
    setup_model_commands(subparsers)
    setup_assignment_commands(subparsers)
    setup_audit_commands(subparsers)
    return parser


def run_cli(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point; returns the exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    try:
        return HANDLERS[args.command](args)
    except (OSError, ValueError) as e:
        print(f"❌ Error: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(run_cli())
