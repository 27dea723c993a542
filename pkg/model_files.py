"""
Model and action files
JSON model documents (validated with pydantic), CSV action tables read with
pandas, and the machine-readable run report.
"""

import json
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from assignment import ClassificationInstance
from boundary_system import Boundary, BoundarySystem
from classification_state import AssignmentOutcome, ConjointOutcome, PropertyReport, ViolationReport
from electre_model import ElectreModel, ElectreParameters, ParameterError, default_tolerance
from interval_model import IntervalNumber, IntervalValueModel
from relational_core import PerformanceVector

Score = Union[float, Tuple[float, float]]


class ModelFileError(ValueError):
    """Unreadable or invalid model / action file"""

    def __init__(self, source: str, problems: List[str]):
        super().__init__(f"{source}: " + "; ".join(problems))
        self.source = source
        self.problems = problems


class CriterionSpec(BaseModel):
    name: str
    direction: Literal["max", "min"] = "max"
    weight: Score
    q: float = 0.0
    p: float = 0.0
    u: Optional[float] = None
    v: Optional[float] = None


class LimitingActionSpec(BaseModel):
    layer: Literal["upper", "lower"]
    id: str
    performance: List[Score]


class ActionSpec(BaseModel):
    id: str
    performance: List[Score]


class ModelDocument(BaseModel):
    """On-disk form of a classification instance"""
    model_config = ConfigDict(populate_by_name=True)

    kind: Literal["electre", "interval-value"] = "electre"
    criteria: List[CriterionSpec]
    lambda_: Optional[float] = Field(default=None, alias="lambda")
    alpha_d: Optional[float] = None
    classes: List[str]
    boundaries: List[List[LimitingActionSpec]] = Field(default_factory=list)
    actions: List[ActionSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_shape(self) -> "ModelDocument":
        if len(self.boundaries) != len(self.classes) - 1:
            raise ValueError(f"{len(self.classes)} classes need {len(self.classes) - 1} boundaries, "
                             f"got {len(self.boundaries)}")
        if self.kind == "electre" and self.lambda_ is None:
            raise ValueError("electre models need 'lambda'")
        if self.kind == "interval-value" and self.alpha_d is None:
            raise ValueError("interval-value models need 'alpha_d'")
        return self


class RunReport(BaseModel):
    """Machine-readable output of one CLI command"""
    command: str
    model: str
    validation: Dict[str, ViolationReport] = Field(default_factory=dict)
    assignments: List[AssignmentOutcome] = Field(default_factory=list)
    conjoint: List[ConjointOutcome] = Field(default_factory=list)
    relations: Dict[str, Dict[str, str]] = Field(default_factory=dict)
    properties: Optional[PropertyReport] = None


def _format_errors(error: ValidationError) -> List[str]:
    problems = []
    for entry in error.errors():
        location = ".".join(str(part) for part in entry["loc"]) or "document"
        problems.append(f"{location}: {entry['msg']}")
    return problems


def resolve_model_path(path: Union[str, Path]) -> Path:
    """The path as given, else the same name under ORDINAL_MODELS_DIR"""
    candidate = Path(path)
    if candidate.exists():
        return candidate
    fallback = Path(os.getenv("ORDINAL_MODELS_DIR", "models")) / candidate
    return fallback if fallback.exists() else candidate


def _signs(doc: ModelDocument) -> List[float]:
    return [-1.0 if c.direction == "min" else 1.0 for c in doc.criteria]


def _vector(where: str, performance: List[Score], signs: List[float], interval: bool,
            action_id: str) -> PerformanceVector:
    if len(performance) != len(signs):
        raise ModelFileError(where, [f"expected {len(signs)} scores, got {len(performance)}"])
    try:
        if interval:
            scores = tuple(IntervalNumber.of(s) for s in performance)
            negative = [str(s) for s in scores if s.lo < 0]
            if negative:
                raise ModelFileError(where, [f"interval scores must be nonnegative, got {', '.join(negative)}"])
        else:
            if any(isinstance(s, (list, tuple)) for s in performance):
                raise ModelFileError(where, ["electre models take real scores only"])
            scores = tuple(sign * float(s) for sign, s in zip(signs, performance))
        return PerformanceVector(scores, action_id)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ModelFileError):
            raise
        raise ModelFileError(where, [str(exc)]) from exc


def _build_model(doc: ModelDocument, source: str):
    try:
        if doc.kind == "electre":
            if any(isinstance(c.weight, (list, tuple)) for c in doc.criteria):
                raise ModelFileError(source, ["criteria: electre weights must be single numbers"])
            params = ElectreParameters(
                weights=tuple(float(c.weight) for c in doc.criteria),
                q=tuple(c.q for c in doc.criteria),
                p=tuple(c.p for c in doc.criteria),
                u=tuple(c.u for c in doc.criteria),
                v=tuple(c.v for c in doc.criteria),
                lam=doc.lambda_,
                tolerance=default_tolerance(),
            )
            return ElectreModel(params)

        minimised = [c.name for c in doc.criteria if c.direction == "min"]
        if minimised:
            raise ModelFileError(source, [f"criteria: interval models accept maximised criteria only, "
                                          f"got min for {', '.join(minimised)}"])
        return IntervalValueModel([c.weight for c in doc.criteria], doc.alpha_d, default_tolerance())
    except ParameterError as exc:
        raise ModelFileError(source, [str(exc)]) from exc
    except ValueError as exc:
        if isinstance(exc, ModelFileError):
            raise
        raise ModelFileError(source, [f"criteria: {exc}"]) from exc


def build_instance(doc: ModelDocument, source: str = "<document>") -> ClassificationInstance:
    """Canonical instance: every criterion maximised"""
    model = _build_model(doc, source)
    interval = doc.kind == "interval-value"
    signs = _signs(doc)

    seen = set()
    boundaries = []
    for k, entries in enumerate(doc.boundaries, start=1):
        layers: Dict[str, List[PerformanceVector]] = {"upper": [], "lower": []}
        for i, entry in enumerate(entries):
            where = f"{source}: boundaries.{k - 1}.{i}"
            if entry.id in seen:
                raise ModelFileError(where, [f"duplicate action id '{entry.id}'"])
            seen.add(entry.id)
            layers[entry.layer].append(_vector(where, entry.performance, signs, interval, entry.id))
        boundaries.append(Boundary(upper=layers["upper"], lower=layers["lower"]))

    actions = [
        _vector(f"{source}: actions.{i}", entry.performance, signs, interval, entry.id)
        for i, entry in enumerate(doc.actions)
    ]
    return ClassificationInstance(
        model=model,
        system=BoundarySystem(tuple(doc.classes), tuple(boundaries)),
        criterion_names=tuple(c.name for c in doc.criteria),
        directions=tuple(c.direction for c in doc.criteria),
        actions=tuple(actions),
    )


def load_model(path: Union[str, Path]) -> ClassificationInstance:
    resolved = resolve_model_path(path)
    try:
        text = resolved.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFileError(str(path), [f"cannot read file: {exc.strerror or exc}"]) from exc
    try:
        doc = ModelDocument.model_validate_json(text)
    except ValidationError as exc:
        raise ModelFileError(str(resolved), _format_errors(exc)) from exc
    return build_instance(doc, str(resolved))


def _restore(score: Any, sign: float) -> Score:
    if isinstance(score, IntervalNumber):
        return (score.lo, score.hi)
    return sign * score


def dump_model(instance: ClassificationInstance) -> ModelDocument:
    """Document form of an instance with the original criterion directions restored"""
    signs = [-1.0 if d == "min" else 1.0 for d in instance.directions]
    model = instance.model
    criteria = []
    for j, (name, direction) in enumerate(zip(instance.criterion_names, instance.directions)):
        if isinstance(model, ElectreModel):
            params = model.params
            criteria.append(CriterionSpec(name=name, direction=direction, weight=params.weights[j],
                                          q=params.q[j], p=params.p[j], u=params.u[j], v=params.v[j]))
        else:
            w = model.weights[j]
            criteria.append(CriterionSpec(name=name, direction=direction, weight=(w.lo, w.hi)))

    boundaries = []
    for b in instance.system.boundaries:
        entries = []
        for layer, members in (("upper", b.upper), ("lower", b.lower)):
            for a in members:
                entries.append(LimitingActionSpec(
                    layer=layer, id=a.id,
                    performance=[_restore(s, sign) for s, sign in zip(a.scores, signs)],
                ))
        boundaries.append(entries)

    return ModelDocument(
        kind=instance.kind,
        criteria=criteria,
        lambda_=model.params.lam if isinstance(model, ElectreModel) else None,
        alpha_d=getattr(model, "alpha_d", None),
        classes=list(instance.system.class_names),
        boundaries=boundaries,
        actions=[ActionSpec(id=a.id, performance=[_restore(s, sign) for s, sign in zip(a.scores, signs)])
                 for a in instance.actions],
    )


def save_model(instance: ClassificationInstance, path: Union[str, Path]):
    document = dump_model(instance).model_dump(by_alias=True, exclude_none=True)
    Path(path).write_text(json.dumps(document, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


_INTERVAL_CELL = re.compile(r"^\s*\[?\s*([-+0-9.eE]+)\s*(?:\.\.|,)\s*([-+0-9.eE]+)\s*\]?\s*$")


def parse_interval(cell: str) -> IntervalNumber:
    """'lo..hi', '[lo, hi]' or a plain number"""
    match = _INTERVAL_CELL.match(cell)
    if match:
        return IntervalNumber(float(match.group(1)), float(match.group(2)))
    return IntervalNumber.of(float(cell))


def load_actions(path: Union[str, Path], instance: ClassificationInstance) -> List[PerformanceVector]:
    """Action table: first column id, then one column per criterion in model order"""
    source = str(path)
    try:
        table = pd.read_csv(path, dtype=str, skipinitialspace=True)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise ModelFileError(source, [f"cannot read action table: {exc}"]) from exc

    if table.shape[1] != instance.m + 1:
        raise ModelFileError(source, [f"expected {instance.m + 1} columns (id + {instance.m} criteria), "
                                      f"got {table.shape[1]}"])
    ids = table.iloc[:, 0].str.strip()
    duplicated = sorted(set(ids[ids.duplicated()]))
    if duplicated:
        raise ModelFileError(source, [f"duplicate action ids: {', '.join(duplicated)}"])

    interval = instance.kind == "interval-value"
    signs = [-1.0 if d == "min" else 1.0 for d in instance.directions]
    actions, problems = [], []
    for row_number, row in enumerate(table.itertuples(index=False), start=2):
        action_id, cells = str(row[0]).strip(), row[1:]
        try:
            if interval:
                scores = tuple(parse_interval(str(cell)) for cell in cells)
                if any(s.lo < 0 for s in scores):
                    raise ValueError("interval scores must be nonnegative")
            else:
                scores = tuple(sign * float(cell) for sign, cell in zip(signs, cells))
            actions.append(PerformanceVector(scores, action_id))
        except (TypeError, ValueError) as exc:
            problems.append(f"row {row_number} ({action_id}): {exc}")
    if problems:
        raise ModelFileError(source, problems)
    return actions


def write_report(report: RunReport, path: Union[str, Path]):
    Path(path).write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
