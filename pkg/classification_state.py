"""
Shared report and state models for the ordinal classification engine
"""

import operator
from typing import TypedDict, List, Dict, Any, Optional, Annotated, Literal
from pydantic import BaseModel, Field


RuleName = Literal["s-primal", "s-dual", "p-primal", "p-dual"]
FamilyName = Literal["S", "P"]

RULES: List[str] = ["s-primal", "s-dual", "p-primal", "p-dual"]
FAMILY_RULES: Dict[str, List[str]] = {
    "S": ["s-primal", "s-dual"],
    "P": ["p-primal", "p-dual"],
}


class Violation(BaseModel):
    """A single failed clause of a condition, with its witnesses"""
    condition: str
    witnesses: List[str] = Field(default_factory=list)
    boundaries: List[int] = Field(default_factory=list)
    message: str
    severity: Literal["violation", "warning"] = "violation"


class ViolationReport(BaseModel):
    """Result of a condition validator; no violations means validated"""
    subject: str
    violations: List[Violation] = Field(default_factory=list)
    warnings: List[Violation] = Field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def add(self, condition: str, message: str, witnesses: List[str] = None,
            boundaries: List[int] = None, warning: bool = False):
        entry = Violation(
            condition=condition,
            witnesses=witnesses or [],
            boundaries=boundaries or [],
            message=message,
            severity="warning" if warning else "violation",
        )
        if warning:
            self.warnings.append(entry)
        else:
            self.violations.append(entry)

    def extend(self, other: "ViolationReport"):
        self.violations.extend(other.violations)
        self.warnings.extend(other.warnings)

    def failed_clauses(self) -> List[str]:
        """Distinct clause ids with at least one hard violation, in order of appearance"""
        seen: List[str] = []
        for violation in self.violations:
            if violation.condition not in seen:
                seen.append(violation.condition)
        return seen


class PropertyResult(BaseModel):
    """Verdict for one structural property (optionally for one rule)"""
    name: str
    status: Literal["pass", "fail", "skipped"]
    reason: Optional[str] = None
    checked: int = 0
    witnesses: List[Dict[str, Any]] = Field(default_factory=list)


class PropertyReport(BaseModel):
    """Merged verdicts of a harness run"""
    seed: Optional[int] = None
    results: List[PropertyResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.status != "fail" for result in self.results)

    def by_name(self) -> Dict[str, PropertyResult]:
        return {result.name: result for result in self.results}

    def statuses(self) -> Dict[str, str]:
        return {result.name: result.status for result in self.results}

    @classmethod
    def merge(cls, reports: List["PropertyReport"], seed: Optional[int] = None) -> "PropertyReport":
        """Merge reports deterministically by property name"""
        results = [result for report in reports for result in report.results]
        results.sort(key=lambda result: result.name)
        return cls(seed=seed, results=results)


class BoundaryRelation(BaseModel):
    """Relation flags between one action and one boundary B_k"""
    k: int
    x_S_B: bool = False
    B_S_x: bool = False
    x_P_B: bool = False
    B_P_x: bool = False

    def s_symbol(self) -> str:
        if self.x_S_B and self.B_S_x:
            return "S/S⁻¹"
        if self.x_S_B:
            return "S"
        if self.B_S_x:
            return "S⁻¹"
        return "Inc"

    def p_symbol(self) -> str:
        if self.x_P_B:
            return "P"
        if self.B_P_x:
            return "P⁻¹"
        return "Inc_P"


class AssignmentOutcome(BaseModel):
    """Class chosen by one rule, with the boundaries consulted in scan order"""
    action_id: Optional[str] = None
    rule: RuleName
    class_index: int
    class_name: Optional[str] = None
    trace: List[BoundaryRelation] = Field(default_factory=list)


class ConjointOutcome(BaseModel):
    """Primal and dual results of one family and the class interval they span"""
    action_id: Optional[str] = None
    family: FamilyName
    primal_class: int
    dual_class: int

    @property
    def interval(self) -> List[int]:
        low, high = sorted((self.primal_class, self.dual_class))
        return list(range(low, high + 1))

    @property
    def is_precise(self) -> bool:
        return self.primal_class == self.dual_class


class AuditState(TypedDict):
    """State schema for the property audit workflow"""
    instance: Any
    actions: List[Any]
    requested: List[str]
    seed: int
    grid_samples: int
    verbose: bool
    validation: Dict[str, ViolationReport]
    plan: List[str]
    results: Annotated[List[PropertyResult], operator.add]
    report: Optional[PropertyReport]
