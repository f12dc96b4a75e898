"""Design-time policy lint: ambiguity, bounds, contradictions, redundancy, coverage."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import UnsupportedOperatorError
from .evaluation import evaluate_subsumption, to_axis_constraint
from .interval import AxisConstraint, denote, intersect_all, is_subset
from .model import Connective, LogicalConstraint, Policy, RuleKind, compact_iri
from .profile import BASE_IRIS, AxisProfile, default_profile
from .verdict import SubsumptionVerdict, box_denote


class Severity(enum.Enum):
    ERROR = "Error"
    WARNING = "Warning"
    INFO = "Info"


class FindingKind(enum.Enum):
    AMBIGUITY = "Ambiguity"
    SELF_CONTRADICTION = "SelfContradiction"
    REDUNDANCY = "Redundancy"
    INCOMPLETE_COVERAGE = "IncompleteCoverage"
    REFINEMENT_VIOLATION = "RefinementViolation"
    BOUND_VIOLATION = "BoundViolation"
    INVALID_CONSTRAINT = "InvalidConstraint"


@dataclass(frozen=True)
class LintFinding:
    severity: Severity
    kind: FindingKind
    location: str
    message: str
    interpretations: Optional[int] = None

    def to_dict(self) -> dict:
        out = {
            "severity": self.severity.value,
            "kind": self.kind.value,
            "location": self.location,
            "message": self.message,
        }
        if self.interpretations is not None:
            out["interpretations"] = self.interpretations
        return out

    def __str__(self) -> str:
        return f"{self.severity.value:<7} {self.kind.value:<18} {self.location}: {self.message}"


def sort_findings(findings: Sequence[LintFinding]) -> List[LintFinding]:
    return sorted(findings, key=lambda f: (f.location, f.kind.value, f.message))


# -- traversal ---------------------------------------------------------------

def _rules(p: Policy):
    for kind in RuleKind:
        for i, rule in enumerate(p.rules_of(kind)):
            yield f"{kind.value}[{i}]", rule


def _atoms(items, path):
    """Every atomic constraint with its path, at any nesting depth."""
    for j, c in enumerate(items):
        here = f"{path}[{j}]"
        if isinstance(c, LogicalConstraint):
            yield from _atoms(c.branches, f"{here}.{c.connective.value}")
        else:
            yield here, c


def _conjunctive_atoms(items, path):
    """Atomic constraints of the implicit-And part (skips or/xone blocks)."""
    for j, c in enumerate(items):
        here = f"{path}[{j}]"
        if isinstance(c, LogicalConstraint):
            if c.connective is Connective.AND:
                yield from _conjunctive_atoms(c.branches, f"{here}.and")
        else:
            yield here, c


def _axis_atoms(rule, path, profile) -> List[Tuple[str, AxisConstraint]]:
    out = []
    for where, c in _conjunctive_atoms(rule.constraints, f"{path}.constraint"):
        try:
            ac = to_axis_constraint(c, profile)
        except (UnsupportedOperatorError, ValueError):
            continue
        if ac is not None:
            out.append((where, ac))
    return out


def _by_axis(atoms) -> Dict[str, List[Tuple[str, AxisConstraint]]]:
    groups: Dict[str, List[Tuple[str, AxisConstraint]]] = {}
    for where, ac in atoms:
        groups.setdefault(ac.operand.iri, []).append((where, ac))
    return groups


# -- lints ---------------------------------------------------------------------

def lint_ambiguity(p: Policy, profile: Optional[AxisProfile] = None) -> List[LintFinding]:
    profile = profile or default_profile()
    findings = []
    for path, rule in _rules(p):
        for where, c in _atoms(rule.constraints, f"{path}.constraint"):
            if c.left_operand not in BASE_IRIS:
                continue
            axes = profile.decompose(c.left_operand)
            n = len(axes)
            names = ", ".join(a.short for a in axes)
            findings.append(LintFinding(
                Severity.WARNING,
                FindingKind.AMBIGUITY,
                where,
                f"{compact_iri(c.left_operand)} is dimensional: {n + 2} possible interpretations "
                f"({n} single-axis, max, min); use {names}",
                interpretations=n + 2,
            ))
    return findings


def lint_bounds(p: Policy, profile: Optional[AxisProfile] = None) -> List[LintFinding]:
    profile = profile or default_profile()
    findings = []
    for path, rule in _rules(p):
        for where, c in _atoms(rule.constraints, f"{path}.constraint"):
            operand = profile.lookup(c.left_operand)
            if operand is None:
                continue
            try:
                ac = to_axis_constraint(c, profile)
            except (UnsupportedOperatorError, ValueError) as exc:
                findings.append(LintFinding(Severity.ERROR, FindingKind.INVALID_CONSTRAINT, where, str(exc)))
                continue
            report = profile.validate_right_operand(operand, ac.value)
            if not report.ok:
                findings.append(LintFinding(Severity.ERROR, FindingKind.BOUND_VIOLATION, where, report.message))
    return findings


def lint_self_contradiction(p: Policy, profile: Optional[AxisProfile] = None) -> List[LintFinding]:
    profile = profile or default_profile()
    findings = []
    for path, rule in _rules(p):
        atoms = _axis_atoms(rule, path, profile)
        if not atoms:
            continue
        box = box_denote([ac for _, ac in atoms])
        for iri in box.empty_axes():
            parts = [f"{where} ({ac})" for where, ac in atoms if ac.operand.iri == iri]
            shown = " ∩ ".join(str(denote(ac)) for _, ac in atoms if ac.operand.iri == iri)
            findings.append(LintFinding(
                Severity.ERROR,
                FindingKind.SELF_CONTRADICTION,
                path,
                f"{compact_iri(iri)}: {shown} = EMPTY; no value satisfies {', '.join(parts)}",
            ))
    return findings


def lint_redundancy(p: Policy, profile: Optional[AxisProfile] = None) -> List[LintFinding]:
    profile = profile or default_profile()
    findings = []
    for path, rule in _rules(p):
        for iri, group in _by_axis(_axis_atoms(rule, path, profile)).items():
            if len(group) < 2:
                continue
            for k, (where, ac) in enumerate(group):
                siblings = [other for m, (_, other) in enumerate(group) if m != k]
                rest = intersect_all((denote(s) for s in siblings), ac.operand.domain)
                if is_subset(rest, denote(ac)):
                    findings.append(LintFinding(
                        Severity.WARNING,
                        FindingKind.REDUNDANCY,
                        where,
                        f"{ac} is implied by its siblings ({rest} ⊆ {denote(ac)}); removing it leaves the box unchanged",
                    ))
    return findings


def coverage(constraints: Sequence[AxisConstraint], base: str, profile: Optional[AxisProfile] = None) -> Tuple[Set[str], bool]:
    profile = profile or default_profile()
    axes = {a.iri for a in profile.decompose(base)}
    covered = {c.operand.iri for c in constraints if c.operand.iri in axes}
    return covered, covered == axes


def lint_coverage(p: Policy, profile: Optional[AxisProfile] = None) -> List[LintFinding]:
    profile = profile or default_profile()
    findings = []
    for path, rule in _rules(p):
        atoms = [ac for _, ac in _axis_atoms(rule, path, profile)]
        for base in dict.fromkeys(ac.operand.base for ac in atoms):
            covered, complete = coverage(atoms, base, profile)
            if complete:
                continue
            missing = [a.short for a in profile.decompose(base) if a.iri not in covered]
            findings.append(LintFinding(
                Severity.INFO,
                FindingKind.INCOMPLETE_COVERAGE,
                path,
                f"{compact_iri(base)} is not axis-complete; unconstrained: {', '.join(missing)}",
            ))
    return findings


def lint(p: Policy, profile: Optional[AxisProfile] = None) -> List[LintFinding]:
    findings = (
        lint_ambiguity(p, profile)
        + lint_bounds(p, profile)
        + lint_self_contradiction(p, profile)
        + lint_redundancy(p, profile)
        + lint_coverage(p, profile)
    )
    return sort_findings(findings)


def validate(p: Policy, profile: Optional[AxisProfile] = None) -> List[LintFinding]:
    """Authoring-time checks: right-operand bounds and dimensional ambiguity."""
    return sort_findings(lint_bounds(p, profile) + lint_ambiguity(p, profile))


# -- supply-chain refinement ------------------------------------------------------

@dataclass
class RefinementResult:
    verdict: SubsumptionVerdict
    detail: dict
    findings: List[LintFinding]

    def to_dict(self) -> dict:
        return {**self.detail, "verdict": self.verdict.value, "findings": [f.to_dict() for f in self.findings]}


def check_refinement(upstream: Policy, downstream: Policy, profile: Optional[AxisProfile] = None) -> RefinementResult:
    """Confirmed when every downstream scope lies inside the matching upstream scope."""
    report = evaluate_subsumption(downstream, upstream, profile)
    findings = [
        LintFinding(Severity.INFO, FindingKind.REFINEMENT_VIOLATION, label, "no rule with the same action on the other side")
        for label in report.unmatched
    ]
    for left, right, res in report.pairs:
        for iri in res.axes_with(SubsumptionVerdict.REFUTED):
            d = res.axes[iri]
            findings.append(LintFinding(
                Severity.ERROR,
                FindingKind.REFINEMENT_VIOLATION,
                left,
                f"{compact_iri(iri)}: downstream {d.left} escapes upstream {d.right} ({right})",
            ))
    return RefinementResult(report.verdict, report.to_dict(), sort_findings(findings))
