"""Policy-level evaluation: lift rules to boxes / branch sets and run the engine.

Rules are compared pairwise by action.  Within a rule, top-level constraints
and nested ``and`` blocks form the implicit-And box; an ``or``/``xone``
block turns the rule into a branch set whose branches each conjoin the
implicit-And part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .composition import (
    BranchSet,
    CompositionResult,
    LabeledVerdict,
    Source,
    cross_domain_verdict,
    or_from_matrix,
    pair_matrix,
    xone_from_matrix,
)
from .errors import CompositionError, OaxError, RefinementError, UnsupportedOperatorError
from .interval import DIMENSIONAL_OPERATORS, AxisConstraint, to_rational
from .model import (
    Connective,
    Constraint,
    ExecutionContext,
    LogicalConstraint,
    Policy,
    Rule,
    RuleKind,
    compact_iri,
)
from .profile import AxisOperand, AxisProfile, default_profile
from .verdict import (
    BoxResult,
    Satisfaction,
    SubsumptionVerdict,
    Verdict3,
    box_denote,
    box_subsumes,
    box_verdict,
    deontic_overlap,
    kleene_all,
    request_satisfied,
)

GRANTING = (RuleKind.PERMISSION, RuleKind.OBLIGATION)


def to_axis_constraint(c: Constraint, profile: AxisProfile) -> Optional[AxisConstraint]:
    """AxisConstraint for an axis operand, ``None`` for anything else.

    Raises UnsupportedOperatorError for neq / set-based operators on an axis
    operand, and ValueError for a non-numeric right operand.
    """
    operand = profile.lookup(c.left_operand)
    if operand is None:
        return None
    if c.operator not in DIMENSIONAL_OPERATORS:
        raise UnsupportedOperatorError(
            f"{operand.short}: operator '{c.operator.value}' is not supported on axis operands"
        )
    right = c.right_operand
    if isinstance(right, tuple):
        raise ValueError(f"{operand.short}: right operand must be a single decimal")
    try:
        value = to_rational(right)
    except (TypeError, ValueError):
        raise ValueError(f"{operand.short}: right operand {right!r} is not an exact decimal") from None
    return AxisConstraint(operand, c.operator, value)


@dataclass
class RuleView:
    rule: Rule
    connective: Connective
    branches: List[List[AxisConstraint]]
    others: List[Constraint] = field(default_factory=list)

    @property
    def is_box(self) -> bool:
        return self.connective is Connective.AND

    @property
    def box(self) -> List[AxisConstraint]:
        if not self.is_box:
            raise CompositionError("rule is not a plain conjunction")
        return self.branches[0]

    def axes(self) -> List[AxisOperand]:
        seen: Dict[str, AxisOperand] = {}
        for b in self.branches:
            for c in b:
                seen.setdefault(c.operand.iri, c.operand)
        return list(seen.values())

    def branch_set(self) -> BranchSet:
        return BranchSet(self.branches, self.connective)


def _flatten_and(items, profile, atoms, others, logical):
    for c in items:
        if isinstance(c, LogicalConstraint):
            if c.connective is Connective.AND:
                _flatten_and(c.branches, profile, atoms, others, logical)
            else:
                logical.append(c)
        else:
            ac = to_axis_constraint(c, profile)
            if ac is None:
                others.append(c)
            else:
                atoms.append(ac)


def _branch_options(lc: LogicalConstraint, profile, others) -> List[List[AxisConstraint]]:
    options = []
    for b in lc.branches:
        atoms: List[AxisConstraint] = []
        nested: List[LogicalConstraint] = []
        _flatten_and([b], profile, atoms, others, nested)
        if nested:
            raise CompositionError("or/xone nested inside or/xone is not supported")
        options.append(atoms)
    return options


def view_rule(rule: Rule, profile: Optional[AxisProfile] = None) -> RuleView:
    profile = default_profile() if profile is None else profile
    atoms: List[AxisConstraint] = []
    others: List[Constraint] = []
    logical: List[LogicalConstraint] = []
    _flatten_and(rule.constraints, profile, atoms, others, logical)
    if not logical:
        return RuleView(rule, Connective.AND, [atoms], others)
    if any(lc.connective is Connective.XONE for lc in logical):
        if len(logical) > 1:
            raise CompositionError("a rule may hold at most one xone block and no other or/xone")
        connective = Connective.XONE
    else:
        connective = Connective.OR
    branches = []
    for combo in product(*(_branch_options(lc, profile, others) for lc in logical)):
        branch = list(atoms)
        for part in combo:
            branch.extend(part)
        branches.append(branch)
    return RuleView(rule, connective, branches, others)


def matching_pairs(p1: Policy, p2: Policy, kinds1=GRANTING, kinds2=GRANTING):
    pairs = []
    for r1 in p1.rules_of(*kinds1):
        for r2 in p2.rules_of(*kinds2):
            if r1.action == r2.action:
                pairs.append((r1, r2))
    return pairs


def _rule_label(p: Policy, r: Rule) -> str:
    idx = next(i for i, x in enumerate(p.rules_of(r.kind)) if x is r)
    return f"{p.uid}:{r.kind.value}[{idx}]"


def _with_families(axes: Sequence[AxisOperand], profile: AxisProfile) -> List[AxisOperand]:
    out: Dict[str, AxisOperand] = {}
    for a in axes:
        for f in profile.family(a):
            out.setdefault(f.iri, f)
    for a in axes:
        out.setdefault(a.iri, a)
    order = {o.iri: i for i, o in enumerate(profile.operands())}
    return sorted(out.values(), key=lambda o: order.get(o.iri, len(order)))


def union_axes(v1: RuleView, v2: RuleView, profile, full: bool) -> List[AxisOperand]:
    seen: Dict[str, AxisOperand] = {}
    for a in v1.axes() + v2.axes():
        seen.setdefault(a.iri, a)
    axes = list(seen.values())
    order = {o.iri: i for i, o in enumerate(profile.operands())}
    axes.sort(key=lambda o: order.get(o.iri, len(order)))
    return _with_families(axes, profile) if full else axes


# -- conflict -------------------------------------------------------------

@dataclass
class PairReport:
    left: str
    right: str
    action: str
    connective: Connective
    dimensional: Optional[object]  # BoxResult or CompositionResult
    operands: List[LabeledVerdict]
    verdict: Verdict3

    def conflicting_axes(self) -> List[str]:
        if isinstance(self.dimensional, BoxResult):
            return self.dimensional.axes_with(Verdict3.CONFLICT)
        return []

    def to_dict(self) -> dict:
        out = {
            "left": self.left,
            "right": self.right,
            "action": compact_iri(self.action),
            "connective": self.connective.value,
            "verdict": self.verdict.value,
            "operands": [v.to_dict() for v in self.operands],
        }
        if self.dimensional is not None:
            out["dimensional"] = self.dimensional.to_dict()
        return out


@dataclass
class ConflictReport:
    verdict: Verdict3
    pairs: List[PairReport]
    deontic: List[dict] = field(default_factory=list)

    def conflicting_axes(self) -> List[str]:
        seen = []
        for p in self.pairs:
            for iri in p.conflicting_axes():
                if iri not in seen:
                    seen.append(iri)
        return seen

    @property
    def sole_conflicting_axis(self) -> Optional[str]:
        axes = self.conflicting_axes()
        return axes[0] if len(axes) == 1 else None

    def to_dict(self) -> dict:
        first = self.pairs[0].dimensional if self.pairs else None
        axes = first.to_dict()["axes"] if isinstance(first, BoxResult) else {}
        sole = self.sole_conflicting_axis
        return {
            "verdict": self.verdict.value,
            "axes": axes,
            "conflicting_axes": [compact_iri(i) for i in self.conflicting_axes()],
            "sole_conflicting_axis": compact_iri(sole) if sole else None,
            "pairs": [p.to_dict() for p in self.pairs],
            "deontic": self.deontic,
        }


def _dimensional(v1: RuleView, v2: RuleView, axes):
    if v1.is_box and v2.is_box:
        return box_verdict(v1.box, v2.box, axes)
    m = pair_matrix(v1.branch_set(), v2.branch_set(), axes)
    if Connective.XONE in (v1.connective, v2.connective):
        return CompositionResult(xone_from_matrix(m), m)
    return CompositionResult(or_from_matrix(m), m)


def _operand_labels(dim, v1: RuleView, v2: RuleView, external: Sequence[LabeledVerdict]) -> List[LabeledVerdict]:
    labels: List[LabeledVerdict] = []
    if isinstance(dim, BoxResult):
        for iri, d in dim.axes.items():
            labels.append(LabeledVerdict(iri, Source.DIMENSIONAL, d.verdict, f"{d.left} vs {d.right}"))
    elif dim is not None:
        axes = ",".join(compact_iri(a.iri) for a in union_axes(v1, v2, default_profile(), False))
        labels.append(LabeledVerdict(axes, Source.DIMENSIONAL, dim.verdict, f"{v1.connective.value}/{v2.connective.value} composition"))
    supplied = {v.operand: v for v in external}
    seen = set()
    for c in v1.others + v2.others:
        if c.left_operand in seen or c.left_operand in supplied:
            continue
        seen.add(c.left_operand)
        labels.append(LabeledVerdict(c.left_operand, Source.SCALAR, Verdict3.UNKNOWN, "not evaluated: non-axis operand"))
    labels.extend(external)
    return labels


def evaluate_conflict(
    p1: Policy,
    p2: Policy,
    profile: Optional[AxisProfile] = None,
    external: Sequence[LabeledVerdict] = (),
    full_axes: bool = False,
) -> ConflictReport:
    """Cross-domain verdict for every same-action permission/obligation pair."""
    profile = default_profile() if profile is None else profile
    pairs = matching_pairs(p1, p2)
    if not pairs:
        raise OaxError("no comparable rule pair (same action) between the two policies")
    reports = []
    for r1, r2 in pairs:
        v1, v2 = view_rule(r1, profile), view_rule(r2, profile)
        axes = union_axes(v1, v2, profile, full_axes)
        dim = _dimensional(v1, v2, axes) if axes else None
        labels = _operand_labels(dim, v1, v2, external)
        verdict = cross_domain_verdict(labels) if labels else Verdict3.UNKNOWN
        reports.append(
            PairReport(_rule_label(p1, r1), _rule_label(p2, r2), r1.action, _connective(v1, v2), dim, labels, verdict)
        )
    deontic = []
    for a, b, flip in ((p1, p2, False), (p2, p1, True)):
        for perm, prohib in matching_pairs(a, b, (RuleKind.PERMISSION,), (RuleKind.PROHIBITION,)):
            vp, vq = view_rule(perm, profile), view_rule(prohib, profile)
            if not (vp.is_box and vq.is_box):
                continue
            axes = union_axes(vp, vq, profile, full_axes)
            if not axes:
                continue
            res = deontic_overlap(box_denote(vp.box, axes), box_denote(vq.box, axes))
            deontic.append({
                "permission": _rule_label(a, perm),
                "prohibition": _rule_label(b, prohib),
                "verdict": res.verdict.value,
                "axes": res.to_dict()["axes"],
            })
    return ConflictReport(kleene_all(r.verdict for r in reports), reports, deontic)


def _connective(v1: RuleView, v2: RuleView) -> Connective:
    if Connective.XONE in (v1.connective, v2.connective):
        return Connective.XONE
    if Connective.OR in (v1.connective, v2.connective):
        return Connective.OR
    return Connective.AND


# -- subsumption -------------------------------------------------------------

@dataclass
class SubsumptionReport:
    verdict: SubsumptionVerdict
    pairs: List[Tuple[str, str, BoxResult]]
    unmatched: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        first = self.pairs[0][2].to_dict()["axes"] if self.pairs else {}
        return {
            "verdict": self.verdict.value,
            "axes": first,
            "pairs": [
                {"left": l, "right": r, **res.to_dict()} for l, r, res in self.pairs
            ],
            "unmatched": self.unmatched,
        }


def evaluate_subsumption(narrow: Policy, wide: Policy, profile: Optional[AxisProfile] = None) -> SubsumptionReport:
    """Does every matched rule of ``narrow`` lie inside the matching rule of ``wide``?"""
    profile = default_profile() if profile is None else profile
    pairs = matching_pairs(narrow, wide)
    if not pairs:
        raise RefinementError("no comparable rule pair (same action) between the two policies")
    results = []
    for r1, r2 in pairs:
        v1, v2 = view_rule(r1, profile), view_rule(r2, profile)
        if not (v1.is_box and v2.is_box):
            raise CompositionError("subsumption is only defined for conjunctive rules")
        axes = union_axes(v1, v2, profile, False)
        results.append((_rule_label(narrow, r1), _rule_label(wide, r2), box_subsumes(v1.box, v2.box, axes)))
    verdicts = [res.verdict for _, _, res in results]
    if any(v is SubsumptionVerdict.REFUTED for v in verdicts):
        agg = SubsumptionVerdict.REFUTED
    elif all(v is SubsumptionVerdict.CONFIRMED for v in verdicts):
        agg = SubsumptionVerdict.CONFIRMED
    else:
        agg = SubsumptionVerdict.UNKNOWN
    matched_n = {id(r1) for r1, _ in pairs}
    matched_w = {id(r2) for _, r2 in pairs}
    unmatched = [_rule_label(narrow, r) for r in narrow.rules_of(*GRANTING) if id(r) not in matched_n]
    unmatched += [_rule_label(wide, r) for r in wide.rules_of(*GRANTING) if id(r) not in matched_w]
    return SubsumptionReport(agg, results, unmatched)


# -- requests ---------------------------------------------------------------

@dataclass
class RequestReport:
    satisfied: Satisfaction
    rules: List[dict]
    unevaluated: List[str]

    @property
    def exit_code(self) -> int:
        if self.satisfied is Satisfaction.NO:
            return 1
        return 3 if self.unevaluated else 0

    def to_dict(self) -> dict:
        first = self.rules[0] if self.rules else {}
        return {
            "satisfied": self.satisfied.value,
            "axes": first.get("axes", {}),
            "violations": first.get("violations", []),
            "rules": self.rules,
            "unevaluated": self.unevaluated,
        }


def evaluate_request(
    policy: Policy,
    context: ExecutionContext,
    profile: Optional[AxisProfile] = None,
    action: Optional[str] = None,
) -> RequestReport:
    """Check a context against every permission/obligation rule (optionally one action)."""
    profile = default_profile() if profile is None else profile
    ctx_axes = [profile.lookup(iri) for iri in context.values if profile.lookup(iri) is not None]
    rules_out = []
    unevaluated: List[str] = []
    all_yes = True
    for rule in policy.rules_of(*GRANTING):
        if action is not None and rule.action != action:
            continue
        view = view_rule(rule, profile)
        axes: Dict[str, AxisOperand] = {a.iri: a for a in view.axes()}
        for a in ctx_axes:
            axes.setdefault(a.iri, a)
        results = [request_satisfied(context, b, list(axes.values())) for b in view.branches]
        yes = [r.satisfied is Satisfaction.YES for r in results]
        if view.connective is Connective.XONE:
            ok = sum(yes) == 1
        else:
            ok = any(yes)
        all_yes &= ok
        shown = next((r for r in results if r.satisfied is Satisfaction.YES), results[0])
        entry = {
            "rule": _rule_label(policy, rule),
            "connective": view.connective.value,
            "satisfied": (Satisfaction.YES if ok else Satisfaction.NO).value,
            **{k: v for k, v in shown.to_dict().items() if k != "satisfied"},
        }
        if len(results) > 1:
            entry["branches"] = [r.satisfied.value for r in results]
        rules_out.append(entry)
        for c in view.others:
            name = compact_iri(c.left_operand)
            if name not in unevaluated:
                unevaluated.append(name)
    sat = Satisfaction.YES if all_yes else Satisfaction.NO
    return RequestReport(sat, rules_out, unevaluated)
