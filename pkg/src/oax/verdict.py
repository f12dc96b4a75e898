"""Per-axis and box-level verdicts over axis-specific constraints.

Verdicts live in Strong Kleene logic with ``CONFLICT < UNKNOWN < COMPATIBLE``:
conjunction is ``min`` and disjunction is ``max``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import reduce, total_ordering
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import AxisMismatchError
from .interval import AxisConstraint, Density, Interval, denote, intersect, is_subset, to_rational
from .model import compact_iri as _short
from .model import ExecutionContext, Operator
from .profile import AxisOperand


@total_ordering
class Verdict3(enum.Enum):
    CONFLICT = "Conflict"
    UNKNOWN = "Unknown"
    COMPATIBLE = "Compatible"

    @property
    def rank(self) -> int:
        return _RANK[self]

    def __lt__(self, other):
        if not isinstance(other, Verdict3):
            return NotImplemented
        return self.rank < other.rank

    def __and__(self, other):
        return kleene_and(self, other)

    def __or__(self, other):
        return kleene_or(self, other)

    def __invert__(self):
        return kleene_not(self)


_RANK = {Verdict3.CONFLICT: 0, Verdict3.UNKNOWN: 1, Verdict3.COMPATIBLE: 2}


class SubsumptionVerdict(enum.Enum):
    CONFIRMED = "Confirmed"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


class Satisfaction(enum.Enum):
    YES = "Yes"
    NO = "No"


def kleene_and(a: Verdict3, b: Verdict3) -> Verdict3:
    return min(a, b)


def kleene_or(a: Verdict3, b: Verdict3) -> Verdict3:
    return max(a, b)


def kleene_not(a: Verdict3) -> Verdict3:
    if a is Verdict3.UNKNOWN:
        return a
    return Verdict3.COMPATIBLE if a is Verdict3.CONFLICT else Verdict3.CONFLICT


def kleene_all(verdicts: Iterable[Verdict3]) -> Verdict3:
    return reduce(kleene_and, verdicts, Verdict3.COMPATIBLE)


def kleene_any(verdicts: Iterable[Verdict3]) -> Verdict3:
    return reduce(kleene_or, verdicts, Verdict3.CONFLICT)


# -- per-axis -----------------------------------------------------------

def _same_axis(c1: AxisConstraint, c2: AxisConstraint) -> None:
    if c1.operand.iri != c2.operand.iri:
        raise AxisMismatchError(f"{c1.operand.short} and {c2.operand.short} are different axes")


def interval_verdict(a: Interval, b: Interval) -> Verdict3:
    return Verdict3.CONFLICT if intersect(a, b).is_empty() else Verdict3.COMPATIBLE


def interval_subsumes(a: Interval, b: Interval) -> SubsumptionVerdict:
    return SubsumptionVerdict.CONFIRMED if is_subset(a, b) else SubsumptionVerdict.REFUTED


def axis_verdict(c1: AxisConstraint, c2: AxisConstraint) -> Verdict3:
    """Always definite: Conflict iff the two denotations are disjoint."""
    _same_axis(c1, c2)
    return interval_verdict(denote(c1), denote(c2))


def axis_subsumes(c1: AxisConstraint, c2: AxisConstraint) -> SubsumptionVerdict:
    _same_axis(c1, c2)
    return interval_subsumes(denote(c1), denote(c2))


# -- boxes --------------------------------------------------------------

@dataclass(frozen=True)
class BoxDenotation:
    """Cartesian product of per-axis intervals.

    ``constrained`` holds the IRIs some constraint actually targets; the
    remaining axes carry their full domain.
    """

    axes: Mapping[str, Interval]
    constrained: frozenset = frozenset()
    operands: Tuple[AxisOperand, ...] = ()

    def __getitem__(self, iri: str) -> Interval:
        return self.axes[iri]

    def is_empty(self) -> bool:
        return any(iv.is_empty() for iv in self.axes.values())

    def empty_axes(self) -> List[str]:
        return [iri for iri, iv in self.axes.items() if iv.is_empty()]

    def contains(self, point: Mapping[str, object]) -> bool:
        return all(iv.contains(point[iri]) for iri, iv in self.axes.items())

    def same_intervals(self, other: "BoxDenotation") -> bool:
        return dict(self.axes) == dict(other.axes)

    def to_dict(self) -> Dict[str, str]:
        return {_short(iri): str(iv) for iri, iv in self.axes.items()}


def _axis_list(constraints: Sequence[AxisConstraint], axes) -> List[AxisOperand]:
    if axes is None:
        seen: Dict[str, AxisOperand] = {}
        for c in constraints:
            seen.setdefault(c.operand.iri, c.operand)
        return list(seen.values())
    return list(axes)


def box_denote(constraints: Sequence[AxisConstraint], axes: Optional[Sequence[AxisOperand]] = None) -> BoxDenotation:
    axes = _axis_list(constraints, axes)
    known = {a.iri for a in axes}
    for c in constraints:
        if c.operand.iri not in known:
            raise AxisMismatchError(f"{c.operand.short} is outside the axis set")
    intervals = {}
    constrained = set()
    for a in axes:
        iv = a.domain
        for c in constraints:
            if c.operand.iri == a.iri:
                iv = intersect(iv, denote(c))
                constrained.add(a.iri)
        intervals[a.iri] = iv
    return BoxDenotation(intervals, frozenset(constrained), tuple(axes))


def to_constraints(box: BoxDenotation) -> List[AxisConstraint]:
    """Express each face of ``box`` as gteq/gt and lteq/lt constraints."""
    out = []
    for op in box.operands:
        iv = box.axes[op.iri]
        if iv == op.domain and op.iri not in box.constrained:
            continue
        if iv.lower is not None:
            out.append(AxisConstraint(op, Operator.GTEQ if iv.lower_closed else Operator.GT, iv.lower))
        if iv.upper is not None:
            out.append(AxisConstraint(op, Operator.LTEQ if iv.upper_closed else Operator.LT, iv.upper))
    return out


@dataclass(frozen=True)
class AxisDetail:
    operand: AxisOperand
    left: Interval
    right: Interval
    left_constrained: bool
    right_constrained: bool
    verdict: object  # Verdict3 or SubsumptionVerdict

    @property
    def intersection(self) -> Interval:
        return intersect(self.left, self.right)

    def to_dict(self) -> dict:
        return {
            "left": str(self.left) if self.left_constrained else "unconstrained",
            "right": str(self.right) if self.right_constrained else "unconstrained",
            "intersection": str(self.intersection),
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class BoxResult:
    verdict: object
    axes: Dict[str, AxisDetail] = field(default_factory=dict)

    def axes_with(self, verdict) -> List[str]:
        return [iri for iri, d in self.axes.items() if d.verdict is verdict]

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "axes": {_short(iri): d.to_dict() for iri, d in self.axes.items()},
        }


def _pair_axes(c1, c2, axes):
    if axes is None:
        seen: Dict[str, AxisOperand] = {}
        for c in list(c1) + list(c2):
            seen.setdefault(c.operand.iri, c.operand)
        return list(seen.values())
    return list(axes)


def box_verdict(c1: Sequence[AxisConstraint], c2: Sequence[AxisConstraint], axes=None) -> BoxResult:
    """Aggregate per-axis verdicts; an axis constrained on one side only is Unknown.

    With ``axes=None`` the axis set is every axis either side targets.
    """
    axes = _pair_axes(c1, c2, axes)
    b1, b2 = box_denote(c1, axes), box_denote(c2, axes)
    return box_verdict_of(b1, b2)


def box_verdict_of(b1: BoxDenotation, b2: BoxDenotation) -> BoxResult:
    details = {}
    for op in b1.operands:
        left, right = b1.axes[op.iri], b2.axes[op.iri]
        lc, rc = op.iri in b1.constrained, op.iri in b2.constrained
        v = interval_verdict(left, right) if lc and rc else Verdict3.UNKNOWN
        details[op.iri] = AxisDetail(op, left, right, lc, rc, v)
    return BoxResult(kleene_all(d.verdict for d in details.values()), details)


def box_subsumes(c1: Sequence[AxisConstraint], c2: Sequence[AxisConstraint], axes=None) -> BoxResult:
    """Confirmed iff every axis of ``c1`` lies inside the matching axis of ``c2``."""
    axes = _pair_axes(c1, c2, axes)
    b1, b2 = box_denote(c1, axes), box_denote(c2, axes)
    details = {}
    for op in axes:
        left, right = b1.axes[op.iri], b2.axes[op.iri]
        lc, rc = op.iri in b1.constrained, op.iri in b2.constrained
        s = interval_subsumes(left, right) if lc and rc else SubsumptionVerdict.UNKNOWN
        details[op.iri] = AxisDetail(op, left, right, lc, rc, s)
    verdicts = [d.verdict for d in details.values()]
    if any(s is SubsumptionVerdict.REFUTED for s in verdicts):
        agg = SubsumptionVerdict.REFUTED
    elif all(s is SubsumptionVerdict.CONFIRMED for s in verdicts):
        agg = SubsumptionVerdict.CONFIRMED
    else:
        agg = SubsumptionVerdict.UNKNOWN
    return BoxResult(agg, details)


def deontic_overlap(permission: BoxDenotation, prohibition: BoxDenotation) -> BoxResult:
    """Overlapping permission/prohibition scopes clash (Conflict); disjoint ones do not."""
    if {o.iri for o in permission.operands} != {o.iri for o in prohibition.operands}:
        raise AxisMismatchError("permission and prohibition boxes range over different axes")
    res = box_verdict_of(permission, prohibition)
    details = {
        iri: AxisDetail(d.operand, d.left, d.right, d.left_constrained, d.right_constrained, kleene_not(d.verdict))
        for iri, d in res.axes.items()
    }
    return BoxResult(kleene_not(res.verdict), details)


# -- requests -------------------------------------------------------------

@dataclass(frozen=True)
class RequestAxis:
    operand: AxisOperand
    interval: Interval
    constrained: bool
    value: Optional[object]
    ok: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "interval": str(self.interval) if self.constrained else "unconstrained",
            "value": None if self.value is None else str(self.value),
            "ok": self.ok,
            "note": self.note,
        }


@dataclass(frozen=True)
class RequestResult:
    satisfied: Satisfaction
    axes: Dict[str, RequestAxis] = field(default_factory=dict)

    @property
    def violations(self) -> List[str]:
        return [iri for iri, a in self.axes.items() if not a.ok]

    def to_dict(self) -> dict:
        return {
            "satisfied": self.satisfied.value,
            "axes": {_short(iri): a.to_dict() for iri, a in self.axes.items()},
            "violations": [_short(i) for i in self.violations],
        }


def request_satisfied(context: ExecutionContext, constraints: Sequence[AxisConstraint], axes=None) -> RequestResult:
    """Yes iff every supplied / required axis value lies in its box interval.

    A constrained axis without a context value fails (closed world).  An
    unconstrained axis only needs its value, when given, inside the domain.
    """
    if axes is None:
        axes = _axis_list(constraints, None)
    box = box_denote(constraints, axes)
    details = {}
    for op in axes:
        iv = box.axes[op.iri]
        constrained = op.iri in box.constrained
        value = context.get(op.iri)
        if value is None:
            ok = not constrained
            note = "missing value" if constrained else ""
        elif not _member(op.domain, value):
            ok, note = False, f"outside domain {op.domain}"
        elif constrained and not _member(iv, value):
            ok, note = False, f"{value} not in {iv}"
        else:
            ok, note = True, ""
        details[op.iri] = RequestAxis(op, iv, constrained, value, ok, note)
    sat = Satisfaction.YES if all(d.ok for d in details.values()) else Satisfaction.NO
    return RequestResult(sat, details)


def _member(iv: Interval, value) -> bool:
    q = to_rational(value)
    if iv.density is Density.INTEGER and q.denominator != 1:
        return False
    return iv.contains(q)
