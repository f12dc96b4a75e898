"""Cross-policy or/xone verdicts and cross-domain aggregation."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CompositionError, PolicyParseError, SchemaError
from .interval import AxisConstraint
from .model import Connective, compact_iri, expand_iri
from .profile import AxisOperand
from .verdict import BoxResult, Verdict3, box_verdict, kleene_all


@dataclass(frozen=True)
class BranchSet:
    """Disjunction of boxes; each branch is an implicit-And constraint set."""

    branches: Tuple[Tuple[AxisConstraint, ...], ...]
    connective: Connective = Connective.OR

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(tuple(b) for b in self.branches))
        if not self.branches:
            raise CompositionError("branch set must have at least one branch")

    def __len__(self):
        return len(self.branches)

    def axes(self) -> List[AxisOperand]:
        seen: Dict[str, AxisOperand] = {}
        for b in self.branches:
            for c in b:
                seen.setdefault(c.operand.iri, c.operand)
        return list(seen.values())


@dataclass(frozen=True)
class PairMatrix:
    rows: Tuple[Tuple[BoxResult, ...], ...]

    def verdicts(self) -> List[Verdict3]:
        return [cell.verdict for row in self.rows for cell in row]

    def count(self, v: Verdict3) -> int:
        return sum(1 for x in self.verdicts() if x is v)

    def to_list(self):
        return [[cell.verdict.value for cell in row] for row in self.rows]


@dataclass(frozen=True)
class CompositionResult:
    verdict: Verdict3
    matrix: PairMatrix

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "pairs": self.matrix.to_list()}


def shared_axes(b1: BranchSet, b2: BranchSet, axes: Optional[Sequence[AxisOperand]] = None) -> List[AxisOperand]:
    union: Dict[str, AxisOperand] = {}
    for a in b1.axes() + b2.axes():
        union.setdefault(a.iri, a)
    if axes is None:
        return list(union.values())
    allowed = {a.iri for a in axes}
    outside = sorted(compact_iri(i) for i in union if i not in allowed)
    if outside:
        raise CompositionError(f"branches target axes outside the shared axis set: {outside}")
    return list(axes)


def pair_matrix(b1: BranchSet, b2: BranchSet, axes=None) -> PairMatrix:
    axes = shared_axes(b1, b2, axes)
    return PairMatrix(tuple(tuple(box_verdict(l, r, axes) for r in b2.branches) for l in b1.branches))


def or_from_matrix(m: PairMatrix) -> Verdict3:
    vs = m.verdicts()
    if any(v is Verdict3.COMPATIBLE for v in vs):
        return Verdict3.COMPATIBLE
    if all(v is Verdict3.CONFLICT for v in vs):
        return Verdict3.CONFLICT
    return Verdict3.UNKNOWN


def xone_from_matrix(m: PairMatrix) -> Verdict3:
    vs = m.verdicts()
    compatible = m.count(Verdict3.COMPATIBLE)
    conflict = m.count(Verdict3.CONFLICT)
    if compatible == 1 and conflict == len(vs) - 1:
        return Verdict3.COMPATIBLE
    if conflict == len(vs):
        return Verdict3.CONFLICT
    return Verdict3.UNKNOWN


def or_verdict(b1: BranchSet, b2: BranchSet, axes=None) -> CompositionResult:
    m = pair_matrix(b1, b2, axes)
    return CompositionResult(or_from_matrix(m), m)


def xone_verdict(b1: BranchSet, b2: BranchSet, axes=None) -> CompositionResult:
    if len(b1) < 2 or len(b2) < 2:
        raise CompositionError("xone needs at least two branches on each side")
    m = pair_matrix(b1, b2, axes)
    return CompositionResult(xone_from_matrix(m), m)


class Source(enum.Enum):
    DIMENSIONAL = "dimensional"
    CONCEPT = "concept"
    SCALAR = "scalar"


@dataclass(frozen=True)
class LabeledVerdict:
    operand: str
    source: Source
    verdict: Verdict3
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "operand": compact_iri(self.operand),
            "source": self.source.value,
            "verdict": self.verdict.value,
            "note": self.note,
        }


def cross_domain_verdict(vs: Sequence[LabeledVerdict]) -> Verdict3:
    if not vs:
        raise CompositionError("cross-domain verdict needs at least one operand verdict")
    return kleene_all(v.verdict for v in vs)


_SOURCES = {
    "dimensional": Source.DIMENSIONAL,
    "concept": Source.CONCEPT,
    "conceptvalued": Source.CONCEPT,
    "scalar": Source.SCALAR,
}
_VERDICTS = {v.value.lower(): v for v in Verdict3}


def load_labeled_verdicts(text: str) -> List[LabeledVerdict]:
    """Read externally supplied verdict labels (JSON list of objects)."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolicyParseError(exc.msg, exc.lineno, exc.colno) from None
    if isinstance(raw, dict):
        raw = [raw]
    if not isinstance(raw, list):
        raise SchemaError("verdict side file must hold a list of objects")
    out = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or not {"operand", "verdict"} <= set(entry):
            raise SchemaError(f"entry {i}: needs 'operand' and 'verdict'")
        source = _SOURCES.get(str(entry.get("source", "concept")).lower())
        verdict = _VERDICTS.get(str(entry["verdict"]).lower())
        if source is None or verdict is None:
            raise SchemaError(f"entry {i}: bad source or verdict")
        operand = entry["operand"]
        if ":" in operand:
            operand = expand_iri(operand)
        out.append(LabeledVerdict(operand, source, verdict, entry.get("note", "")))
    return out
