"""TPTP-FOF and SMT-LIB emission for constraint-pair problems.

FOF conjecture polarity depends on the expected verdict, so that every
submitted verdict maps to the statuses of :data:`STATUS_TABLE`:

* ConflictCheck / Conflict    ``~ ? [X..] : (L & R)``            Theorem
* ConflictCheck / Compatible  ``? [X..] : (L & R)``              Theorem
* SubsumptionCheck            ``! [X..] : (L => R)``             Theorem or CounterSatisfiable

For xone, "Compatible" means exactly one branch pair overlaps, so the
positive conjecture is a disjunction over pairs of (this pair overlaps and no
other pair does).  The SMT side asserts the witness formula (both sides for a
conflict check, left and not right for subsumption) and expects sat/unsat.

Open bounds on integer-discrete axes are normalised to closed integer bounds
before emission, so the dense FOF axioms serve both densities.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .composition import BranchSet, or_verdict, xone_verdict
from .errors import CompositionError, NotSubmittableError, OaxError
from .evaluation import matching_pairs, union_axes, view_rule
from .interval import AxisConstraint, Density, format_rational
from .model import Connective, Operator, Policy, compact_iri
from .profile import AxisOperand, AxisProfile, default_profile
from .verdict import SubsumptionVerdict, Verdict3, box_subsumes, box_verdict


class Relation(enum.Enum):
    CONFLICT = "ConflictCheck"
    SUBSUMPTION = "SubsumptionCheck"


STATUS_TABLE = {
    Verdict3.CONFLICT: ("Theorem", "unsat"),
    Verdict3.COMPATIBLE: ("Theorem", "sat"),
    SubsumptionVerdict.CONFIRMED: ("Theorem", "unsat"),
    SubsumptionVerdict.REFUTED: ("CounterSatisfiable", "sat"),
}

_RELATION_VERDICTS = {
    Relation.CONFLICT: (Verdict3.CONFLICT, Verdict3.COMPATIBLE),
    Relation.SUBSUMPTION: (SubsumptionVerdict.CONFIRMED, SubsumptionVerdict.REFUTED),
}

Verdict = Union[Verdict3, SubsumptionVerdict]
Branch = Tuple[AxisConstraint, ...]


def expected_statuses(relation: Relation, verdict: Verdict) -> Tuple[str, str]:
    if verdict in (Verdict3.UNKNOWN, SubsumptionVerdict.UNKNOWN):
        raise NotSubmittableError("axis unconstrained: an Unknown verdict is not submitted to provers")
    if verdict not in _RELATION_VERDICTS[relation]:
        raise ValueError(f"{verdict.value} is not a {relation.value} verdict")
    return STATUS_TABLE[verdict]


@dataclass(frozen=True)
class ProverProblem:
    id: str
    category: str
    relation: Relation
    connective: Connective
    left: Tuple[Branch, ...]
    right: Tuple[Branch, ...]
    expected: Verdict
    axes: Tuple[AxisOperand, ...]
    title: str = ""
    tags: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(tuple(b) for b in self.left))
        object.__setattr__(self, "right", tuple(tuple(b) for b in self.right))
        object.__setattr__(self, "axes", tuple(self.axes))
        expected_statuses(self.relation, self.expected)
        if self.relation is Relation.SUBSUMPTION and self.connective is not Connective.AND:
            raise ValueError("subsumption problems are conjunctive")
        if self.connective is Connective.AND and (len(self.left) != 1 or len(self.right) != 1):
            raise ValueError("conjunctive problems have exactly one branch per side")
        known = {a.iri for a in self.axes}
        for b in self.left + self.right:
            for c in b:
                if c.operand.iri not in known:
                    raise ValueError(f"{c.operand.short} is not among the problem axes")

    @property
    def expected_szs(self) -> str:
        return expected_statuses(self.relation, self.expected)[0]

    @property
    def expected_smt(self) -> str:
        return expected_statuses(self.relation, self.expected)[1]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "category": self.category,
            "title": self.title,
            "relation": self.relation.value,
            "connective": self.connective.value,
            "axes": [a.short for a in self.axes],
            "left": [[str(c) for c in b] for b in self.left],
            "right": [[str(c) for c in b] for b in self.right],
            "expected": self.expected.value,
            "expected_szs": self.expected_szs,
            "expected_smt": self.expected_smt,
            "constants": len(problem_constants(self)),
            "tags": list(self.tags),
        }


# -- normalisation --------------------------------------------------------------

def normalize(c: AxisConstraint) -> AxisConstraint:
    """Closed integer bound for strict comparisons on discrete axes."""
    if c.operand.domain.density is not Density.INTEGER:
        return c
    v = c.value
    if c.operator is Operator.GT:
        return AxisConstraint(c.operand, Operator.GTEQ, Fraction(v.numerator // v.denominator + 1))
    if c.operator is Operator.LT:
        return AxisConstraint(c.operand, Operator.LTEQ, Fraction(-((-v.numerator) // v.denominator) - 1))
    if c.operator is Operator.GTEQ and v.denominator != 1:
        return AxisConstraint(c.operand, Operator.GTEQ, Fraction(-((-v.numerator) // v.denominator)))
    if c.operator is Operator.LTEQ and v.denominator != 1:
        return AxisConstraint(c.operand, Operator.LTEQ, Fraction(v.numerator // v.denominator))
    return c


def domain_constraints(op: AxisOperand) -> List[AxisConstraint]:
    """Finite domain bounds as constraints (already closed on discrete axes)."""
    dom = op.domain
    out = []
    if dom.lower is not None:
        out.append(AxisConstraint(op, Operator.GTEQ if dom.lower_closed else Operator.GT, dom.lower))
    if dom.upper is not None:
        out.append(AxisConstraint(op, Operator.LTEQ if dom.upper_closed else Operator.LT, dom.upper))
    return out


def _emitted(p: ProverProblem):
    """Normalised branches plus the per-axis domain guards."""
    left = [[normalize(c) for c in b] for b in p.left]
    right = [[normalize(c) for c in b] for b in p.right]
    guards = [c for a in p.axes for c in domain_constraints(a)]
    return left, right, guards


def problem_constants(p: ProverProblem) -> List[Fraction]:
    left, right, guards = _emitted(p)
    values = {c.value for b in left + right for c in b} | {c.value for c in guards}
    return sorted(values)


def constant_name(q: Fraction) -> str:
    text = format_rational(q).replace("-", "m").replace(".", "p").replace("/", "d")
    return "n" + text


def ordering_fact_count(n: int) -> int:
    return n * (n - 1) // 2


# -- TPTP ---------------------------------------------------------------------

AXIS_FILE = "AXIS000-0.ax"
ORDER_FILE = "ORD001-0.ax"

_AXIS_AXIOMS = (
    ("lt_irreflexive", "! [X] : ~ lt(X,X)"),
    ("lt_transitive", "! [X,Y,Z] : ( ( lt(X,Y) & lt(Y,Z) ) => lt(X,Z) )"),
    ("lt_total", "! [X,Y] : ( lt(X,Y) | X = Y | lt(Y,X) )"),
    ("leq_def", "! [X,Y] : ( leq(X,Y) <=> ( lt(X,Y) | X = Y ) )"),
    ("geq_def", "! [X,Y] : ( geq(X,Y) <=> leq(Y,X) )"),
    ("gt_def", "! [X,Y] : ( gt(X,Y) <=> lt(Y,X) )"),
    ("in_eq_def", "! [X,V] : ( in_eq(X,V) <=> X = V )"),
    ("in_lt_def", "! [X,V] : ( in_lt(X,V) <=> lt(X,V) )"),
    ("in_lteq_def", "! [X,V] : ( in_lteq(X,V) <=> leq(X,V) )"),
    ("in_gt_def", "! [X,V] : ( in_gt(X,V) <=> gt(X,V) )"),
    ("in_gteq_def", "! [X,V] : ( in_gteq(X,V) <=> geq(X,V) )"),
)

# Density and unboundedness are guarded by num/1, which each problem asserts
# for its literal constants only; that keeps finite counter-models available
# for refuted subsumptions while still supplying open-bound witnesses.
_ORDER_AXIOMS = (
    ("density", "! [A,B] : ( ( num(A) & num(B) & lt(A,B) ) => ( lt(A,mid(A,B)) & lt(mid(A,B),B) ) )"),
    ("unbounded", "! [A] : ( num(A) => ( lt(A,above(A)) & lt(below(A),A) ) )"),
)


def _axiom_file(name: str, title: str, axioms) -> str:
    lines = [
        f"% File     : {name}",
        "% Domain   : ODRL spatial axes",
        f"% Contents : {title}",
        f"% Axioms   : {len(axioms)}",
        "",
    ]
    lines += [f"fof({n}, axiom, {f})." for n, f in axioms]
    return "\n".join(lines) + "\n"


def emit_axiom_files() -> Dict[str, str]:
    return {
        AXIS_FILE: _axiom_file(AXIS_FILE, "strict order, derived comparisons, interval membership", _AXIS_AXIOMS),
        ORDER_FILE: _axiom_file(ORDER_FILE, "density and unboundedness for open-bound witnesses", _ORDER_AXIOMS),
    }


def axiom_count() -> int:
    return len(_AXIS_AXIOMS) + len(_ORDER_AXIOMS)


_FOF_PRED = {
    Operator.EQ: None,
    Operator.LT: "lt",
    Operator.LTEQ: "leq",
    Operator.GT: "gt",
    Operator.GTEQ: "geq",
}


def _fof_atom(c: AxisConstraint, var: str) -> str:
    const = constant_name(c.value)
    pred = _FOF_PRED[c.operator]
    if pred is None:
        return f"{var} = {const}"
    return f"{pred}({var},{const})"


def _fof_conj(constraints, var_of) -> str:
    if not constraints:
        return "$true"
    return " & ".join(_fof_atom(c, var_of[c.operand.iri]) for c in constraints)


def _fof_box(branch, guards, var_of) -> str:
    return f"( {_fof_conj(list(guards) + list(branch), var_of)} )"


def _fof_or(branches, guards, var_of) -> str:
    if len(branches) == 1:
        return _fof_box(branches[0], guards, var_of)
    return "( " + " | ".join(_fof_box(b, (), var_of) for b in branches) + f" ) & {_fof_box((), guards, var_of)}"


def _fof_conjecture(p: ProverProblem, var_of) -> str:
    left, right, guards = _emitted(p)
    vs = ",".join(var_of[a.iri] for a in p.axes)
    if p.relation is Relation.SUBSUMPTION:
        return f"! [{vs}] : ( {_fof_box(left[0], guards, var_of)} => {_fof_box(right[0], guards, var_of)} )"
    overlap = f"? [{vs}] : ( {_fof_or(left, guards, var_of)} & {_fof_or(right, (), var_of)} )"
    if p.expected is Verdict3.CONFLICT:
        return f"~ ( {overlap} )"
    if p.connective is not Connective.XONE:
        return overlap
    pairs = [(l, r) for l in left for r in right]
    witness = [
        f"( ? [{vs}] : ( {_fof_box(l, guards, var_of)} & {_fof_box(r, (), var_of)} ) )" for l, r in pairs
    ]
    clauses = []
    for i in range(len(pairs)):
        others = [f"~ {w}" for j, w in enumerate(witness) if j != i]
        clauses.append("( " + " & ".join([witness[i]] + others) + " )")
    return "( " + "\n    | ".join(clauses) + " )"


def _var_names(p: ProverProblem) -> Dict[str, str]:
    return {a.iri: f"X{i + 1}" for i, a in enumerate(p.axes)}


def emit_tptp(p: ProverProblem) -> str:
    var_of = _var_names(p)
    consts = problem_constants(p)
    names = [constant_name(q) for q in consts]
    n = len(names)
    lines = [
        f"% Problem  : {p.id} ({p.category}) {p.title}".rstrip(),
        f"% Relation : {p.relation.value} / {p.connective.value}",
        f"% Expected : {p.expected.value}",
        f"% Status   : {p.expected_szs}",
        f"% SMT      : {p.expected_smt}",
    ]
    if p.relation is Relation.CONFLICT:
        pol = "universal non-overlap" if p.expected is Verdict3.CONFLICT else "existential witness"
        lines.append(f"% Polarity : {pol}, so the expected verdict is a Theorem")
    else:
        lines.append("% Polarity : universal containment; Theorem iff Confirmed")
    for a in p.axes:
        lines.append(f"% Axis     : {var_of[a.iri]} = {a.short} {a.domain} ({a.domain.density.value})")
    lines.append(f"% Ordering : {ordering_fact_count(n)} facts = n(n-1)/2 for n = {n} constants")
    lines.append("")
    lines.append(f"include('ax/{AXIS_FILE}').")
    lines.append(f"include('ax/{ORDER_FILE}').")
    lines.append("")
    for name in names:
        lines.append(f"fof(num_{name}, axiom, num({name})).")
    # adjacent links first, then the remaining pairwise facts
    facts = [(i, i + 1) for i in range(n - 1)]
    facts += [(i, j) for i, j in combinations(range(n), 2) if j != i + 1]
    for i, j in facts:
        lines.append(f"fof(ord_{names[i]}_{names[j]}, axiom, lt({names[i]},{names[j]})).")
    lines.append("")
    lines.append(f"fof(goal, conjecture,\n    {_fof_conjecture(p, var_of)} ).")
    return "\n".join(lines) + "\n"


# -- SMT-LIB --------------------------------------------------------------------

def _smt_num(q: Fraction, integer: bool) -> str:
    if integer:
        if q.denominator != 1:
            raise ValueError(f"non-integral literal {q} on an integer axis")
        text = str(abs(q.numerator))
    elif q.denominator == 1:
        text = f"{abs(q.numerator)}.0"
    elif "/" in format_rational(q):
        text = f"(/ {abs(q.numerator)}.0 {q.denominator}.0)"
    else:
        text = format_rational(abs(q))
    return f"(- {text})" if q < 0 else text


_SMT_OP = {Operator.EQ: "=", Operator.LT: "<", Operator.LTEQ: "<=", Operator.GT: ">", Operator.GTEQ: ">="}


def _smt_atom(c: AxisConstraint, var_of) -> str:
    integer = c.operand.domain.density is Density.INTEGER
    return f"({_SMT_OP[c.operator]} {var_of[c.operand.iri]} {_smt_num(c.value, integer)})"


def _smt_and(constraints, var_of) -> str:
    atoms = [_smt_atom(c, var_of) for c in constraints]
    if not atoms:
        return "true"
    if len(atoms) == 1:
        return atoms[0]
    return "(and " + " ".join(atoms) + ")"


def _smt_or(branches, var_of) -> str:
    boxes = [_smt_and(b, var_of) for b in branches]
    return boxes[0] if len(boxes) == 1 else "(or " + " ".join(boxes) + ")"


def _smt_sort(a: AxisOperand) -> str:
    return "Int" if a.domain.density is Density.INTEGER else "Real"


def _smt_logic(p: ProverProblem) -> str:
    sorts = {_smt_sort(a) for a in p.axes}
    if sorts == {"Int"}:
        arith = "LIA"
    elif sorts == {"Real"}:
        arith = "LRA"
    else:
        arith = "LIRA"
    return arith if p.connective is Connective.XONE else "QF_" + arith


def _smt_var_names(p: ProverProblem) -> Dict[str, str]:
    return {a.iri: a.name for a in p.axes}


def emit_smt(p: ProverProblem) -> str:
    var_of = _smt_var_names(p)
    left, right, _ = _emitted(p)
    guards = [c for a in p.axes for c in domain_constraints(a)]
    lines = [
        f"; Problem  : {p.id} ({p.category}) {p.title}".rstrip(),
        f"; Relation : {p.relation.value} / {p.connective.value}",
        f"; Expected : {p.expected.value} -> {p.expected_smt}",
        f"(set-info :status {p.expected_smt})",
        f"(set-logic {_smt_logic(p)})",
    ]
    if p.connective is Connective.XONE:
        lines += _smt_xone(p, left, right, guards)
    else:
        for a in p.axes:
            lines.append(f"(declare-const {var_of[a.iri]} {_smt_sort(a)})")
        if guards:
            lines.append(f"(assert {_smt_and(guards, var_of)})")
        if p.relation is Relation.SUBSUMPTION:
            lines.append(f"(assert {_smt_and(left[0], var_of)})")
            lines.append(f"(assert (not {_smt_and(right[0], var_of)}))")
        else:
            lines.append(f"(assert {_smt_or(left, var_of)})")
            lines.append(f"(assert {_smt_or(right, var_of)})")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def _smt_xone(p: ProverProblem, left, right, guards) -> List[str]:
    """Exactly one branch pair overlaps: one witness plus non-overlap of the rest."""
    var_of = _smt_var_names(p)
    binder = " ".join(f"({var_of[a.iri]} {_smt_sort(a)})" for a in p.axes)
    pairs = [(l, r) for l in left for r in right]

    def overlap(pair):
        l, r = pair
        return _smt_and(list(guards) + list(l) + list(r), var_of)

    clauses = []
    for i, pair in enumerate(pairs):
        parts = [f"(exists ({binder}) {overlap(pair)})"]
        parts += [f"(forall ({binder}) (not {overlap(q)}))" for j, q in enumerate(pairs) if j != i]
        clauses.append("  (and " + "\n       ".join(parts) + ")")
    return ["(assert (or", *clauses, "))"]


def describe(p: ProverProblem) -> str:
    axes = ", ".join(compact_iri(a.iri) for a in p.axes)
    return f"{p.id} [{p.category}] {p.relation.value}/{p.connective.value} over {axes}: {p.expected.value}"


def internal_verdict(p: ProverProblem) -> Verdict:
    """Recompute the problem's verdict with the verdict engine."""
    if p.relation is Relation.SUBSUMPTION:
        return box_subsumes(p.left[0], p.right[0], p.axes).verdict
    if p.connective is Connective.AND:
        return box_verdict(p.left[0], p.right[0], p.axes).verdict
    b1, b2 = BranchSet(p.left, p.connective), BranchSet(p.right, p.connective)
    if p.connective is Connective.XONE:
        return xone_verdict(b1, b2, p.axes).verdict
    return or_verdict(b1, b2, p.axes).verdict


def check_closed_loop(problems: Sequence[ProverProblem]) -> List[str]:
    """Problem ids whose recorded expectation disagrees with the engine."""
    return [p.id for p in problems if internal_verdict(p) is not p.expected]


def problem_for_pair(
    p1: Policy,
    p2: Policy,
    relation: Relation,
    profile: Optional[AxisProfile] = None,
    index: int = 0,
    problem_id: Optional[str] = None,
) -> ProverProblem:
    """Prover problem for the ``index``-th same-action rule pair of two policies."""
    profile = default_profile() if profile is None else profile
    pairs = matching_pairs(p1, p2)
    if not pairs:
        raise OaxError("no comparable rule pair (same action) between the two policies")
    if not 0 <= index < len(pairs):
        raise OaxError(f"pair index {index} out of range (0..{len(pairs) - 1})")
    r1, r2 = pairs[index]
    v1, v2 = view_rule(r1, profile), view_rule(r2, profile)
    if v1.others or v2.others:
        names = sorted({compact_iri(c.left_operand) for c in v1.others + v2.others})
        raise NotSubmittableError(f"non-axis operands cannot be encoded: {names}")
    if relation is Relation.SUBSUMPTION and not (v1.is_box and v2.is_box):
        raise CompositionError("subsumption is only defined for conjunctive rules")
    connective = Connective.AND
    if Connective.XONE in (v1.connective, v2.connective):
        connective = Connective.XONE
    elif Connective.OR in (v1.connective, v2.connective):
        connective = Connective.OR
    axes = union_axes(v1, v2, profile, False)
    if not axes:
        raise NotSubmittableError("the rule pair constrains no axis")
    tails = [re.sub(r"[^A-Za-z0-9]+", "_", p.uid.rstrip("/#").rsplit("/", 1)[-1]).strip("_") for p in (p1, p2)]
    pid = problem_id or f"{tails[0]}_{tails[1]}_{index}"
    placeholder = Verdict3.CONFLICT if relation is Relation.CONFLICT else SubsumptionVerdict.CONFIRMED
    probe = ProverProblem(pid, "X", relation, connective, v1.branches, v2.branches, placeholder, axes)
    verdict = internal_verdict(probe)
    return ProverProblem(pid, "X", relation, connective, v1.branches, v2.branches, verdict, axes)
