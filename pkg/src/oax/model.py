"""Policy data model and the JSON reader/writer for the supported ODRL subset.

The accepted document shape is described in ``docs/policy-format.md``.  Only
two prefixes are understood (``odrl:`` and ``oax:``); there is no JSON-LD
``@context`` processing.  Bare terms (``"lteq"``, ``"display"``) are read as
ODRL vocabulary terms.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Mapping, Optional, Tuple, Union

from .errors import ContextError, PolicyParseError, PrefixError, SchemaError

ODRL = "http://www.w3.org/ns/odrl/2/"
OAX = "http://w3id.org/odrl/spatial-axis#"
PREFIXES = {"odrl": ODRL, "oax": OAX}


class Operator(enum.Enum):
    EQ = "eq"
    NEQ = "neq"
    LT = "lt"
    LTEQ = "lteq"
    GT = "gt"
    GTEQ = "gteq"
    IS_A = "isA"
    HAS_PART = "hasPart"
    IS_PART_OF = "isPartOf"
    IS_ALL_OF = "isAllOf"
    IS_ANY_OF = "isAnyOf"
    IS_NONE_OF = "isNoneOf"

    @property
    def iri(self) -> str:
        return ODRL + self.value


class Connective(enum.Enum):
    AND = "and"
    OR = "or"
    XONE = "xone"


class RuleKind(enum.Enum):
    PERMISSION = "permission"
    PROHIBITION = "prohibition"
    OBLIGATION = "obligation"


Literal = Union[Decimal, str]
RightOperand = Union[Literal, Tuple[Literal, ...]]


@dataclass(frozen=True)
class Constraint:
    left_operand: str
    operator: Operator
    right_operand: RightOperand
    unit: Optional[str] = None
    uid: Optional[str] = None


@dataclass(frozen=True)
class LogicalConstraint:
    connective: Connective
    branches: Tuple[Union[Constraint, "LogicalConstraint"], ...]
    uid: Optional[str] = None

    def __post_init__(self):
        if not self.branches:
            raise SchemaError(f"'{self.connective.value}' needs at least one operand")
        if self.connective is not Connective.AND and len(self.branches) < 2:
            raise SchemaError(f"'{self.connective.value}' needs at least two operands")


ConstraintLike = Union[Constraint, LogicalConstraint]


@dataclass(frozen=True)
class Rule:
    kind: RuleKind
    action: str
    constraints: Tuple[ConstraintLike, ...] = ()
    target: Optional[str] = None


@dataclass(frozen=True)
class Policy:
    uid: str
    rules: Tuple[Rule, ...] = ()
    profile: Optional[str] = None

    def __post_init__(self):
        if not self.uid:
            raise SchemaError("policy uid must be a non-empty string")

    def rules_of(self, *kinds: RuleKind):
        return [r for r in self.rules if r.kind in kinds]


@dataclass(frozen=True)
class ExecutionContext:
    """Observed per-axis values, keyed by full axis-operand IRI."""

    values: Mapping[str, Decimal] = field(default_factory=dict)
    outside_domain: frozenset = frozenset()

    def get(self, iri: str) -> Optional[Decimal]:
        return self.values.get(iri)


# -- IRIs ----------------------------------------------------------------

_ABSOLUTE = re.compile(r"^(https?://|urn:)")


def expand_iri(term: str) -> str:
    if not isinstance(term, str) or not term:
        raise SchemaError(f"expected an IRI string, got {term!r}")
    if _ABSOLUTE.match(term):
        return term
    if ":" in term:
        prefix, local = term.split(":", 1)
        if prefix not in PREFIXES:
            raise PrefixError(f"unknown prefix '{prefix}:' in {term!r} (known: odrl:, oax:)")
        return PREFIXES[prefix] + local
    return ODRL + term


def compact_iri(iri: str) -> str:
    for prefix, ns in PREFIXES.items():
        if iri.startswith(ns) and len(iri) > len(ns):
            return f"{prefix}:{iri[len(ns):]}"
    return iri


# -- parsing ---------------------------------------------------------------

_OPERATORS = {op.value: op for op in Operator}
_POLICY_KEYS = {"uid", "permission", "prohibition", "obligation", "profile", "@context", "@type"}
_RULE_KEYS = {"action", "constraint", "target"}
_ATOMIC_KEYS = {"leftOperand", "operator", "rightOperand", "unit", "uid"}
_CONNECTIVES = {c.value: c for c in Connective}


def _load_json(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        return json.loads(text, parse_float=Decimal, parse_int=Decimal)
    except json.JSONDecodeError as exc:
        raise PolicyParseError(exc.msg, exc.lineno, exc.colno) from None


def _parse_operator(raw) -> Operator:
    iri = expand_iri(raw)
    if not iri.startswith(ODRL) or iri[len(ODRL):] not in _OPERATORS:
        raise SchemaError(f"unknown operator {raw!r}")
    return _OPERATORS[iri[len(ODRL):]]


def _parse_literal(raw, where) -> Literal:
    if isinstance(raw, dict):
        if "@value" not in raw:
            raise SchemaError(f"{where}: typed literal without '@value'")
        raw = raw["@value"]
    if isinstance(raw, Decimal):
        return raw
    if isinstance(raw, str):
        return raw
    raise SchemaError(f"{where}: rightOperand must be a number or a string, got {raw!r}")


def _parse_right(raw, where) -> RightOperand:
    if isinstance(raw, list):
        if not raw:
            raise SchemaError(f"{where}: empty rightOperand list")
        return tuple(_parse_literal(x, where) for x in raw)
    return _parse_literal(raw, where)


def _parse_constraint(obj, where) -> ConstraintLike:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: constraint must be an object")
    if "leftOperand" in obj:
        extra = set(obj) - _ATOMIC_KEYS
        if extra:
            raise SchemaError(f"{where}: unexpected key(s) {sorted(extra)}")
        for key in ("operator", "rightOperand"):
            if key not in obj:
                raise SchemaError(f"{where}: missing '{key}'")
        return Constraint(
            left_operand=expand_iri(obj["leftOperand"]),
            operator=_parse_operator(obj["operator"]),
            right_operand=_parse_right(obj["rightOperand"], where),
            unit=expand_iri(obj["unit"]) if obj.get("unit") is not None else None,
            uid=obj.get("uid"),
        )
    keys = set(obj) - {"uid"}
    if len(keys) != 1 or next(iter(keys)) not in _CONNECTIVES:
        raise SchemaError(
            f"{where}: expected 'leftOperand' or exactly one of and/or/xone, got {sorted(keys)}"
        )
    key = next(iter(keys))
    raw = obj[key]
    if isinstance(raw, dict) and set(raw) == {"@list"}:
        raw = raw["@list"]
    if not isinstance(raw, list):
        raise SchemaError(f"{where}.{key}: operands must be a list")
    branches = tuple(_parse_constraint(b, f"{where}.{key}[{i}]") for i, b in enumerate(raw))
    return LogicalConstraint(_CONNECTIVES[key], branches, uid=obj.get("uid"))


def _parse_rule(obj, kind: RuleKind, where) -> Rule:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: rule must be an object")
    extra = set(obj) - _RULE_KEYS
    if extra:
        raise SchemaError(f"{where}: unexpected key(s) {sorted(extra)}")
    if "action" not in obj:
        raise SchemaError(f"{where}: rule has no action")
    raw = obj.get("constraint", [])
    if isinstance(raw, dict):
        raw = [raw]
    if not isinstance(raw, list):
        raise SchemaError(f"{where}.constraint: must be a list")
    constraints = tuple(_parse_constraint(c, f"{where}.constraint[{i}]") for i, c in enumerate(raw))
    target = obj.get("target")
    return Rule(kind, expand_iri(obj["action"]), constraints, target)


def parse_policy(text) -> Policy:
    doc = _load_json(text)
    return policy_from_dict(doc)


def policy_from_dict(doc) -> Policy:
    if not isinstance(doc, dict):
        raise SchemaError("policy document must be a JSON object")
    extra = set(doc) - _POLICY_KEYS
    if extra:
        raise SchemaError(f"unexpected top-level key(s) {sorted(extra)}")
    uid = doc.get("uid")
    if not isinstance(uid, str) or not uid:
        raise SchemaError("policy uid must be a non-empty string")
    rules = []
    for kind in RuleKind:
        raw = doc.get(kind.value, [])
        if isinstance(raw, dict):
            raw = [raw]
        if not isinstance(raw, list):
            raise SchemaError(f"'{kind.value}' must be a list of rules")
        rules.extend(_parse_rule(r, kind, f"{kind.value}[{i}]") for i, r in enumerate(raw))
    profile = doc.get("profile")
    return Policy(uid, tuple(rules), expand_iri(profile) if profile else None)


# -- serialisation -----------------------------------------------------------

_DECIMAL_TAG = "@@decimal@@"


def _literal_out(v):
    return f"{_DECIMAL_TAG}{v}" if isinstance(v, Decimal) else v


def _constraint_out(c: ConstraintLike) -> dict:
    if isinstance(c, LogicalConstraint):
        out = {c.connective.value: [_constraint_out(b) for b in c.branches]}
    else:
        right = c.right_operand
        out = {
            "leftOperand": compact_iri(c.left_operand),
            "operator": f"odrl:{c.operator.value}",
            "rightOperand": [_literal_out(x) for x in right] if isinstance(right, tuple) else _literal_out(right),
        }
        if c.unit is not None:
            out["unit"] = compact_iri(c.unit)
    if c.uid is not None:
        out["uid"] = c.uid
    return out


def policy_to_dict(p: Policy) -> dict:
    doc = {"uid": p.uid}
    if p.profile:
        doc["profile"] = p.profile
    for kind in RuleKind:
        rules = p.rules_of(kind)
        if not rules:
            continue
        doc[kind.value] = []
        for r in rules:
            out = {"action": compact_iri(r.action)}
            if r.target is not None:
                out["target"] = r.target
            if r.constraints:
                out["constraint"] = [_constraint_out(c) for c in r.constraints]
            doc[kind.value].append(out)
    return doc


def serialize_policy(p: Policy, indent: Optional[int] = 2) -> str:
    text = json.dumps(policy_to_dict(p), indent=indent, ensure_ascii=False)
    # decimals are emitted as JSON numbers without a float round trip
    return re.sub(rf'"{_DECIMAL_TAG}([^"]+)"', r"\1", text)


# -- execution context -------------------------------------------------------

def _context_pairs(text: str):
    stripped = text.strip()
    if not stripped:
        return []
    if stripped.startswith("{"):
        def no_dupes(pairs):
            seen = set()
            for k, _ in pairs:
                if k in seen:
                    raise ContextError(f"duplicate context key {k!r}")
                seen.add(k)
            return dict(pairs)

        try:
            obj = json.loads(stripped, parse_float=Decimal, parse_int=Decimal, object_pairs_hook=no_dupes)
        except json.JSONDecodeError as exc:
            raise PolicyParseError(exc.msg, exc.lineno, exc.colno) from None
        return [(k, v) for k, v in obj.items()]
    pairs = []
    for chunk in stripped.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ContextError(f"expected axisOperand=decimal, got {chunk!r}")
        key, value = chunk.split("=", 1)
        pairs.append((key.strip(), value.strip()))
    return pairs


def parse_context(text: str, profile=None) -> ExecutionContext:
    """Read ``width=1200,height=400`` style pairs or a JSON object."""
    from .profile import default_profile

    profile = profile or default_profile()
    values = {}
    outside = set()
    for key, raw in _context_pairs(text):
        operand = profile.resolve(key)
        if operand is None:
            raise ContextError(f"unknown axis operand {key!r}")
        if isinstance(raw, Decimal):
            value = raw
        elif isinstance(raw, str):
            try:
                value = Decimal(raw)
            except InvalidOperation:
                raise ContextError(f"non-numeric value for {key}: {raw!r}") from None
            if not value.is_finite():
                raise ContextError(f"non-finite value for {key}: {raw!r}")
        else:
            raise ContextError(f"non-numeric value for {key}: {raw!r}")
        if operand.iri in values:
            raise ContextError(f"duplicate context key {key!r}")
        values[operand.iri] = value
        if not _within_domain(operand, value):
            outside.add(operand.iri)
    return ExecutionContext(values, frozenset(outside))


def _within_domain(operand, value) -> bool:
    from .interval import Density

    if operand.domain.density is Density.INTEGER and value != value.to_integral_value():
        return False
    return operand.domain.contains(value)
