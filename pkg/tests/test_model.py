from decimal import Decimal

import pytest

from oax.errors import ContextError, PolicyParseError, PrefixError, SchemaError
from oax.model import (
    ODRL,
    Connective,
    LogicalConstraint,
    Operator,
    RuleKind,
    compact_iri,
    expand_iri,
    parse_context,
    parse_policy,
    serialize_policy,
)

from conftest import op


def test_iris():
    assert expand_iri("odrl:lteq") == ODRL + "lteq"
    assert expand_iri("display") == ODRL + "display"
    assert expand_iri("http://x.org/a") == "http://x.org/a"
    assert compact_iri(expand_iri("oax:absoluteSizeWidth")) == "oax:absoluteSizeWidth"
    with pytest.raises(PrefixError):
        expand_iri("ex:thing")


def test_parse_bsb(fixtures):
    p = parse_policy((fixtures / "bsb.json").read_text())
    assert p.uid.endswith("bsb-display")
    (rule,) = p.rules
    assert rule.kind is RuleKind.PERMISSION
    assert rule.target.endswith("clm-4660")
    width = rule.constraints[0]
    assert width.operator is Operator.LTEQ
    assert width.right_operand == Decimal(600)
    assert width.left_operand == op("width").iri


def test_parse_nested(fixtures):
    p = parse_policy((fixtures / "either-or.json").read_text())
    (c,) = p.rules[0].constraints
    assert isinstance(c, LogicalConstraint) and c.connective is Connective.OR
    assert all(b.connective is Connective.AND for b in c.branches)


def test_json_error_position():
    with pytest.raises(PolicyParseError) as err:
        parse_policy('{"uid": "a",\n "permission": [}')
    assert err.value.line == 2


@pytest.mark.parametrize("doc,msg", [
    ('[]', "JSON object"),
    ('{"permission": []}', "uid"),
    ('{"uid": "a", "extra": 1}', "top-level"),
    ('{"uid": "a", "permission": [{"constraint": []}]}', "no action"),
    ('{"uid": "a", "permission": [{"action": "use", "constraint": [{"leftOperand": "x"}]}]}', "missing"),
    ('{"uid": "a", "permission": [{"action": "use", "constraint": [{"leftOperand": "x", "operator": "odrl:near", "rightOperand": 1}]}]}', "unknown operator"),
    ('{"uid": "a", "permission": [{"action": "use", "constraint": [{"or": [{"leftOperand": "x", "operator": "eq", "rightOperand": 1}]}]}]}', "two operands"),
    ('{"uid": "a", "permission": [{"action": "use", "constraint": [{"leftOperand": "x", "operator": "eq", "rightOperand": true}]}]}', "number or a string"),
])
def test_schema_errors(doc, msg):
    with pytest.raises(SchemaError, match=msg):
        parse_policy(doc)


def test_round_trip(fixtures):
    for path in sorted(fixtures.glob("*.json")):
        if path.name == "side-verdicts.json":
            continue
        p = parse_policy(path.read_text())
        text = serialize_policy(p)
        assert parse_policy(text) == p
        assert serialize_policy(parse_policy(text)) == text


def test_decimal_literals_survive():
    p = parse_policy('{"uid": "a", "permission": [{"action": "use", "constraint": '
                     '[{"leftOperand": "oax:absoluteSizeWidth", "operator": "lteq", "rightOperand": 0.1}]}]}')
    assert p.rules[0].constraints[0].right_operand == Decimal("0.1")
    assert '"rightOperand": 0.1' in serialize_policy(p)


def test_context_forms():
    ctx = parse_context("width=1200, height=400")
    assert ctx.get(op("width").iri) == Decimal(1200)
    ctx = parse_context('{"oax:spatialCoordinatesLatitude": 95}')
    assert ctx.outside_domain == {op("lat").iri}
    assert parse_context("").values == {}


@pytest.mark.parametrize("text", ["width", "width=abc", "width=1,width=2", "colour=3", "width=inf",
                                  '{"width": 1, "width": 2}', '{"width": true}'])
def test_context_errors(text):
    with pytest.raises(ContextError):
        parse_context(text)
