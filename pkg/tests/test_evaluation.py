import json

import pytest

from oax.composition import load_labeled_verdicts
from oax.errors import CompositionError, OaxError, RefinementError, UnsupportedOperatorError
from oax.evaluation import evaluate_conflict, evaluate_request, evaluate_subsumption, view_rule
from oax.model import Connective, expand_iri, parse_context, parse_policy
from oax.profile import AxisProfile
from oax.verdict import Satisfaction, SubsumptionVerdict, Verdict3

C, U, T = Verdict3.CONFLICT, Verdict3.UNKNOWN, Verdict3.COMPATIBLE


def load(fixtures, name):
    return parse_policy((fixtures / name).read_text())


def policy(uid, *constraints, action="display", kind="permission", extra=None):
    doc = {"uid": uid, kind: [{"action": action, "constraint": list(constraints)}]}
    doc.update(extra or {})
    return parse_policy(json.dumps(doc))


def c(left, operator, right):
    return {"leftOperand": left, "operator": operator, "rightOperand": right}


def test_bsb_conflict(fixtures):
    report = evaluate_conflict(load(fixtures, "bsb.json"), load(fixtures, "museum.json"))
    assert report.verdict is C
    assert report.sole_conflicting_axis == expand_iri("oax:absoluteSizeWidth")
    d = report.to_dict()
    assert d["axes"]["oax:absoluteSizeWidth"]["verdict"] == "Conflict"
    assert d["axes"]["oax:absoluteSizeHeight"]["verdict"] == "Compatible"
    scalar = [o for o in d["pairs"][0]["operands"] if o["source"] == "scalar"]
    assert {o["operand"] for o in scalar} == {"odrl:purpose", "odrl:spatial"}


def test_side_verdicts_replace_scalar(fixtures):
    side = load_labeled_verdicts((fixtures / "side-verdicts.json").read_text())
    report = evaluate_conflict(load(fixtures, "bsb.json"), load(fixtures, "museum.json"), external=side)
    sources = [o.source.value for o in report.pairs[0].operands]
    assert sources == ["dimensional", "dimensional", "concept", "concept"]
    assert report.verdict is C


def test_compatible_and_unknown():
    a = policy("a", c("oax:absoluteSizeWidth", "lteq", 600))
    b = policy("b", c("oax:absoluteSizeWidth", "gteq", 100))
    assert evaluate_conflict(a, b).verdict is T
    b2 = policy("b2", c("oax:absoluteSizeWidth", "gteq", 100), c("oax:absoluteSizeHeight", "lteq", 5))
    assert evaluate_conflict(a, b2).verdict is U


def test_full_axes_brings_in_family():
    a = policy("a", c("oax:absoluteSizeWidth", "lteq", 600))
    b = policy("b", c("oax:absoluteSizeWidth", "gteq", 100))
    report = evaluate_conflict(a, b, full_axes=True)
    assert list(report.to_dict()["axes"]) == [
        "oax:absoluteSizeWidth", "oax:absoluteSizeHeight", "oax:absoluteSizeDepth"]
    assert report.verdict is U


def test_no_pairs():
    a = policy("a", c("oax:absoluteSizeWidth", "lteq", 600), action="print")
    b = policy("b", c("oax:absoluteSizeWidth", "lteq", 600))
    with pytest.raises(OaxError):
        evaluate_conflict(a, b)


def test_deontic_entries():
    perm = policy("p", c("oax:absoluteSpatialPositionX", "lteq", 10))
    other = parse_policy(json.dumps({
        "uid": "r",
        "permission": [{"action": "display", "constraint": [c("oax:absoluteSpatialPositionX", "gteq", 0)]}],
        "prohibition": [{"action": "display", "constraint": [c("oax:absoluteSpatialPositionX", "gteq", 5)]}],
    }))
    report = evaluate_conflict(perm, other)
    assert report.verdict is T
    (entry,) = report.deontic
    assert entry["permission"] == "p:permission[0]" and entry["prohibition"] == "r:prohibition[0]"
    assert entry["verdict"] == "Conflict"
    far = parse_policy(json.dumps({
        "uid": "s",
        "permission": [{"action": "display", "constraint": [c("oax:absoluteSpatialPositionX", "gteq", 0)]}],
        "prohibition": [{"action": "display", "constraint": [c("oax:absoluteSpatialPositionX", "gteq", 50)]}],
    }))
    assert evaluate_conflict(perm, far).deontic[0]["verdict"] == "Compatible"
    prohib_only = policy("q", c("oax:absoluteSpatialPositionX", "gteq", 5), kind="prohibition")
    with pytest.raises(OaxError):
        evaluate_conflict(perm, prohib_only)


def test_either_or_view(fixtures):
    v = view_rule(load(fixtures, "either-or.json").rules[0])
    assert v.connective is Connective.OR and len(v.branches) == 2
    with pytest.raises(CompositionError):
        v.box


def test_neq_on_axis_rejected():
    a = policy("a", c("oax:absoluteSizeWidth", "neq", 600))
    with pytest.raises(UnsupportedOperatorError):
        view_rule(a.rules[0])


def test_subsumption(fixtures):
    up, down = load(fixtures, "upstream.json"), load(fixtures, "downstream.json")
    assert evaluate_subsumption(down, up).verdict is SubsumptionVerdict.CONFIRMED
    assert evaluate_subsumption(up, down).verdict is SubsumptionVerdict.REFUTED
    with pytest.raises(RefinementError):
        evaluate_subsumption(up, load(fixtures, "bsb.json"))
    with pytest.raises(CompositionError):
        evaluate_subsumption(load(fixtures, "either-or.json"), load(fixtures, "museum.json"))


def test_request(fixtures):
    bsb = load(fixtures, "bsb.json")
    r = evaluate_request(bsb, parse_context("width=1200,height=400"))
    assert r.satisfied is Satisfaction.NO and r.exit_code == 1
    assert r.to_dict()["violations"] == ["oax:absoluteSizeWidth"]
    r = evaluate_request(bsb, parse_context("width=600,height=400"))
    assert r.satisfied is Satisfaction.YES
    assert r.unevaluated == ["odrl:purpose", "odrl:spatial"] and r.exit_code == 3
    up = load(fixtures, "upstream.json")
    assert evaluate_request(up, parse_context("width=1,height=1")).exit_code == 0


def test_request_action_filter(fixtures):
    up = load(fixtures, "upstream.json")
    r = evaluate_request(up, parse_context("width=5000"), action=expand_iri("odrl:display"))
    assert r.rules == [] and r.satisfied is Satisfaction.YES


def test_request_or_and_xone(fixtures):
    either = load(fixtures, "either-or.json")
    assert evaluate_request(either, parse_context("width=1000,height=500")).satisfied is Satisfaction.YES
    assert evaluate_request(either, parse_context("width=1000,height=1000")).satisfied is Satisfaction.NO
    xone = parse_policy((fixtures / "either-or.json").read_text().replace('"or"', '"xone"'))
    # inside both arms of the L: not exactly one
    assert evaluate_request(xone, parse_context("width=500,height=500")).satisfied is Satisfaction.NO
    assert evaluate_request(xone, parse_context("width=500,height=1000")).satisfied is Satisfaction.YES


def test_profile_off_treats_axes_as_opaque(fixtures):
    report = evaluate_conflict(load(fixtures, "bsb.json"), load(fixtures, "museum.json"), AxisProfile.empty())
    assert report.verdict is U
    assert all(o.source.value == "scalar" for o in report.pairs[0].operands)


def test_empty_policy_parses():
    assert parse_policy('{"uid":"p0","permission":[]}').rules == ()


def test_set_operator_parses_then_rejected():
    p = policy("s", c("oax:absoluteSizeWidth", "odrl:isPartOf", "large"))
    with pytest.raises(UnsupportedOperatorError):
        evaluate_conflict(p, p)


def test_implicit_and_equals_explicit_and(fixtures):
    museum = load(fixtures, "museum.json")
    flat = policy("a", c("oax:absoluteSizeWidth", "lteq", 600), c("oax:absoluteSizeHeight", "lteq", 600))
    nested = policy("a", {"and": [c("oax:absoluteSizeWidth", "lteq", 600), c("oax:absoluteSizeHeight", "lteq", 600)]})
    assert evaluate_conflict(flat, museum).to_dict() == evaluate_conflict(nested, museum).to_dict()
