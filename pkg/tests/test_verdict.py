import itertools
from decimal import Decimal

import pytest
from hypothesis import given, strategies as st

from oax.errors import AxisMismatchError
from oax.interval import Interval
from oax.model import ExecutionContext
from oax.verdict import (
    Satisfaction,
    SubsumptionVerdict,
    Verdict3,
    axis_subsumes,
    axis_verdict,
    box_denote,
    box_subsumes,
    box_verdict,
    deontic_overlap,
    kleene_all,
    kleene_and,
    kleene_any,
    kleene_or,
    request_satisfied,
    to_constraints,
)

from conftest import ac, op

C, U, T = Verdict3.CONFLICT, Verdict3.UNKNOWN, Verdict3.COMPATIBLE


def test_order():
    assert C < U < T
    assert sorted([T, C, U]) == [C, U, T]


def test_operators_match_functions():
    for a, b in itertools.product(Verdict3, repeat=2):
        assert (a & b) is kleene_and(a, b)
        assert (a | b) is kleene_or(a, b)
    assert ~U is U and ~C is T and ~T is C


def test_identities():
    assert kleene_all([]) is T
    assert kleene_any([]) is C


def test_axis_verdict_definite():
    assert axis_verdict(ac("width", "<=", 600), ac("width", "=", 1200)) is C
    assert axis_verdict(ac("width", "<=", 600), ac("width", ">=", 600)) is T
    assert axis_verdict(ac("width", "<", 600), ac("width", ">=", 600)) is C
    with pytest.raises(AxisMismatchError):
        axis_verdict(ac("width", "<=", 1), ac("height", "<=", 1))


def test_axis_subsumes():
    assert axis_subsumes(ac("width", "<=", 600), ac("width", "<=", 1200)) is SubsumptionVerdict.CONFIRMED
    assert axis_subsumes(ac("width", "<=", 1600), ac("width", "<=", 1200)) is SubsumptionVerdict.REFUTED


def test_discrete_gap(discrete_profile):
    # no integer strictly between 599 and 600
    p = discrete_profile
    assert axis_verdict(ac("width", ">", 599, p), ac("width", "<", 600, p)) is C
    assert axis_verdict(ac("width", ">", 599), ac("width", "<", 600)) is T


def test_bsb_box():
    bsb = [ac("width", "<=", 600), ac("height", "<=", 600)]
    museum = [ac("width", "=", 1200), ac("height", "=", 400)]
    res = box_verdict(bsb, museum)
    assert res.verdict is C
    assert res.axes_with(C) == [op("width").iri]
    assert res.axes[op("height").iri].verdict is T


def test_one_sided_axis_is_unknown():
    res = box_verdict([ac("width", "<=", 600)], [ac("width", "<=", 800), ac("height", "<=", 5)])
    assert res.verdict is U
    assert res.axes[op("height").iri].verdict is U


def test_conflict_dominates_unknown():
    res = box_verdict([ac("width", "<=", 600)], [ac("width", ">=", 800), ac("height", "<=", 5)])
    assert res.verdict is C


def test_box_subsumption_unknown_when_one_sided():
    res = box_subsumes([ac("width", "<=", 600)], [ac("width", "<=", 800), ac("height", "<=", 5)])
    assert res.verdict is SubsumptionVerdict.UNKNOWN
    res = box_subsumes([ac("width", "<=", 900)], [ac("width", "<=", 800), ac("height", "<=", 5)])
    assert res.verdict is SubsumptionVerdict.REFUTED


def test_box_denote_and_back():
    cs = [ac("width", ">", 2), ac("width", "<=", 7), ac("height", "=", 3)]
    box = box_denote(cs)
    assert box[op("width").iri] == Interval(2, 7, False, True)
    assert box_denote(to_constraints(box), box.operands).same_intervals(box)


def test_box_denote_axis_mismatch():
    with pytest.raises(AxisMismatchError):
        box_denote([ac("width", "<=", 1)], [op("height")])


def test_deontic_overlap():
    perm = box_denote([ac("x", ">=", 0), ac("x", "<=", 10)])
    proh = box_denote([ac("x", ">=", 5)], perm.operands)
    assert deontic_overlap(perm, proh).verdict is C
    away = box_denote([ac("x", ">=", 50)], perm.operands)
    assert deontic_overlap(perm, away).verdict is T


def test_request_closed_world():
    cs = [ac("width", "<=", 600), ac("height", "<=", 600)]
    ctx = ExecutionContext({op("width").iri: Decimal(500), op("height").iri: Decimal(400)})
    assert request_satisfied(ctx, cs).satisfied is Satisfaction.YES
    ctx = ExecutionContext({op("width").iri: Decimal(500)})
    res = request_satisfied(ctx, cs)
    assert res.satisfied is Satisfaction.NO
    assert res.violations == [op("height").iri]


@st.composite
def same_axis_triples(draw):
    def one():
        return ac("x", draw(st.sampled_from(["=", "<", "<=", ">", ">="])), draw(st.integers(0, 20)))
    return one(), one(), one()


@given(same_axis_triples())
def test_conflict_propagation(t):
    c1, c2, c3 = t
    if axis_subsumes(c1, c2) is SubsumptionVerdict.CONFIRMED and axis_verdict(c2, c3) is C:
        assert axis_verdict(c1, c3) is C
