import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from oax.composition import (
    BranchSet,
    LabeledVerdict,
    Source,
    cross_domain_verdict,
    load_labeled_verdicts,
    or_verdict,
    xone_verdict,
)
from oax.errors import CompositionError, SchemaError
from oax.model import Connective
from oax.profile import AxisProfile
from oax.verdict import Verdict3

from conftest import ac

C, U, T = Verdict3.CONFLICT, Verdict3.UNKNOWN, Verdict3.COMPATIBLE
GRID = AxisProfile.standard(discrete=["x", "y"])


def box(x0, x1, y0, y1):
    return [ac("x", ">=", x0, GRID), ac("x", "<=", x1, GRID), ac("y", ">=", y0, GRID), ac("y", "<=", y1, GRID)]


def test_or_l_shape():
    left = BranchSet([box(0, 2, 0, 6), box(0, 6, 0, 2)])
    assert or_verdict(left, BranchSet([box(5, 6, 5, 6)])).verdict is C
    assert or_verdict(left, BranchSet([box(1, 1, 5, 6)])).verdict is T


def test_xone_needs_two_branches():
    with pytest.raises(CompositionError):
        xone_verdict(BranchSet([box(0, 1, 0, 1)]), BranchSet([box(0, 1, 0, 1), box(2, 3, 2, 3)]))
    with pytest.raises(CompositionError):
        BranchSet([])


def test_xone_two_overlaps_unknown():
    left = BranchSet([box(0, 2, 0, 2), box(4, 6, 4, 6)], Connective.XONE)
    right = BranchSet([box(0, 6, 0, 1), box(5, 6, 5, 6)], Connective.XONE)
    res = xone_verdict(left, right)
    assert res.matrix.count(T) == 2
    assert res.verdict is U


def test_cross_domain():
    labels = [
        LabeledVerdict("w", Source.DIMENSIONAL, C),
        LabeledVerdict("h", Source.DIMENSIONAL, T),
        LabeledVerdict("spatial", Source.CONCEPT, T),
        LabeledVerdict("purpose", Source.CONCEPT, U),
    ]
    assert cross_domain_verdict(labels) is C
    assert cross_domain_verdict(labels[1:]) is U
    with pytest.raises(CompositionError):
        cross_domain_verdict([])


def test_side_file(fixtures):
    vs = load_labeled_verdicts((fixtures / "side-verdicts.json").read_text())
    assert [(v.source, v.verdict) for v in vs] == [(Source.CONCEPT, T), (Source.CONCEPT, U)]
    assert vs[0].operand == "http://www.w3.org/ns/odrl/2/spatial"
    with pytest.raises(SchemaError):
        load_labeled_verdicts(json.dumps([{"operand": "a", "verdict": "maybe"}]))
    with pytest.raises(SchemaError):
        load_labeled_verdicts("3")


# -- oracle: a point witness on the integer grid ------------------------------------

def members(b):
    x0, x1, y0, y1 = b
    return {(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1)}


def exactly_one(point, boxes):
    return sum(point in members(b) for b in boxes) == 1


boxes = st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)).map(
    lambda t: (min(t[0], t[1]), max(t[0], t[1]), min(t[2], t[3]), max(t[2], t[3]))
)
sides = st.lists(boxes, min_size=2, max_size=3)
POINTS = list(itertools.product(range(7), repeat=2))


@settings(max_examples=200, deadline=None)
@given(sides, sides)
def test_or_against_points(a, b):
    v = or_verdict(BranchSet([box(*t) for t in a]), BranchSet([box(*t) for t in b])).verdict
    witness = any(any(p in members(t) for t in a) and any(p in members(t) for t in b) for p in POINTS)
    assert v is (T if witness else C)


@settings(max_examples=200, deadline=None)
@given(sides, sides)
def test_xone_sound_against_points(a, b):
    v = xone_verdict(BranchSet([box(*t) for t in a]), BranchSet([box(*t) for t in b])).verdict
    witness = any(exactly_one(p, a) and exactly_one(p, b) for p in POINTS)
    if v is T:
        assert witness
    if v is C:
        assert not witness
