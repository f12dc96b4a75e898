from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oax.errors import DensityMismatchError, OaxError, UnsupportedOperatorError
from oax.interval import (
    AxisConstraint,
    Density,
    Interval,
    contains,
    denote,
    format_rational,
    intersect,
    is_subset,
    parse_interval,
    to_rational,
)
from oax.model import Operator

from conftest import ac, op

D, Z = Density.DENSE, Density.INTEGER


def test_floats_are_refused():
    with pytest.raises(TypeError):
        to_rational(0.1)
    with pytest.raises(TypeError):
        Interval(0.5, 1)
    assert to_rational("0.1") == Fraction(1, 10)
    assert to_rational(Decimal("2.50")) == Fraction(5, 2)


def test_bad_decimal_text():
    with pytest.raises(ValueError):
        to_rational("abc")


@pytest.mark.parametrize("q,text", [
    (Fraction(600), "600"),
    (Fraction(-90), "-90"),
    (Fraction(1, 2), "0.5"),
    (Fraction(1, 3), "1/3"),
    (Fraction(-5, 4), "-1.25"),
])
def test_format_rational(q, text):
    assert format_rational(q) == text


def test_canonical_empty():
    assert Interval(5, 3, True, True) == Interval.empty()
    assert Interval(2, 2, True, False).is_empty()
    assert not Interval.point(2).is_empty()
    assert Interval(2, 3, False, False, Z).is_empty()
    assert Interval(2, 4, False, False, Z) == Interval.point(3, Z)


def test_integer_bounds_are_closed():
    iv = Interval(Fraction(1, 2), Fraction(7, 2), False, False, Z)
    assert (iv.lower, iv.upper, iv.lower_closed, iv.upper_closed) == (1, 3, True, True)
    iv = Interval(0, None, False, False, Z)
    assert iv.lower == 1 and iv.lower_closed and iv.upper is None


def test_unbounded_sides_are_open():
    iv = Interval(None, 5, True, True)
    assert not iv.lower_closed


def test_intersect_ties_and_mismatch():
    a = Interval(0, 5, True, False)
    b = Interval(0, 5, False, True)
    assert intersect(a, b) == Interval.open(0, 5)
    with pytest.raises(DensityMismatchError):
        intersect(a, a.with_density(Z))


def test_subset_edges():
    assert is_subset(Interval.empty(), Interval.empty())
    assert not is_subset(Interval.point(1), Interval.empty())
    assert is_subset(Interval.open(0, 1), Interval.closed(0, 1))
    assert not is_subset(Interval.closed(0, 1), Interval.open(0, 1))
    assert not is_subset(Interval.full(), Interval(0, None, True, False))


def test_integer_membership_rejects_fractions():
    with pytest.raises(OaxError):
        Interval.closed(0, 5, Z).contains(Fraction(1, 2))
    assert contains(Interval.closed(0, 5, Z), 5)


@pytest.mark.parametrize("text", ["(0, 600]", "[-90, 90]", "(-inf, 3)", "[1/3, inf)", "EMPTY", "[0.5, 0.5]"])
def test_parse_round_trip(text):
    assert str(parse_interval(text)) == text


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_interval("0..5")


def test_denote_clips_to_domain():
    assert denote(ac("width", "<=", 600)) == Interval(0, 600, False, True)
    assert denote(ac("lat", ">", 10)) == Interval(10, 90, False, True)
    assert denote(ac("lat", ">=", 91)).is_empty()
    assert denote(ac("x", "=", -4)) == Interval.point(-4)


def test_denote_discrete(discrete_profile):
    assert denote(ac("width", "<", 600, discrete_profile)) == Interval.closed(1, 599, Z)


def test_non_dimensional_operator():
    with pytest.raises(UnsupportedOperatorError):
        AxisConstraint(op("width"), Operator.NEQ, 3)


def test_satisfied_by_matches_denotation():
    c = ac("width", "<", 10)
    for v in ("-1", "0", "0.5", "9.99", "10", "11"):
        assert c.satisfied_by(v) == denote(c).contains(v)


bounds = st.one_of(st.none(), st.integers(-6, 6))


@st.composite
def intervals(draw, density=D):
    return Interval(draw(bounds), draw(bounds), draw(st.booleans()), draw(st.booleans()), density)


@given(intervals(), intervals())
def test_intersection_is_glb(a, b):
    m = intersect(a, b)
    assert is_subset(m, a) and is_subset(m, b)
    assert intersect(a, b) == intersect(b, a)
    for k in range(-14, 15):
        q = Fraction(k, 2)
        assert m.contains(q) == (a.contains(q) and b.contains(q))


@given(intervals(Z), intervals(Z))
def test_integer_subset_pointwise(a, b):
    expected = all(b.contains(k) for k in range(-8, 9) if a.contains(k))
    unbounded_escape = (a.lower is None and b.lower is not None) or (a.upper is None and b.upper is not None)
    if not a.is_empty() and unbounded_escape:
        expected = False
    assert is_subset(a, b) == expected
