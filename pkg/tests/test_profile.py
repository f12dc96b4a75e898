import pytest

from oax.errors import NotDimensionalError
from oax.interval import Density, Interval
from oax.profile import Axis, AxisProfile, decompose, default_profile, registry, validate_right_operand

from conftest import op


def test_fifteen_operands():
    assert len(registry()) == 15
    assert len({o.iri for o in registry()}) == 15


def test_decompose():
    names = [o.name for o in decompose("absoluteSize")]
    assert names == ["absoluteSizeWidth", "absoluteSizeHeight", "absoluteSizeDepth"]
    assert [o.axis for o in decompose("odrl:spatialCoordinates")] == [Axis.LONGITUDE, Axis.LATITUDE, Axis.ALTITUDE]
    with pytest.raises(NotDimensionalError):
        decompose("odrl:purpose")


def test_broader_is_base():
    o = op("width")
    assert o.broader == o.base == "http://www.w3.org/ns/odrl/2/absoluteSize"


def test_resolve_forms():
    p = default_profile()
    w = p.resolve("width")
    assert p.resolve("oax:absoluteSizeWidth") is w
    assert p.resolve("absoluteSizeWidth") is w
    assert p.resolve(w.iri) is w
    assert p.resolve("bogus:thing") is None
    assert p.resolve("nothing") is None


def test_bounds():
    lat = op("lat")
    assert validate_right_operand(lat, 90).ok
    assert not validate_right_operand(lat, 91).ok
    assert "outside domain [-90, 90]" in validate_right_operand(lat, 91).message
    assert not validate_right_operand(op("width"), 0).ok
    assert validate_right_operand(op("relativeSizeWidth"), 100).ok


def test_discrete_override():
    p = AxisProfile.standard(discrete=["width"])
    assert p.resolve("width").domain == Interval(0, None, False, False, Density.INTEGER)
    assert not p.validate_right_operand(p.resolve("width"), "1.5").ok
    with pytest.raises(ValueError):
        AxisProfile.standard(discrete=["nope"])


def test_empty_profile():
    p = AxisProfile.empty()
    assert not p and len(p) == 0
    assert p.resolve("width") is None


def test_dump_rows():
    rows = default_profile().dump()
    assert rows[0] == {
        "iri": "oax:absoluteSizeWidth",
        "base": "odrl:absoluteSize",
        "axis": "Width",
        "domain": "(0, inf)",
        "density": "Dense",
    }
