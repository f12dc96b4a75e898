"""The spatial axis profile: 15 axis-specific left operands and their domains."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence

from .errors import NotDimensionalError
from .interval import Density, Interval, format_rational, to_rational
from .model import OAX, ODRL, compact_iri, expand_iri


class Axis(enum.Enum):
    WIDTH = "Width"
    HEIGHT = "Height"
    DEPTH = "Depth"
    X = "X"
    Y = "Y"
    Z = "Z"
    LONGITUDE = "Longitude"
    LATITUDE = "Latitude"
    ALTITUDE = "Altitude"


# Domain is just an Interval with the operand's density.
Domain = Interval

BASE_OPERANDS = (
    "absoluteSize",
    "relativeSize",
    "absoluteSpatialPosition",
    "relativeSpatialPosition",
    "spatialCoordinates",
)
BASE_IRIS = tuple(ODRL + name for name in BASE_OPERANDS)

_REAL = Interval.full()
_POSITIVE = Interval(0, None, False, False)
_PERCENT = Interval(0, 100, False, True)
_UNIT_PERCENT = Interval.closed(0, 100)

_TABLE = (
    ("absoluteSize", (Axis.WIDTH, Axis.HEIGHT, Axis.DEPTH), _POSITIVE),
    ("relativeSize", (Axis.WIDTH, Axis.HEIGHT, Axis.DEPTH), _PERCENT),
    ("absoluteSpatialPosition", (Axis.X, Axis.Y, Axis.Z), _REAL),
    ("relativeSpatialPosition", (Axis.X, Axis.Y, Axis.Z), _UNIT_PERCENT),
)
_COORDINATES = (
    (Axis.LONGITUDE, Interval.closed(-180, 180)),
    (Axis.LATITUDE, Interval.closed(-90, 90)),
    (Axis.ALTITUDE, _REAL),
)

# short keys accepted in execution contexts
ALIASES = {
    "width": "absoluteSizeWidth",
    "height": "absoluteSizeHeight",
    "depth": "absoluteSizeDepth",
    "x": "absoluteSpatialPositionX",
    "y": "absoluteSpatialPositionY",
    "z": "absoluteSpatialPositionZ",
    "lon": "spatialCoordinatesLongitude",
    "longitude": "spatialCoordinatesLongitude",
    "lat": "spatialCoordinatesLatitude",
    "latitude": "spatialCoordinatesLatitude",
    "alt": "spatialCoordinatesAltitude",
    "altitude": "spatialCoordinatesAltitude",
}


@dataclass(frozen=True)
class AxisOperand:
    iri: str
    base: str
    axis: Axis
    domain: Domain

    @property
    def short(self) -> str:
        return compact_iri(self.iri)

    @property
    def name(self) -> str:
        return self.iri[len(OAX):] if self.iri.startswith(OAX) else self.iri

    @property
    def broader(self) -> str:
        """skos:broader target; recorded only, never used in evaluation."""
        return self.base


@dataclass(frozen=True)
class BoundReport:
    operand: AxisOperand
    value: Fraction
    ok: bool

    @property
    def message(self) -> str:
        v = format_rational(self.value)
        if self.ok:
            return f"{self.operand.short}: {v} within {self.operand.domain}"
        return f"{self.operand.short}: {v} outside domain {self.operand.domain}"

    def to_dict(self):
        return {
            "operand": self.operand.short,
            "value": format_rational(self.value),
            "domain": str(self.operand.domain),
            "ok": self.ok,
        }


def _build(discrete: frozenset) -> List[AxisOperand]:
    ops = []
    for base, axes, dom in _TABLE:
        for axis in axes:
            ops.append(AxisOperand(OAX + base + axis.value, ODRL + base, axis, dom))
    for axis, dom in _COORDINATES:
        ops.append(AxisOperand(OAX + "spatialCoordinates" + axis.value, ODRL + "spatialCoordinates", axis, dom))
    return [
        AxisOperand(o.iri, o.base, o.axis, o.domain.with_density(Density.INTEGER))
        if o.iri in discrete else o
        for o in ops
    ]


class AxisProfile:
    """Immutable registry of axis operands.

    ``AxisProfile.empty()`` is the profile-unaware engine: every ``oax:`` IRI
    is then an unrecognised operand.
    """

    def __init__(self, operands: Sequence[AxisOperand]):
        self._operands = tuple(operands)
        self._by_iri: Dict[str, AxisOperand] = {o.iri: o for o in self._operands}
        if len(self._by_iri) != len(self._operands):
            raise ValueError("duplicate axis operand IRI")

    @classmethod
    def standard(cls, discrete: Iterable[str] = ()) -> "AxisProfile":
        discrete = frozenset(expand_iri(d) if ":" in d else OAX + ALIASES.get(d, d) for d in discrete)
        known = {o.iri for o in _build(frozenset())}
        unknown = discrete - known
        if unknown:
            raise ValueError(f"cannot mark unknown operand(s) discrete: {sorted(unknown)}")
        return cls(_build(discrete))

    @classmethod
    def empty(cls) -> "AxisProfile":
        return cls(())

    def __len__(self):
        return len(self._operands)

    def __iter__(self):
        return iter(self._operands)

    def __bool__(self):
        return bool(self._operands)

    def operands(self):
        return self._operands

    def lookup(self, iri: str) -> Optional[AxisOperand]:
        return self._by_iri.get(iri)

    def resolve(self, key: str) -> Optional[AxisOperand]:
        """Find an operand by full IRI, compact IRI, local name or short alias."""
        key = key.strip()
        if key.lower() in ALIASES:
            return self._by_iri.get(OAX + ALIASES[key.lower()])
        if ":" in key:
            try:
                return self._by_iri.get(expand_iri(key))
            except Exception:
                return None
        return self._by_iri.get(OAX + key)

    def is_dimensional(self, iri: str) -> bool:
        return iri in BASE_IRIS

    def decompose(self, base: str) -> List[AxisOperand]:
        base_iri = expand_iri(base)
        if base_iri not in BASE_IRIS:
            raise NotDimensionalError(f"{compact_iri(base_iri)} is not a dimensional left operand")
        return [o for o in self._operands if o.base == base_iri]

    def family(self, operand: AxisOperand) -> List[AxisOperand]:
        return [o for o in self._operands if o.base == operand.base]

    def validate_right_operand(self, operand: AxisOperand, value) -> BoundReport:
        q = to_rational(value)
        dom = operand.domain
        if dom.density is Density.INTEGER and q.denominator != 1:
            return BoundReport(operand, q, False)
        return BoundReport(operand, q, dom.contains(q))

    def dump(self) -> List[dict]:
        return [
            {
                "iri": o.short,
                "base": compact_iri(o.base),
                "axis": o.axis.value,
                "domain": str(o.domain),
                "density": o.domain.density.value,
            }
            for o in self._operands
        ]


@lru_cache(maxsize=None)
def default_profile() -> AxisProfile:
    return AxisProfile.standard()


def registry() -> tuple:
    return default_profile().operands()


def decompose(base: str) -> List[AxisOperand]:
    return default_profile().decompose(base)


def validate_right_operand(operand: AxisOperand, value) -> BoundReport:
    return default_profile().validate_right_operand(operand, value)
