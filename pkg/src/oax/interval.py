"""Exact interval algebra over one totally ordered axis.

Endpoints are :class:`fractions.Fraction` values (``None`` stands for the
infinite endpoint on that side).  Every :class:`Interval` is stored in
canonical form, so structural equality is set equality:

* infinite endpoints are always open;
* integer-discrete intervals have closed integer endpoints
  (``(5, 9)`` becomes ``[6, 8]``);
* all empty intervals collapse to one representative per density,
  ``(0, 0)`` for dense axes and ``[1, 0]`` for discrete ones.

Rendering uses the grammar ``(0, 600]``, ``[-90, 90]``, ``(-inf, inf)`` and
``EMPTY``; :func:`parse_interval` reads it back.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Union

from .errors import DensityMismatchError, OaxError, UnsupportedOperatorError
from .model import Operator

if TYPE_CHECKING:
    from .profile import AxisOperand

Number = Union[int, str, Decimal, Fraction]


class Density(enum.Enum):
    DENSE = "Dense"
    INTEGER = "IntegerDiscrete"


DIMENSIONAL_OPERATORS = frozenset(
    {Operator.EQ, Operator.LT, Operator.LTEQ, Operator.GT, Operator.GTEQ}
)


def to_rational(value: Number) -> Fraction:
    """Exact conversion; binary floats are rejected on purpose."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}; pass a decimal string")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not an exact decimal: {value!r}") from None
    raise TypeError(f"unsupported numeric type {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    """Shortest exact decimal text for q, or ``p/q`` if it does not terminate."""
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    text = format(Decimal(q.numerator) / Decimal(q.denominator), "f")
    return text.rstrip("0").rstrip(".") if "." in text else text


@dataclass(frozen=True)
class Interval:
    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None
    lower_closed: bool = False
    upper_closed: bool = False
    density: Density = Density.DENSE

    def __post_init__(self):
        lo, hi = self.lower, self.upper
        lo_c, hi_c = self.lower_closed, self.upper_closed
        if lo is not None and not isinstance(lo, Fraction):
            lo = to_rational(lo)
        if hi is not None and not isinstance(hi, Fraction):
            hi = to_rational(hi)
        if lo is None:
            lo_c = False
        if hi is None:
            hi_c = False
        if self.density is Density.INTEGER:
            if lo is not None:
                lo = Fraction(math.ceil(lo) if lo_c else math.floor(lo) + 1)
                lo_c = True
            if hi is not None:
                hi = Fraction(math.floor(hi) if hi_c else math.ceil(hi) - 1)
                hi_c = True
            empty = lo is not None and hi is not None and lo > hi
            if empty:
                lo, hi, lo_c, hi_c = Fraction(1), Fraction(0), True, True
        else:
            empty = (
                lo is not None
                and hi is not None
                and (lo > hi or (lo == hi and not (lo_c and hi_c)))
            )
            if empty:
                lo, hi, lo_c, hi_c = Fraction(0), Fraction(0), False, False
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        object.__setattr__(self, "lower_closed", lo_c)
        object.__setattr__(self, "upper_closed", hi_c)

    # -- constructors -------------------------------------------------
    @classmethod
    def closed(cls, lo, hi, density=Density.DENSE):
        return cls(lo, hi, True, True, density)

    @classmethod
    def open(cls, lo, hi, density=Density.DENSE):
        return cls(lo, hi, False, False, density)

    @classmethod
    def point(cls, v, density=Density.DENSE):
        return cls(v, v, True, True, density)

    @classmethod
    def full(cls, density=Density.DENSE):
        return cls(None, None, False, False, density)

    @classmethod
    def empty(cls, density=Density.DENSE):
        if density is Density.INTEGER:
            return cls(1, 0, True, True, density)
        return cls(0, 0, False, False, density)

    def with_density(self, density: Density) -> "Interval":
        return Interval(self.lower, self.upper, self.lower_closed, self.upper_closed, density)

    # -- predicates ---------------------------------------------------
    def is_empty(self) -> bool:
        return self == Interval.empty(self.density)

    def contains(self, v: Number) -> bool:
        q = to_rational(v)
        if self.density is Density.INTEGER and q.denominator != 1:
            raise OaxError(f"non-integral value {format_rational(q)} on an integer-discrete axis")
        if self.is_empty():
            return False
        if self.lower is not None:
            if q < self.lower or (q == self.lower and not self.lower_closed):
                return False
        if self.upper is not None:
            if q > self.upper or (q == self.upper and not self.upper_closed):
                return False
        return True

    def __str__(self) -> str:
        if self.is_empty():
            return "EMPTY"
        lo = "-inf" if self.lower is None else format_rational(self.lower)
        hi = "inf" if self.upper is None else format_rational(self.upper)
        return f"{'[' if self.lower_closed else '('}{lo}, {hi}{']' if self.upper_closed else ')'}"


def _check_density(a: Interval, b: Interval) -> None:
    if a.density is not b.density:
        raise DensityMismatchError(f"cannot combine {a.density.value} and {b.density.value} intervals")


def intersect(a: Interval, b: Interval) -> Interval:
    _check_density(a, b)
    if a.lower is None:
        lo, lo_c = b.lower, b.lower_closed
    elif b.lower is None or a.lower > b.lower:
        lo, lo_c = a.lower, a.lower_closed
    elif b.lower > a.lower:
        lo, lo_c = b.lower, b.lower_closed
    else:
        lo, lo_c = a.lower, a.lower_closed and b.lower_closed
    if a.upper is None:
        hi, hi_c = b.upper, b.upper_closed
    elif b.upper is None or a.upper < b.upper:
        hi, hi_c = a.upper, a.upper_closed
    elif b.upper < a.upper:
        hi, hi_c = b.upper, b.upper_closed
    else:
        hi, hi_c = a.upper, a.upper_closed and b.upper_closed
    return Interval(lo, hi, lo_c, hi_c, a.density)


def intersect_all(intervals, start: Interval) -> Interval:
    result = start
    for iv in intervals:
        result = intersect(result, iv)
    return result


def is_empty(a: Interval) -> bool:
    return a.is_empty()


def is_subset(a: Interval, b: Interval) -> bool:
    """True iff every member of ``a`` is a member of ``b``."""
    _check_density(a, b)
    if a.is_empty():
        return True
    if b.is_empty():
        return False
    if b.lower is not None:
        if a.lower is None or a.lower < b.lower:
            return False
        if a.lower == b.lower and a.lower_closed and not b.lower_closed:
            return False
    if b.upper is not None:
        if a.upper is None or a.upper > b.upper:
            return False
        if a.upper == b.upper and a.upper_closed and not b.upper_closed:
            return False
    return True


def contains(a: Interval, v: Number) -> bool:
    return a.contains(v)


_INTERVAL_RE = re.compile(r"^\s*([\[(])\s*([^,\s]+)\s*,\s*([^,\s]+)\s*([\])])\s*$")


def parse_interval(text: str, density: Density = Density.DENSE) -> Interval:
    """Inverse of ``str(Interval)``."""
    if text.strip() == "EMPTY":
        return Interval.empty(density)
    m = _INTERVAL_RE.match(text)
    if not m:
        raise ValueError(f"not an interval: {text!r}")
    lb, lo, hi, rb = m.groups()
    lower = None if lo in ("-inf", "-∞") else to_rational(lo)
    upper = None if hi in ("inf", "+inf", "∞") else to_rational(hi)
    return Interval(lower, upper, lb == "[", rb == "]", density)


# -- axis-specific constraints ---------------------------------------------

@dataclass(frozen=True)
class AxisConstraint:
    operand: "AxisOperand"
    operator: Operator
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", to_rational(self.value))
        if self.operator not in DIMENSIONAL_OPERATORS:
            raise UnsupportedOperatorError(
                f"operator {self.operator.value} is not a dimensional comparison operator"
            )

    @property
    def iri(self) -> str:
        return self.operand.iri

    def satisfied_by(self, v: Number) -> bool:
        """Direct comparison semantics: domain membership and ``v op value``."""
        q = to_rational(v)
        if not self.operand.domain.contains(q):
            return False
        return {
            Operator.EQ: q == self.value,
            Operator.LT: q < self.value,
            Operator.LTEQ: q <= self.value,
            Operator.GT: q > self.value,
            Operator.GTEQ: q >= self.value,
        }[self.operator]

    def __str__(self) -> str:
        return f"{self.operand.short} {self.operator.value} {format_rational(self.value)}"


def denote(c: AxisConstraint) -> Interval:
    """Interval denotation of ``c``, clipped to the operand's domain."""
    domain = c.operand.domain
    v, op, dens = c.value, c.operator, domain.density
    if op is Operator.EQ:
        raw = Interval(v, v, True, True, dens)
    elif op is Operator.LTEQ:
        raw = Interval(None, v, False, True, dens)
    elif op is Operator.LT:
        raw = Interval(None, v, False, False, dens)
    elif op is Operator.GTEQ:
        raw = Interval(v, None, True, False, dens)
    elif op is Operator.GT:
        raw = Interval(v, None, False, False, dens)
    else:  # pragma: no cover - guarded in AxisConstraint
        raise UnsupportedOperatorError(op.value)
    return intersect(raw, domain)
