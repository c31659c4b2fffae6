"""Angle values: exact rational multiples of pi, or certified intervals.

An :class:`Interval` carries the symbolic form it encloses, so comparisons
can tighten the enclosure on demand (doubling the precision up to a cap) and
can recognise exact equalities that no finite enclosure would settle.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from nonsas.errors import OutOfDomain, RangeOverflow
from nonsas.reals import Linear, enclose, enclose_fractions, format_form, linear, zero_mod_two_pi


@dataclass(frozen=True)
class Precision:
    """Starting precision and escalation cap, in fractional bits."""

    bits: int = 64
    max_bits: int = 1024

    def __post_init__(self):
        if self.bits < 8 or self.max_bits < self.bits:
            raise ValueError(f"bad precision {self.bits}/{self.max_bits}")

    @classmethod
    def from_env(cls) -> Precision:
        raw = os.environ.get("GEO_PRECISION_BITS")
        if not raw:
            return cls()
        bits = int(raw)
        return cls(bits=bits, max_bits=max(bits, 1024))


DEFAULT_PRECISION = Precision()


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class TriBool(enum.Enum):
    """Kleene's strong three-valued truth."""

    FALSE = 0
    TRUE = 1
    UNKNOWN = 2

    @classmethod
    def of(cls, b: bool) -> TriBool:
        return cls.TRUE if b else cls.FALSE

    def __and__(self, other: TriBool) -> TriBool:
        if self is TriBool.FALSE or other is TriBool.FALSE:
            return TriBool.FALSE
        if self is TriBool.UNKNOWN or other is TriBool.UNKNOWN:
            return TriBool.UNKNOWN
        return TriBool.TRUE

    def __or__(self, other: TriBool) -> TriBool:
        if self is TriBool.TRUE or other is TriBool.TRUE:
            return TriBool.TRUE
        if self is TriBool.UNKNOWN or other is TriBool.UNKNOWN:
            return TriBool.UNKNOWN
        return TriBool.FALSE

    def __invert__(self) -> TriBool:
        if self is TriBool.UNKNOWN:
            return self
        return TriBool.FALSE if self is TriBool.TRUE else TriBool.TRUE


@dataclass(frozen=True)
class ExactPi:
    """The value ``q * pi`` with ``0 < q < 2``."""

    q: Fraction

    def __post_init__(self):
        q = Fraction(self.q)
        object.__setattr__(self, "q", q)
        if not 0 < q < 2:
            raise OutOfDomain(f"ExactPi({q}) outside (0, 2)")

    @property
    def form(self) -> Linear:
        return linear(self.q)

    def __str__(self):
        return f"{self.q} π"


@dataclass(frozen=True)
class Interval:
    """A certified enclosure ``[lo, hi]`` (radians) of the real ``form``."""

    lo: Fraction = field(compare=False)
    hi: Fraction = field(compare=False)
    form: Linear

    def refine(self, bits: int) -> Interval:
        lo, hi = enclose_fractions(self.form, bits)
        return Interval(lo, hi, self.form)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


AngleValue = Union[ExactPi, Interval]


def from_form(form: Linear, precision: Precision | None = None) -> AngleValue:
    if form.is_exact:
        return ExactPi(form.pi_coeff)
    bits = (precision or DEFAULT_PRECISION).bits
    lo, hi = enclose_fractions(form, bits)
    return Interval(lo, hi, form)


def exact_pi(q) -> ExactPi:
    return ExactPi(Fraction(q))


def sign_of(form: Linear, precision: Precision | None = None) -> Ordering | None:
    """Sign of a linear form, or None when undecided at the precision cap."""
    if form.is_exact:
        return Ordering((form.pi_coeff > 0) - (form.pi_coeff < 0))
    prec = precision or DEFAULT_PRECISION
    if zero_mod_two_pi(form):
        # form is 2*pi*k; a coarse enclosure pins k
        lo, hi = enclose_fractions(form, 16)
        mid = (lo + hi) / 2
        if abs(mid) < 3:
            return Ordering.EQUAL
        return Ordering.GREATER if mid > 0 else Ordering.LESS
    bits = prec.bits
    while bits <= prec.max_bits:
        lo, hi = enclose(form, bits)
        if lo > 0:
            return Ordering.GREATER
        if hi < 0:
            return Ordering.LESS
        bits *= 2
    return None


def compare(a: AngleValue, b: AngleValue, precision: Precision | None = None) -> Ordering | None:
    """Order two values; None means the enclosures still overlap at the cap."""
    if isinstance(a, ExactPi) and isinstance(b, ExactPi):
        return Ordering((a.q > b.q) - (a.q < b.q))
    return sign_of(a.form - b.form, precision)


def add(a: AngleValue, b: AngleValue, precision: Precision | None = None) -> AngleValue:
    """Sum of two values; the result must stay below ``2*pi``."""
    total = a.form + b.form
    if sign_of(total - linear(2), precision) in (Ordering.EQUAL, Ordering.GREATER):
        raise RangeOverflow(f"{a} + {b} reaches 2π")
    return from_form(total, precision)


def pi_minus(a: AngleValue, precision: Precision | None = None) -> AngleValue:
    return from_form(linear(1) - a.form, precision)


def value_key(v: AngleValue) -> str:
    """Stable text form used in reports."""
    if isinstance(v, ExactPi):
        return str(v)
    return f"interval {v.lo.numerator}/{v.lo.denominator} .. {v.hi.numerator}/{v.hi.denominator}"


def format_value(v: AngleValue) -> str:
    """Exact text: ``7/16 π`` for ExactPi, the symbolic form for intervals."""
    if isinstance(v, ExactPi):
        return str(v)
    return format_form(v.form)
