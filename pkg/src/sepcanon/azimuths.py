"""Projective azimuths over exact rationals.

An azimuth is a point ``[a : b]`` of a projective line whose two
coordinates are indexed by the two edges of a bisep, in the sorted order of
the bisep's edge ids.  Left, right and middle azimuths multiply
coordinatewise: ``middle = left * right``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    BothSingular,
    InconsistentSingular,
    IncompatibleSingular,
    MalformedInput,
    NonRegularAzimuth,
    UnderDetermined,
)

Rational = Union[int, Fraction, str]


def _q(x: Rational) -> Fraction:
    if isinstance(x, bool):
        raise MalformedInput("azimuth coordinates must be rationals")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational {x!r}") from exc


@dataclass(frozen=True, init=False)
class Azimuth:
    a: Fraction
    b: Fraction

    def __init__(self, a: Rational, b: Rational):
        a, b = _q(a), _q(b)
        if a == 0 and b == 0:
            raise MalformedInput("[0 : 0] is not a projective point")
        if b != 0:
            a, b = a / b, Fraction(1)
        else:
            a = Fraction(1)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def coords(self) -> tuple[Fraction, Fraction]:
        return self.a, self.b

    @property
    def singular(self) -> bool:
        return self.a == 0 or self.b == 0

    def __repr__(self) -> str:
        return f"[{self.a}:{self.b}]"

    def to_json(self) -> list:
        return [_fmt(self.a), _fmt(self.b)]

    @classmethod
    def from_json(cls, data) -> "Azimuth":
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise MalformedInput(f"azimuth must be a pair, got {data!r}")
        return cls(*data)


def _fmt(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_regular(z: Azimuth) -> bool:
    return not z.singular


def compose(left: Azimuth, right: Azimuth) -> Azimuth:
    a, b = left.a * right.a, left.b * right.b
    if a == 0 and b == 0:
        raise IncompatibleSingular(f"{left} and {right} are singular in opposite slots")
    return Azimuth(a, b)


def _quotient(num: Azimuth, den: Azimuth) -> Azimuth:
    """Solve ``den * x = num`` for a regular ``den``."""
    return Azimuth(num.a / den.a, num.b / den.b)


@dataclass(frozen=True)
class AzimuthTriple:
    left: Azimuth | None = None
    middle: Azimuth | None = None
    right: Azimuth | None = None
    bisep: str | None = None

    def is_compatible(self) -> bool:
        if None in (self.left, self.middle, self.right):
            return False
        try:
            return compose(self.left, self.right) == self.middle
        except IncompatibleSingular:
            return False


def complete_triple(t: AzimuthTriple) -> AzimuthTriple:
    """Fill in the missing entry of a triple from the other two.

    Two singular entries never determine a triple; when they cannot be
    completed at all that is :class:`InconsistentSingular`, otherwise
    :class:`BothSingular`.
    """
    given = [x for x in (t.left, t.middle, t.right) if x is not None]
    if len(given) < 2:
        raise UnderDetermined("need two of left, middle, right")
    if len(given) == 3:
        if not t.is_compatible():
            raise InconsistentSingular("triple is not compatible")
        return t
    x, y = given
    if t.middle is None:
        solvable = (x.a * y.a, x.b * y.b) != (0, 0)
    else:
        side = t.left if t.left is not None else t.right
        # side * other = middle has a solution iff zero slots of side are zero in middle
        solvable = (side.a != 0 or t.middle.a == 0) and (side.b != 0 or t.middle.b == 0)
    if not solvable:
        raise InconsistentSingular(f"no azimuth completes {x} and {y}")
    if x.singular and y.singular:
        raise BothSingular(f"{x} and {y} are both singular")
    if t.middle is None:
        return AzimuthTriple(t.left, compose(t.left, t.right), t.right, t.bisep)
    if t.right is None:
        return AzimuthTriple(t.left, t.middle, _quotient(t.middle, t.left), t.bisep)
    return AzimuthTriple(_quotient(t.middle, t.right), t.middle, t.right, t.bisep)


def induced_left_azimuth(middle: Azimuth, hyperelliptic_right: Azimuth) -> Azimuth:
    if not is_regular(middle):
        raise NonRegularAzimuth(f"middle azimuth {middle} is not regular")
    if not is_regular(hyperelliptic_right):
        raise NonRegularAzimuth(f"hyperelliptic azimuth {hyperelliptic_right} is not regular")
    return _quotient(middle, hyperelliptic_right)
