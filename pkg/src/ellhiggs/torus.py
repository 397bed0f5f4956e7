"""Exact arithmetic on the torsion points of an elliptic curve and on its cotangent bundle.

The curve is modeled by its group of torsion points (Q/Z)^2 with the marked point
at (0, 0).  A cotangent point pairs a curve point with an exact complex rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Union

from .errors import DomainError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

ZERO = Fraction(0)


def _q(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not a rational: {value!r}")


def mod1(value: RationalLike) -> Fraction:
    """Canonical representative of value in [0, 1)."""
    return _q(value) % 1


@dataclass(frozen=True, order=True, slots=True)
class CurvePoint:
    a: Fraction
    b: Fraction

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0):
        object.__setattr__(self, "a", mod1(a))
        object.__setattr__(self, "b", mod1(b))

    def __add__(self, other: CurvePoint) -> CurvePoint:
        return CurvePoint(self.a + other.a, self.b + other.b)

    def __sub__(self, other: CurvePoint) -> CurvePoint:
        return CurvePoint(self.a - other.a, self.b - other.b)

    def __neg__(self) -> CurvePoint:
        return CurvePoint(-self.a, -self.b)

    def __mul__(self, k: int) -> CurvePoint:
        return CurvePoint(self.a * k, self.b * k)

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0

    def order(self) -> int:
        return lcm(self.a.denominator, self.b.denominator)

    def __repr__(self) -> str:
        return f"({self.a},{self.b})"


IDENTITY = CurvePoint(0, 0)


@dataclass(frozen=True, order=True, slots=True)
class ComplexRational:
    re: Fraction
    im: Fraction

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __add__(self, other: ComplexRational) -> ComplexRational:
        return ComplexRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: ComplexRational) -> ComplexRational:
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> ComplexRational:
        return ComplexRational(-self.re, -self.im)

    def __mul__(self, other) -> ComplexRational:
        if isinstance(other, ComplexRational):
            return ComplexRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        k = _q(other)
        return ComplexRational(self.re * k, self.im * k)

    __rmul__ = __mul__

    def __truediv__(self, k: RationalLike) -> ComplexRational:
        k = _q(k)
        if k == 0:
            raise ZeroDivisionError("division of a complex rational by zero")
        return ComplexRational(self.re / k, self.im / k)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __repr__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


CZERO = ComplexRational(0, 0)


@dataclass(frozen=True, order=True, slots=True)
class CotangentPoint:
    """A point (x, t) of T*X = X x C.  Field order gives the total order
    lexicographic on (x.a, x.b, t.re, t.im)."""

    x: CurvePoint
    t: ComplexRational

    def __init__(self, x: CurvePoint = IDENTITY, t: ComplexRational | RationalLike = CZERO):
        if not isinstance(t, ComplexRational):
            t = ComplexRational(t)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "t", t)

    def __add__(self, other: CotangentPoint) -> CotangentPoint:
        return CotangentPoint(self.x + other.x, self.t + other.t)

    def __sub__(self, other: CotangentPoint) -> CotangentPoint:
        return CotangentPoint(self.x - other.x, self.t - other.t)

    def __neg__(self) -> CotangentPoint:
        return CotangentPoint(-self.x, -self.t)

    def __mul__(self, k: int) -> CotangentPoint:
        return CotangentPoint(self.x * k, self.t * k)

    __rmul__ = __mul__

    def is_self_negative(self) -> bool:
        return (self.x * 2).is_identity() and self.t.is_zero()

    def __repr__(self) -> str:
        return f"<{self.x!r},{self.t!r}>"


ORIGIN = CotangentPoint(IDENTITY, CZERO)


def cpoint(a: RationalLike = 0, b: RationalLike = 0, re: RationalLike = 0, im: RationalLike = 0) -> CotangentPoint:
    """Shorthand constructor: cpoint('1/3', 0, 2) is ((1/3, 0), 2)."""
    return CotangentPoint(CurvePoint(a, b), ComplexRational(re, im))


def add(p: CotangentPoint, q: CotangentPoint) -> CotangentPoint:
    return p + q


def neg(p: CotangentPoint) -> CotangentPoint:
    return -p


def scalar_mul(k: int, p: CotangentPoint) -> CotangentPoint:
    return p * k


def torsion_subgroup(n: int) -> list[CurvePoint]:
    """The n^2 points of X[n], in ascending order."""
    if n <= 0:
        raise DomainError(f"torsion level must be positive, got {n}")
    return [CurvePoint(Fraction(i, n), Fraction(j, n)) for i in range(n) for j in range(n)]


def two_torsion() -> list[CurvePoint]:
    """The 2-torsion catalog J0..J3 in its fixed order."""
    half = Fraction(1, 2)
    return [CurvePoint(0, 0), CurvePoint(half, 0), CurvePoint(0, half), CurvePoint(half, half)]


def point_order(p: CurvePoint | CotangentPoint) -> int:
    if isinstance(p, CotangentPoint):
        p = p.x
    return p.order()


def compare(p: CotangentPoint, q: CotangentPoint) -> int:
    """-1, 0 or 1 as p is less than, equal to or greater than q."""
    return (p > q) - (p < q)


# serialization


def rational_to_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s: str | int) -> Fraction:
    if isinstance(s, bool):
        raise DomainError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise DomainError(f"rational must be a string 'p/q', got {s!r}")
    text = s.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise DomainError(f"malformed rational {s!r}") from None
    if q <= 0:
        raise DomainError(f"denominator must be positive in {s!r}")
    return Fraction(p, q)


def curve_to_json(x: CurvePoint) -> list[str]:
    return [rational_to_str(x.a), rational_to_str(x.b)]


def curve_from_json(data) -> CurvePoint:
    if not isinstance(data, list) or len(data) != 2:
        raise DomainError(f"curve point must be a pair of rationals, got {data!r}")
    return CurvePoint(parse_rational(data[0]), parse_rational(data[1]))


def complex_to_json(t: ComplexRational) -> list[str]:
    return [rational_to_str(t.re), rational_to_str(t.im)]


def complex_from_json(data) -> ComplexRational:
    if isinstance(data, (str, int)) and not isinstance(data, bool):
        return ComplexRational(parse_rational(data), 0)
    if not isinstance(data, list) or len(data) != 2:
        raise DomainError(f"complex rational must be [re, im], got {data!r}")
    return ComplexRational(parse_rational(data[0]), parse_rational(data[1]))


def cotangent_to_json(p: CotangentPoint) -> dict:
    return {"x": curve_to_json(p.x), "t": complex_to_json(p.t)}


def cotangent_from_json(data) -> CotangentPoint:
    if not isinstance(data, dict) or "x" not in data:
        raise DomainError(f"cotangent point must be an object with 'x' and 't', got {data!r}")
    t = complex_from_json(data["t"]) if "t" in data else CZERO
    return CotangentPoint(curve_from_json(data["x"]), t)
