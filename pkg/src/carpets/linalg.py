"""Exact 2x2 linear algebra over the rationals.

Everything in the analysis core runs on `fractions.Fraction`.  Floating
point is only allowed at the presentation layer (rendering, dimension
values).  Exact equality of maps is load bearing: two candidate maps are
the same vertex of the neighbor graph if and only if their six rational
entries coincide, so no epsilon comparisons appear anywhere in this
module.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

_RATIONAL_RE = re.compile(r"\A-?\d+(?:/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse a rational written as 'p' or 'p/q' with decimal integers.

    The denominator must be a positive integer; '1/0' and anything not
    matching the plain grammar (whitespace, floats, '+' signs) is
    rejected.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    """Inverse of parse_rational; always reduced, denominator omitted when 1."""
    return str(value)


def as_fraction(value: Fraction | int) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected rational, got {type(value).__name__}")


@dataclass(frozen=True, slots=True)
class Vec2:
    """Immutable rational column vector."""

    x: Fraction
    y: Fraction

    @staticmethod
    def of(x: Fraction | int, y: Fraction | int) -> Vec2:
        return Vec2(as_fraction(x), as_fraction(y))

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Vec2:
        return Vec2(-self.x, -self.y)

    def __rmul__(self, scalar: Fraction | int) -> Vec2:
        s = as_fraction(scalar)
        return Vec2(s * self.x, s * self.y)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1


ZERO2 = Vec2(Fraction(0), Fraction(0))


@dataclass(frozen=True, slots=True)
class Mat2:
    """Immutable rational 2x2 matrix with rows (a b; c d)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @staticmethod
    def of(a, b, c, d) -> Mat2:
        return Mat2(as_fraction(a), as_fraction(b), as_fraction(c), as_fraction(d))

    @staticmethod
    def identity() -> Mat2:
        return _IDENTITY

    @staticmethod
    def scalar(s: Fraction | int) -> Mat2:
        s = as_fraction(s)
        return Mat2(s, Fraction(0), Fraction(0), s)

    def __add__(self, other: Mat2) -> Mat2:
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: Mat2) -> Mat2:
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: Mat2 | Vec2 | Fraction | int) -> Mat2 | Vec2:
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        if isinstance(other, Vec2):
            return Vec2(self.a * other.x + self.b * other.y, self.c * other.x + self.d * other.y)
        s = as_fraction(other)
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d)

    def __rmul__(self, scalar: Fraction | int) -> Mat2:
        s = as_fraction(scalar)
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d)

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Fraction:
        return self.a + self.d

    def transpose(self) -> Mat2:
        return Mat2(self.a, self.c, self.b, self.d)

    def inverse(self) -> Mat2:
        det = self.det()
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def is_identity(self) -> bool:
        return self.a == 1 and self.d == 1 and self.b == 0 and self.c == 0

    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)


_IDENTITY = Mat2(Fraction(1), Fraction(0), Fraction(0), Fraction(1))


@dataclass(frozen=True, slots=True)
class Affine:
    """Affine map x -> linear * x + shift with exact rational entries."""

    linear: Mat2
    shift: Vec2

    @staticmethod
    def identity() -> Affine:
        return Affine(_IDENTITY, ZERO2)

    def __call__(self, point: Vec2) -> Vec2:
        return self.linear * point + self.shift

    def compose(self, inner: Affine) -> Affine:
        """self after inner: (self . inner)(x) = self(inner(x))."""
        return Affine(self.linear * inner.linear, self.linear * inner.shift + self.shift)

    def inverse(self) -> Affine:
        inv = self.linear.inverse()
        return Affine(inv, -(inv * self.shift))

    def is_identity(self) -> bool:
        return self.linear.is_identity() and self.shift == ZERO2

    def key(self) -> tuple[Fraction, ...]:
        """Total encoding of the map; equal keys iff equal maps.

        Fractions are always stored reduced with positive denominator, so
        the six entries form a canonical key usable for hashing and
        deterministic ordering.
        """
        m = self.linear
        return (m.a, m.b, m.c, m.d, self.shift.x, self.shift.y)


def sqrt_lower_bound(value: Fraction, tol: Fraction = Fraction(1, 10**9)) -> Fraction:
    """Largest-denominator-bounded rational p with p <= sqrt(value) <= p + tol.

    Runs integer Newton (math.isqrt) on a scaled integer so the result
    rounds downward by construction; no floating point is involved.
    """
    if value < 0:
        raise ValueError("negative radicand")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    num, den = value.numerator, value.denominator
    # sqrt(num/den) = sqrt(num*den)/den; scale by 4**k so the integer
    # square root lands within tol of the true value.
    k = 0
    while Fraction(1, den << k) > tol:
        k += 1
    root = math.isqrt((num * den) << (2 * k))
    return Fraction(root, den << k)
