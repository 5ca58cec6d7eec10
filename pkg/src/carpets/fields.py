"""Rotation parameter fields and the companion coordinate system.

A rotation through an angle with rational cosine a/2 generates, together
with the exchange reflection, a family of planar isometries whose
matrices have rational entries once the plane is written in the basis
{b, s(b)} for a unit vector b.  This module owns that basis: the
companion matrix of the rotation, the Gram matrix of the basis, the
classification of the parameter a into a quadratic field, and the
generalized Pythagorean triples enumerating all parameters of a given
field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import Mat2, Vec2, as_fraction


def squarefree_part(n: int) -> int:
    """Largest square-free divisor d of n with n/d a perfect square."""
    if n <= 0:
        raise ValueError("positive integer required")
    part = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            exp = 0
            while n % p == 0:
                n //= p
                exp += 1
            if exp % 2:
                part *= p
        p += 1 if p == 2 else 2
    return part * n


@dataclass(frozen=True, slots=True)
class FieldSpec:
    """Rotation parameter a = 2u/w and its quadratic field data.

    d is the square-free part of w^2 - u^2, so the rotation acts on the
    ring of integers of Q(sqrt(-d)); (u, v, w) solves u^2 + d v^2 = w^2.
    """

    a: Fraction
    u: int
    v: int
    w: int
    d: int

    def gram(self) -> Mat2:
        """Gram matrix of the companion basis: unit vectors at cosine -a/2."""
        half = -self.a / 2
        return Mat2(Fraction(1), half, half, Fraction(1))

    def __repr__(self) -> str:  # keep reprs short in test output
        return f"FieldSpec(a={self.a}, d={self.d})"


def make_field(a: Fraction | int) -> FieldSpec:
    """Build the field context for a rotation parameter with |a| < 2."""
    a = as_fraction(a)
    if abs(a) >= 2:
        raise ValueError(f"degenerate rotation parameter a = {a}: need |a| < 2")
    p, q = a.numerator, a.denominator
    if p % 2 == 0:
        u, w = p // 2, q
    else:
        u, w = p, 2 * q
    disc = w * w - u * u
    d = squarefree_part(disc)
    v = math.isqrt(disc // d)
    assert u * u + d * v * v == w * w
    return FieldSpec(a=a, u=u, v=v, w=w, d=d)


def rotation_matrix(field: FieldSpec) -> Mat2:
    """Companion matrix of the generating rotation s (char poly z^2+az+1)."""
    return Mat2.of(0, -1, 1, -field.a)


def reflection_matrix() -> Mat2:
    """The exchange reflection r: swaps the two basis vectors, r s r = s^-1."""
    return Mat2.of(0, 1, 1, 0)


def linear_combo(field: FieldSpec, x: Fraction | int, y: Fraction | int, reflected: bool = False) -> Mat2:
    """Matrix of x*s + y*1, post-multiplied by the exchange when reflected."""
    x = as_fraction(x)
    y = as_fraction(y)
    combo = x * rotation_matrix(field) + Mat2.scalar(y)
    if reflected:
        combo = combo * reflection_matrix()
    return combo


def combo_norm(field: FieldSpec, x: Fraction | int, y: Fraction | int) -> Fraction:
    """det(x*s + y*1) = x^2 + y^2 - a*x*y."""
    x = as_fraction(x)
    y = as_fraction(y)
    return x * x + y * y - field.a * x * y


def is_rotation(field: FieldSpec, x: Fraction | int, y: Fraction | int) -> bool:
    """True iff x*s + y*1 is a Gram-orthogonal rotation (unit combo norm)."""
    return combo_norm(field, x, y) == 1


def is_irrational_rotation(field: FieldSpec) -> bool:
    """True unless the generating rotation has finite order.

    Within |a| < 2 the rational-cosine angles of finite order are exactly
    a = 0 (quarter turn) and a = +-1 (sixth/third turn).
    """
    return field.a not in (0, 1, -1)


def gram_norm_sq(field: FieldSpec, vec: Vec2) -> Fraction:
    """Squared Euclidean length of a companion-coordinate vector."""
    return vec.x * vec.x + vec.y * vec.y - field.a * vec.x * vec.y


@dataclass(frozen=True, slots=True)
class ExpansionReport:
    det: Fraction
    trace: Fraction
    is_algebraic_integer: bool


def expansion_report(field: FieldSpec, b: Fraction | int, c: Fraction | int) -> ExpansionReport:
    """Determinant, trace and integrality of the expansion g = b*s + c*1.

    The expansion maps the lattice of the IFS data into itself only up to
    denominators; it generates an algebraic integer exactly when both the
    determinant b^2 + c^2 - a b c and the trace 2c - a b are integers.
    """
    b = as_fraction(b)
    c = as_fraction(c)
    det = combo_norm(field, b, c)
    if det <= 1:
        raise ValueError(f"expansion is not expanding (det = {det})")
    trace = 2 * c - field.a * b
    is_integer = det.denominator == 1 and trace.denominator == 1
    return ExpansionReport(det=det, trace=trace, is_algebraic_integer=is_integer)


def embed_to_standard(field: FieldSpec) -> np.ndarray:
    """Float basis matrix sending companion coordinates to standard ones.

    Columns are the images of the companion basis vectors: (1, 0) and
    (-a/2, sqrt(1 - a^2/4)).  Gram norms become Euclidean norms.
    """
    a = float(field.a)
    return np.array([[1.0, -a / 2.0], [0.0, math.sqrt(1.0 - a * a / 4.0)]])


def euclid_triples(d: int, bound: int) -> list[tuple[int, int, int]]:
    """All primitive solutions of u^2 + d v^2 = w^2 with 0 < u, v and w <= bound.

    Every solution is proportional to (n^2 - d m^2, 2 m n, n^2 + d m^2)
    for a coprime pair m, n with n > m*sqrt(d); dividing by the content
    yields each primitive triple exactly once.  The raw parametrization
    overshoots the bound by at most the factor 2d that the content can
    reach, which fixes the enumeration range.
    """
    if d <= 0 or squarefree_part(d) != d:
        raise ValueError(f"d must be a positive square-free integer, got {d}")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    found: set[tuple[int, int, int]] = set()
    limit = 2 * d * bound
    m = 1
    while d * m * m < limit:
        n = math.isqrt(d * m * m) + 1
        while n * n + d * m * m <= limit:
            if math.gcd(m, n) == 1:
                u = n * n - d * m * m
                v = 2 * m * n
                w = n * n + d * m * m
                g = math.gcd(math.gcd(u, v), w)
                if w // g <= bound:
                    found.add((u // g, v // g, w // g))
            n += 1
        m += 1
    return sorted(found, key=lambda t: (t[2], t[0], t[1]))
