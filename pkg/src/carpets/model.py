"""IFS data model, validation and the canonical JSON schema.

An instance is m affine contractions f_k(x) = M^-1 (S_k x + v_k) sharing
one expanding matrix M = b*s + c*1.  The S_k are Gram-orthogonal
symmetries written as x*s + y*1 (optionally composed with the exchange
reflection) and the v_k are integer translation vectors in companion
coordinates.  Rational translations are rejected: together with rational
a, b, c they would still admit exact arithmetic, but the integer lattice
is what makes candidate maps discrete enough to enumerate.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from .fields import (
    FieldSpec,
    combo_norm,
    gram_norm_sq,
    is_rotation,
    linear_combo,
    make_field,
    reflection_matrix,
    rotation_matrix,
)
from .linalg import (
    Affine,
    Mat2,
    Vec2,
    format_rational,
    parse_rational,
    sqrt_lower_bound,
)


class SchemaError(ValueError):
    """Raised when a JSON document does not match the canonical schema."""


@dataclass(frozen=True, slots=True)
class Symmetry:
    """Descriptor of a Gram-orthogonal map: (x*s + y*1) * r^reflected."""

    x: Fraction
    y: Fraction
    reflected: bool = False

    @staticmethod
    def identity() -> Symmetry:
        return Symmetry(Fraction(0), Fraction(1), False)

    @staticmethod
    def point_reflection() -> Symmetry:
        return Symmetry(Fraction(0), Fraction(-1), False)

    def matrix(self, field: FieldSpec) -> Mat2:
        return linear_combo(field, self.x, self.y, self.reflected)

    def negate(self) -> Symmetry:
        return Symmetry(-self.x, -self.y, self.reflected)

    def compose(self, other: Symmetry, field: FieldSpec) -> Symmetry:
        """Descriptor of self * other.

        Pulling the exchange reflection through a combo conjugates it:
        r (x*s + y*1) r = x*s^-1 + y*1 = -x*s + (y - a*x)*1, after which
        two combos multiply inside the commutative algebra generated by s
        (s^2 = -a*s - 1).
        """
        x2, y2 = other.x, other.y
        if self.reflected:
            x2, y2 = -x2, y2 - field.a * x2
        x = self.x * y2 + self.y * x2 - field.a * self.x * x2
        y = self.y * y2 - self.x * x2
        return Symmetry(x, y, self.reflected != other.reflected)


@dataclass(frozen=True, slots=True)
class MapSpec:
    sym: Symmetry
    t: Vec2


@dataclass(frozen=True, slots=True)
class IfsSpec:
    field: FieldSpec
    b: Fraction
    c: Fraction
    maps: tuple[MapSpec, ...]

    @property
    def m(self) -> int:
        return len(self.maps)

    def expansion(self) -> Mat2:
        return self.b * rotation_matrix(self.field) + Mat2.scalar(self.c)

    def expansion_det(self) -> Fraction:
        return combo_norm(self.field, self.b, self.c)


def make_spec(a, b, c, maps) -> IfsSpec:
    """Convenience constructor: maps as ((x, y, reflected), (tx, ty)) tuples."""
    field = make_field(Fraction(a))
    entries = []
    for sym, t in maps:
        x, y, reflected = sym
        entries.append(
            MapSpec(
                Symmetry(Fraction(x), Fraction(y), bool(reflected)),
                Vec2(Fraction(t[0]), Fraction(t[1])),
            )
        )
    return IfsSpec(field=field, b=Fraction(b), c=Fraction(c), maps=tuple(entries))


def validate(spec: IfsSpec) -> list[str]:
    """Collect violations; an empty list means the instance is analyzable."""
    problems: list[str] = []
    det = spec.expansion_det()
    if det <= 1:
        problems.append(f"expansion is not expanding (det M = {det})")
    m = spec.m
    if m < 2:
        problems.append(f"at least two maps required, got {m}")
    if det > 1 and Fraction(m) > det:
        problems.append(f"too many maps for the expansion (m = {m} > det M = {det})")
    for index, entry in enumerate(spec.maps, start=1):
        norm = combo_norm(spec.field, entry.sym.x, entry.sym.y)
        if norm != 1:
            problems.append(
                f"map {index}: symmetry is not a unit rotation "
                f"(x^2 + y^2 - a*x*y = {norm})"
            )
        if not entry.t.is_integral():
            problems.append(f"map {index}: translation is not an integer vector")
    return problems


def contractions(spec: IfsSpec) -> list[Affine]:
    """The maps f_k = M^-1 (S_k x + v_k) as exact affine maps."""
    minv = spec.expansion().inverse()
    result = []
    for entry in spec.maps:
        linear = minv * entry.sym.matrix(spec.field)
        result.append(Affine(linear, minv * entry.t))
    return result


def centroid(spec: IfsSpec) -> Vec2:
    """Fixed point of the averaged system: x = (1/m) sum f_k(x).

    The average of the linear parts contracts (each f_k does), so the
    2x2 system is uniquely solvable; Cramer keeps it exact.
    """
    fs = contractions(spec)
    m = Fraction(spec.m)
    avg_linear = Mat2.scalar(0)
    avg_shift = Vec2(Fraction(0), Fraction(0))
    for f in fs:
        avg_linear = avg_linear + f.linear
        avg_shift = avg_shift + f.shift
    lhs = Mat2.identity() - (1 / m) * avg_linear
    rhs = (1 / m) * avg_shift
    det = lhs.det()
    x = (rhs.x * lhs.d - lhs.b * rhs.y) / det
    y = (lhs.a * rhs.y - rhs.x * lhs.c) / det
    return Vec2(x, y)


def piece_deviation_sq(spec: IfsSpec) -> Fraction:
    """Squared Gram distance from the centroid to the farthest piece centroid."""
    fs = contractions(spec)
    center = centroid(spec)
    return max(gram_norm_sq(spec.field, f(center) - center) for f in fs)


def pruning_radius_sq(spec: IfsSpec) -> Fraction:
    """Rational T >= (2*delta/(1-r))^2 with r the contraction factor.

    delta is the farthest piece-centroid deviation; the attractor lies in
    the ball of radius delta/(1-r) around the centroid, so any isometry
    moving the centroid further than 2*delta/(1-r) maps the attractor
    clear of itself.  A rational lower bound p <= sqrt(det M) = 1/r keeps
    the threshold conservative and exact.
    """
    delta_sq = piece_deviation_sq(spec)
    if delta_sq == 0:
        return Fraction(0)
    det = spec.expansion_det()
    tol = Fraction(1, 10**9)
    p = sqrt_lower_bound(det, tol)
    while p <= 1:
        tol /= 2
        p = sqrt_lower_bound(det, tol)
    shrink = 1 - 1 / p
    return 4 * delta_sq / (shrink * shrink)


# --- canonical JSON -------------------------------------------------
#
# {"field": {"a": "3/2"},
#  "expansion": {"b": "2", "c": "-1"},
#  "maps": [{"sym": {"x": "0", "y": "-1", "reflected": false}, "t": [0, -1]}, ...]}
#
# Rationals are strings, translations are JSON integer pairs, unknown
# keys are rejected, field order is fixed.  The canonical byte form
# (compact separators, this key order) is the input of the content hash.


def _require_keys(obj: object, keys: tuple[str, ...], where: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise SchemaError(f"{where}: missing key(s) {', '.join(missing)}")
    unknown = [k for k in obj if k not in keys]
    if unknown:
        raise SchemaError(f"{where}: unknown key(s) {', '.join(unknown)}")
    return obj


def _rational_field(obj: dict, key: str, where: str) -> Fraction:
    value = obj[key]
    if not isinstance(value, str):
        raise SchemaError(f"{where}.{key}: rationals are written as strings")
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise SchemaError(f"{where}.{key}: {exc}") from None


def _int_pair(value: object, where: str) -> Vec2:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(c, int) and not isinstance(c, bool) for c in value)
    ):
        raise SchemaError(f"{where}: expected a pair of integers")
    return Vec2(Fraction(value[0]), Fraction(value[1]))


def spec_from_json(data: object) -> IfsSpec:
    """Parse the canonical schema; raises SchemaError on any deviation."""
    top = _require_keys(data, ("field", "expansion", "maps"), "spec")
    field_obj = _require_keys(top["field"], ("a",), "field")
    a = _rational_field(field_obj, "a", "field")
    try:
        field = make_field(a)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    exp_obj = _require_keys(top["expansion"], ("b", "c"), "expansion")
    b = _rational_field(exp_obj, "b", "expansion")
    c = _rational_field(exp_obj, "c", "expansion")
    if not isinstance(top["maps"], list):
        raise SchemaError("maps: expected an array")
    entries = []
    for index, item in enumerate(top["maps"], start=1):
        where = f"maps[{index}]"
        map_obj = _require_keys(item, ("sym", "t"), where)
        sym_obj = _require_keys(map_obj["sym"], ("x", "y", "reflected"), f"{where}.sym")
        x = _rational_field(sym_obj, "x", f"{where}.sym")
        y = _rational_field(sym_obj, "y", f"{where}.sym")
        reflected = sym_obj["reflected"]
        if not isinstance(reflected, bool):
            raise SchemaError(f"{where}.sym.reflected: expected a boolean")
        t = _int_pair(map_obj["t"], f"{where}.t")
        entries.append(MapSpec(Symmetry(x, y, reflected), t))
    return IfsSpec(field=field, b=b, c=c, maps=tuple(entries))


def spec_to_json(spec: IfsSpec) -> dict:
    return {
        "field": {"a": format_rational(spec.field.a)},
        "expansion": {"b": format_rational(spec.b), "c": format_rational(spec.c)},
        "maps": [
            {
                "sym": {
                    "x": format_rational(entry.sym.x),
                    "y": format_rational(entry.sym.y),
                    "reflected": entry.sym.reflected,
                },
                "t": [int(entry.t.x), int(entry.t.y)],
            }
            for entry in spec.maps
        ],
    }


def canonical_spec_json(spec: IfsSpec) -> str:
    return json.dumps(spec_to_json(spec), separators=(",", ":"))


def spec_id(spec: IfsSpec) -> str:
    """Content hash naming the spec everywhere (collections, URLs, files)."""
    digest = hashlib.sha256(canonical_spec_json(spec).encode("ascii"))
    return digest.hexdigest()

def parse_spec_text(text: str | bytes) -> IfsSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return spec_from_json(data)
