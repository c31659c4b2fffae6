"""Exact rational plane geometry: points, lines, rays, segments, angles.

Coordinates are :class:`fractions.Fraction`. Lines are stored with integer
coprime coefficients and a sign rule, rays with primitive integer directions,
so equality of lines and rays is field-wise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from nonsas import errors
from nonsas.reals import atan2_form
from nonsas.values import DEFAULT_PRECISION, ExactPi, Ordering, Precision, from_form


def parse_rational(text) -> Fraction:
    """Exact parse of an int, ``"3"``, ``"1/3"`` or ``"0.25"``; floats are refused."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"refusing non-exact numeric {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a number string, got {text!r}")
    return Fraction(text.strip())


def _primitive(a: int, b: int) -> tuple[int, int]:
    g = math.gcd(a, b)
    return a // g, b // g


def _clear(*xs: Fraction) -> tuple[int, ...]:
    """Scale rationals by the lcm of their denominators."""
    m = 1
    for x in xs:
        m = m * x.denominator // math.gcd(m, x.denominator)
    return tuple(int(x * m) for x in xs)


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def parse(cls, x, y) -> Point:
        return cls(parse_rational(x), parse_rational(y))

    def __add__(self, v) -> Point:
        return Point(self.x + v[0], self.y + v[1])

    def __sub__(self, other: Point) -> tuple[Fraction, Fraction]:
        return (self.x - other.x, self.y - other.y)

    def __str__(self):
        return f"({self.x}, {self.y})"

    def as_strings(self) -> list[str]:
        return [str(self.x), str(self.y)]


@dataclass(frozen=True, order=True)
class Line:
    """The locus ``a*x + b*y + c = 0`` in canonical integer form."""

    a: int
    b: int
    c: int

    @classmethod
    def from_coefficients(cls, a, b, c) -> Line:
        a, b, c = (Fraction(t) for t in (a, b, c))
        if a == 0 and b == 0:
            raise errors.GeometryError("line needs (a, b) != (0, 0)")
        ia, ib, ic = _clear(a, b, c)
        g = math.gcd(math.gcd(ia, ib), ic)
        ia, ib, ic = ia // g, ib // g, ic // g
        if ia < 0 or (ia == 0 and ib < 0):
            ia, ib, ic = -ia, -ib, -ic
        return cls(ia, ib, ic)

    def value(self, p: Point) -> Fraction:
        return self.a * p.x + self.b * p.y + self.c

    def contains(self, p: Point) -> bool:
        return self.value(p) == 0

    def side(self, p: Point) -> int:
        v = self.value(p)
        return (v > 0) - (v < 0)

    @property
    def direction(self) -> tuple[int, int]:
        return (-self.b, self.a)

    def sample_points(self) -> tuple[Point, Point]:
        """Two distinct rational points on the line."""
        if self.b != 0:
            p = Point(0, Fraction(-self.c, self.b))
        else:
            p = Point(Fraction(-self.c, self.a), 0)
        return p, p + self.direction

    def equation(self) -> str:
        """Slope form: ``y = x``, ``y = 1/2x + 3``, ``x = 2``."""
        if self.b == 0:
            return f"x = {Fraction(-self.c, self.a)}"
        m, k = Fraction(-self.a, self.b), Fraction(-self.c, self.b)
        if m == 0:
            return f"y = {k}"
        slope = {1: "x", -1: "-x"}.get(m, f"{m}x")
        if k == 0:
            return f"y = {slope}"
        return f"y = {slope} {'+' if k > 0 else '-'} {abs(k)}"

    def __str__(self):
        return self.equation()

    def as_strings(self) -> list[str]:
        return [str(self.a), str(self.b), str(self.c)]


@dataclass(frozen=True, order=True)
class Ray:
    origin: Point
    dx: int
    dy: int

    def __post_init__(self):
        if (self.dx, self.dy) == (0, 0):
            raise errors.CoincidentPoints("ray needs a nonzero direction")
        if math.gcd(self.dx, self.dy) != 1:
            dx, dy = _primitive(self.dx, self.dy)
            object.__setattr__(self, "dx", dx)
            object.__setattr__(self, "dy", dy)

    @property
    def direction(self) -> tuple[int, int]:
        return (self.dx, self.dy)

    def point_at(self, t=1) -> Point:
        return self.origin + (self.dx * t, self.dy * t)

    @property
    def line(self) -> Line:
        return line_through(self.origin, self.point_at())

    def contains(self, p: Point) -> bool:
        vx, vy = p - self.origin
        if vx * self.dy - vy * self.dx != 0:
            return False
        return vx * self.dx + vy * self.dy >= 0

    def __str__(self):
        return f"{self.origin}→({self.dx}, {self.dy})"


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise errors.CoincidentPoints("segment endpoints coincide")

    @property
    def squared_length(self) -> Fraction:
        dx, dy = self.b - self.a
        return dx * dx + dy * dy


@dataclass(frozen=True)
class Angle:
    """An unordered pair of rays sharing a vertex, not on one line."""

    h: Ray
    k: Ray

    def __post_init__(self):
        if self.h.origin != self.k.origin:
            raise errors.DistinctVertices(f"rays start at {self.h.origin} and {self.k.origin}")
        if self.h.dx * self.k.dy - self.h.dy * self.k.dx == 0:
            raise errors.CollinearRays("rays lie on one line")
        if self.k < self.h:
            h, k = self.k, self.h
            object.__setattr__(self, "h", h)
            object.__setattr__(self, "k", k)

    @property
    def vertex(self) -> Point:
        return self.h.origin

    @property
    def dot(self) -> int:
        return self.h.dx * self.k.dx + self.h.dy * self.k.dy

    @property
    def cross(self) -> int:
        """Absolute cross product of the two directions."""
        return abs(self.h.dx * self.k.dy - self.h.dy * self.k.dx)

    @property
    def measure_key(self) -> tuple[int, int]:
        """Primitive ``(cross, dot)``: equal keys iff equal measures."""
        return _primitive(self.cross, self.dot)

    def __str__(self):
        return f"∠[{self.vertex}; ({self.h.dx}, {self.h.dy}), ({self.k.dx}, {self.k.dy})]"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def line_through(a: Point, b: Point) -> Line:
    if a == b:
        raise errors.CoincidentPoints(f"{a} = {b}")
    dx, dy = b - a
    return Line.from_coefficients(dy, -dx, dx * a.y - dy * a.x)


def intersect(l1: Line, l2: Line) -> Point | None:
    if l1 == l2:
        raise errors.IdenticalLines(str(l1))
    det = l1.a * l2.b - l2.a * l1.b
    if det == 0:
        return None
    x = Fraction(l1.b * l2.c - l2.b * l1.c, det)
    y = Fraction(l2.a * l1.c - l1.a * l2.c, det)
    return Point(x, y)


def parallel(l1: Line, l2: Line) -> bool:
    """Distinct lines without a common point; a line is not parallel to itself."""
    return l1 != l2 and l1.a * l2.b - l2.a * l1.b == 0


def parallel_through(l: Line, p: Point) -> Line:
    return Line.from_coefficients(l.a, l.b, -(l.a * p.x + l.b * p.y))


def collinear(a: Point, b: Point, c: Point) -> bool:
    (ux, uy), (vx, vy) = b - a, c - a
    return ux * vy - uy * vx == 0


def between(a: Point, b: Point, c: Point) -> bool:
    """True iff ``b`` lies strictly between ``a`` and ``c``."""
    if a == b or b == c or a == c:
        raise errors.DegeneratePoints(f"{a}, {b}, {c} not pairwise distinct")
    if not collinear(a, b, c):
        raise errors.NotCollinear(f"{a}, {b}, {c}")
    (ux, uy), (vx, vy) = b - a, c - a
    t = ux / vx if vx else uy / vy
    return 0 < t < 1


def same_side(l: Line, p: Point, q: Point) -> bool:
    sp, sq = l.side(p), l.side(q)
    if sp == 0 or sq == 0:
        raise errors.PointOnLine(f"{p if sp == 0 else q} on {l}")
    return sp == sq


def make_ray(origin: Point, through: Point) -> Ray:
    if origin == through:
        raise errors.CoincidentPoints(f"{origin} = {through}")
    dx, dy = _clear(*(through - origin))
    return Ray(origin, dx, dy)


def opposite(h: Ray) -> Ray:
    return Ray(h.origin, -h.dx, -h.dy)


def make_angle(h: Ray, k: Ray) -> Angle:
    return Angle(h, k)


def angle_at(vertex: Point, p: Point, q: Point) -> Angle:
    """The angle at ``vertex`` with sides through ``p`` and ``q``."""
    return Angle(make_ray(vertex, p), make_ray(vertex, q))


def compare_measure(a1: Angle, a2: Angle) -> Ordering:
    """Exact measure comparison through the cosine, which is decreasing on (0, pi).

    With ``cos = dot / sqrt(N)`` and ``N = |h|^2 |k|^2``, the sign of ``dot``
    splits the cases, then ``dot1^2 * N2`` against ``dot2^2 * N1`` settles the
    magnitude without square roots.
    """
    def parts(a: Angle):
        n = (a.h.dx ** 2 + a.h.dy ** 2) * (a.k.dx ** 2 + a.k.dy ** 2)
        return a.dot, n

    d1, n1 = parts(a1)
    d2, n2 = parts(a2)
    s1, s2 = (d1 > 0) - (d1 < 0), (d2 > 0) - (d2 < 0)
    if s1 != s2:
        # larger cosine means smaller angle
        return Ordering.LESS if s1 > s2 else Ordering.GREATER
    lhs, rhs = d1 * d1 * n2, d2 * d2 * n1
    if lhs == rhs:
        return Ordering.EQUAL
    cos1_bigger = (lhs > rhs) if s1 > 0 else (lhs < rhs)
    return Ordering.LESS if cos1_bigger else Ordering.GREATER


# registry of measures realizable exactly by rational directions: (cross, dot) -> q
EXACT_MEASURES: dict[tuple[int, int], Fraction] = {
    (1, 1): Fraction(1, 4),
    (1, 0): Fraction(1, 2),
    (1, -1): Fraction(3, 4),
}


def measure_value(a: Angle, precision: Precision | None = None):
    """Radian measure of ``a``: ExactPi for registry hits, else a certified interval."""
    key = a.measure_key
    q = EXACT_MEASURES.get(key)
    if q is not None:
        return ExactPi(q)
    return from_form(atan2_form(*key), precision or DEFAULT_PRECISION)


def is_supplementary(a1: Angle, a2: Angle) -> bool:
    if a1.vertex != a2.vertex:
        return False
    r1, r2 = {a1.h, a1.k}, {a2.h, a2.k}
    shared = r1 & r2
    if len(shared) != 1:
        return False
    (u,) = r1 - shared
    (v,) = r2 - shared
    return (u.dx, u.dy) == (-v.dx, -v.dy)


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def in_interior(a: Angle, r: Ray) -> bool:
    """``r`` strictly on the k-side of line(h) and the h-side of line(k)."""
    if r.origin != a.vertex:
        raise errors.VertexMismatch(f"{r.origin} is not the vertex {a.vertex}")
    h, k, d = a.h.direction, a.k.direction, r.direction
    side_k = _cross(h, k)
    side_h = _cross(k, h)
    return _cross(h, d) * side_k > 0 and _cross(k, d) * side_h > 0


def segment_congruent(s1: Segment, s2: Segment) -> bool:
    return s1.squared_length == s2.squared_length


def segment_meets_line(a: Point, b: Point, l: Line) -> bool:
    """The open segment ``ab`` crosses ``l`` (endpoints strictly on opposite sides)."""
    return l.side(a) * l.side(b) < 0


def dedup(items: Iterable) -> list:
    seen = set()
    out = []
    for it in items:
        if it not in seen:
            seen.add(it)
            out.append(it)
    return out
