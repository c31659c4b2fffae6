"""Exact rational rigid motions and congruent-triangle sampling."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from nonsas.kernel import Point, collinear

_TRIPLES = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29)]


def _unit_vectors() -> list[tuple[Fraction, Fraction]]:
    out = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
           (Fraction(-1), Fraction(0)), (Fraction(0), Fraction(-1))]
    for a, b, c in _TRIPLES:
        for x, y in ((a, b), (b, a)):
            for sx in (1, -1):
                for sy in (1, -1):
                    out.append((Fraction(sx * x, c), Fraction(sy * y, c)))
    return out


ROTATIONS = _unit_vectors()


@dataclass(frozen=True)
class Motion:
    """``p -> R(p) + t`` with R a rotation by (cos, sin), optionally after y-reflection."""

    cos: Fraction = Fraction(1)
    sin: Fraction = Fraction(0)
    reflect: bool = False
    tx: Fraction = Fraction(0)
    ty: Fraction = Fraction(0)

    def __post_init__(self):
        if self.cos ** 2 + self.sin ** 2 != 1:
            raise ValueError("rotation must be a rational unit vector")

    def __call__(self, p: Point) -> Point:
        x, y = p.x, (-p.y if self.reflect else p.y)
        return Point(self.cos * x - self.sin * y + self.tx, self.sin * x + self.cos * y + self.ty)

    def describe(self) -> dict:
        return {"rotation": [str(self.cos), str(self.sin)], "reflect": self.reflect,
                "translation": [str(self.tx), str(self.ty)]}


Triangle = tuple[Point, Point, Point]


@dataclass(frozen=True)
class TrianglePair:
    """Two triangles with vertex ``i`` of the first corresponding to vertex ``i`` of the second."""

    first: Triangle
    second: Triangle
    motion: Motion | None = None

    def __post_init__(self):
        for t in (self.first, self.second):
            if collinear(*t):
                raise ValueError(f"degenerate triangle {t}")


def grid_points(n: int = 6) -> list[Point]:
    return [Point(x, y) for x in range(n + 1) for y in range(n + 1)]


def random_triangle(rng: random.Random, points: Sequence[Point]) -> Triangle:
    while True:
        a, b, c = rng.sample(list(points), 3)
        if not collinear(a, b, c):
            return (a, b, c)


def random_motion(rng: random.Random, span: int = 6) -> Motion:
    cos, sin = rng.choice(ROTATIONS)
    return Motion(cos, sin, rng.random() < 0.5,
                  Fraction(rng.randint(-span, span)), Fraction(rng.randint(-span, span)))


def sample_congruent_triangles(seed: int, n: int, points: Sequence[Point] | None = None) -> list[TrianglePair]:
    """``n`` triangle pairs related by exact rigid motions (deterministic in ``seed``)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    pts = list(points) if points is not None else grid_points()
    out = []
    for _ in range(n):
        tri = random_triangle(rng, pts)
        m = random_motion(rng)
        out.append(TrianglePair(tri, tuple(m(p) for p in tri), m))
    return out
