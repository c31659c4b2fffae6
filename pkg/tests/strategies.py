"""Hypothesis strategies for exact plane objects."""

from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from nonsas.kernel import Angle, Point, Ray

small_ints = st.integers(-12, 12)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def points(draw):
    return Point(draw(rationals), draw(rationals))


@st.composite
def directions(draw, bound=12):
    dx = draw(st.integers(-bound, bound))
    dy = draw(st.integers(-bound, bound))
    assume((dx, dy) != (0, 0))
    return dx, dy


@st.composite
def angles(draw, vertex=None):
    v = vertex if vertex is not None else draw(points())
    h, k = draw(directions()), draw(directions())
    assume(h[0] * k[1] - h[1] * k[0] != 0)
    return Angle(Ray(v, *h), Ray(v, *k))


@st.composite
def perpendicular_angles(draw):
    v = draw(points())
    dx, dy = draw(directions())
    s = draw(st.sampled_from([1, -1]))
    return Angle(Ray(v, dx, dy), Ray(v, -s * dy, s * dx))


fractions_of_pi = st.fractions(min_value=Fraction(1, 10 ** 6), max_value=Fraction(999999, 10 ** 6),
                               max_denominator=10 ** 4).filter(lambda q: 0 < q < 1)
