import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from nonsas.kernel import Point, Segment, segment_congruent
from nonsas.motions import ROTATIONS, Motion, TrianglePair, random_motion, sample_congruent_triangles

BASE = (Point(0, 0), Point(1, 0), Point(1, 1))


def _sympy_image(m: Motion, p: Point) -> Point:
    rot = sympy.Matrix([[m.cos, -m.sin], [m.sin, m.cos]])
    refl = sympy.Matrix([[1, 0], [0, -1 if m.reflect else 1]])
    v = rot * refl * sympy.Matrix([p.x, p.y]) + sympy.Matrix([m.tx, m.ty])
    return Point(Fraction(str(v[0])), Fraction(str(v[1])))


def test_rotation_then_translation():
    m = Motion(Fraction(3, 5), Fraction(4, 5), False, Fraction(2), Fraction(1))
    image = tuple(m(p) for p in BASE)
    assert image == (Point(2, 1), Point(Fraction(13, 5), Fraction(9, 5)), Point(Fraction(9, 5), Fraction(12, 5)))
    assert image == tuple(_sympy_image(m, p) for p in BASE)


def test_identity_motion():
    assert tuple(Motion()(p) for p in BASE) == BASE


def test_reflection_across_x_axis():
    m = Motion(reflect=True)
    image = tuple(m(p) for p in BASE)
    assert image == (Point(0, 0), Point(1, 0), Point(1, -1))
    for i, j in ((0, 1), (0, 2), (1, 2)):
        assert segment_congruent(Segment(BASE[i], BASE[j]), Segment(image[i], image[j]))


def test_rotations_are_unit_vectors():
    assert all(c * c + s * s == 1 for c, s in ROTATIONS)
    with pytest.raises(ValueError):
        Motion(Fraction(1), Fraction(1))


def test_degenerate_pair_rejected():
    with pytest.raises(ValueError):
        TrianglePair((Point(0, 0), Point(1, 1), Point(2, 2)), BASE)


def test_sample_requires_positive_count():
    with pytest.raises(ValueError):
        sample_congruent_triangles(1, 0)


def test_sampling_is_deterministic():
    assert sample_congruent_triangles(7, 20) == sample_congruent_triangles(7, 20)
    assert sample_congruent_triangles(7, 20) != sample_congruent_triangles(8, 20)


@given(st.integers(0, 2 ** 32))
def test_sampled_pairs_are_congruent(seed):
    for pair in sample_congruent_triangles(seed, 5):
        a, b = pair.first, pair.second
        for i, j in ((0, 1), (0, 2), (1, 2)):
            assert segment_congruent(Segment(a[i], a[j]), Segment(b[i], b[j]))
        assert tuple(pair.motion(p) for p in a) == b


@given(st.integers(0, 2 ** 32))
def test_motions_agree_with_matrix_oracle(seed):
    m = random_motion(random.Random(seed))
    for p in BASE + (Point(Fraction(-3, 7), Fraction(5, 2)),):
        assert m(p) == _sympy_image(m, p)
