import json
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from nonsas.errors import MalformedSpec, OutOfDomain, RangeOverflow
from nonsas.kernel import Angle, Point, Ray, angle_at, compare_measure, make_ray, measure_value
from nonsas.labeling import (
    IDENTITY,
    Power,
    Transpositions,
    add_classes,
    builtin_scheme,
    compare_to_two_rights,
    congruent,
    counterexample_scheme,
    custom_scheme,
    extend,
    hat_apply,
    hat_invert,
    identity_scheme,
    label_at,
    label_of,
    power_scheme,
    scheme_from_dict,
    scheme_from_json,
    scheme_to_dict,
    supplement_class,
    transfer_angle,
)
from nonsas.values import ExactPi, Interval, Ordering, TriBool, compare, from_form
from nonsas.reals import atan2_form
from tests.strategies import angles, perpendicular_angles, points

Q = lambda n, d=1: ExactPi(Fraction(n, d))  # noqa: E731
SWAP = Transpositions(((Fraction(1, 4), Fraction(7, 16)),))
SCHEMES = [identity_scheme(), counterexample_scheme(), builtin_scheme("power")]


def ray(o, d):
    return Ray(Point(*o), *d)


def test_hat_apply_examples():
    assert hat_apply(SWAP, Q(1, 4)) == Q(7, 16)
    assert hat_apply(IDENTITY, Q(1, 4)) == Q(1, 4)
    assert hat_apply(Power(2), Q(1, 4)) == Q(1, 16)
    assert hat_apply(SWAP, Q(1, 3)) == Q(1, 3)


def test_hat_invert_examples():
    assert hat_invert(SWAP, Q(1, 4)) == Q(7, 16)
    assert hat_invert(IDENTITY, Q(1, 3)) == Q(1, 3)
    assert hat_invert(Power(2), Q(1, 16)) == Q(1, 4)


def test_hat_domain():
    with pytest.raises(OutOfDomain):
        hat_apply(IDENTITY, Q(1, 2))
    with pytest.raises(OutOfDomain):
        hat_invert(Power(2), Q(3, 4))


def test_transpositions_pass_intervals_through():
    x = from_form(atan2_form(1, 2))
    assert hat_apply(SWAP, x) == x


def test_bijection_validation():
    with pytest.raises(MalformedSpec):
        Power(1)
    with pytest.raises(MalformedSpec):
        Transpositions(((Fraction(1, 4), Fraction(1, 3)), (Fraction(1, 3), Fraction(1, 5))))
    with pytest.raises(MalformedSpec):
        Transpositions(((Fraction(1, 4), Fraction(1, 2)),))
    with pytest.raises(MalformedSpec):
        power_scheme({Point(2, 3): 1})
    assert power_scheme({Point(2, 3): 2}).at(Point(2, 3)) == Power(2)


def test_counterexample_scheme_overrides():
    s = counterexample_scheme()
    assert s.overrides == ((Point(1, 1), SWAP),)
    assert s.at(Point(0, 0)) == IDENTITY


def test_label_of_examples():
    s = counterexample_scheme()
    assert label_of(s, angle_at(Point(0, 0), Point(1, 0), Point(1, 1))) == Q(1, 4)
    assert label_of(s, angle_at(Point(1, 1), Point(2, 1), Point(2, 2))) == Q(7, 16)
    assert label_of(s, angle_at(Point(1, 1), Point(2, 1), Point(0, 0))) == Q(9, 16)


def test_congruent_examples():
    s = counterexample_scheme()
    r0 = angle_at(Point(0, 0), Point(1, 0), Point(0, 1))
    r1 = angle_at(Point(1, 1), Point(2, 1), Point(1, 2))
    assert congruent(s, r0, r1) is TriBool.TRUE
    a0 = angle_at(Point(0, 0), Point(1, 0), Point(1, 1))
    a1 = angle_at(Point(1, 1), Point(2, 1), Point(2, 2))
    assert congruent(s, a0, a1) is TriBool.FALSE
    assert congruent(identity_scheme(), a1, a1) is TriBool.TRUE


def test_class_arithmetic_examples():
    assert add_classes(Q(1, 4), Q(9, 16)) == Q(13, 16)
    assert add_classes(Q(1, 2), Q(1, 2)) == Q(1)
    assert add_classes(Q(1, 16), Q(1, 16)) == Q(1, 8)
    assert supplement_class(Q(7, 16)) == Q(9, 16)
    assert supplement_class(Q(1, 2)) == Q(1, 2)
    assert supplement_class(supplement_class(Q(1, 4))) == Q(1, 4)
    assert compare_to_two_rights(Q(13, 16)) is Ordering.LESS
    assert compare_to_two_rights(Q(1)) is Ordering.EQUAL
    assert compare_to_two_rights(Q(19, 16)) is Ordering.GREATER
    with pytest.raises(OutOfDomain):
        supplement_class(Q(1))
    with pytest.raises(RangeOverflow):
        add_classes(Q(3, 2), Q(3, 4))


def test_transfer_examples():
    r = transfer_angle(identity_scheme(), Q(1, 2), ray((0, 0), (1, 0)), Point(0, 1))
    assert r.exact == ray((0, 0), (0, 1))
    r = transfer_angle(counterexample_scheme(), Q(7, 16), make_ray(Point(1, 1), Point(2, 1)), Point(1, 2))
    assert r.exact == make_ray(Point(1, 1), Point(2, 2))
    c = measure_value(angle_at(Point(0, 0), Point(1, 0), Point(1, 2)))
    r = transfer_angle(identity_scheme(), c, ray((0, 0), (1, 0)), Point(0, 1))
    assert r.exact == ray((0, 0), (1, 2))


def test_transfer_brackets_unreachable_measure():
    # 7π/16 at an identity point has no rational ray: expect a tight bracket
    r = transfer_angle(identity_scheme(), Q(7, 16), ray((0, 0), (1, 0)), Point(0, 1), steps=30)
    assert r.exact is None
    lo = measure_value(Angle(ray((0, 0), (1, 0)), r.inner))
    hi = measure_value(Angle(ray((0, 0), (1, 0)), r.outer))
    assert compare(lo, Q(7, 16)) is Ordering.LESS and compare(Q(7, 16), hi) is Ordering.LESS
    assert r.inner.dy > 0 and r.outer.dy > 0


def test_transfer_under_power_lands_on_a_label():
    s = builtin_scheme("power")
    h = make_ray(Point(1, 1), Point(2, 1))
    r = transfer_angle(s, Q(1, 16), h, Point(1, 2))
    assert r.exact == make_ray(Point(1, 1), Point(2, 2))
    assert label_of(s, Angle(h, r.exact)) == Q(1, 16)


def test_power_round_trip_is_exact_for_irrational_values():
    b = Power(Fraction(3, 2))
    x = from_form(atan2_form(1, 2))
    y = hat_apply(b, x)
    assert isinstance(y, Interval)
    assert hat_invert(b, y) == x


# ---------------------------------------------------------------------------
# scheme files
# ---------------------------------------------------------------------------

DOC = {"default": "identity", "overrides": [
    {"point": ["1", "1"], "bijection": {"kind": "transpositions", "pairs": [["1/4", "7/16"]]}},
    {"point": ["2", "3"], "bijection": {"kind": "power", "r": "2"}},
]}


def test_scheme_round_trip():
    s = scheme_from_json(json.dumps(DOC))
    assert s.at(Point(1, 1)) == SWAP and s.at(Point(2, 3)) == Power(2)
    assert scheme_from_dict(scheme_to_dict(s)).overrides == s.overrides


@pytest.mark.parametrize("doc, where", [
    ({"overrides": [{"point": ["1"], "bijection": {"kind": "power", "r": "2"}}]}, "$.overrides[0].point"),
    ({"overrides": [{"point": ["1", "1"], "bijection": {"kind": "power", "r": "1"}}]}, "$.overrides[0].bijection"),
    ({"overrides": [{"point": ["1", "1"], "bijection": {"kind": "spin"}}]}, "$.overrides[0].bijection.kind"),
    ({"overrides": [{"point": ["0.5", "x"], "bijection": {"kind": "identity"}}]}, "$.overrides[0].point[1]"),
    ({"default": "power"}, "$.default"),
])
def test_scheme_errors_are_positional(doc, where):
    with pytest.raises(MalformedSpec) as err:
        scheme_from_dict(doc)
    assert err.value.where == where


def test_scheme_json_syntax_error_is_positional():
    with pytest.raises(MalformedSpec) as err:
        scheme_from_json('{"overrides": [\n  {"point": ]}')
    assert err.value.where.startswith("line 2 column")


def test_duplicate_override_points_rejected():
    doc = {"overrides": [{"point": ["1", "1"], "bijection": {"kind": "identity"}}] * 2}
    with pytest.raises(MalformedSpec):
        scheme_from_dict(doc)
    with pytest.raises(MalformedSpec):
        custom_scheme({Point(1, 1): IDENTITY}).__class__("x", ((Point(1, 1), IDENTITY), (Point(1, 1), SWAP)))


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("s", SCHEMES, ids=lambda s: s.name)
@given(a=perpendicular_angles())
def test_right_angles_are_fixed(s, a):
    assert label_of(s, a) == Q(1, 2)


@pytest.mark.parametrize("s", SCHEMES, ids=lambda s: s.name)
@given(n=st.integers(1, 999), p=st.sampled_from([Point(0, 0), Point(1, 1), Point(2, 3), Point(3, 1)]))
def test_supplement_identity(s, n, p):
    x = Q(n, 1000)
    total = add_classes(label_at(s, p, x), label_at(s, p, Q(1000 - n, 1000)))
    assert compare(total, Q(1)) is Ordering.EQUAL


@pytest.mark.parametrize("s", SCHEMES, ids=lambda s: s.name)
@given(a=angles(vertex=Point(1, 1)))
def test_labels_ignore_ray_order(s, a):
    assert label_of(s, Angle(a.k, a.h)) == label_of(s, a)


@given(angles(), angles())
def test_identity_congruence_matches_cosine_oracle(a1, a2):
    verdict = congruent(identity_scheme(), a1, a2)
    assert (verdict is TriBool.TRUE) == (compare_measure(a1, a2) is Ordering.EQUAL)
    assert verdict is not TriBool.UNKNOWN


@given(angles(vertex=Point(1, 1)), angles(vertex=Point(2, 3)), angles(vertex=Point(0, 0)))
def test_congruence_is_an_equivalence_where_decided(a, b, c):
    s = builtin_scheme("power")
    ab, bc, ac = congruent(s, a, b), congruent(s, b, c), congruent(s, a, c)
    assert congruent(s, a, a) is TriBool.TRUE
    assert congruent(s, b, a) is ab
    if ab is TriBool.TRUE and bc is TriBool.TRUE:
        assert ac is not TriBool.FALSE


@pytest.mark.parametrize("r", [Fraction(3, 2), Fraction(2), Fraction(5, 2)])
@given(st.fractions(Fraction(1, 1000), Fraction(999, 1000), max_denominator=1000),
       st.fractions(Fraction(1, 1000), Fraction(999, 1000), max_denominator=1000))
def test_power_extension_is_monotone(r, q1, q2):
    assume(q1 != q2)
    q1, q2 = min(q1, q2), max(q1, q2)
    b = Power(r)
    assert compare(extend(b, ExactPi(q1)), extend(b, ExactPi(q2))) is Ordering.LESS


@pytest.mark.parametrize("r", [Fraction(3, 2), Fraction(2), Fraction(5, 2)])
@given(st.fractions(Fraction(1, 1000), Fraction(499, 1000), max_denominator=1000))
def test_power_round_trip(r, q):
    b = Power(r)
    assert compare(hat_invert(b, hat_apply(b, ExactPi(q))), ExactPi(q)) is Ordering.EQUAL


@given(points())
def test_unlisted_points_use_identity(p):
    s = counterexample_scheme()
    assume(p != Point(1, 1))
    assert s.at(p) == IDENTITY
