from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonsas.reals import (
    PowerHat,
    PowerHatInv,
    atan2_form,
    atan_fixed,
    enclose,
    exact_root,
    format_form,
    iroot,
    iroot_ceil,
    linear,
    pi_enclosure,
    rational_power,
    zero_mod_two_pi,
)

mpmath.mp.prec = 1400


def mpq(f: Fraction):
    return mpmath.mpf(f.numerator) / f.denominator


def contains(bits, lo, hi, true_value):
    scale = mpmath.mpf(2) ** bits
    return mpmath.mpf(lo) / scale <= true_value <= mpmath.mpf(hi) / scale


@pytest.mark.parametrize("bits", [16, 64, 256, 1024])
def test_pi_enclosure_contains_pi(bits):
    lo, hi = pi_enclosure(bits)
    assert contains(bits, lo, hi, mpmath.pi)
    assert hi - lo <= 4


@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6), st.sampled_from([32, 64, 200]))
def test_atan_fixed_matches_oracle(p, q, bits):
    p, q = min(p, q), max(p, q)
    lo, hi = atan_fixed(p, q, bits)
    assert contains(bits, lo, hi, mpmath.atan(mpmath.mpf(p) / q))


@given(st.integers(1, 5000), st.integers(-5000, 5000))
def test_atan2_form_encloses_angle(cross, dot):
    form = atan2_form(cross, dot)
    lo, hi = enclose(form, 96)
    assert contains(96, lo, hi, mpmath.atan2(cross, dot))
    assert hi - lo < 64


@given(st.integers(0, 10 ** 40), st.integers(1, 7))
def test_iroot_floor_and_ceil(x, n):
    r = iroot(x, n)
    assert r ** n <= x < (r + 1) ** n
    c = iroot_ceil(x, n)
    assert (c - 1) ** n < x <= c ** n or x == 0


def test_exact_root_and_rational_power():
    assert exact_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert exact_root(Fraction(2), 2) is None
    assert rational_power(Fraction(1, 4), Fraction(3, 2)) == Fraction(1, 8)
    assert rational_power(Fraction(1, 2), Fraction(1, 2)) is None


@pytest.mark.parametrize("r", [Fraction(3, 2), Fraction(2), Fraction(5, 2)])
@pytest.mark.parametrize("q", [Fraction(1, 7), Fraction(1, 4), Fraction(2, 5)])
def test_power_nodes_match_oracle(r, q):
    x = mpq(q) * mpmath.pi
    node = PowerHat(r, linear(q))
    form = linear(0, {node: 1})
    lo, hi = enclose(form, 128)
    expected = x * (2 * x / mpmath.pi) ** mpq(r)
    assert contains(128, lo, hi, expected)
    inv = linear(0, {PowerHatInv(r, linear(q)): 1})
    lo, hi = enclose(inv, 128)
    expected_inv = (mpmath.pi / 2) * (2 * mpq(q)) ** (1 / (1 + mpq(r)))
    assert contains(128, lo, hi, expected_inv)


def test_power_node_over_arctangent_matches_oracle():
    node = PowerHat(Fraction(5, 2), atan2_form(4, 3))
    lo, hi = enclose(linear(0, {node: 1}), 200)
    x = mpmath.atan2(4, 3)
    assert contains(200, lo, hi, x * (2 * x / mpmath.pi) ** 2.5)


def test_canonical_forms():
    assert atan2_form(1, 0) == linear(Fraction(1, 2))
    assert atan2_form(1, 1) == linear(Fraction(1, 4))
    assert atan2_form(1, -1) == linear(Fraction(3, 4))
    assert atan2_form(2, -1) == linear(1) - atan2_form(2, 1)
    assert atan2_form(4, 2) == atan2_form(2, 1)


def test_zero_test_on_arctangent_identities():
    # atan(1/2) + atan(1/3) = pi/4
    assert zero_mod_two_pi(atan2_form(1, 2) + atan2_form(1, 3) - linear(Fraction(1, 4))) is True
    # 2 atan(1/3) + atan(1/7) = pi/4
    f = atan2_form(1, 3) + atan2_form(1, 3) + atan2_form(1, 7) - linear(Fraction(1, 4))
    assert zero_mod_two_pi(f) is True
    assert zero_mod_two_pi(atan2_form(1, 2) - linear(Fraction(1, 4))) is False
    # outside the fragment
    assert zero_mod_two_pi(linear(Fraction(1, 3))) is None
    assert zero_mod_two_pi(linear(0, {PowerHat(Fraction(2), linear(Fraction(1, 8))): 1})) is None


def test_format_form_is_symbolic():
    assert format_form(linear(Fraction(7, 16))) == "7/16 π"
    assert format_form(atan2_form(2, 1)) == "atan(2)"
    assert format_form(linear(1) - atan2_form(2, 3)) == "1 π - atan(2/3)"
    assert "pow[2]" in format_form(linear(0, {PowerHat(Fraction(2), atan2_form(2, 1)): 1}))
    assert format_form(linear(0)) == "0"
