"""Certified real enclosures for angle arithmetic.

Every angle quantity handled by the package is a linear form
``q*pi + sum(c_i * node_i)`` with rational ``q``, integer ``c_i`` and a small
set of transcendental nodes. An enclosure at ``bits`` is an integer pair
``(lo, hi)`` standing for ``[lo / 2**bits, hi / 2**bits]``. All rounding is
outward, so the true value always lies inside.

Only integer arithmetic is used; nothing here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _shift_out(lo: int, hi: int, k: int) -> tuple[int, int]:
    """Drop ``k`` fractional bits, rounding lo down and hi up."""
    if k <= 0:
        return lo << -k, hi << -k
    return lo >> k, -((-hi) >> k)


def iroot(x: int, n: int) -> int:
    """Floor of the n-th root of a non-negative integer."""
    if x < 0:
        raise ValueError("iroot of negative number")
    if n == 1 or x < 2:
        return x
    if n == 2:
        return math.isqrt(x)
    r = 1 << -(-x.bit_length() // n)
    while True:
        y = ((n - 1) * r + x // r ** (n - 1)) // n
        if y >= r:
            return r
        r = y


def iroot_ceil(x: int, n: int) -> int:
    r = iroot(x, n)
    return r if r ** n == x else r + 1


def exact_root(f: Fraction, n: int) -> Fraction | None:
    """The rational n-th root of ``f >= 0``, or None when it is irrational."""
    a, b = f.numerator, f.denominator
    ra, rb = iroot(a, n), iroot(b, n)
    if ra ** n == a and rb ** n == b:
        return Fraction(ra, rb)
    return None


def rational_power(f: Fraction, e: Fraction) -> Fraction | None:
    """``f ** e`` for positive rational ``f`` when the result is rational."""
    base = f ** e.numerator
    return exact_root(base, e.denominator)


# ---------------------------------------------------------------------------
# arctangent and pi
# ---------------------------------------------------------------------------

def atan_fixed(p: int, q: int, bits: int) -> tuple[int, int]:
    """Enclose ``atan(p/q)`` for ``0 < p <= q``.

    Uses Euler's series ``sum 2^2n (n!)^2 / (2n+1)! * x^(2n+1) / (1+x^2)^(n+1)``
    whose terms are positive with ratio below ``y = x^2/(1+x^2) <= 1/2``.
    Each truncated term undershoots by less than ``n+1`` ulps, and the tail
    after the first vanishing term is at most ``2(n+1)`` ulps.
    """
    if not 0 < p <= q:
        raise ValueError("atan_fixed needs 0 < p <= q")
    guard = 2 * max(bits, 8).bit_length() + 6
    w = bits + guard
    s = p * p + q * q
    p2 = p * p
    term = (p * q << w) // s
    total = 0
    n = 0
    while term:
        total += term
        term = term * (2 * n + 2) * p2 // ((2 * n + 3) * s)
        n += 1
    err = n * (n + 1) // 2 + 2 * (n + 1) + 1
    return _shift_out(total, total + err, guard)


@lru_cache(maxsize=None)
def pi_enclosure(bits: int) -> tuple[int, int]:
    """Enclose pi as ``4*(atan(1/2) + atan(1/3))``."""
    w = bits + 4
    al, ah = atan_fixed(1, 2, w)
    bl, bh = atan_fixed(1, 3, w)
    return _shift_out(4 * (al + bl), 4 * (ah + bh), 4)


# ---------------------------------------------------------------------------
# symbolic nodes and linear forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Atan2:
    """The angle ``atan2(cross, dot)``; canonical forms have both positive and coprime."""

    cross: int
    dot: int

    def sort_key(self) -> tuple:
        return (0, self.cross, self.dot)


@dataclass(frozen=True)
class PowerHat:
    """``x * (2x/pi)**r`` applied to ``arg``."""

    r: Fraction
    arg: Linear

    def sort_key(self) -> tuple:
        return (1, self.r, self.arg.sort_key())


@dataclass(frozen=True)
class PowerHatInv:
    """Inverse of :class:`PowerHat`: ``(pi/2) * (2y/pi)**(1/(r+1))``."""

    r: Fraction
    arg: Linear

    def sort_key(self) -> tuple:
        return (2, self.r, self.arg.sort_key())


Node = Union[Atan2, PowerHat, PowerHatInv]


@dataclass(frozen=True)
class Linear:
    """``pi_coeff * pi + sum(coef * node)``, kept canonical by :func:`linear`."""

    pi_coeff: Fraction
    terms: tuple[tuple[Node, int], ...] = ()

    def sort_key(self) -> tuple:
        return (self.pi_coeff, tuple((n.sort_key(), c) for n, c in self.terms))

    @property
    def is_exact(self) -> bool:
        return not self.terms

    def __add__(self, other: Linear) -> Linear:
        acc = dict(self.terms)
        for node, c in other.terms:
            acc[node] = acc.get(node, 0) + c
        return linear(self.pi_coeff + other.pi_coeff, acc)

    def __neg__(self) -> Linear:
        return Linear(-self.pi_coeff, tuple((n, -c) for n, c in self.terms))

    def __sub__(self, other: Linear) -> Linear:
        return self + (-other)


def linear(pi_coeff, terms: dict | None = None) -> Linear:
    """Build a canonical linear form.

    Atan2 nodes are rewritten so that ``dot > 0``: ``atan2(c, 0) = pi/2`` and
    ``atan2(c, d) = pi - atan2(c, -d)`` for ``d < 0``; ``atan2(1, 1)`` folds
    into ``pi/4``. Zero coefficients drop.
    """
    pi_coeff = Fraction(pi_coeff)
    acc: dict[Node, int] = {}
    for node, c in (terms or {}).items():
        if not c:
            continue
        if isinstance(node, Atan2):
            g = math.gcd(node.cross, node.dot)
            cross, dot = node.cross // g, node.dot // g
            if cross <= 0:
                raise ValueError("Atan2 node needs positive cross")
            if dot == 0:
                pi_coeff += Fraction(c, 2)
                continue
            if dot < 0:
                pi_coeff += c
                dot, c = -dot, -c
            if cross == dot:
                pi_coeff += Fraction(c, 4)
                continue
            node = Atan2(cross, dot)
        acc[node] = acc.get(node, 0) + c
    items = sorted(((n, c) for n, c in acc.items() if c), key=lambda t: t[0].sort_key())
    return Linear(pi_coeff, tuple(items))


def atan2_form(cross: int, dot: int) -> Linear:
    return linear(0, {Atan2(cross, dot): 1})


# ---------------------------------------------------------------------------
# enclosures
# ---------------------------------------------------------------------------

def _scale_rational(lo: int, hi: int, q: Fraction) -> tuple[int, int]:
    a, b = q.numerator * lo, q.numerator * hi
    d = q.denominator
    return min(a, b) // d, _ceil_div(max(a, b), d)


def _power_scaled(zl: int, zh: int, e: Fraction, w: int) -> tuple[int, int]:
    """Enclose ``z**e`` where ``z`` in ``[zl, zh] / 2**w`` and ``e > 0``."""
    n, m = e.numerator, e.denominator
    zl = max(zl, 0)
    if m >= n:
        xl = zl ** n << (w * (m - n))
        xh = zh ** n << (w * (m - n))
    else:
        k = w * (n - m)
        xl = zl ** n >> k
        xh = -((-(zh ** n)) >> k)
    return iroot(xl, m), iroot_ceil(xh, m)


def _atan2_enclosure(node: Atan2, bits: int) -> tuple[int, int]:
    c, d = node.cross, node.dot
    if c <= d:
        return atan_fixed(c, d, bits)
    w = bits + 2
    pl, ph = pi_enclosure(w)
    al, ah = atan_fixed(d, c, w)
    return _shift_out((pl >> 1) - ah, ((ph + 1) >> 1) - al, 2)


def _power_enclosure(node: PowerHat, bits: int) -> tuple[int, int]:
    w = bits + 16
    xl, xh = enclose(node.arg, w)
    xl = max(xl, 0)
    pl, ph = pi_enclosure(w)
    zl = (2 * xl << w) // ph
    zh = _ceil_div(2 * xh << w, pl)
    ul, uh = _power_scaled(zl, zh, node.r, w)
    lo = (xl * ul) >> w
    hi = _ceil_div(xh * uh, 1 << w)
    return _shift_out(lo, hi, 16)


def _power_inv_enclosure(node: PowerHatInv, bits: int) -> tuple[int, int]:
    w = bits + 16
    yl, yh = enclose(node.arg, w)
    yl = max(yl, 0)
    pl, ph = pi_enclosure(w)
    zl = (2 * yl << w) // ph
    zh = _ceil_div(2 * yh << w, pl)
    r = node.r
    e = Fraction(r.denominator, r.numerator + r.denominator)
    ul, uh = _power_scaled(zl, zh, e, w)
    lo = (pl * ul) >> (w + 1)
    hi = _ceil_div(ph * uh, 1 << (w + 1))
    return _shift_out(lo, hi, 16)


@lru_cache(maxsize=1 << 16)
def node_enclosure(node: Node, bits: int) -> tuple[int, int]:
    if isinstance(node, Atan2):
        return _atan2_enclosure(node, bits)
    if isinstance(node, PowerHat):
        return _power_enclosure(node, bits)
    if isinstance(node, PowerHatInv):
        return _power_inv_enclosure(node, bits)
    raise TypeError(f"unknown node {node!r}")


def enclose(form: Linear, bits: int) -> tuple[int, int]:
    """Outward-rounded enclosure of a linear form at ``bits`` fractional bits."""
    guard = 4 + (len(form.terms) + 1).bit_length()
    w = bits + guard
    lo = hi = 0
    if form.pi_coeff:
        pl, ph = pi_enclosure(w)
        lo, hi = _scale_rational(pl, ph, form.pi_coeff)
    for node, c in form.terms:
        nl, nh = node_enclosure(node, w)
        if c > 0:
            lo += c * nl
            hi += c * nh
        else:
            lo += c * nh
            hi += c * nl
    return _shift_out(lo, hi, guard)


def enclose_fractions(form: Linear, bits: int) -> tuple[Fraction, Fraction]:
    lo, hi = enclose(form, bits)
    return Fraction(lo, 1 << bits), Fraction(hi, 1 << bits)


# ---------------------------------------------------------------------------
# exact zero test for arctangent sums
# ---------------------------------------------------------------------------

# unit directions at multiples of pi/4, scaled to integers
_EIGHTH_TURNS = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]


def zero_mod_two_pi(form: Linear) -> bool | None:
    """Decide whether ``form`` is an integer multiple of ``2*pi``.

    Applies when every node is an Atan2 and ``4 * pi_coeff`` is an integer:
    the sum of arguments equals the argument of the Gaussian-integer product
    ``prod (dot + i*cross)**coef``, so the question reduces to whether that
    product points along ``exp(-i * pi_coeff * pi)``. Returns None when the
    form is outside this fragment.
    """
    q4 = form.pi_coeff * 4
    if q4.denominator != 1:
        return None
    re, im = 1, 0
    for node, c in form.terms:
        if not isinstance(node, Atan2):
            return None
        a, b = node.dot, node.cross
        if c < 0:
            b = -b
        for _ in range(abs(c)):
            re, im = re * a - im * b, re * b + im * a
        g = math.gcd(re, im)
        re, im = re // g, im // g
    dx, dy = _EIGHTH_TURNS[(-int(q4)) % 8]
    return re * dy - im * dx == 0 and re * dx + im * dy > 0


# ---------------------------------------------------------------------------
# text
# ---------------------------------------------------------------------------

def format_node(node: Node) -> str:
    if isinstance(node, Atan2):
        arg = node.cross if node.dot == 1 else f"{node.cross}/{node.dot}"
        return f"atan({arg})"
    tag = "pow" if isinstance(node, PowerHat) else "pow_inv"
    return f"{tag}[{node.r}]({format_form(node.arg)})"


def format_form(form: Linear) -> str:
    """Exact symbolic text such as ``1/2 π - atan(1/2)``; never decimals."""
    parts = []
    if form.pi_coeff:
        parts.append((form.pi_coeff < 0, f"{abs(form.pi_coeff)} π"))
    for node, c in form.terms:
        mag = "" if abs(c) == 1 else f"{abs(c)}·"
        parts.append((c < 0, mag + format_node(node)))
    if not parts:
        return "0"
    neg, first = parts[0]
    out = ("-" if neg else "") + first
    for neg, text in parts[1:]:
        out += (" - " if neg else " + ") + text
    return out
