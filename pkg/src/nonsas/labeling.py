"""Per-point relabeling of angle measures and the congruence it induces.

Each point carries a bijection of ``(0, pi/2)`` onto itself (identity unless
overridden). An angle with vertex ``P`` and measure ``mu`` gets the label

* ``b(mu)``            when ``mu < pi/2``
* ``pi/2``             when ``mu = pi/2``
* ``pi - b(pi - mu)``  when ``mu > pi/2``

where ``b`` is the bijection at ``P``. Two angles are congruent when their
labels agree. Lines, points and incidences are untouched.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from nonsas import kernel
from nonsas.errors import MalformedSpec, OutOfDomain, PrecisionExhausted
from nonsas.kernel import Angle, Point, Ray
from nonsas.reals import PowerHat, PowerHatInv, atan2_form, linear, rational_power
from nonsas.values import (
    AngleValue,
    ExactPi,
    Interval,
    Ordering,
    Precision,
    TriBool,
    compare,
    from_form,
    pi_minus,
)
from nonsas.values import add as _add

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# hat bijections on (0, pi/2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    kind = "identity"

    def describe(self) -> str:
        return "identity"


@dataclass(frozen=True)
class Transpositions:
    """Swap finitely many disjoint pairs ``u*pi <-> v*pi``; fixed elsewhere."""

    pairs: tuple[tuple[Fraction, Fraction], ...]
    kind = "transpositions"

    def __post_init__(self):
        seen: set[Fraction] = set()
        norm = []
        for pair in self.pairs:
            u, v = (Fraction(t) for t in pair)
            for t in (u, v):
                if not 0 < t < HALF:
                    raise MalformedSpec(f"transposition entry {t} outside (0, 1/2)")
            if u == v:
                raise MalformedSpec(f"degenerate transposition {u} <-> {v}")
            if u in seen or v in seen:
                raise MalformedSpec(f"overlapping transpositions at {u} <-> {v}")
            seen.update((u, v))
            norm.append((min(u, v), max(u, v)))
        object.__setattr__(self, "pairs", tuple(sorted(norm)))

    @property
    def table(self) -> dict[Fraction, Fraction]:
        out = {}
        for u, v in self.pairs:
            out[u], out[v] = v, u
        return out

    def describe(self) -> str:
        return ", ".join(f"{u}π ↔ {v}π" for u, v in self.pairs)


@dataclass(frozen=True)
class Power:
    """``x -> x * (2x/pi)**r`` with rational ``r > 1``; strictly increasing."""

    r: Fraction
    kind = "power"

    def __post_init__(self):
        r = Fraction(self.r)
        if r <= 1:
            raise MalformedSpec(f"power exponent must exceed 1, got {r}")
        object.__setattr__(self, "r", r)

    def describe(self) -> str:
        r = str(self.r) if self.r.denominator == 1 else f"({self.r})"
        return f"x·(2x/π)^{r}"


HatBijection = Union[Identity, Transpositions, Power]


def _check_hat_domain(x: AngleValue, precision: Precision | None) -> None:
    if isinstance(x, ExactPi):
        if not x.q < HALF:
            raise OutOfDomain(f"{x} not in (0, π/2)")
        return
    upper = compare(x, ExactPi(HALF), precision)
    if upper is None:
        raise PrecisionExhausted(f"cannot place {x} against π/2")
    if upper is not Ordering.LESS or x.hi <= 0:
        raise OutOfDomain(f"{x} not in (0, π/2)")


def _single_node(x: AngleValue, kind):
    """The node of a value that is exactly one node with coefficient 1."""
    if isinstance(x, Interval):
        f = x.form
        if f.pi_coeff == 0 and len(f.terms) == 1 and f.terms[0][1] == 1:
            node = f.terms[0][0]
            if isinstance(node, kind):
                return node
    return None


def hat_apply(b: HatBijection, x: AngleValue, precision: Precision | None = None) -> AngleValue:
    """Evaluate the bijection ``b`` at ``x`` in ``(0, pi/2)``."""
    _check_hat_domain(x, precision)
    if isinstance(b, Identity):
        return x
    if isinstance(b, Transpositions):
        if isinstance(x, ExactPi):
            partner = b.table.get(x.q)
            if partner is not None:
                return ExactPi(partner)
        return x
    if isinstance(b, Power):
        if isinstance(x, ExactPi):
            t = rational_power(2 * x.q, b.r)
            if t is not None:
                return ExactPi(x.q * t)
        inv = _single_node(x, PowerHatInv)
        if inv is not None and inv.r == b.r:
            return from_form(inv.arg, precision)
        return from_form(linear(0, {PowerHat(b.r, x.form): 1}), precision)
    raise TypeError(f"unknown bijection {b!r}")


def hat_invert(b: HatBijection, y: AngleValue, precision: Precision | None = None) -> AngleValue:
    """The unique preimage of ``y`` under ``b``."""
    _check_hat_domain(y, precision)
    if isinstance(b, (Identity, Transpositions)):
        # transpositions are involutions
        return hat_apply(b, y, precision)
    if isinstance(b, Power):
        if isinstance(y, ExactPi):
            t = rational_power(2 * y.q, 1 / (b.r + 1))
            if t is not None:
                return ExactPi(t / 2)
        fwd = _single_node(y, PowerHat)
        if fwd is not None and fwd.r == b.r:
            return from_form(fwd.arg, precision)
        return from_form(linear(0, {PowerHatInv(b.r, y.form): 1}), precision)
    raise TypeError(f"unknown bijection {b!r}")


def _against_right(x: AngleValue, precision: Precision | None) -> Ordering:
    order = compare(x, ExactPi(HALF), precision)
    if order is None:
        raise PrecisionExhausted(f"cannot place {x} against π/2")
    return order


def extend(b: HatBijection, mu: AngleValue, precision: Precision | None = None) -> AngleValue:
    """The piecewise extension of ``b`` to measures in ``(0, pi)``."""
    order = _against_right(mu, precision)
    if order is Ordering.EQUAL:
        return ExactPi(HALF)
    if order is Ordering.LESS:
        return hat_apply(b, mu, precision)
    return pi_minus(hat_apply(b, pi_minus(mu, precision), precision), precision)


def extend_inverse(b: HatBijection, c: AngleValue, precision: Precision | None = None) -> AngleValue:
    order = _against_right(c, precision)
    if order is Ordering.EQUAL:
        return ExactPi(HALF)
    if order is Ordering.LESS:
        return hat_invert(b, c, precision)
    return pi_minus(hat_invert(b, pi_minus(c, precision), precision), precision)


# ---------------------------------------------------------------------------
# schemes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LabelScheme:
    """Bijection overrides by point; every other point uses the identity."""

    name: str
    overrides: tuple[tuple[Point, HatBijection], ...] = ()
    _table: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        table = {}
        for p, b in self.overrides:
            if p in table:
                raise MalformedSpec(f"duplicate override point {p}")
            table[p] = b
        object.__setattr__(self, "overrides", tuple(sorted(self.overrides, key=lambda t: t[0])))
        object.__setattr__(self, "_table", table)

    def at(self, p: Point) -> HatBijection:
        return self._table.get(p, IDENTITY)

    @property
    def override_points(self) -> list[Point]:
        return [p for p, _ in self.overrides]

    def describe(self) -> str:
        if not self.overrides:
            return f"{self.name}: identity at every point"
        lines = [f"{self.name}: identity except at"]
        for p, b in self.overrides:
            lines.append(f"  {p}: {b.kind} {b.describe()}")
        return "\n".join(lines)


IDENTITY = Identity()


def identity_scheme() -> LabelScheme:
    return LabelScheme("identity")


def counterexample_scheme() -> LabelScheme:
    """Identity everywhere except the swap ``pi/4 <-> 7pi/16`` at (1, 1)."""
    swap = Transpositions(((Fraction(1, 4), Fraction(7, 16)),))
    return LabelScheme("counterexample", ((Point(1, 1), swap),))


def power_scheme(exponents: Mapping[Point, Fraction], name: str = "power") -> LabelScheme:
    rs = [Fraction(r) for r in exponents.values()]
    if len(set(rs)) != len(rs):
        raise MalformedSpec("power exponents must be distinct per point")
    return LabelScheme(name, tuple((p, Power(Fraction(r))) for p, r in exponents.items()))


def custom_scheme(table: Mapping[Point, HatBijection], name: str = "custom") -> LabelScheme:
    return LabelScheme(name, tuple(table.items()))


DEFAULT_POWER_EXPONENTS = {
    Point(1, 1): Fraction(2),
    Point(2, 3): Fraction(5, 2),
    Point(3, 1): Fraction(3, 2),
}

BUILTIN_SCHEMES = {
    "identity": identity_scheme,
    "counterexample": counterexample_scheme,
    "power": lambda: power_scheme(DEFAULT_POWER_EXPONENTS),
}

SCHEME_SUMMARIES = {
    "identity": "standard measure at every point; the Euclidean plane itself",
    "counterexample": "swaps π/4 and 7π/16 at (1,1); models Playfair, breaks SAS and the parallel postulate",
    "power": "order-preserving x·(2x/π)^r with r = 2, 5/2, 3/2 at (1,1), (2,3), (3,1)",
}


def builtin_scheme(name: str) -> LabelScheme:
    try:
        return BUILTIN_SCHEMES[name]()
    except KeyError:
        raise MalformedSpec(f"unknown scheme {name!r}; choose from {sorted(BUILTIN_SCHEMES)}") from None


# ---------------------------------------------------------------------------
# scheme config files
# ---------------------------------------------------------------------------

def _num(value, where: str) -> Fraction:
    try:
        return kernel.parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedSpec(str(exc), where) from None


def _point(value, where: str) -> Point:
    if not isinstance(value, list) or len(value) != 2:
        raise MalformedSpec("point must be a two-element list", where)
    return Point(_num(value[0], f"{where}[0]"), _num(value[1], f"{where}[1]"))


def _bijection(value, where: str) -> HatBijection:
    if not isinstance(value, dict) or "kind" not in value:
        raise MalformedSpec("bijection must be an object with a 'kind'", where)
    kind = value["kind"]
    try:
        if kind == "identity":
            return IDENTITY
        if kind == "transpositions":
            pairs = value.get("pairs")
            if not isinstance(pairs, list):
                raise MalformedSpec("'pairs' must be a list", f"{where}.pairs")
            out = []
            for i, pair in enumerate(pairs):
                w = f"{where}.pairs[{i}]"
                if not isinstance(pair, list) or len(pair) != 2:
                    raise MalformedSpec("pair must be a two-element list", w)
                out.append((_num(pair[0], f"{w}[0]"), _num(pair[1], f"{w}[1]")))
            return Transpositions(tuple(out))
        if kind == "power":
            return Power(_num(value.get("r"), f"{where}.r"))
    except MalformedSpec as exc:
        if exc.where is None:
            raise MalformedSpec(str(exc), where) from None
        raise
    raise MalformedSpec(f"unknown bijection kind {kind!r}", f"{where}.kind")


def scheme_from_dict(doc, name: str = "custom") -> LabelScheme:
    if not isinstance(doc, dict):
        raise MalformedSpec("scheme document must be an object", "$")
    default = doc.get("default", "identity")
    if default != "identity":
        raise MalformedSpec("only an identity default is supported", "$.default")
    overrides = doc.get("overrides", [])
    if not isinstance(overrides, list):
        raise MalformedSpec("'overrides' must be a list", "$.overrides")
    items = []
    seen = set()
    for i, entry in enumerate(overrides):
        where = f"$.overrides[{i}]"
        if not isinstance(entry, dict):
            raise MalformedSpec("override must be an object", where)
        p = _point(entry.get("point"), f"{where}.point")
        if p in seen:
            raise MalformedSpec(f"duplicate point {p}", f"{where}.point")
        seen.add(p)
        items.append((p, _bijection(entry.get("bijection"), f"{where}.bijection")))
    return LabelScheme(str(doc.get("name", name)), tuple(items))


def scheme_from_json(text: str, name: str = "custom") -> LabelScheme:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedSpec(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return scheme_from_dict(doc, name)


def scheme_to_dict(s: LabelScheme) -> dict:
    out = []
    for p, b in s.overrides:
        if isinstance(b, Transpositions):
            bij = {"kind": "transpositions", "pairs": [[str(u), str(v)] for u, v in b.pairs]}
        elif isinstance(b, Power):
            bij = {"kind": "power", "r": str(b.r)}
        else:
            bij = {"kind": "identity"}
        out.append({"point": p.as_strings(), "bijection": bij})
    return {"default": "identity", "overrides": out}


# ---------------------------------------------------------------------------
# labels and congruence
# ---------------------------------------------------------------------------

def label_of(s: LabelScheme, a: Angle, precision: Precision | None = None) -> AngleValue:
    """The congruence-class label of ``a`` at its vertex."""
    mu = kernel.measure_value(a, precision)
    return extend(s.at(a.vertex), mu, precision)


def label_at(s: LabelScheme, p: Point, mu: AngleValue, precision: Precision | None = None) -> AngleValue:
    """Label of a measure ``mu`` in ``(0, pi)`` placed at vertex ``p``."""
    return extend(s.at(p), mu, precision)


def congruent(s: LabelScheme, a1: Angle, a2: Angle, precision: Precision | None = None) -> TriBool:
    order = compare(label_of(s, a1, precision), label_of(s, a2, precision), precision)
    if order is None:
        return TriBool.UNKNOWN
    return TriBool.of(order is Ordering.EQUAL)


def add_classes(c1: AngleValue, c2: AngleValue, precision: Precision | None = None) -> AngleValue:
    return _add(c1, c2, precision)


def supplement_class(c: AngleValue, precision: Precision | None = None) -> AngleValue:
    if compare(c, ExactPi(1), precision) is not Ordering.LESS:
        raise OutOfDomain(f"{c} is not below π")
    return pi_minus(c, precision)


def compare_to_two_rights(c: AngleValue, precision: Precision | None = None) -> Ordering | None:
    return compare(c, ExactPi(1), precision)


# ---------------------------------------------------------------------------
# angle transfer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ApproxRay:
    """A ray known exactly, or bracketed between two rational rays.

    ``inner`` has smaller measure against ``h`` than the target, ``outer``
    larger; both lie on the requested side.
    """

    origin: Point
    target: AngleValue
    exact: Ray | None = None
    inner: Ray | None = None
    outer: Ray | None = None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None


def _rotated(h: Ray, perp: tuple[int, int], dot: int, cross: int) -> Ray:
    return Ray(h.origin, dot * h.dx + cross * perp[0], dot * h.dy + cross * perp[1])


def transfer_angle(
    s: LabelScheme,
    c: AngleValue,
    h: Ray,
    side: Point,
    precision: Precision | None = None,
    steps: int = 40,
) -> ApproxRay:
    """Find the ray ``k`` from ``h.origin`` on the ``side`` half-plane with label ``c``.

    The target measure is the preimage of ``c`` under the extended bijection
    at the vertex. Rational directions are searched by bisection on the
    cotangent ``u/v`` of the angle to ``h``; the measure is strictly
    decreasing in it, so the bracket pins a unique ray.
    """
    if compare(c, ExactPi(1), precision) is not Ordering.LESS:
        raise OutOfDomain(f"{c} is not below π")
    hx, hy = h.direction
    vx, vy = side - h.origin
    turn = hx * vy - hy * vx
    if turn == 0:
        raise kernel.errors.PointOnLine(f"{side} on the line of {h}")
    perp = (-hy, hx) if turn > 0 else (hy, -hx)
    target = extend_inverse(s.at(h.origin), c, precision)

    if isinstance(target, ExactPi):
        for (cross, dot), q in kernel.EXACT_MEASURES.items():
            if q == target.q:
                return ApproxRay(h.origin, target, exact=_rotated(h, perp, dot, cross))

    def measure(t: Fraction):
        return from_form(atan2_form(t.denominator, t.numerator), precision)

    def cmp(t: Fraction) -> Ordering:
        order = compare(measure(t), target, precision)
        if order is None:
            raise PrecisionExhausted(f"transfer of {c} undecided at cot {t}")
        return order

    def ray_for(t: Fraction) -> Ray:
        return _rotated(h, perp, t.numerator, t.denominator)

    hi = Fraction(1)
    while (o := cmp(hi)) is Ordering.GREATER:
        hi *= 2
    if o is Ordering.EQUAL:
        return ApproxRay(h.origin, target, exact=ray_for(hi))
    lo = Fraction(-1)
    while (o := cmp(lo)) is Ordering.LESS:
        lo *= 2
    if o is Ordering.EQUAL:
        return ApproxRay(h.origin, target, exact=ray_for(lo))
    for _ in range(steps):
        mid = (lo + hi) / 2
        o = cmp(mid)
        if o is Ordering.EQUAL:
            return ApproxRay(h.origin, target, exact=ray_for(mid))
        if o is Ordering.GREATER:
            lo = mid
        else:
            hi = mid
    return ApproxRay(h.origin, target, inner=ray_for(hi), outer=ray_for(lo))
