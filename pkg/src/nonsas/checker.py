"""Bounded checking of plane axioms against a labeling scheme.

Each check walks a finite configuration space (exhaustive where small,
seeded sampling otherwise) and returns a :class:`CheckResult`. ``Violated``
always comes with a witness that :func:`replay` can re-verify from scratch;
``Holds`` only means no counterexample turned up in ``samples_run`` tries.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from nonsas import kernel
from nonsas.errors import InsufficientDomain, MalformedSpec, PrecisionExhausted
from nonsas.kernel import (
    Angle,
    Line,
    Point,
    Ray,
    Segment,
    angle_at,
    between,
    collinear,
    intersect,
    line_through,
    make_ray,
    parallel,
    parallel_through,
    segment_congruent,
    segment_meets_line,
)
from nonsas.labeling import (
    LabelScheme,
    Power,
    add_classes,
    compare_to_two_rights,
    congruent,
    extend,
    hat_apply,
    hat_invert,
    label_of,
    transfer_angle,
)
from nonsas.motions import Motion, TrianglePair, random_motion, sample_congruent_triangles
from nonsas.values import (
    AngleValue,
    ExactPi,
    Ordering,
    Precision,
    TriBool,
    compare,
    format_value,
    sign_of,
)
from nonsas.reals import format_form, linear


class Status(str, enum.Enum):
    HOLDS = "Holds"
    VIOLATED = "Violated"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class CheckResult:
    axiom_id: str
    status: Status
    witness: dict | None
    samples_run: int
    notes: str = ""

    def __post_init__(self):
        if self.status is Status.VIOLATED and self.witness is None:
            raise ValueError("a violation needs a witness")

    def to_dict(self) -> dict:
        return {
            "axiom_id": self.axiom_id,
            "status": self.status.value,
            "samples_run": self.samples_run,
            "witness": self.witness,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Domain:
    """Finite carrier of points and lines, plus the sampling seed and budget."""

    points: tuple[Point, ...]
    lines: tuple[Line, ...] = ()
    seed: int = 42
    budget: int = 1000
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "lines", tuple(self.lines))
        if len(set(self.points)) != len(self.points):
            raise MalformedSpec("duplicate points in domain", "$.points")
        if len(set(self.lines)) != len(self.lines):
            raise MalformedSpec("duplicate lines in domain", "$.lines")
        if self.budget < 1:
            raise MalformedSpec("budget must be at least 1", "$.budget")
        if not 0 <= self.seed < 2 ** 64:
            raise MalformedSpec("seed must be a 64-bit unsigned integer", "$.seed")

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def rays_at(self, o: Point) -> list[Ray]:
        """Rays from ``o`` through the other domain points, one per direction."""
        return self._memo(("rays", o), lambda: kernel.dedup(make_ray(o, p) for p in self.points if p != o))

    def points_on(self, l: Line) -> list[Point]:
        return self._memo(("on", l), lambda: [p for p in self.points if l.contains(p)])

    def lines_at(self, a: Point) -> list[Line]:
        """Lines through ``a`` and another domain point, plus parallels through ``a`` to domain lines."""
        def build():
            out = [line_through(a, p) for p in self.points if p != a]
            out += [parallel_through(l, a) for l in self.lines]
            return kernel.dedup(out)
        return self._memo(("lines", a), build)

    def with_(self, **kw) -> Domain:
        args = dict(points=self.points, lines=self.lines, seed=self.seed, budget=self.budget)
        args.update(kw)
        return Domain(**args)


CANONICAL_LINES = (
    Line.from_coefficients(0, 1, 0),   # y = 0
    Line.from_coefficients(0, 1, -1),  # y = 1
    Line.from_coefficients(1, -1, 0),  # y = x
)


def grid_domain(n: int = 6, lines: Sequence[Line] = CANONICAL_LINES, seed: int = 42, budget: int = 1000) -> Domain:
    pts = tuple(Point(x, y) for x in range(n + 1) for y in range(n + 1))
    return Domain(pts, tuple(lines), seed, budget)


def canonical_domain(seed: int = 42, budget: int = 1000) -> Domain:
    """Integer grid [0,6]^2 with the lines y = 0, y = 1, y = x."""
    return grid_domain(6, CANONICAL_LINES, seed, budget)


def domain_from_dict(doc) -> Domain:
    if not isinstance(doc, dict):
        raise MalformedSpec("domain document must be an object", "$")
    pts, lines = [], []
    for i, raw in enumerate(doc.get("points", [])):
        if not isinstance(raw, list) or len(raw) != 2:
            raise MalformedSpec("point must be a two-element list", f"$.points[{i}]")
        try:
            pts.append(Point.parse(*raw))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedSpec(str(exc), f"$.points[{i}]") from None
    for i, raw in enumerate(doc.get("lines", [])):
        if not isinstance(raw, list) or len(raw) != 3:
            raise MalformedSpec("line must be a three-element list", f"$.lines[{i}]")
        try:
            lines.append(Line.from_coefficients(*(kernel.parse_rational(t) for t in raw)))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedSpec(str(exc), f"$.lines[{i}]") from None
    seed, budget = doc.get("seed", 42), doc.get("budget", 1000)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise MalformedSpec("seed must be an integer", "$.seed")
    if not isinstance(budget, int) or isinstance(budget, bool):
        raise MalformedSpec("budget must be an integer", "$.budget")
    return Domain(tuple(pts), tuple(lines), seed, budget)


def domain_from_json(text: str) -> Domain:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedSpec(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return domain_from_dict(doc)


# ---------------------------------------------------------------------------
# witness encoding
# ---------------------------------------------------------------------------

def _p(p: Point) -> list[str]:
    return p.as_strings()


def _l(l: Line) -> list[str]:
    return l.as_strings()


def _r(r: Ray) -> dict:
    return {"origin": _p(r.origin), "direction": [r.dx, r.dy]}


def _a(a: Angle) -> dict:
    return {"vertex": _p(a.vertex), "rays": [[a.h.dx, a.h.dy], [a.k.dx, a.k.dy]]}


def _v(v: AngleValue) -> str:
    return format_value(v)


def _form_str(form) -> str:
    return format_form(form)


def _pt(raw) -> Point:
    return Point.parse(*raw)


def _ray(raw) -> Ray:
    return Ray(_pt(raw["origin"]), *raw["direction"])


def _angle(raw) -> Angle:
    v = _pt(raw["vertex"])
    (a, b), (c, d) = raw["rays"]
    return Angle(Ray(v, a, b), Ray(v, c, d))


def _line(raw) -> Line:
    return Line.from_coefficients(*(Fraction(t) for t in raw))


# ---------------------------------------------------------------------------
# bookkeeping
# ---------------------------------------------------------------------------

class _Tally:
    def __init__(self, axiom_id: str):
        self.axiom_id = axiom_id
        self.samples = 0
        self.undetermined = 0
        self.skipped = 0
        self.first_unknown: dict | None = None
        self.notes: list[str] = []

    def unknown(self, detail: dict) -> None:
        self.undetermined += 1
        if self.first_unknown is None:
            self.first_unknown = detail

    def violated(self, witness: dict) -> CheckResult:
        return CheckResult(self.axiom_id, Status.VIOLATED, witness, self.samples, self._note())

    def finish(self) -> CheckResult:
        status = Status.UNDETERMINED if self.undetermined else Status.HOLDS
        witness = self.first_unknown if self.undetermined else None
        return CheckResult(self.axiom_id, status, witness, self.samples, self._note())

    def _note(self) -> str:
        parts = [f"{self.samples} samples"]
        if self.undetermined:
            parts.append(f"{self.undetermined} undetermined")
        if self.skipped:
            parts.append(f"{self.skipped} skipped")
        return "; ".join(parts + self.notes)


def _tri(order: Ordering | None) -> TriBool:
    if order is None:
        return TriBool.UNKNOWN
    return TriBool.of(order is Ordering.EQUAL)


# ---------------------------------------------------------------------------
# incidence and order
# ---------------------------------------------------------------------------

def check_incidence(d: Domain) -> CheckResult:
    """I.1-I.3: unique line through two points, two points per line, three non-collinear points."""
    if len(d.points) < 3:
        raise InsufficientDomain("incidence needs at least three points")
    t = _Tally("incidence")
    line_set = set(d.lines)
    for a, b in itertools.combinations(d.points, 2):
        t.samples += 1
        l = line_through(a, b)
        if not (l.contains(a) and l.contains(b)):
            return t.violated({"axiom": "I.1", "points": [_p(a), _p(b)], "line": _l(l)})
        for other in line_set:
            if other != l and other.contains(a) and other.contains(b):
                return t.violated({"axiom": "I.2", "points": [_p(a), _p(b)], "lines": [_l(l), _l(other)]})
    for l in d.lines:
        t.samples += 1
        p, q = l.sample_points()
        if p == q or not (l.contains(p) and l.contains(q)):
            return t.violated({"axiom": "I.3", "line": _l(l)})
    if all(collinear(*tri) for tri in itertools.islice(itertools.combinations(d.points, 3), 10000)):
        return t.violated({"axiom": "I.3", "points": [_p(p) for p in d.points[:3]]})
    return t.finish()


def check_order(d: Domain) -> CheckResult:
    """II.1-II.3 on collinear triples, II.4 (Pasch) on sampled triangle/line pairs."""
    if len(d.points) < 3:
        raise InsufficientDomain("order needs at least three points")
    t = _Tally("order")
    triples: Iterable = itertools.combinations(d.points, 3)
    n = len(d.points)
    if n * (n - 1) * (n - 2) // 6 > 60000:
        rng = d.rng("order-triples")
        triples = (tuple(rng.sample(d.points, 3)) for _ in range(60000))
    any_collinear = False
    for a, b, c in triples:
        if not collinear(a, b, c):
            continue
        any_collinear = True
        t.samples += 1
        rels = [between(b, a, c), between(a, b, c), between(a, c, b)]
        if sum(rels) != 1:
            return t.violated({"axiom": "II.3", "points": [_p(a), _p(b), _p(c)]})
        if between(a, b, c) != between(c, b, a):
            return t.violated({"axiom": "II.1", "points": [_p(a), _p(b), _p(c)]})
    if not any_collinear:
        raise InsufficientDomain("order needs three collinear points")
    rng = d.rng("order")
    for _ in range(d.budget):
        a, c = rng.sample(d.points, 2)
        t.samples += 1
        b = c + (c - a)
        if not between(a, c, b):
            return t.violated({"axiom": "II.2", "points": [_p(a), _p(c), _p(b)]})
    pasch = 0
    while pasch < d.budget:
        a, b, c = rng.sample(d.points, 3)
        if collinear(a, b, c):
            continue
        p, q = rng.sample(d.points, 2)
        l = line_through(p, q)
        pasch += 1
        t.samples += 1
        if any(l.contains(v) for v in (a, b, c)) or not segment_meets_line(a, b, l):
            continue
        if not (segment_meets_line(b, c, l) or segment_meets_line(a, c, l)):
            return t.violated({"axiom": "II.4", "triangle": [_p(a), _p(b), _p(c)], "line": _l(l)})
    return t.finish()


# ---------------------------------------------------------------------------
# congruence axioms III.1 - III.4
# ---------------------------------------------------------------------------

def _random_angle(rng: random.Random, points: Sequence[Point]) -> Angle:
    while True:
        o, p, q = rng.sample(list(points), 3)
        if not collinear(o, p, q):
            return angle_at(o, p, q)


def _bijectivity_grid(s: LabelScheme, t: _Tally, precision: Precision | None, n: int = 200) -> dict | None:
    grid = [ExactPi(Fraction(i, 2 * n)) for i in range(1, n)]
    bijections = {b for _, b in s.overrides}
    for b in sorted(bijections, key=repr):
        images = []
        for x in grid:
            t.samples += 1
            y = hat_apply(b, x, precision)
            back = hat_invert(b, y, precision)
            if compare(back, x, precision) is not Ordering.EQUAL:
                return {"axiom": "III.4", "bijection": repr(b), "x": _v(x), "image": _v(y), "preimage": _v(back)}
            images.append(y)
        if isinstance(b, Power):
            for y0, y1 in zip(images, images[1:]):
                order = compare(y0, y1, precision)
                if order is None:
                    t.unknown({"axiom": "III.4", "bijection": repr(b), "values": [_v(y0), _v(y1)]})
                elif order is not Ordering.LESS:
                    return {"axiom": "III.4", "bijection": repr(b), "collision": [_v(y0), _v(y1)]}
        elif len(set(images)) != len(images):
            return {"axiom": "III.4", "bijection": repr(b), "note": "grid images collide"}
    return None


def _verify_transfer(s, a, c, h, side, res, precision) -> TriBool:
    def on_side(r: Ray) -> bool:
        return h.line.side(r.point_at()) == h.line.side(side)

    if res.exact is not None:
        if not on_side(res.exact):
            return TriBool.FALSE
        return congruent(s, a, Angle(h, res.exact), precision)
    if not (on_side(res.inner) and on_side(res.outer)):
        return TriBool.FALSE
    lo = kernel.measure_value(Angle(h, res.inner), precision)
    hi = kernel.measure_value(Angle(h, res.outer), precision)
    o1, o2 = compare(lo, res.target, precision), compare(res.target, hi, precision)
    if o1 is None or o2 is None:
        return TriBool.UNKNOWN
    if o1 is not Ordering.LESS or o2 is not Ordering.LESS:
        return TriBool.FALSE
    return _tri(compare(extend(s.at(h.origin), res.target, precision), c, precision))


def check_congruence_base(d: Domain, s: LabelScheme, precision: Precision | None = None) -> CheckResult:
    """III.1-III.3 on segments via rational rigid motions, III.4 on angle labels."""
    t = _Tally("congruence_base")
    rng = d.rng("congruence")
    pts = list(d.points)
    # III.1: laying off a segment on a ray
    for _ in range(d.budget):
        a, b, a2 = rng.sample(pts, 3)
        m = random_motion(rng)
        dx, dy = m(b) - m(a)
        b2 = a2 + (dx, dy)
        ray = make_ray(a2, b2)
        t.samples += 1
        other = a2 + (-dx, -dy)
        if not (segment_congruent(Segment(a, b), Segment(a2, b2)) and ray.contains(b2)
                and not ray.contains(other)):
            return t.violated({"axiom": "III.1", "segment": [_p(a), _p(b)], "image": [_p(a2), _p(b2)]})
    # III.2: transitivity among equal-length segments
    by_length: dict[Fraction, list[Segment]] = {}
    for a, b in itertools.combinations(pts[:30], 2):
        seg = Segment(a, b)
        by_length.setdefault(seg.squared_length, []).append(seg)
    classes = [v for v in by_length.values() if len(v) >= 3]
    for _ in range(d.budget if classes else 0):
        s1, s2, s3 = rng.sample(rng.choice(classes), 3)
        t.samples += 1
        if segment_congruent(s1, s2) and segment_congruent(s1, s3) and not segment_congruent(s2, s3):
            return t.violated({"axiom": "III.2", "segments": [[_p(x.a), _p(x.b)] for x in (s1, s2, s3)]})
    # III.3: adding segments on a line
    triples = [(a, b, c) for a, b, c in itertools.permutations(pts[:25], 3)
               if collinear(a, b, c) and between(a, b, c)]
    for _ in range(d.budget if triples else 0):
        a, b, c = rng.choice(triples)
        m = random_motion(rng)
        a2, b2, c2 = m(a), m(b), m(c)
        t.samples += 1
        ok = (between(a2, b2, c2) and segment_congruent(Segment(a, b), Segment(a2, b2))
              and segment_congruent(Segment(b, c), Segment(b2, c2)))
        if ok and not segment_congruent(Segment(a, c), Segment(a2, c2)):
            return t.violated({"axiom": "III.3", "points": [_p(x) for x in (a, b, c, a2, b2, c2)]})
    # III.4: reflexivity
    for _ in range(d.budget):
        a = _random_angle(rng, pts)
        t.samples += 1
        verdict = congruent(s, a, a, precision)
        if verdict is TriBool.FALSE:
            return t.violated({"axiom": "III.4", "angle": _a(a), "note": "not congruent to itself"})
        if verdict is TriBool.UNKNOWN:
            t.unknown({"axiom": "III.4", "angle": _a(a)})
    # III.4: the labeling maps are bijections
    bad = _bijectivity_grid(s, t, precision)
    if bad is not None:
        return t.violated(bad)
    # III.4: angle transfer exists and is pinned by a monotone bracket
    candidates = list(s.override_points)
    for _ in range(min(d.budget, 250)):
        a = _random_angle(rng, pts)
        o, p, side = rng.sample(candidates + pts, 3) if rng.random() < 0.3 and candidates else rng.sample(pts, 3)
        if collinear(o, p, side):
            t.skipped += 1
            continue
        h = make_ray(o, p)
        t.samples += 1
        c = label_of(s, a, precision)
        try:
            res = transfer_angle(s, c, h, side, precision, steps=24)
        except PrecisionExhausted:
            t.unknown({"axiom": "III.4", "angle": _a(a), "ray": _r(h), "side": _p(side)})
            continue
        verdict = _verify_transfer(s, a, c, h, side, res, precision)
        if verdict is TriBool.FALSE:
            return t.violated({"axiom": "III.4", "angle": _a(a), "ray": _r(h), "side": _p(side), "label": _v(c)})
        if verdict is TriBool.UNKNOWN:
            t.unknown({"axiom": "III.4", "angle": _a(a), "ray": _r(h), "side": _p(side)})
    t.notes.append("III.4 uniqueness certified on a bijectivity grid and by monotone bracketing, "
                   "not over the continuum")
    return t.finish()


# ---------------------------------------------------------------------------
# SAS
# ---------------------------------------------------------------------------

_AXIS_STEPS = [(0, -1), (-1, 0), (0, 1), (1, 0)]


def _corner_translation(tri, d: Domain, avoid: set[Point]) -> Motion | None:
    xs = [p.x for p in d.points] or [Fraction(0)]
    ys = [p.y for p in d.points] or [Fraction(0)]
    tx_lo, tx_hi = min(xs) - min(p.x for p in tri), max(xs) - max(p.x for p in tri)
    ty_lo, ty_hi = min(ys) - min(p.y for p in tri), max(ys) - max(p.y for p in tri)
    for tx, ty in ((tx_hi, ty_hi), (tx_lo, ty_hi), (tx_hi, ty_lo), (tx_lo, ty_lo)):
        if (tx, ty) == (0, 0):
            continue
        m = Motion(tx=tx, ty=ty)
        if not any(m(p) in avoid for p in tri):
            return m
    return None


def _targeted_sas_pairs(s: LabelScheme, d: Domain) -> list[TrianglePair]:
    """Unit right isosceles triangles with a 45-degree corner at a relabeled point,
    paired with a translate away from every relabeled point."""
    avoid = set(s.override_points)
    out = []
    for p in s.override_points:
        for u in _AXIS_STEPS:
            for v in _AXIS_STEPS:
                if u[0] * v[0] + u[1] * v[1] != 0:
                    continue
                a = p + u
                c = a + v
                tri = (a, p, c)
                m = _corner_translation(tri, d, avoid)
                if m is not None:
                    out.append(TrianglePair(tri, tuple(m(x) for x in tri), m))
    return out


def _sas_instance(s, first, second, precision):
    """Check SAS with the included angle at vertex 0. Returns (status, witness)."""
    (a, b, c), (a2, b2, c2) = first, second
    if not (segment_congruent(Segment(a, b), Segment(a2, b2)) and segment_congruent(Segment(a, c), Segment(a2, c2))):
        return "skip", None
    inc1, inc2 = angle_at(a, b, c), angle_at(a2, b2, c2)
    hyp = congruent(s, inc1, inc2, precision)
    if hyp is TriBool.UNKNOWN:
        return "skip", None
    if hyp is TriBool.FALSE:
        return "nohyp", None
    for x, y, z, x2, y2, z2 in ((a, b, c, a2, b2, c2), (a, c, b, a2, c2, b2)):
        sec1, sec2 = angle_at(y, x, z), angle_at(y2, x2, z2)
        l1, l2 = label_of(s, sec1, precision), label_of(s, sec2, precision)
        verdict = _tri(compare(l1, l2, precision))
        if verdict is TriBool.FALSE:
            return "violated", {
                "triangle": [_p(a), _p(b), _p(c)],
                "image": [_p(a2), _p(b2), _p(c2)],
                "squared_sides": {
                    "AB": str(Segment(a, b).squared_length),
                    "AC": str(Segment(a, c).squared_length),
                    "BC": str(Segment(b, c).squared_length),
                },
                "included_labels": [_v(label_of(s, inc1, precision)), _v(label_of(s, inc2, precision))],
                "second_vertex": [_p(y), _p(y2)],
                "second_labels": [_v(l1), _v(l2)],
            }
        if verdict is TriBool.UNKNOWN:
            return "unknown", {"triangle": [_p(a), _p(b), _p(c)], "image": [_p(a2), _p(b2), _p(c2)]}
    return "ok", None


def check_sas(s: LabelScheme, d: Domain, precision: Precision | None = None) -> CheckResult:
    """III.5 on rigid-motion pairs: targeted pairs at relabeled points first, then sampled pairs."""
    t = _Tally("sas")
    pairs = _targeted_sas_pairs(s, d)
    targeted = len(pairs)
    pairs += sample_congruent_triangles(d.seed, d.budget, d.points)
    for i, pair in enumerate(pairs):
        t.samples += 1
        rotations = [(0, 1, 2)] if i < targeted else [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
        for r in rotations:
            first = tuple(pair.first[j] for j in r)
            second = tuple(pair.second[j] for j in r)
            status, w = _sas_instance(s, first, second, precision)
            if status == "violated":
                w["motion"] = pair.motion.describe() if pair.motion else None
                return t.violated(w)
            if status == "unknown":
                t.unknown(w)
            elif status == "skip":
                t.skipped += 1
    return t.finish()


# ---------------------------------------------------------------------------
# Playfair
# ---------------------------------------------------------------------------

def check_playfair(d: Domain, variant: str = "classical") -> CheckResult:
    """Classical: exactly one non-meeting line through A; Hilbert: at most one."""
    if variant not in ("classical", "hilbert"):
        raise ValueError(f"unknown Playfair variant {variant!r}")
    t = _Tally(f"playfair_{variant}")
    rng = d.rng("playfair")
    instances = [(l, a) for l in d.lines for a in d.points if not l.contains(a)]
    tries = 0
    while len(instances) < d.budget and tries < 50 * d.budget and len(d.points) >= 3:
        tries += 1
        p, q, a = rng.sample(d.points, 3)
        l = line_through(p, q)
        if not l.contains(a):
            instances.append((l, a))
    for l, a in instances:
        t.samples += 1
        m = parallel_through(l, a)
        candidates = kernel.dedup(d.lines_at(a) + [m])
        missing = [c for c in candidates if c != l and intersect(l, c) is None]
        if variant == "classical" and not (m.contains(a) and parallel(m, l)):
            return t.violated({"line": _l(l), "point": _p(a), "constructed": _l(m), "note": "no parallel"})
        if len(missing) > 1:
            return t.violated({"line": _l(l), "point": _p(a), "parallels": [_l(x) for x in missing]})
        if variant == "classical" and missing != [m]:
            return t.violated({"line": _l(l), "point": _p(a), "parallels": [_l(x) for x in missing]})
    t.notes.append("lines and intersections only; no labels consulted")
    return t.finish()


# ---------------------------------------------------------------------------
# parallel postulate
# ---------------------------------------------------------------------------

def _ray_on_side(p: Point, l: Line, t: Line, side: int) -> Ray:
    dx, dy = l.direction
    r = Ray(p, dx, dy)
    return r if t.side(r.point_at()) == side else Ray(p, -dx, -dy)


def _pp_instance(s, l, l2, tr, precision):
    """Evaluate one transversal configuration; returns (status, witness)."""
    p, p2 = intersect(tr, l), intersect(tr, l2)
    status, out = "ok", None
    for side in (1, -1):
        r1 = _ray_on_side(p, l, tr, side)
        r2 = _ray_on_side(p2, l2, tr, side)
        a1 = Angle(make_ray(p, p2), r1)
        a2 = Angle(make_ray(p2, p), r2)
        c1, c2 = label_of(s, a1, precision), label_of(s, a2, precision)
        total = add_classes(c1, c2, precision)
        order = compare_to_two_rights(total, precision)
        if order is None:
            status, out = "unknown", {"l": _l(l), "l_prime": _l(l2), "t": _l(tr)}
            continue
        if order is not Ordering.LESS:
            continue
        x = None if l == l2 else intersect(l, l2)
        if x is None or tr.side(x) != side:
            return "violated", {
                "l": _l(l), "l_prime": _l(l2), "t": _l(tr),
                "P": _p(p), "P_prime": _p(p2), "side": side,
                "angle_at_P": _a(a1), "angle_at_P_prime": _a(a2),
                "label_P": _v(c1), "label_P_prime": _v(c2), "sum": _v(total),
                "intersection": _p(x) if x is not None else None,
            }
    return status, out


def _valid_config(l: Line, l2: Line, tr: Line) -> bool:
    if l == l2 or tr in (l, l2):
        return False
    p, p2 = intersect(tr, l), intersect(tr, l2)
    return p is not None and p2 is not None and p != p2


def check_pp(s: LabelScheme, d: Domain, precision: Precision | None = None) -> CheckResult:
    """Euclid's postulate: same-side interior labels below two right angles force a meeting on that side."""
    t = _Tally("pp")
    configs = [(l, l2, tr) for l in d.lines for l2 in d.lines for tr in d.lines if _valid_config(l, l2, tr)]
    rng = d.rng("pp")
    tries = 0
    while len(configs) < d.budget and tries < 50 * d.budget and len(d.points) >= 4:
        tries += 1
        a, b, c, e = rng.sample(d.points, 4)
        l = line_through(a, b)
        l2 = parallel_through(l, c) if rng.random() < 0.5 and not l.contains(c) else line_through(c, e)
        q1, q2 = rng.sample(d.points, 2)
        tr = line_through(q1, q2)
        if _valid_config(l, l2, tr):
            configs.append((l, l2, tr))
    for l, l2, tr in configs:
        t.samples += 1
        status, w = _pp_instance(s, l, l2, tr, precision)
        if status == "violated":
            return t.violated(w)
        if status == "unknown":
            t.unknown(w)
    t.notes.append("meeting point must lie on the side of the smaller interior sum")
    return t.finish()


# ---------------------------------------------------------------------------
# Legendre
# ---------------------------------------------------------------------------

def _triangle_sum(s: LabelScheme, tri, precision):
    a, b, c = tri
    labels = [label_of(s, angle_at(a, b, c), precision),
              label_of(s, angle_at(b, a, c), precision),
              label_of(s, angle_at(c, a, b), precision)]
    form = labels[0].form + labels[1].form + labels[2].form
    return labels, form


def check_legendre(s: LabelScheme, triangle: Sequence[Point], precision: Precision | None = None) -> CheckResult:
    """Does this triangle's label sum equal two right angles?"""
    tri = tuple(triangle)
    if len(tri) != 3 or collinear(*tri):
        raise InsufficientDomain("Legendre check needs a non-degenerate triangle")
    t = _Tally("legendre")
    t.samples = 1
    labels, form = _triangle_sum(s, tri, precision)
    order = sign_of(form - linear(1), precision)
    w = {"triangle": [_p(p) for p in tri], "labels": [_v(x) for x in labels], "sum": _form_str(form)}
    if order is None:
        t.unknown(w)
        return t.finish()
    if order is not Ordering.EQUAL:
        return t.violated(w)
    return CheckResult("legendre", Status.HOLDS, w, 1, t._note())


def check_legendre_domain(s: LabelScheme, d: Domain, precision: Precision | None = None) -> CheckResult:
    """Existence of a sampled triangle whose label sum is two right angles."""
    t = _Tally("legendre")
    rng = d.rng("legendre")
    found = None
    hits = 0
    while t.samples < d.budget:
        a, b, c = rng.sample(d.points, 3)
        if collinear(a, b, c):
            continue
        t.samples += 1
        labels, form = _triangle_sum(s, (a, b, c), precision)
        order = sign_of(form - linear(1), precision)
        if order is None:
            t.undetermined += 1
        elif order is Ordering.EQUAL:
            hits += 1
            if found is None:
                found = {"triangle": [_p(a), _p(b), _p(c)], "labels": [_v(x) for x in labels],
                         "sum": _form_str(form)}
    t.notes.append(f"{hits} triangles sum to two right angles")
    if found is not None:
        return CheckResult("legendre", Status.HOLDS, found, t.samples, t._note())
    t.notes.append("existential claim: a bounded search cannot refute it")
    return CheckResult("legendre", Status.UNDETERMINED, None, t.samples, t._note())


# ---------------------------------------------------------------------------
# Common Notion 5 and additivity
# ---------------------------------------------------------------------------

def _small_directions(radius: int = 2) -> list[tuple[int, int]]:
    dirs = {(x, y) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1)
            if (x, y) != (0, 0) and math.gcd(x, y) == 1}

    # counter-clockwise from +x; atan2 on tiny integers only orders, never decides
    def key(v):
        return math.atan2(v[1], v[0]) % (2 * math.pi)
    return sorted(dirs, key=key)


def _targeted_triples(s: LabelScheme):
    """(h, r, k) at relabeled points with r strictly inside, counter-clockwise order;
    triples whose three measures are exact come first."""
    dirs = _small_directions()
    exact, rest = [], []
    for p in s.override_points:
        rays = [Ray(p, *v) for v in dirs]
        for i, h in enumerate(rays):
            for k in rays[i + 1:]:
                cr = h.dx * k.dy - h.dy * k.dx
                if cr <= 0:
                    continue
                whole = Angle(h, k)
                for r in rays[i + 1:]:
                    if r == k or not kernel.in_interior(whole, r):
                        continue
                    trip = (h, r, k)
                    keys = [Angle(h, r).measure_key, Angle(r, k).measure_key, whole.measure_key]
                    if all(key in kernel.EXACT_MEASURES for key in keys):
                        exact.append(trip)
                    else:
                        rest.append(trip)
    return exact + rest


def _random_triples(d: Domain, salt: str):
    rng = d.rng(salt)
    pts = list(d.points)
    tries = 0
    while tries < 200 * d.budget:
        tries += 1
        o, p, q, x = rng.sample(pts, 4)
        if collinear(o, p, q):
            continue
        whole = angle_at(o, p, q)
        r = make_ray(o, x)
        if kernel.in_interior(whole, r):
            yield make_ray(o, p), r, make_ray(o, q)


def _interior_check(axiom_id: str, s: LabelScheme, d: Domain, judge: Callable) -> CheckResult:
    t = _Tally(axiom_id)
    targeted = _targeted_triples(s)
    sampled = itertools.islice(_random_triples(d, axiom_id), d.budget)
    for h, r, k in itertools.chain(targeted, sampled):
        t.samples += 1
        verdict, w = judge(h, r, k)
        if verdict is TriBool.FALSE:
            return t.violated(w)
        if verdict is TriBool.UNKNOWN:
            t.unknown(w)
    return t.finish()


def check_cn5_order(s: LabelScheme, d: Domain, precision: Precision | None = None) -> CheckResult:
    """A part of an angle carries a smaller label than the whole."""
    def judge(h, r, k):
        whole = Angle(h, k)
        lw = label_of(s, whole, precision)
        for part in (Angle(h, r), Angle(r, k)):
            lp = label_of(s, part, precision)
            order = compare(lp, lw, precision)
            w = {"whole": _a(whole), "part": _a(part), "interior_ray": _r(r),
                 "part_label": _v(lp), "whole_label": _v(lw)}
            if order is None:
                return TriBool.UNKNOWN, w
            if order is not Ordering.LESS:
                return TriBool.FALSE, w
        return TriBool.TRUE, None

    return _interior_check("cn5", s, d, judge)


def check_additivity(s: LabelScheme, d: Domain, precision: Precision | None = None) -> CheckResult:
    """The label of a whole angle equals the sum of the labels of its two parts."""
    def judge(h, r, k):
        whole = Angle(h, k)
        l1, l2 = label_of(s, Angle(h, r), precision), label_of(s, Angle(r, k), precision)
        lw = label_of(s, whole, precision)
        total = add_classes(l1, l2, precision)
        w = {"whole": _a(whole), "interior_ray": _r(r), "part_labels": [_v(l1), _v(l2)],
             "sum": _v(total), "whole_label": _v(lw)}
        return _tri(compare(total, lw, precision)), w

    return _interior_check("additivity", s, d, judge)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

AXIOM_IDS = ("additivity", "cn5", "congruence_base", "incidence", "legendre", "order",
             "playfair_classical", "playfair_hilbert", "pp", "sas")


def run_check(axiom_id: str, s: LabelScheme, d: Domain, precision: Precision | None = None) -> CheckResult:
    table = {
        "incidence": lambda: check_incidence(d),
        "order": lambda: check_order(d),
        "congruence_base": lambda: check_congruence_base(d, s, precision),
        "sas": lambda: check_sas(s, d, precision),
        "playfair_classical": lambda: check_playfair(d, "classical"),
        "playfair_hilbert": lambda: check_playfair(d, "hilbert"),
        "pp": lambda: check_pp(s, d, precision),
        "legendre": lambda: check_legendre_domain(s, d, precision),
        "cn5": lambda: check_cn5_order(s, d, precision),
        "additivity": lambda: check_additivity(s, d, precision),
    }
    try:
        return table[axiom_id]()
    except KeyError:
        raise MalformedSpec(f"unknown axiom {axiom_id!r}; choose from {', '.join(AXIOM_IDS)}") from None


def run_suite(s: LabelScheme, d: Domain, axioms: Iterable[str] | None = None,
              precision: Precision | None = None) -> list[CheckResult]:
    ids = sorted(set(axioms) if axioms is not None else AXIOM_IDS)
    return [run_check(a, s, d, precision) for a in ids]


H, V, U = Status.HOLDS, Status.VIOLATED, Status.UNDETERMINED

EXPECTED_PROFILES = {
    "identity": {a: H for a in AXIOM_IDS},
    "counterexample": {
        "incidence": H, "order": H, "congruence_base": H, "playfair_classical": H,
        "playfair_hilbert": H, "sas": V, "pp": V, "legendre": H, "cn5": V, "additivity": V,
    },
    "power": {
        "incidence": H, "order": H, "congruence_base": H, "playfair_classical": H,
        "playfair_hilbert": H, "sas": V, "pp": V, "legendre": H, "cn5": H, "additivity": V,
    },
}

THEOREM_AXIOMS = ("incidence", "order", "congruence_base", "playfair_classical", "playfair_hilbert", "sas", "pp")


@dataclass(frozen=True)
class TheoremReport:
    checks: dict[str, CheckResult]

    @property
    def pp_sum(self) -> str | None:
        w = self.checks["pp"].witness
        return w["sum"] if w else None

    @property
    def matches(self) -> bool:
        expected = EXPECTED_PROFILES["counterexample"]
        return all(self.checks[a].status is expected[a] for a in THEOREM_AXIOMS)


def main_theorem(precision: Precision | None = None) -> TheoremReport:
    """Counterexample scheme on the canonical domain: Playfair holds, SAS and PP fail."""
    from nonsas.labeling import counterexample_scheme

    s, d = counterexample_scheme(), canonical_domain()
    return TheoremReport({a: run_check(a, s, d, precision) for a in THEOREM_AXIOMS})


# ---------------------------------------------------------------------------
# witness replay
# ---------------------------------------------------------------------------

def replay(result: CheckResult, s: LabelScheme, precision: Precision | None = None) -> bool:
    """Re-derive a violation from its witness using kernel and labeling operations only."""
    if result.status is not Status.VIOLATED:
        raise ValueError("only violations carry replayable witnesses")
    w = result.witness
    aid = result.axiom_id
    if aid == "pp":
        l, l2, tr = _line(w["l"]), _line(w["l_prime"]), _line(w["t"])
        a1, a2 = _angle(w["angle_at_P"]), _angle(w["angle_at_P_prime"])
        if not _valid_config(l, l2, tr):
            return False
        p, p2, side = intersect(tr, l), intersect(tr, l2), w["side"]
        if a1 != Angle(make_ray(p, p2), _ray_on_side(p, l, tr, side)):
            return False
        if a2 != Angle(make_ray(p2, p), _ray_on_side(p2, l2, tr, side)):
            return False
        total = add_classes(label_of(s, a1, precision), label_of(s, a2, precision), precision)
        if compare_to_two_rights(total, precision) is not Ordering.LESS:
            return False
        x = None if l == l2 else intersect(l, l2)
        return x is None or tr.side(x) != w["side"]
    if aid == "sas":
        (a, b, c), (a2, b2, c2) = map(_pt, w["triangle"]), map(_pt, w["image"])
        if not (segment_congruent(Segment(a, b), Segment(a2, b2))
                and segment_congruent(Segment(a, c), Segment(a2, c2))):
            return False
        if congruent(s, angle_at(a, b, c), angle_at(a2, b2, c2), precision) is not TriBool.TRUE:
            return False
        y, y2 = map(_pt, w["second_vertex"])
        x, z = (b, c) if y == b else (c, b)
        x2, z2 = (b2, c2) if y2 == b2 else (c2, b2)
        return congruent(s, angle_at(y, a, z), angle_at(y2, a2, z2), precision) is TriBool.FALSE
    if aid == "cn5":
        whole, part = _angle(w["whole"]), _angle(w["part"])
        r = _ray(w["interior_ray"])
        if not kernel.in_interior(whole, r):
            return False
        order = compare(label_of(s, part, precision), label_of(s, whole, precision), precision)
        return order in (Ordering.EQUAL, Ordering.GREATER)
    if aid == "additivity":
        whole, r = _angle(w["whole"]), _ray(w["interior_ray"])
        if not kernel.in_interior(whole, r):
            return False
        l1 = label_of(s, Angle(whole.h, r), precision)
        l2 = label_of(s, Angle(r, whole.k), precision)
        order = compare(add_classes(l1, l2, precision), label_of(s, whole, precision), precision)
        return order in (Ordering.LESS, Ordering.GREATER)
    if aid == "legendre":
        tri = tuple(map(_pt, w["triangle"]))
        _, form = _triangle_sum(s, tri, precision)
        return sign_of(form - linear(1), precision) in (Ordering.LESS, Ordering.GREATER)
    raise ValueError(f"no replay for {aid}")
