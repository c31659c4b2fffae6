"""Bounded three-valued evaluation of axiom programs over a finite domain.

Quantifiers range over domain carriers. ``where`` restricts a quantifier:
it acts as an implication under ``forall`` and a conjunction under
``exists``. ``exists_unique`` is rewritten into ``exists`` plus a ``forall``
over renamed copies before evaluation. Terms that do not denote (the ray
from a point to itself, the meet of parallel lines) make any predicate
applied to them false.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from nonsas import kernel
from nonsas.checker import Domain
from nonsas.dsl.lexer import DslError
from nonsas.dsl.syntax import (
    BinOp,
    Binder,
    Call,
    Eq,
    Lit,
    Not,
    Pred,
    Program,
    Quant,
    Var,
)
from nonsas.kernel import Angle
from nonsas.labeling import LabelScheme, add_classes, compare_to_two_rights, label_of
from nonsas.values import ExactPi, Ordering, Precision, TriBool, compare, sign_of

T, F, U = TriBool.TRUE, TriBool.FALSE, TriBool.UNKNOWN

Hook = Callable[[str, tuple, TriBool], TriBool]


class EmptySort(DslError):
    pass


@dataclass(frozen=True)
class EvalOutcome:
    verdict: TriBool
    bindings: dict = field(default_factory=dict)
    assignments: int = 0


# ---------------------------------------------------------------------------
# exists_unique expansion
# ---------------------------------------------------------------------------

def _rename_term(t, m: dict[str, str]):
    if isinstance(t, Var):
        return Var(m.get(t.name, t.name), t.pos)
    if isinstance(t, Call):
        return Call(t.fn, tuple(_rename_term(a, m) for a in t.args), t.pos)
    return t


def _rename(f, m: dict[str, str]):
    if f is None:
        return None
    if isinstance(f, Pred):
        return Pred(f.name, tuple(_rename_term(a, m) for a in f.args), f.pos)
    if isinstance(f, Eq):
        return Eq(f.negated, _rename_term(f.left, m), _rename_term(f.right, m), f.pos)
    if isinstance(f, Not):
        return Not(_rename(f.arg, m), f.pos)
    if isinstance(f, BinOp):
        return BinOp(f.op, _rename(f.left, m), _rename(f.right, m), f.pos)
    binders = tuple(Binder(m.get(b.var, b.var), _rename_term(b.carrier, m), b.pos) for b in f.binders)
    return Quant(f.kind, binders, _rename(f.where, m), _rename(f.body, m), f.pos)


def expand_unique(f, _fresh: list | None = None):
    """Rewrite every ``exists_unique`` into existence plus uniqueness."""
    fresh = _fresh if _fresh is not None else [0]
    if isinstance(f, (Pred, Eq)) or f is None:
        return f
    if isinstance(f, Not):
        return Not(expand_unique(f.arg, fresh), f.pos)
    if isinstance(f, BinOp):
        return BinOp(f.op, expand_unique(f.left, fresh), expand_unique(f.right, fresh), f.pos)
    where, body = expand_unique(f.where, fresh), expand_unique(f.body, fresh)
    if f.kind != "exists_unique":
        return Quant(f.kind, f.binders, where, body, f.pos)
    fresh[0] += 1
    m = {b.var: f"{b.var}__{fresh[0]}" for b in f.binders}
    same = None
    for b in f.binders:
        eq = Eq(False, Var(m[b.var]), Var(b.var))
        same = eq if same is None else BinOp("&", same, eq)
    other_body = _rename(body, m)
    if where is not None:
        other_body = BinOp("&", _rename(where, m), other_body)
    others = tuple(Binder(m[b.var], _rename_term(b.carrier, m), b.pos) for b in f.binders)
    unique = Quant("forall", others, other_body, same, f.pos)
    return Quant("exists", f.binders, where, BinOp("&", body, unique, f.pos), f.pos)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _show(v) -> str:
    return str(v)


class _Evaluator:
    def __init__(self, program: Program, d: Domain, s: LabelScheme, precision: Precision | None, hook: Hook | None):
        self.d, self.s, self.precision, self.hook = d, s, precision, hook
        self.sorts = {decl.name: decl.sort for decl in program.decls}
        self.labels: dict[Angle, object] = {}
        self.assignments = 0
        self._carrier_cache: dict[str, list] = {}

    # -- carriers ------------------------------------------------------------

    def declared(self, name: str, pos) -> list:
        if name not in self._carrier_cache:
            sort = self.sorts[name]
            d = self.d
            if sort == "point":
                items = list(d.points)
            elif sort == "line":
                items = list(d.lines)
            elif sort == "ray":
                items = [r for p in d.points for r in d.rays_at(p)]
            else:
                items = []
                for p in d.points:
                    rays = d.rays_at(p)
                    for i, h in enumerate(rays):
                        for k in rays[i + 1:]:
                            if h.dx * k.dy != h.dy * k.dx:
                                items.append(Angle(h, k))
            if not items:
                line, col = (pos.line, pos.column) if pos is not None else (1, 1)
                raise EmptySort(f"carrier {name!r} of sort {sort} is empty in this domain", line, col)
            self._carrier_cache[name] = items
        return self._carrier_cache[name]

    def carrier(self, c, env) -> list:
        if isinstance(c, Var):
            return self.declared(c.name, c.pos)
        args = [self.term(a, env) for a in c.args]
        if any(a is None for a in args):
            return []
        (x,) = args
        if c.fn == "rays_at":
            return self.d.rays_at(x)
        if c.fn == "points_on":
            return self.d.points_on(x)
        return self.d.lines_at(x)

    def assignments_of(self, binders, env) -> Iterator[dict]:
        if not binders:
            yield env
            return
        b, rest = binders[0], binders[1:]
        for v in self.carrier(b.carrier, env):
            inner = dict(env)
            inner[b.var] = v
            yield from self.assignments_of(rest, inner)

    # -- terms ---------------------------------------------------------------

    def term(self, t, env):
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Lit):
            return t.value
        args = [self.term(a, env) for a in t.args]
        if any(a is None for a in args):
            return None
        fn = t.fn
        if fn == "ray":
            p, q = args
            return kernel.make_ray(p, q) if p != q else None
        if fn == "opp":
            return kernel.opposite(args[0])
        if fn == "line":
            p, q = args
            return kernel.line_through(p, q) if p != q else None
        if fn == "meet":
            l, m = args
            return kernel.intersect(l, m) if l != m else None
        h, k = args
        if h.origin != k.origin or h.dx * k.dy == h.dy * k.dx:
            return None
        return Angle(h, k)

    def label(self, a: Angle):
        if a not in self.labels:
            self.labels[a] = label_of(self.s, a, self.precision)
        return self.labels[a]

    # -- predicates ----------------------------------------------------------

    def predicate(self, name: str, args: tuple) -> TriBool:
        if any(a is None for a in args):
            return F
        p = self.precision
        if name == "on":
            return TriBool.of(args[1].contains(args[0]))
        if name == "between":
            a, b, c = args
            if len({a, b, c}) < 3 or not kernel.collinear(a, b, c):
                return F
            return TriBool.of(kernel.between(a, b, c))
        if name == "parallel":
            return TriBool.of(kernel.parallel(*args))
        if name == "intersects":
            l, m = args
            return TriBool.of(l != m and not kernel.parallel(l, m))
        if name == "same_side":
            x, y, l = args
            sx, sy = l.side(x), l.side(y)
            return TriBool.of(sx != 0 and sx == sy)
        if name == "in_interior":
            r, a = args
            return TriBool.of(r.origin == a.vertex and kernel.in_interior(a, r))
        if name == "seg_cong":
            a, b, c, d = args
            if a == b or c == d:
                return F
            return TriBool.of(kernel.segment_congruent(kernel.Segment(a, b), kernel.Segment(c, d)))
        if name == "is_supplementary":
            return TriBool.of(kernel.is_supplementary(*args))
        if name == "label_is":
            a, q = args
            if not 0 < q < 2:
                return F
            return _eq(compare(self.label(a), ExactPi(Fraction(q)), p))
        labels = [self.label(a) for a in args]
        if name == "ang_cong":
            return _eq(compare(labels[0], labels[1], p))
        if name == "label_lt":
            return _lt(compare(labels[0], labels[1], p))
        if name == "label_sum_lt_two_rights":
            return _lt(compare_to_two_rights(add_classes(labels[0], labels[1], p), p))
        if name == "label_sum_eq":
            return _eq(sign_of(labels[0].form + labels[1].form - labels[2].form, p))
        raise KeyError(name)

    # -- formulas ------------------------------------------------------------

    def formula(self, f, env) -> tuple[TriBool, dict]:
        if isinstance(f, Pred):
            args = tuple(self.term(a, env) for a in f.args)
            v = self.predicate(f.name, args)
            if self.hook is not None:
                v = self.hook(f.name, args, v)
            return v, {}
        if isinstance(f, Eq):
            l, r = self.term(f.left, env), self.term(f.right, env)
            if l is None or r is None:
                return F, {}
            return TriBool.of((l == r) != f.negated), {}
        if isinstance(f, Not):
            v, w = self.formula(f.arg, env)
            return ~v, w
        if isinstance(f, BinOp):
            lv, lw = self.formula(f.left, env)
            if f.op == "&" and lv is F:
                return F, lw
            if f.op == "|" and lv is T:
                return T, lw
            if f.op == "->" and lv is F:
                return T, lw
            rv, rw = self.formula(f.right, env)
            if f.op == "&":
                return lv & rv, {**lw, **rw}
            if f.op == "|":
                return lv | rv, {**lw, **rw}
            return (~lv) | rv, {**lw, **rw}
        return self.quantifier(f, env)

    def quantifier(self, f: Quant, env) -> tuple[TriBool, dict]:
        universal = f.kind == "forall"
        names = [b.var for b in f.binders]
        unknown: dict | None = None
        for a in self.assignments_of(list(f.binders), env):
            self.assignments += 1
            here = {n: _show(a[n]) for n in names}
            w = T
            if f.where is not None:
                w, _ = self.formula(f.where, a)
                if w is F:
                    continue
            b, inner = self.formula(f.body, a)
            v = ((~w) | b) if universal else (w & b)
            if universal and v is F:
                return F, {**here, **inner}
            if not universal and v is T:
                return T, {**here, **inner}
            if v is U and unknown is None:
                unknown = {**here, **inner}
        if unknown is not None:
            return U, unknown
        return (T, {}) if universal else (F, {})


def _eq(order: Ordering | None) -> TriBool:
    return U if order is None else TriBool.of(order is Ordering.EQUAL)


def _lt(order: Ordering | None) -> TriBool:
    return U if order is None else TriBool.of(order is Ordering.LESS)


def evaluate(
    program: Program,
    d: Domain,
    s: LabelScheme,
    precision: Precision | None = None,
    axioms: list[str] | None = None,
    hook: Hook | None = None,
) -> dict[str, EvalOutcome]:
    """Evaluate each axiom (in program order) and return name -> outcome.

    ``hook`` may rewrite individual predicate results; it exists so that
    tests can force Unknowns in and check Kleene monotonicity.
    """
    ev = _Evaluator(program, d, s, precision, hook)
    out = {}
    for ax in program.axioms:
        if axioms is not None and ax.name not in axioms:
            continue
        ev.assignments = 0
        v, w = ev.formula(expand_unique(ax.formula), {})
        out[ax.name] = EvalOutcome(v, w, ev.assignments)
    return out
