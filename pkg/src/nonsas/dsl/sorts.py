"""Static sort checking for parsed axiom programs."""

from __future__ import annotations

from nonsas.dsl.lexer import DslError
from nonsas.dsl.syntax import (
    CARRIERS,
    PREDICATES,
    TERM_FORMERS,
    BinOp,
    Eq,
    Lit,
    Not,
    Pos,
    Pred,
    Program,
    Quant,
    Var,
)


class SortError(DslError):
    def __init__(self, message: str, pos: Pos | None):
        line, col = (pos.line, pos.column) if pos is not None else (1, 1)
        super().__init__(message, line, col)


def _describe(name: str, sorts) -> str:
    return f"{name}({', '.join(sorts)})"


class _Checker:
    def __init__(self, program: Program):
        self.carriers: dict[str, str] = {}
        for d in program.decls:
            if d.name in self.carriers:
                raise SortError(f"carrier {d.name!r} declared twice", d.pos)
            self.carriers[d.name] = d.sort

    def term(self, t, env: dict[str, str]) -> str:
        if isinstance(t, Lit):
            return "fraction"
        if isinstance(t, Var):
            if t.name in env:
                return env[t.name]
            if t.name in self.carriers:
                raise SortError(f"carrier {t.name!r} used as a term", t.pos)
            raise SortError(f"unbound variable {t.name!r}", t.pos)
        if t.fn not in TERM_FORMERS:
            raise SortError(f"unknown term former {t.fn!r}", t.pos)
        want, result = TERM_FORMERS[t.fn]
        self.apply(t.fn, t.args, want, env, t.pos)
        return result

    def apply(self, name, args, want, env, pos) -> None:
        got = tuple(self.term(a, env) for a in args)
        if got != want:
            raise SortError(f"{_describe(name, got)} does not match {_describe(name, want)}", pos)

    def formula(self, f, env: dict[str, str], bound: set[str]) -> None:
        if isinstance(f, Pred):
            self.apply(f.name, f.args, PREDICATES[f.name], env, f.pos)
        elif isinstance(f, Eq):
            ls, rs = self.term(f.left, env), self.term(f.right, env)
            if ls != rs or ls == "fraction":
                raise SortError(f"cannot compare {ls} with {rs}", f.pos)
        elif isinstance(f, Not):
            self.formula(f.arg, env, bound)
        elif isinstance(f, BinOp):
            self.formula(f.left, env, bound)
            self.formula(f.right, env, bound)
        elif isinstance(f, Quant):
            inner = dict(env)
            for b in f.binders:
                if b.var in bound or b.var in self.carriers:
                    raise SortError(f"variable {b.var!r} bound more than once", b.pos)
                bound.add(b.var)
                inner[b.var] = self.carrier(b.carrier, inner)
            if f.where is not None:
                self.formula(f.where, inner, bound)
            self.formula(f.body, inner, bound)
        else:
            raise TypeError(f"not a formula: {f!r}")

    def carrier(self, c, env) -> str:
        if isinstance(c, Var):
            if c.name not in self.carriers:
                raise SortError(f"undeclared carrier {c.name!r}", c.pos)
            return self.carriers[c.name]
        if c.fn not in CARRIERS:
            raise SortError(f"unknown carrier {c.fn!r}", c.pos)
        want, elem = CARRIERS[c.fn]
        self.apply(c.fn, c.args, want, env, c.pos)
        return elem


def check_sorts(program: Program) -> Program:
    """Validate sorts, binding discipline and carrier references; returns ``program``."""
    chk = _Checker(program)
    seen = set()
    for ax in program.axioms:
        if ax.name in seen:
            raise SortError(f"axiom {ax.name!r} defined twice", ax.pos)
        seen.add(ax.name)
        chk.formula(ax.formula, {}, set())
    return program
