"""AST, recursive-descent parser and pretty printer for axiom programs.

Grammar (lowest precedence first)::

    program    := decl* axiom+
    decl       := "domain" NAME ":" SORT
    axiom      := "axiom" NAME ":" formula
    formula    := disj ("->" formula)?
    disj       := conj ("|" conj)*
    conj       := unary ("&" unary)*
    unary      := "!" unary | primary
    primary    := quantifier | "(" formula ")" | atom
    quantifier := ("forall" | "exists" | "exists_unique") binder ("," binder)*
                  ("where" formula)? ":" formula
    binder     := NAME "in" carrier
    carrier    := NAME | NAME "(" term ("," term)* ")"
    atom       := PRED "(" term ("," term)* ")" | term ("=" | "!=") term
    term       := NAME | FRACTION | NAME "(" term ("," term)* ")"

A quantifier body extends as far right as possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from nonsas.dsl.lexer import DslError, Token, tokenize

SORTS = ("point", "line", "ray", "angle")

# name -> argument sorts
PREDICATES: dict[str, tuple[str, ...]] = {
    "on": ("point", "line"),
    "between": ("point", "point", "point"),
    "parallel": ("line", "line"),
    "same_side": ("point", "point", "line"),
    "in_interior": ("ray", "angle"),
    "intersects": ("line", "line"),
    "seg_cong": ("point", "point", "point", "point"),
    "ang_cong": ("angle", "angle"),
    "label_lt": ("angle", "angle"),
    "label_sum_lt_two_rights": ("angle", "angle"),
    "is_supplementary": ("angle", "angle"),
    "label_sum_eq": ("angle", "angle", "angle"),
    "label_is": ("angle", "fraction"),
}

# name -> (argument sorts, result sort)
TERM_FORMERS: dict[str, tuple[tuple[str, ...], str]] = {
    "ray": (("point", "point"), "ray"),
    "opp": (("ray",), "ray"),
    "angle": (("ray", "ray"), "angle"),
    "meet": (("line", "line"), "point"),
    "line": (("point", "point"), "line"),
}

# name -> (argument sorts, element sort)
CARRIERS: dict[str, tuple[tuple[str, ...], str]] = {
    "rays_at": (("point",), "ray"),
    "points_on": (("line",), "point"),
    "lines_at": (("point",), "line"),
}


class ParseError(DslError):
    def __init__(self, message: str, token: Token, expected: frozenset[str] = frozenset()):
        if expected:
            message = f"{message}; expected one of {', '.join(sorted(expected))}"
        super().__init__(f"{message}, found {token}", token.line, token.column)
        self.expected = expected


@dataclass(frozen=True)
class Pos:
    line: int
    column: int


def _pos() -> Pos:
    return field(default=None, compare=False, repr=False)


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Lit:
    value: Fraction
    pos: Pos = _pos()


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple[Term, ...]
    pos: Pos = _pos()


Term = Union[Var, Lit, Call]


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple[Term, ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Eq:
    negated: bool
    left: Term
    right: Term
    pos: Pos = _pos()


@dataclass(frozen=True)
class Not:
    arg: Formula
    pos: Pos = _pos()


@dataclass(frozen=True)
class BinOp:
    op: str  # "&", "|", "->"
    left: Formula
    right: Formula
    pos: Pos = _pos()


@dataclass(frozen=True)
class Binder:
    var: str
    carrier: Union[Var, Call]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Quant:
    kind: str  # "forall", "exists", "exists_unique"
    binders: tuple[Binder, ...]
    where: Formula | None
    body: Formula
    pos: Pos = _pos()


Formula = Union[Pred, Eq, Not, BinOp, Quant]


@dataclass(frozen=True)
class Decl:
    name: str
    sort: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Axiom:
    name: str
    formula: Formula
    pos: Pos = _pos()


@dataclass(frozen=True)
class Program:
    decls: tuple[Decl, ...]
    axioms: tuple[Axiom, ...]

    def axiom(self, name: str) -> Axiom:
        for a in self.axioms:
            if a.name == name:
                return a
        raise KeyError(name)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, lexeme: str) -> bool:
        t = self.tok
        return t.kind in ("keyword", "symbol") and t.lexeme == lexeme

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, lexeme: str) -> Token:
        if not self.at(lexeme):
            raise ParseError("unexpected token", self.tok, frozenset({repr(lexeme)}))
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "ident":
            raise ParseError("unexpected token", self.tok, frozenset({what}))
        return self.advance()

    def pos(self) -> Pos:
        return Pos(self.tok.line, self.tok.column)

    # -- program -------------------------------------------------------------

    def program(self) -> Program:
        decls, axioms = [], []
        while self.at("domain"):
            p = self.pos()
            self.advance()
            name = self.ident("carrier name").lexeme
            self.expect(":")
            sort_tok = self.tok
            sort = self.ident("sort").lexeme
            if sort not in SORTS:
                raise ParseError(f"unknown sort {sort!r}", sort_tok, frozenset(SORTS))
            decls.append(Decl(name, sort, p))
        while self.at("axiom"):
            p = self.pos()
            self.advance()
            name = self.ident("axiom name").lexeme
            self.expect(":")
            axioms.append(Axiom(name, self.formula(), p))
        if not axioms:
            raise ParseError("program needs at least one axiom", self.tok, frozenset({"'axiom'", "'domain'"}))
        if self.tok.kind != "eof":
            raise ParseError("unexpected token", self.tok, frozenset({"'axiom'", "end of input"}))
        return Program(tuple(decls), tuple(axioms))

    # -- formulas ------------------------------------------------------------

    def formula(self):
        p = self.pos()
        left = self.disj()
        if self.at("->"):
            self.advance()
            return BinOp("->", left, self.formula(), p)
        return left

    def disj(self):
        p = self.pos()
        left = self.conj()
        while self.at("|"):
            self.advance()
            left = BinOp("|", left, self.conj(), p)
        return left

    def conj(self):
        p = self.pos()
        left = self.unary()
        while self.at("&"):
            self.advance()
            left = BinOp("&", left, self.unary(), p)
        return left

    def unary(self):
        if self.at("!"):
            p = self.pos()
            self.advance()
            return Not(self.unary(), p)
        return self.primary()

    def primary(self):
        t = self.tok
        if t.kind == "keyword" and t.lexeme in ("forall", "exists", "exists_unique"):
            return self.quantifier()
        if self.at("("):
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        if t.kind == "ident" and t.lexeme in PREDICATES and self.toks[self.i + 1].lexeme == "(":
            p = self.pos()
            self.advance()
            return Pred(t.lexeme, self.args(), p)
        if t.kind in ("ident", "fraction"):
            p = self.pos()
            left = self.term()
            if not (self.at("=") or self.at("!=")):
                raise ParseError("unexpected token", self.tok, frozenset({"'='", "'!='"}))
            negated = self.advance().lexeme == "!="
            return Eq(negated, left, self.term(), p)
        raise ParseError("expected a formula", t, frozenset({"'forall'", "'exists'", "'exists_unique'",
                                                              "'('", "'!'", "predicate"}))

    def quantifier(self) -> Quant:
        p = self.pos()
        kind = self.advance().lexeme
        binders = [self.binder()]
        while self.at(","):
            self.advance()
            binders.append(self.binder())
        where = None
        if self.at("where"):
            self.advance()
            where = self.formula()
        self.expect(":")
        return Quant(kind, tuple(binders), where, self.formula(), p)

    def binder(self) -> Binder:
        p = self.pos()
        var = self.ident("variable").lexeme
        self.expect("in")
        cp = self.pos()
        name = self.ident("carrier").lexeme
        if self.at("("):
            return Binder(var, Call(name, self.args(), cp), p)
        return Binder(var, Var(name, cp), p)

    # -- terms ---------------------------------------------------------------

    def args(self) -> tuple:
        self.expect("(")
        out = [self.term()]
        while self.at(","):
            self.advance()
            out.append(self.term())
        self.expect(")")
        return tuple(out)

    def term(self):
        t = self.tok
        p = self.pos()
        if t.kind == "fraction":
            self.advance()
            return Lit(t.value, p)
        name = self.ident("term").lexeme
        if self.at("("):
            return Call(name, self.args(), p)
        return Var(name, p)


def parse(source_or_tokens) -> Program:
    """Parse program text (or a token list from :func:`tokenize`)."""
    tokens = tokenize(source_or_tokens) if isinstance(source_or_tokens, str) else list(source_or_tokens)
    return _Parser(tokens).program()


# ---------------------------------------------------------------------------
# pretty printer
# ---------------------------------------------------------------------------

def _term(t) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Lit):
        return str(t.value)
    return f"{t.fn}({', '.join(_term(a) for a in t.args)})"


def _atomic(f) -> bool:
    return isinstance(f, (Pred, Eq, Not))


def _wrap(f) -> str:
    s = format_formula(f)
    return s if _atomic(f) else f"({s})"


def format_formula(f) -> str:
    if isinstance(f, Pred):
        return f"{f.name}({', '.join(_term(a) for a in f.args)})"
    if isinstance(f, Eq):
        return f"{_term(f.left)} {'!=' if f.negated else '='} {_term(f.right)}"
    if isinstance(f, Not):
        return f"!{_wrap(f.arg)}"
    if isinstance(f, BinOp):
        return f"{_wrap(f.left)} {f.op} {_wrap(f.right)}"
    binders = ", ".join(f"{b.var} in {_term(b.carrier)}" for b in f.binders)
    where = f" where {format_formula(f.where)}" if f.where is not None else ""
    return f"{f.kind} {binders}{where}: {format_formula(f.body)}"


def pretty_print(p: Program) -> str:
    lines = [f"domain {d.name} : {d.sort}" for d in p.decls]
    if lines:
        lines.append("")
    lines += [f"axiom {a.name}: {format_formula(a.formula)}" for a in p.axioms]
    return "\n".join(lines) + "\n"


def depth(f) -> int:
    """Nesting depth of formula nodes."""
    if isinstance(f, (Pred, Eq)):
        return 1
    if isinstance(f, Not):
        return 1 + depth(f.arg)
    if isinstance(f, BinOp):
        return 1 + max(depth(f.left), depth(f.right))
    inner = depth(f.body)
    if f.where is not None:
        inner = max(inner, depth(f.where))
    return 1 + inner
