"""Tokenizer for axiom programs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

KEYWORDS = frozenset({"forall", "exists", "exists_unique", "in", "where", "axiom", "domain"})
SYMBOLS = ("->", "!=", "(", ")", ",", ":", "&", "|", "!", "=")


class DslError(ValueError):
    """Base for positional DSL errors; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line} column {column}")
        self.message = message
        self.line = line
        self.column = column


class LexError(DslError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "keyword", "symbol", "fraction", "eof"
    lexeme: str
    line: int
    column: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.lexeme)

    def __str__(self):
        return "end of input" if self.kind == "eof" else repr(self.lexeme)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_FRACTION = re.compile(r"[0-9]+(?:/[0-9]+)?")


def tokenize(source: str) -> list[Token]:
    """Maximal-munch tokenization; the list always ends with an ``eof`` token."""
    out: list[Token] = []
    line, col, i, n = 1, 1, 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        m = _IDENT.match(source, i)
        if m:
            word = m.group()
            out.append(Token("keyword" if word in KEYWORDS else "ident", word, line, col))
        elif (m := _FRACTION.match(source, i)):
            word = m.group()
            if "/" in word and int(word.split("/")[1]) == 0:
                raise LexError(f"zero denominator in {word!r}", line, col)
            out.append(Token("fraction", word, line, col))
        else:
            sym = next((s for s in SYMBOLS if source.startswith(s, i)), None)
            if sym is None:
                raise LexError(f"illegal character {ch!r}", line, col)
            out.append(Token("symbol", sym, line, col))
            word = sym
        i += len(word)
        col += len(word)
    out.append(Token("eof", "", line, col))
    return out
