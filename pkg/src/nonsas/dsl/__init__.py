"""Axiom programs: tokenize, parse, sort-check and evaluate."""

from importlib import resources

from nonsas.dsl.evaluator import EmptySort, EvalOutcome, evaluate, expand_unique
from nonsas.dsl.lexer import DslError, LexError, Token, tokenize
from nonsas.dsl.sorts import SortError, check_sorts
from nonsas.dsl.syntax import ParseError, Program, format_formula, parse, pretty_print

CORPUS = (
    "incidence.axm",
    "order.axm",
    "playfair_classical.axm",
    "playfair_hilbert.axm",
    "pp.axm",
    "cn5.axm",
    "additivity.axm",
    "legendre.axm",
)


def load(source: str) -> Program:
    """Tokenize, parse and sort-check in one step."""
    return check_sorts(parse(tokenize(source)))


def corpus_source(name: str) -> str:
    if name not in CORPUS:
        raise KeyError(f"no corpus file {name!r}")
    return resources.files("nonsas.corpus").joinpath(name).read_text(encoding="utf-8")


def corpus_program(name: str) -> Program:
    return load(corpus_source(name))


__all__ = [
    "CORPUS", "DslError", "EmptySort", "EvalOutcome", "LexError", "ParseError", "Program",
    "SortError", "Token", "check_sorts", "corpus_program", "corpus_source", "evaluate",
    "expand_unique", "format_formula", "load", "parse", "pretty_print", "tokenize",
]
