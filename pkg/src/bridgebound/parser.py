"""Recursive-descent parser for the ASCII formula syntax.

Grammar, loosest to tightest binding::

    formula := equiv
    equiv   := impl ("<->" impl)*          # left-associative
    impl    := or ("->" impl)?             # right-associative
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | "(" formula ")" | "true" | "false" | identifier
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from bridgebound.formula import (
    FALSE,
    TRUE,
    And,
    Atom,
    Equiv,
    Formula,
    Implies,
    Not,
    Or,
)


class ParseError(ValueError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message, line=1, column=1, expected=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        self.source = source
        where = f"{source}:" if source else ""
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{where}{line}:{column}: {message}{hint}")


_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|[~&|()])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "op", "ident", "eof"
    text: str
    column: int


def _tokenize(text: str, line: int, source: str | None) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        if m.group("bad") is not None:
            raise ParseError(
                f"unexpected character {m.group('bad')!r}",
                line,
                m.start("bad") + 1,
                "an operator, parenthesis or identifier",
                source,
            )
        kind = "op" if m.group("op") is not None else "ident"
        toks.append(_Tok(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text.rstrip()) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, line: int, source: str | None):
        self.toks = _tokenize(text, line, source)
        self.i = 0
        self.line = line
        self.source = source

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, expected: str) -> ParseError:
        tok = self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(
            f"unexpected {found}", self.line, tok.column, expected, self.source
        )

    def accept(self, op: str) -> bool:
        tok = self.peek()
        if tok.kind == "op" and tok.text == op:
            self.i += 1
            return True
        return False

    def formula(self) -> Formula:
        left = self.impl()
        while self.accept("<->"):
            left = Equiv(left, self.impl())
        return left

    def impl(self) -> Formula:
        left = self.disj()
        if self.accept("->"):
            return Implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.accept("|"):
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.accept("&"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        # iterative over "~" so long negation chains don't recurse
        negations = 0
        while self.accept("~"):
            negations += 1
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.formula()
            if not self.accept(")"):
                raise self.error("')'")
        elif tok.kind == "ident":
            self.take()
            if tok.text == "true":
                node = TRUE
            elif tok.text == "false":
                node = FALSE
            else:
                node = Atom(tok.text)
        else:
            raise self.error("a formula")
        for _ in range(negations):
            node = Not(node)
        return node


def parse(text: str, *, line: int = 1, source: str | None = None) -> Formula:
    """Parse one formula. ``line``/``source`` only affect error messages."""
    if not text or not text.strip():
        raise ParseError("empty formula", line, 1, "a formula", source)
    p = _Parser(text, line, source)
    result = p.formula()
    if p.peek().kind != "eof":
        raise p.error("an operator or end of input")
    return result
