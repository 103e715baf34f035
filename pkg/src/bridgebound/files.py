"""Readers for theory (``.bbt``), definition and fact-base files.

All three are line oriented UTF-8 text. ``#`` starts a comment that runs to
the end of the line; blank lines are ignored.
"""

from __future__ import annotations

from pathlib import Path

from bridgebound.abstraction import DefinitionError, DefinitionSet
from bridgebound.formula import IDENTIFIER, KEYWORDS, Theory
from bridgebound.parser import ParseError, parse
from bridgebound.semantics import FactBase


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, body


def parse_theory(text: str, source: str | None = None) -> Theory:
    """One formula per non-blank line."""
    return Theory(
        tuple(parse(body, line=n, source=source) for n, body in _lines(text))
    )


def parse_definitions(text: str, source: str | None = None) -> DefinitionSet:
    """Lines of the form ``head := formula``."""
    entries = []
    for n, body in _lines(text):
        head, sep, rest = body.partition(":=")
        if not sep:
            raise ParseError("missing ':='", n, 1, "'head := formula'", source)
        head_name = head.strip()
        if not IDENTIFIER.match(head_name) or head_name in KEYWORDS:
            col = len(head) - len(head.lstrip()) + 1
            raise ParseError(
                f"invalid definition head {head_name!r}", n, col, "an identifier", source
            )
        # keep columns relative to the full line
        offset = len(head) + len(sep)
        definiens = parse(" " * offset + rest, line=n, source=source)
        entries.append((head_name, definiens))
    if not entries:
        raise DefinitionError(f"{source or 'definitions'}: no definitions found")
    return DefinitionSet(tuple(entries))


def parse_facts(text: str, source: str | None = None) -> FactBase:
    """One identifier per line."""
    names = set()
    for n, body in _lines(text):
        name = body.strip()
        if not IDENTIFIER.match(name) or name in KEYWORDS:
            col = len(body) - len(body.lstrip()) + 1
            raise ParseError(
                f"invalid fact {name!r}", n, col, "a single identifier", source
            )
        names.add(name)
    return FactBase(frozenset(names))


def read_theory(path: str | Path) -> Theory:
    path = Path(path)
    return parse_theory(path.read_text(encoding="utf-8"), str(path))


def read_definitions(path: str | Path) -> DefinitionSet:
    path = Path(path)
    return parse_definitions(path.read_text(encoding="utf-8"), str(path))


def read_facts(path: str | Path) -> FactBase:
    path = Path(path)
    return parse_facts(path.read_text(encoding="utf-8"), str(path))
