"""Propositional formula AST, theories, and structural utilities.

Formulas are immutable and hashable. Hashes are cached on construction so
large shared DAGs (as produced by Shannon expansion) stay cheap to put in
dicts and sets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Tuple, Union

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"true", "false"})

Vocabulary = frozenset  # frozenset[str]
Position = Tuple[int, ...]


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def children(self) -> tuple[Formula, ...]:
        return ()

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __invert__(self) -> Formula:
        return Not(self)

    def __rshift__(self, other: Formula) -> Formula:
        return Implies(self, other)

    def iff(self, other: Formula) -> Formula:
        return Equiv(self, other)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, eq=True, repr=False)
class Atom(Formula):
    name: str
    _hash: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        if not isinstance(self.name, str) or not IDENTIFIER.match(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")
        if self.name in KEYWORDS:
            raise ValueError(f"{self.name!r} is reserved for constants")
        object.__setattr__(self, "_hash", hash(("atom", self.name)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, eq=True, repr=False)
class Const(Formula):
    value: bool
    _hash: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "value", bool(self.value))
        object.__setattr__(self, "_hash", hash(("const", self.value)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "TRUE" if self.value else "FALSE"


@dataclass(frozen=True, eq=True, repr=False)
class Not(Formula):
    child: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("not", self.child)))

    def __hash__(self):
        return self._hash

    def children(self):
        return (self.child,)

    def __repr__(self):
        return f"Not({self.child!r})"


@dataclass(frozen=True, eq=True, repr=False)
class _Binary(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, default=0)

    symbol = ""

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash((type(self).__name__, self.left, self.right))
        )

    def __hash__(self):
        return self._hash

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class And(_Binary):
    symbol = "&"


class Or(_Binary):
    symbol = "|"


class Implies(_Binary):
    symbol = "->"


class Equiv(_Binary):
    symbol = "<->"


TRUE = Const(True)
FALSE = Const(False)


def atoms(*names: str) -> tuple[Atom, ...]:
    """Convenience constructor: ``p, q = atoms("p", "q")``."""
    return tuple(Atom(n) for n in names)


def rebuild(f: Formula, kids: Sequence[Formula]) -> Formula:
    """Return a node of the same kind as ``f`` with new children."""
    if isinstance(f, Not):
        return f if kids[0] is f.child else Not(kids[0])
    if isinstance(f, _Binary):
        if kids[0] is f.left and kids[1] is f.right:
            return f
        return type(f)(kids[0], kids[1])
    return f


def render(f: Formula) -> str:
    """Fully parenthesized ASCII rendering; ``parse(render(f)) == f``."""
    out: list[str] = []
    # explicit stack: Shannon output can exceed the default recursion limit
    stack: list[object] = [f]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif isinstance(item, Atom):
            out.append(item.name)
        elif isinstance(item, Const):
            out.append("true" if item.value else "false")
        elif isinstance(item, Not):
            out.append("~")
            stack.append(item.child)
        else:
            stack.extend((")", item.right, f" {item.symbol} ", item.left))
            out.append("(")
    return "".join(out)


def iter_nodes(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, shared subterms visited once per occurrence."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def size(f: Formula) -> int:
    """Number of nodes of the formula tree (occurrences, not distinct DAG nodes)."""
    memo: dict[int, int] = {}
    return _size(f, memo)


def _size(f: Formula, memo: dict[int, int]) -> int:
    stack = [(f, False)]
    while stack:
        node, done = stack.pop()
        if id(node) in memo:
            continue
        kids = node.children()
        if done or not kids:
            memo[id(node)] = 1 + sum(memo[id(k)] for k in kids)
        else:
            stack.append((node, True))
            stack.extend((k, False) for k in kids if id(k) not in memo)
    return memo[id(f)]


def vocabulary(f: Formula | Iterable[Formula]) -> frozenset[str]:
    """Atom names occurring at least once in a formula or theory."""
    roots = [f] if isinstance(f, Formula) else list(f)
    names: set[str] = set()
    seen: set[int] = set()
    stack = list(roots)
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Atom):
            names.add(node.name)
        else:
            stack.extend(node.children())
    return frozenset(names)


def substitute(f: Formula, atom: str, replacement: Formula) -> Formula:
    """Replace every occurrence of ``Atom(atom)`` by ``replacement``."""
    return substitute_many(f, {atom: replacement})


def substitute_many(f: Formula, mapping: dict[str, Formula]) -> Formula:
    """Simultaneous substitution of several atoms."""
    memo: dict[int, Formula] = {}
    stack = [(f, False)]
    while stack:
        node, done = stack.pop()
        if id(node) in memo:
            continue
        if isinstance(node, Atom):
            memo[id(node)] = mapping.get(node.name, node)
            continue
        kids = node.children()
        if not kids:
            memo[id(node)] = node
        elif done:
            memo[id(node)] = rebuild(node, [memo[id(k)] for k in kids])
        else:
            stack.append((node, True))
            stack.extend((k, False) for k in kids if id(k) not in memo)
    return memo[id(f)]


def positioned_subformulas(f: Formula) -> list[tuple[Position, Formula]]:
    """Pre-order list of ``(path, node)``; the root has the empty path."""
    result: list[tuple[Position, Formula]] = []
    stack: list[tuple[Position, Formula]] = [((), f)]
    while stack:
        path, node = stack.pop()
        result.append((path, node))
        kids = node.children()
        for i in reversed(range(len(kids))):
            stack.append((path + (i,), kids[i]))
    return result


def subformula_at(f: Formula, path: Position) -> Formula:
    node = f
    for i in path:
        kids = node.children()
        if i >= len(kids):
            raise IndexError(f"path {list(path)} does not address a node")
        node = kids[i]
    return node


def overlaps(a: Position, b: Position) -> bool:
    """Two positions overlap iff one path is a prefix of the other."""
    n = min(len(a), len(b))
    return a[:n] == b[:n]


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``true``."""
    result = None
    for g in formulas:
        result = g if result is None else And(result, g)
    return TRUE if result is None else result


def disjoin(formulas: Iterable[Formula]) -> Formula:
    result = None
    for g in formulas:
        result = g if result is None else Or(result, g)
    return FALSE if result is None else result


@dataclass(frozen=True)
class Theory:
    """A finite sequence of formulas, read as their conjunction.

    Duplicates are kept and order is preserved; comparisons between theories
    are meant to be semantic (see :func:`bridgebound.semantics.equivalent`).
    """

    formulas: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(self.formulas))
        for g in self.formulas:
            if not isinstance(g, Formula):
                raise TypeError(f"theory member is not a Formula: {g!r}")

    @classmethod
    def of(cls, *formulas: Formula | str) -> Theory:
        return as_theory(list(formulas))

    def __iter__(self):
        return iter(self.formulas)

    def __len__(self):
        return len(self.formulas)

    def __getitem__(self, i):
        return self.formulas[i]

    def conjunction(self) -> Formula:
        return conjoin(self.formulas)

    def vocabulary(self) -> frozenset[str]:
        return vocabulary(self.formulas)

    def __add__(self, other: Theory) -> Theory:
        return Theory(self.formulas + as_theory(other).formulas)

    def __str__(self):
        return "\n".join(render(g) for g in self.formulas)


TheoryLike = Union[Theory, Formula, str, Iterable[Union[Formula, str]], None]


def as_theory(t: TheoryLike) -> Theory:
    """Coerce a formula, formula text, iterable of either, or None to a Theory."""
    from bridgebound.parser import parse

    if t is None:
        return Theory()
    if isinstance(t, Theory):
        return t
    if isinstance(t, Formula):
        return Theory((t,))
    if isinstance(t, str):
        return Theory((parse(t),))
    return Theory(tuple(parse(g) if isinstance(g, str) else g for g in t))


def as_formula(t: TheoryLike) -> Formula:
    """Coerce to a single formula: theories become their conjunction."""
    if isinstance(t, Formula):
        return t
    return as_theory(t).conjunction()
