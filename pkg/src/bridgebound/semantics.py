"""Worlds, evaluation, entailment, equivalence and fact-base queries.

Entailment is decided by exhaustive enumeration of worlds. Worlds over a
vocabulary are ordered as binary counters over the lexicographically sorted
atoms with the last atom varying fastest; world number ``k`` assigns atom
``j`` the bit ``(k >> (n - 1 - j)) & 1``.

The fast path evaluates a formula on all worlds at once, packing world ``k``
into bit ``k`` of a Python integer. :func:`evaluate` is the plain one-world
evaluator and stays independent of that encoding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from bridgebound.formula import (
    And,
    Atom,
    Const,
    Equiv,
    Formula,
    Implies,
    Not,
    Or,
    TheoryLike,
    as_formula,
    as_theory,
    vocabulary,
)

DEFAULT_MAX_ATOMS = 20

World = Mapping[str, bool]


class UnboundAtomError(KeyError):
    def __init__(self, atom: str):
        self.atom = atom
        super().__init__(f"atom {atom!r} has no truth value in the world")

    def __str__(self):
        return self.args[0]


class VocabularyLimitError(ValueError):
    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(
            f"vocabulary has {count} atoms, exceeding the enumeration limit of {limit}"
        )


def check_limit(count: int, max_atoms: int | None) -> None:
    limit = DEFAULT_MAX_ATOMS if max_atoms is None else max_atoms
    if count > limit:
        raise VocabularyLimitError(count, limit)


def evaluate(f: Formula, w: World) -> bool:
    """Truth value of ``f`` in world ``w``."""
    if isinstance(f, Atom):
        try:
            return bool(w[f.name])
        except KeyError:
            raise UnboundAtomError(f.name) from None
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not evaluate(f.child, w)
    left = evaluate(f.left, w)
    right = evaluate(f.right, w)
    if isinstance(f, And):
        return min(left, right)
    if isinstance(f, Or):
        return max(left, right)
    if isinstance(f, Implies):
        return left <= right
    if isinstance(f, Equiv):
        return left == right
    raise TypeError(f"not a formula: {f!r}")


def worlds(vocab: Iterable[str]) -> Iterator[dict[str, bool]]:
    """All worlds over ``vocab`` in the canonical counter order."""
    names = sorted(vocab)
    for bits in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, bits))


def world_at(names: Sequence[str], k: int) -> dict[str, bool]:
    """The ``k``-th world over the sorted atom list ``names``."""
    n = len(names)
    return {a: bool((k >> (n - 1 - j)) & 1) for j, a in enumerate(names)}


def atom_mask(j: int, n: int) -> int:
    """Bitmask of the worlds (over ``n`` sorted atoms) where atom ``j`` is true."""
    s = n - 1 - j
    half = 1 << s
    period = half << 1
    total = 1 << n
    block = ((1 << half) - 1) << half
    # replicate one period across all 2**n worlds
    return block * (((1 << total) - 1) // ((1 << period) - 1))


def truth_table(f: Formula, names: Sequence[str]) -> int:
    """Bitmask of the worlds over ``names`` (sorted) in which ``f`` holds."""
    n = len(names)
    full = (1 << (1 << n)) - 1
    index = {a: j for j, a in enumerate(names)}
    memo: dict[int, int] = {}
    stack = [(f, False)]
    while stack:
        node, done = stack.pop()
        key = id(node)
        if key in memo:
            continue
        if isinstance(node, Atom):
            try:
                memo[key] = atom_mask(index[node.name], n)
            except KeyError:
                raise UnboundAtomError(node.name) from None
            continue
        if isinstance(node, Const):
            memo[key] = full if node.value else 0
            continue
        kids = node.children()
        if not done:
            stack.append((node, True))
            stack.extend((k, False) for k in kids if id(k) not in memo)
            continue
        if isinstance(node, Not):
            memo[key] = full ^ memo[id(node.child)]
            continue
        l, r = memo[id(node.left)], memo[id(node.right)]
        if isinstance(node, And):
            memo[key] = l & r
        elif isinstance(node, Or):
            memo[key] = l | r
        elif isinstance(node, Implies):
            memo[key] = (full ^ l) | r
        else:
            memo[key] = full ^ (l ^ r)
    return memo[id(f)]


def countermodel(
    premise: TheoryLike,
    conclusion: TheoryLike,
    *,
    max_atoms: int | None = None,
) -> dict[str, bool] | None:
    """First world (canonical order) satisfying ``premise`` but not ``conclusion``.

    Returns None when the entailment holds. The world ranges over the union of
    both vocabularies.
    """
    prem = as_theory(premise)
    concl = as_formula(conclusion)
    names = sorted(prem.vocabulary() | vocabulary(concl))
    check_limit(len(names), max_atoms)
    bad = truth_table(prem.conjunction(), names) & ~truth_table(concl, names)
    if not bad:
        return None
    k = (bad & -bad).bit_length() - 1
    return world_at(names, k)


def entails(
    premise: TheoryLike, conclusion: TheoryLike, *, max_atoms: int | None = None
) -> bool:
    """``premise |= conclusion``; an empty premise tests validity."""
    return countermodel(premise, conclusion, max_atoms=max_atoms) is None


def equivalent(
    a: TheoryLike,
    b: TheoryLike,
    assumptions: TheoryLike = None,
    *,
    max_atoms: int | None = None,
) -> bool:
    """``assumptions |= a <-> b``."""
    return entails(
        assumptions, Equiv(as_formula(a), as_formula(b)), max_atoms=max_atoms
    )


def satisfiable(t: TheoryLike, *, max_atoms: int | None = None) -> bool:
    f = as_formula(t)
    names = sorted(vocabulary(f))
    check_limit(len(names), max_atoms)
    return truth_table(f, names) != 0


@dataclass(frozen=True)
class FactBase:
    """Atoms known to be true; every other atom is read as false."""

    true_atoms: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "true_atoms", frozenset(self.true_atoms))

    def completion(self, vocab: Iterable[str]) -> dict[str, bool]:
        names = set(vocab) | self.true_atoms
        return {a: a in self.true_atoms for a in sorted(names)}


def query(facts: FactBase | Iterable[str], q: Formula) -> bool:
    """Evaluate ``q`` in the closed-world completion of ``facts``."""
    if not isinstance(facts, FactBase):
        facts = FactBase(frozenset(facts))
    return evaluate(q, facts.completion(vocabulary(q)))
