"""Boolean second-order quantifier elimination.

Shannon expansion always succeeds (at exponential cost in the number of
eliminated atoms); the propositional Ackermann rule succeeds only on
conjunctions with a suitable definitional pivot but avoids the blow-up.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

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
    conjoin,
    substitute,
    vocabulary,
)
from bridgebound.simplify import simplify


class Quantifier(enum.Enum):
    EXISTS = "exists"
    FORALL = "forall"


@dataclass(frozen=True)
class QuantifiedFormula:
    quantifier: Quantifier
    bound_atoms: frozenset[str]
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "bound_atoms", frozenset(self.bound_atoms))
        if not self.bound_atoms:
            raise ValueError("a quantifier must bind at least one atom")

    def eliminate(self, *, simplified: bool = True) -> Formula:
        if self.quantifier is Quantifier.EXISTS:
            return shannon_exists(self.body, self.bound_atoms, simplified=simplified)
        return shannon_forall(self.body, self.bound_atoms, simplified=simplified)


def _shannon(body: Formula, bound: Iterable[str], join: type, simplified: bool):
    result = body
    for p in sorted(set(bound)):
        if p not in vocabulary(result):
            continue
        low = substitute(result, p, FALSE)
        high = substitute(result, p, TRUE)
        if simplified:
            result = simplify(join(simplify(low), simplify(high)))
        else:
            result = join(low, high)
    return result


def shannon_exists(
    body: Formula, atoms: Iterable[str], *, simplified: bool = True
) -> Formula:
    """Eliminate ``exists atoms`` as ``A[p:=false] | A[p:=true]``, per atom.

    Atoms are expanded in sorted order; atoms absent from the body are skipped.
    With ``simplified=False`` the raw expansion is returned.
    """
    return _shannon(body, atoms, Or, simplified)


def shannon_forall(
    body: Formula, atoms: Iterable[str], *, simplified: bool = True
) -> Formula:
    """Eliminate ``forall atoms`` as ``A[p:=false] & A[p:=true]``, per atom."""
    return _shannon(body, atoms, And, simplified)


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED = "mixed"
    ABSENT = "absent"


def polarity(f: Formula, atom: str) -> Polarity:
    """Negation parity of the occurrences of ``atom`` in ``f``.

    An implication antecedent counts as one negation. Both sides of an
    equivalence occur under both parities.
    """
    parities: set[int] = set()
    stack: list[tuple[Formula, frozenset[int]]] = [(f, frozenset({0}))]
    while stack and len(parities) < 2:
        node, par = stack.pop()
        if isinstance(node, Atom):
            if node.name == atom:
                parities |= par
        elif isinstance(node, Not):
            stack.append((node.child, frozenset(1 - p for p in par)))
        elif isinstance(node, Implies):
            stack.append((node.left, frozenset(1 - p for p in par)))
            stack.append((node.right, par))
        elif isinstance(node, Equiv):
            stack.append((node.left, frozenset({0, 1})))
            stack.append((node.right, frozenset({0, 1})))
        elif isinstance(node, (And, Or)):
            stack.append((node.left, par))
            stack.append((node.right, par))
    if not parities:
        return Polarity.ABSENT
    if len(parities) == 2:
        return Polarity.MIXED
    return Polarity.POSITIVE if 0 in parities else Polarity.NEGATIVE


def conjuncts(f: Formula) -> list[Formula]:
    """Flatten nested conjunctions, left to right."""
    out: list[Formula] = []
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, And):
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node)
    return out


def _split_equivalences(items: list[Formula], atom: str) -> list[Formula]:
    p = Atom(atom)
    out: list[Formula] = []
    for g in items:
        if isinstance(g, Equiv) and (g.left == p) != (g.right == p):
            other = g.right if g.left == p else g.left
            out.append(Implies(p, other))
            out.append(Implies(other, p))
        else:
            out.append(g)
    return out


def ackermann(body: Formula, atom: str) -> Formula | None:
    """Eliminate ``exists atom`` from a conjunction via Ackermann's rule.

    Looks left to right for a conjunct ``atom -> A`` whose remainder is
    positive in ``atom``, or ``A -> atom`` whose remainder is negative, with
    ``atom`` not occurring in ``A``; the result is the remainder with ``atom``
    replaced by ``A``. Returns None when no such pivot exists.
    """
    p = Atom(atom)
    items = _split_equivalences(conjuncts(body), atom)
    for i, g in enumerate(items):
        if not isinstance(g, Implies):
            continue
        if g.left == p and atom not in vocabulary(g.right):
            definiens, wanted = g.right, Polarity.POSITIVE
        elif g.right == p and atom not in vocabulary(g.left):
            definiens, wanted = g.left, Polarity.NEGATIVE
        else:
            continue
        rest = conjoin(items[:i] + items[i + 1 :])
        if polarity(rest, atom) in (wanted, Polarity.ABSENT):
            return simplify(substitute(rest, atom, definiens))
    return None

