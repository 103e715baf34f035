"""Equivalence-preserving formula simplification.

A fixed rewrite system applied bottom-up in one pass:

* constant propagation through every connective,
* double-negation removal,
* flattening of nested ``&`` / ``|`` chains, dropping duplicates (first
  occurrence wins, order kept) and collapsing complementary pairs,
* ``x -> x`` and ``x <-> x`` to ``true``, ``x <-> ~x`` to ``false``.

Every rule is size non-increasing, so the result never has more nodes than
the input. No canonical form is computed.
"""

from __future__ import annotations

from bridgebound.formula import (
    FALSE,
    TRUE,
    And,
    Const,
    Equiv,
    Formula,
    Implies,
    Not,
    Or,
)


def _neg(f: Formula) -> Formula:
    if isinstance(f, Const):
        return FALSE if f.value else TRUE
    if isinstance(f, Not):
        return f.child
    return Not(f)


def _operands(f: Formula, kind: type) -> list[Formula]:
    out: list[Formula] = []
    stack = [f]
    while stack:
        node = stack.pop()
        if type(node) is kind:
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node)
    return out


def _chain(kind: type, left: Formula, right: Formula) -> Formula:
    unit = TRUE if kind is And else FALSE
    zero = FALSE if kind is And else TRUE
    items: list[Formula] = []
    seen: set[Formula] = set()
    for g in _operands(left, kind) + _operands(right, kind):
        if g == zero:
            return zero
        if g == unit or g in seen:
            continue
        seen.add(g)
        items.append(g)
    for g in items:
        if isinstance(g, Not) and g.child in seen:
            return zero
    if not items:
        return unit
    result = items[0]
    for g in items[1:]:
        result = kind(result, g)
    return result


def _step(node: Formula, kids: list[Formula]) -> Formula:
    if isinstance(node, Not):
        return _neg(kids[0])
    a, b = kids
    if isinstance(node, (And, Or)):
        rebuilt = _chain(type(node), a, b)
        if rebuilt == node:
            return node
        return rebuilt
    if isinstance(node, Implies):
        if isinstance(a, Const):
            return b if a.value else TRUE
        if isinstance(b, Const):
            return TRUE if b.value else _neg(a)
        if a == b:
            return TRUE
        return node if (a is node.left and b is node.right) else Implies(a, b)
    if isinstance(node, Equiv):
        if isinstance(a, Const):
            return b if a.value else _neg(b)
        if isinstance(b, Const):
            return a if b.value else _neg(a)
        if a == b:
            return TRUE
        if _neg(a) == b or _neg(b) == a:
            return FALSE
        return node if (a is node.left and b is node.right) else Equiv(a, b)
    raise TypeError(f"not a formula: {node!r}")


def simplify(f: Formula) -> Formula:
    """Return an equivalent formula with at most as many nodes as ``f``."""
    memo: dict[Formula, Formula] = {}
    stack = [(f, False)]
    while stack:
        node, done = stack.pop()
        if node in memo:
            continue
        kids = node.children()
        if not kids:
            memo[node] = node
        elif done:
            memo[node] = _step(node, [memo[k] for k in kids])
        else:
            stack.append((node, True))
            stack.extend((k, False) for k in kids if k not in memo)
    return memo[f]
