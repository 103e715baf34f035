"""Approximate abstractions of propositional theories.

Given a source theory, a bridging theory connecting source and abstract
atoms, and an abstract vocabulary, the tightest abstraction is the pair

    lower = wsc(source; bridge; keep) = forall V (bridge -> source)
    upper = snc(source; bridge; keep) = exists V (bridge & source)

where ``V`` is every atom of source and bridge outside ``keep``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from bridgebound.formula import (
    And,
    Atom,
    Equiv,
    Formula,
    Implies,
    Position,
    Theory,
    TheoryLike,
    as_formula,
    as_theory,
    overlaps,
    positioned_subformulas,
    render,
    vocabulary,
)
from bridgebound.qe import shannon_exists, shannon_forall
from bridgebound.semantics import (
    check_limit,
    countermodel,
    equivalent,
)
from bridgebound.simplify import simplify

DEFAULT_COVER_BUDGET = 1 << 16


@dataclass(frozen=True)
class AlphaAbstraction:
    """A lower/upper bound pair over an abstract vocabulary."""

    lower: Theory
    upper: Theory
    abstract_vocabulary: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "lower", as_theory(self.lower))
        object.__setattr__(self, "upper", as_theory(self.upper))
        object.__setattr__(
            self, "abstract_vocabulary", frozenset(self.abstract_vocabulary)
        )
        stray = (
            self.lower.vocabulary() | self.upper.vocabulary()
        ) - self.abstract_vocabulary
        if stray:
            raise ValueError(
                f"bounds mention atoms outside the abstract vocabulary: {sorted(stray)}"
            )

    @classmethod
    def of_theory(cls, t: TheoryLike) -> AlphaAbstraction:
        """A plain theory as the degenerate pair ``<T, T>``."""
        t = as_theory(t)
        return cls(t, t, t.vocabulary())

    @property
    def lower_formula(self) -> Formula:
        return self.lower.conjunction()

    @property
    def upper_formula(self) -> Formula:
        return self.upper.conjunction()


def _eliminated(a: Theory, t: Theory, keep: Iterable[str]) -> frozenset[str]:
    return (a.vocabulary() | t.vocabulary()) - frozenset(keep)


def snc(
    a: TheoryLike,
    t: TheoryLike,
    keep: Iterable[str],
    *,
    max_atoms: int | None = None,
) -> Formula:
    """Strongest necessary condition of ``a`` over ``keep`` under ``t``."""
    a, t = as_theory(a), as_theory(t)
    drop = _eliminated(a, t, keep)
    check_limit(len(drop), max_atoms)
    body = And(t.conjunction(), a.conjunction())
    return simplify(shannon_exists(body, drop))


def wsc(
    a: TheoryLike,
    t: TheoryLike,
    keep: Iterable[str],
    *,
    max_atoms: int | None = None,
) -> Formula:
    """Weakest sufficient condition of ``a`` over ``keep`` under ``t``."""
    a, t = as_theory(a), as_theory(t)
    drop = _eliminated(a, t, keep)
    check_limit(len(drop), max_atoms)
    body = Implies(t.conjunction(), a.conjunction())
    return simplify(shannon_forall(body, drop))


def tightest(
    source: TheoryLike,
    bridge: TheoryLike,
    abstract_vocab: Iterable[str],
    *,
    max_atoms: int | None = None,
) -> AlphaAbstraction:
    keep = frozenset(abstract_vocab)
    return AlphaAbstraction(
        wsc(source, bridge, keep, max_atoms=max_atoms),
        snc(source, bridge, keep, max_atoms=max_atoms),
        keep,
    )


@dataclass(frozen=True)
class VerifyReport:
    lower_ok: bool
    upper_ok: bool
    exact: bool
    counterexample_world: Mapping[str, bool] | None = None
    # which check the counterexample refutes: "lower", "upper" or "exact"
    failed_check: str | None = None

    @property
    def is_abstraction(self) -> bool:
        return self.lower_ok and self.upper_ok


def verify(
    source: TheoryLike,
    bridge: TheoryLike,
    candidate: AlphaAbstraction,
    *,
    max_atoms: int | None = None,
) -> VerifyReport:
    """Check that ``candidate`` is an abstraction of ``source`` under ``bridge``.

    The lower bound qualifies iff ``bridge |= lower -> source`` and the upper
    iff ``bridge |= source -> upper``. These single entailments are equivalent
    to the quantification over every sufficient (respectively necessary)
    condition on the abstract vocabulary.
    """
    s, b = as_theory(source), as_theory(bridge)
    lo, up = candidate.lower_formula, candidate.upper_formula
    sf = s.conjunction()
    names = s.vocabulary() | b.vocabulary() | vocabulary(lo) | vocabulary(up)
    check_limit(len(names), max_atoms)

    w_lower = countermodel(b, Implies(lo, sf), max_atoms=max_atoms)
    w_upper = countermodel(b, Implies(sf, up), max_atoms=max_atoms)
    lower_ok, upper_ok = w_lower is None, w_upper is None
    w_exact = None
    if lower_ok and upper_ok:
        w_exact = countermodel(b, Equiv(lo, up), max_atoms=max_atoms)
    exact = lower_ok and upper_ok and w_exact is None

    for check, w in (("lower", w_lower), ("upper", w_upper), ("exact", w_exact)):
        if w is not None:
            return VerifyReport(lower_ok, upper_ok, exact, w, check)
    return VerifyReport(lower_ok, upper_ok, exact)


def is_exact(
    candidate: AlphaAbstraction, bridge: TheoryLike, *, max_atoms: int | None = None
) -> bool:
    """``bridge |= lower <-> upper``."""
    return equivalent(
        candidate.lower_formula, candidate.upper_formula, bridge, max_atoms=max_atoms
    )


class DefinitionError(ValueError):
    pass


@dataclass(frozen=True)
class DefinitionSet:
    """Definitions ``head := definiens`` of fresh, pairwise distinct concepts."""

    entries: tuple[tuple[str, Formula], ...]

    def __post_init__(self):
        entries = tuple((h, as_formula(d)) for h, d in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise DefinitionError("a definition set needs at least one entry")
        heads = [h for h, _ in entries]
        dupes = sorted({h for h in heads if heads.count(h) > 1})
        if dupes:
            raise DefinitionError(f"heads defined more than once: {dupes}")
        used = vocabulary(d for _, d in entries)
        clash = sorted(set(heads) & used)
        if clash:
            raise DefinitionError(f"heads occurring in definientia: {clash}")

    @classmethod
    def from_mapping(cls, defs: Mapping[str, Formula | str]) -> DefinitionSet:
        return cls(tuple(defs.items()))

    @property
    def heads(self) -> frozenset[str]:
        return frozenset(h for h, _ in self.entries)

    def as_theory(self) -> Theory:
        return Theory(tuple(Equiv(Atom(h), d) for h, d in self.entries))


@dataclass(frozen=True, order=True)
class CoverElement:
    formula_index: int
    position: Position
    head: str
    subformula: Formula = field(compare=False, default=None)

    def describe(self) -> str:
        return (
            f"formula {self.formula_index} at {list(self.position)}: "
            f"{render(self.subformula)} matches {self.head}"
        )


@dataclass(frozen=True)
class Cover:
    """Non-overlapping subformulas of the source, each matched to a definiens."""

    elements: tuple[CoverElement, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _disjoint(a: CoverElement, b: CoverElement) -> bool:
    return a.formula_index != b.formula_index or not overlaps(a.position, b.position)


def _covers(elements: Sequence[CoverElement], occurrences) -> bool:
    for idx, path in occurrences:
        if not any(
            e.formula_index == idx and path[: len(e.position)] == e.position
            for e in elements
        ):
            return False
    return True


def find_proper_cover(
    source: TheoryLike,
    defs: DefinitionSet,
    drop: Iterable[str],
    *,
    budget: int = DEFAULT_COVER_BUDGET,
    max_atoms: int | None = None,
) -> Cover | None:
    """Search for a proper cover of ``drop`` in ``source`` w.r.t. ``defs``.

    Candidates are subformulas built only from dropped atoms that are
    equivalent to some definiens. Every occurrence of a dropped atom must lie
    inside a chosen candidate, and candidates must not overlap. Greedy
    outermost-first selection is tried first, then an exhaustive search over
    candidate subsets of at most ``budget`` combinations.
    """
    s = as_theory(source)
    drop = frozenset(drop)
    heads = defs.heads
    if heads & s.vocabulary():
        raise DefinitionError(
            f"defined heads occur in the source: {sorted(heads & s.vocabulary())}"
        )
    if heads & drop:
        raise DefinitionError(f"heads cannot be dropped: {sorted(heads & drop)}")

    candidates: list[CoverElement] = []
    occurrences: list[tuple[int, Position]] = []
    matches: dict[Formula, str | None] = {}
    for idx, g in enumerate(s):
        for path, sub in positioned_subformulas(g):
            if isinstance(sub, Atom) and sub.name in drop:
                occurrences.append((idx, path))
            voc = vocabulary(sub)
            if not voc or not voc <= drop:
                continue
            if sub not in matches:
                matches[sub] = next(
                    (
                        h
                        for h, d in defs.entries
                        if equivalent(sub, d, max_atoms=max_atoms)
                    ),
                    None,
                )
            if matches[sub] is not None:
                candidates.append(CoverElement(idx, path, matches[sub], sub))

    chosen: list[CoverElement] = []
    for c in candidates:
        if all(_disjoint(c, e) for e in chosen):
            chosen.append(c)
    if chosen and _covers(chosen, occurrences):
        return Cover(tuple(chosen))

    # exhaustive fallback over non-overlapping subsets, smallest first
    tried = 0
    for r in range(1, len(candidates) + 1):
        for subset in itertools.combinations(candidates, r):
            tried += 1
            if tried > budget:
                return None
            if all(_disjoint(x, y) for x, y in itertools.combinations(subset, 2)):
                if _covers(subset, occurrences):
                    return Cover(tuple(subset))
    return None


@dataclass(frozen=True)
class ExactnessResult:
    abstraction: AlphaAbstraction
    exact: bool
    cover: Cover | None = None


def abstract_with_exactness(
    source: TheoryLike,
    bridge: TheoryLike,
    abstract_vocab: Iterable[str],
    defs: DefinitionSet | None = None,
    *,
    max_atoms: int | None = None,
) -> ExactnessResult:
    """Tightest abstraction, its exactness, and a proper-cover certificate.

    With ``defs``, ``bridge`` may be None (it is then the conjunction of the
    definitions); otherwise it must be equivalent to that conjunction. The
    cover is searched only when every head belongs to the abstract vocabulary.
    """
    keep = frozenset(abstract_vocab)
    s = as_theory(source)
    if defs is not None:
        def_theory = defs.as_theory()
        if bridge is None:
            bridge = def_theory
        elif not equivalent(
            as_formula(bridge), def_theory.conjunction(), max_atoms=max_atoms
        ):
            raise DefinitionError(
                "bridge is not the conjunction of the given definitions"
            )
    b = as_theory(bridge)
    result = tightest(s, b, keep, max_atoms=max_atoms)
    exact = is_exact(result, b, max_atoms=max_atoms)

    cover = None
    if defs is not None and defs.heads <= keep:
        cover = find_proper_cover(
            s, defs, s.vocabulary() - keep, max_atoms=max_atoms
        )
        if cover is not None and not exact:
            raise AssertionError(
                "proper cover found but the tightest abstraction is not exact"
            )
    return ExactnessResult(result, exact, cover)


def compose(
    source_bounds: AlphaAbstraction | TheoryLike,
    stages: Sequence[tuple[TheoryLike, Iterable[str]]],
    *,
    max_atoms: int | None = None,
) -> AlphaAbstraction:
    """Layered abstraction: fold ``(bridge, vocab)`` stages left to right.

    Each stage maps ``<lower, upper>`` to
    ``<wsc(lower; bridge; vocab), snc(upper; bridge; vocab)>``.
    """
    if not isinstance(source_bounds, AlphaAbstraction):
        source_bounds = AlphaAbstraction.of_theory(source_bounds)
    current = source_bounds
    for bridge, vocab in stages:
        keep = frozenset(vocab)
        current = AlphaAbstraction(
            wsc(current.lower, bridge, keep, max_atoms=max_atoms),
            snc(current.upper, bridge, keep, max_atoms=max_atoms),
            keep,
        )
    return current


__all__ = [
    "AlphaAbstraction",
    "Cover",
    "CoverElement",
    "DefinitionError",
    "DefinitionSet",
    "ExactnessResult",
    "VerifyReport",
    "abstract_with_exactness",
    "compose",
    "find_proper_cover",
    "is_exact",
    "snc",
    "tightest",
    "verify",
    "wsc",
]
