"""Approximate abstraction of propositional theories through bridging theories."""

from bridgebound.abstraction import (
    AlphaAbstraction,
    Cover,
    CoverElement,
    DefinitionError,
    DefinitionSet,
    ExactnessResult,
    VerifyReport,
    abstract_with_exactness,
    compose,
    find_proper_cover,
    is_exact,
    snc,
    tightest,
    verify,
    wsc,
)
from bridgebound.formula import (
    FALSE,
    TRUE,
    And,
    Atom,
    Const,
    Equiv,
    Formula,
    Implies,
    Not,
    Or,
    Theory,
    as_formula,
    as_theory,
    atoms,
    conjoin,
    positioned_subformulas,
    render,
    substitute,
    vocabulary,
)
from bridgebound.parser import ParseError, parse
from bridgebound.qe import (
    Polarity,
    QuantifiedFormula,
    Quantifier,
    ackermann,
    polarity,
    shannon_exists,
    shannon_forall,
)
from bridgebound.semantics import (
    DEFAULT_MAX_ATOMS,
    FactBase,
    UnboundAtomError,
    VocabularyLimitError,
    countermodel,
    entails,
    equivalent,
    evaluate,
    query,
)
from bridgebound.simplify import simplify

__version__ = "0.1.0"
