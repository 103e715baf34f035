import hypothesis.strategies as st
import pytest
from hypothesis import settings

from bridgebound.formula import FALSE, TRUE, And, Atom, Equiv, Implies, Not, Or

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

NAMES = ("a", "b", "c", "d", "p", "q")

# one line per acceptance criterion, echoed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


def formulas(names=NAMES, max_leaves=12):
    leaves = st.one_of(
        st.sampled_from([Atom(n) for n in names]),
        st.sampled_from([TRUE, FALSE]),
    )

    def extend(children):
        return st.one_of(
            children.map(Not),
            *(st.builds(op, children, children) for op in (And, Or, Implies, Equiv)),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@pytest.fixture
def player():
    return {
        "source": ["mood -> (g1 | g2)", "(g1 | g2) -> (play & enjoy)"],
        "bridge": ["(g1 | g2) -> game"],
        "keep": frozenset({"mood", "game", "play", "enjoy"}),
    }


@pytest.fixture
def engine():
    return {
        "source": ["(bc | ef) -> ecs"],
        "bridge": ["sp <-> (bc | ef)"],
        "keep": frozenset({"sp", "ecs"}),
    }
