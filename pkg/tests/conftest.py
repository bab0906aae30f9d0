import sys

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from rlm.relations import Relation
from rlm.universe import integer_universe

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def f12():
    return integer_universe(1, 12)


@pytest.fixture
def even(f12):
    return Relation.from_predicate(f12, lambda m, n: n == m and m % 2 == 0, "r")


@pytest.fixture
def odd(f12):
    return Relation.from_predicate(f12, lambda m, n: n == m and m % 2 == 1, "q")


@pytest.fixture
def div3(f12):
    return Relation.from_predicate(f12, lambda m, n: n == m and m % 3 == 0, "s")


@pytest.fixture
def t4(f12):
    return Relation.from_predicate(f12, lambda m, n: m * n == 4, "t4")


@st.composite
def universes(draw, lo=1, hi=8):
    return integer_universe(1, draw(st.integers(lo, hi)))


@st.composite
def relations_on(draw, u):
    n = u.size
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n))
    return Relation(u, tuple(rows))


@st.composite
def universe_and_relations(draw, count=2, hi=7):
    u = draw(universes(1, hi))
    return (u, *[draw(relations_on(u)) for _ in range(count)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
