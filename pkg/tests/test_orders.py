import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rlm.errors import NotTransitiveReflexive, NotWellOrdered
from rlm.orders import (
    Comparison,
    OrderKind,
    build_order,
    compare,
    grid_orders,
    induction_check,
    random_order,
    well_order_check,
    zigzag_order,
)
from rlm.relations import Relation
from rlm.universe import integer_universe, make_universe


@pytest.fixture
def four_point():
    u = make_universe(["x1", "x2", "x3", "x4"])
    s = Relation.from_images(u, {"x1": ["x1", "x3", "x4"], "x2": ["x2", "x3", "x4"],
                                 "x3": ["x3"], "x4": ["x4"]})
    return build_order(u, s)


def test_zigzag_chain():
    o = zigzag_order(8)
    assert o.kind is OrderKind.LINEAR
    assert list(o.chain()) == [0, 2, 4, 6, 7, 5, 3, 1]
    assert compare(o, 4, 5) is Comparison.LESS
    assert compare(o, 3, 3) is Comparison.EQUAL
    assert list(zigzag_order(2).chain()) == [0, 1]


def zigzag_key(n):
    # evens ascending, then odds descending
    return (0, n) if n % 2 == 0 else (1, -n)


@given(st.integers(2, 30))
def test_zigzag_matches_sort_oracle(m):
    assert list(zigzag_order(m).chain()) == sorted(range(m), key=zigzag_key)


def test_four_point_order(four_point):
    o = four_point
    assert o.kind is OrderKind.PARTIAL
    assert o.minimal is None
    assert set(o.maximals) == {"x3", "x4"}
    assert set(o.roots) == {"x1", "x2"}
    assert compare(o, "x1", "x2") is Comparison.INCOMPARABLE
    assert compare(o, "x3", "x4") is Comparison.INCOMPARABLE
    assert compare(o, "x1", "x3") is Comparison.LESS
    rep = well_order_check(o)
    assert not rep.verdict and set(rep.witness) == {"x1", "x2"}


def test_identity_order():
    u = integer_universe(1, 3)
    o = build_order(u, Relation.identity(u))
    assert o.kind is OrderKind.PARTIAL and o.minimal is None
    assert set(o.maximals) == set(o.roots) == {1, 2, 3}


def test_grids():
    p = grid_orders(3, "product")
    assert p.kind is OrderKind.NORMAL
    assert p.minimal == (0, 0) and set(p.maximals) == {(2, 2)}
    assert compare(p, (0, 1), (1, 0)) is Comparison.INCOMPARABLE
    lex = grid_orders(3, "lexicographic")
    assert lex.kind is OrderKind.LINEAR
    rep = well_order_check(lex)
    assert rep.verdict and rep.subsets_checked == 511


def test_not_transitive_reflexive():
    u = integer_universe(1, 3)
    with pytest.raises(NotTransitiveReflexive):
        build_order(u, Relation.from_pairs(u, [(1, 2)]))


def test_symmetric_pairs_are_quotiented():
    u = integer_universe(1, 3)
    s = Relation.from_pairs(u, [(1, 1), (2, 2), (3, 3), (1, 2), (2, 1), (1, 3), (2, 3)])
    o = build_order(u, s)
    assert o.partition is not None
    assert compare(o, 1, 2) is Comparison.EQUAL
    assert compare(o, 1, 3) is Comparison.LESS


def test_induction():
    z = zigzag_order(8)
    assert induction_check(z, lambda x: True).holds_everywhere
    rep = induction_check(z, lambda x: x % 2 == 0)
    assert not rep.inductive and rep.first_failure == 7
    lex = grid_orders(3, "lex")
    assert induction_check(lex, lambda p: p[0] + p[1] < 100).holds_everywhere
    with pytest.raises(NotWellOrdered):
        induction_check(grid_orders(3, "product"), lambda p: True)


def brute_well_ordered(o):
    rows = o.relation.rows
    n = o.universe.size
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            mask = sum(1 << i for i in combo)
            if not any(mask & ~rows[i] == 0 for i in combo):
                return False
    return True


@given(st.integers(0, 100_000))
def test_random_orders_minimum_unique_and_linear_iff_well_ordered(seed):
    rng = random.Random(seed)
    o = random_order(integer_universe(1, rng.randint(1, 7)), rng, density=rng.choice((0.1, 0.3)))
    rep = well_order_check(o)
    assert rep.minimal_unique
    assert rep.verdict == brute_well_ordered(o) == (o.kind is OrderKind.LINEAR)


def test_sampled_mode():
    rep = well_order_check(grid_orders(4, "lex"), mode="sampled", samples=300, seed=2)
    assert rep.verdict and rep.subsets_checked == 300
