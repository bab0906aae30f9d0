import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rlm.errors import ChoiceFromUndefinedSet, DuplicateLabel, EmptyUniverse, UniverseMismatch
from rlm.errors import UniverseTooLarge
from rlm.relations import Relation
from rlm.universe import (
    check_set_laws,
    choice_function,
    define_set,
    integer_universe,
    make_universe,
    set_algebra,
)


def test_make_universe_sizes():
    u = make_universe([str(i) for i in range(1, 13)])
    assert u.size == 12
    assert list(u) == [str(i) for i in range(1, 13)]


def test_empty_and_duplicate_universe_rejected():
    with pytest.raises(EmptyUniverse):
        make_universe([])
    with pytest.raises(DuplicateLabel):
        make_universe(["a", "a"])


def test_size_cap_reads_environment(monkeypatch):
    monkeypatch.setenv("RLM_MAX_UNIVERSE", "5")
    with pytest.raises(UniverseTooLarge):
        integer_universe(1, 6)
    assert integer_universe(1, 5).size == 5


def test_define_set_from_identifier(f12, even):
    assert define_set(f12, even).members == (2, 4, 6, 8, 10, 12)
    assert define_set(f12, Relation.identity(f12)).members == tuple(range(1, 13))


def test_undefined_identifier_is_flagged(f12):
    s = define_set(f12, Relation.from_pairs(f12, [(1, 2)]))
    assert s.undefined_identifier
    assert len(s) == 0


def test_define_set_universe_mismatch(f12):
    other = integer_universe(1, 3)
    with pytest.raises(UniverseMismatch):
        define_set(f12, Relation.identity(other))


def test_set_algebra_examples(f12, even, div3):
    e, t = define_set(f12, even), define_set(f12, div3)
    assert set_algebra(e, t, "intersection").members == (6, 12)
    nothing = f12.nothing()
    assert set_algebra(e, nothing, "union") == e
    test = set_algebra(e, f12.everything(), "subset_test")
    assert test and test.strict
    assert set_algebra(e, f12.everything(), "complement_of_a_in_b").members == (1, 3, 5, 7, 9, 11)
    with pytest.raises(UniverseMismatch):
        set_algebra(e, integer_universe(1, 2).everything(), "union")


def test_choice_function():
    u = integer_universe(1, 5)
    assert choice_function([u.pointset([2, 4]), u.pointset([3, 4])]) == {0: 2, 1: 3}
    assert choice_function([u.pointset([5])]) == {0: 5}
    with pytest.raises(ChoiceFromUndefinedSet):
        choice_function([u.pointset([1, 2]), u.nothing()])


@given(st.lists(st.integers(1, 255), min_size=1, max_size=5))
def test_choice_is_reproducible_and_a_member(masks):
    u = integer_universe(1, 8)
    family = [u.pointset(u.labels_of(m)) for m in masks]
    a = choice_function(family)
    assert a == choice_function(family)
    assert all(a[i] in family[i] for i in a)


def test_set_laws_random_and_exhaustive():
    rep = check_set_laws(integer_universe(1, 8), 1000, 3)
    assert rep.ok and min(rep.checked.values()) >= 1000
    small = check_set_laws(integer_universe(1, 3), 1, 0, exhaustive=True)
    assert small.ok


def _oracle(u, a, b):
    # python sets as the independent model
    sa, sb = set(u.labels_of(a)), set(u.labels_of(b))
    return sa | sb, sa & sb, sb - sa, sa <= sb


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2 ** n - 1),
                                                     st.integers(0, 2 ** n - 1))))
def test_set_algebra_matches_python_sets(args):
    n, a, b = args
    u = integer_universe(1, n)
    A, B = u.pointset(u.labels_of(a)), u.pointset(u.labels_of(b))
    union, inter, diff, sub = _oracle(u, a, b)
    assert set(set_algebra(A, B, "union")) == union
    assert set(set_algebra(A, B, "intersection")) == inter
    assert set(set_algebra(A, B, "complement_of_a_in_b")) == diff
    assert bool(set_algebra(A, B, "subset_test")) == sub


def test_degenerate_empty_sets_obey_identities():
    u = integer_universe(1, 4)
    e = u.nothing()
    for x, y in itertools.product([e], repeat=2):
        assert (x | y) == e and (x & y) == e and (x - y) == e
