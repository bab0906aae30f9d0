import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rlm.constructions import (
    Enumeration,
    Word,
    absorb_countable,
    arithmetic,
    cantor_membership,
    check_injection,
    dead_words,
    deinterleave,
    diagonal,
    finite_product,
    indicator_census,
    interleave,
    k_set,
    naturals,
    pairing,
    random_word,
    remove_countable,
    schroder_bernstein,
    schroder_bernstein_trace,
    unpairing,
    word_value,
    words_of,
)
from rlm.errors import NonTotal, NotInjective, OverlappingSets
from rlm.relations import Relation
from rlm.universe import integer_universe, make_universe


# -- bijections ------------------------------------------------------------


def test_identity_injections():
    u = integer_universe(1, 4)
    X = u.everything()
    idr = Relation.identity(u)
    tr = schroder_bernstein_trace(X, X, idr, idr)
    assert tr.bijection == idr
    assert len(tr.y0) == 0


def test_non_injective_rejected():
    u = make_universe([1, 2, 3, "a", "b", "c", "d"])
    X, Y = u.pointset([1, 2, 3]), u.pointset(["a", "b", "c", "d"])
    p = Relation.from_pairs(u, [(1, "a"), (2, "b"), (3, "c")])
    q = Relation.from_pairs(u, [("a", 1), ("b", 2), ("c", 3), ("d", 3)])
    with pytest.raises(NotInjective):
        schroder_bernstein(X, Y, p, q)
    with pytest.raises(NonTotal):
        check_injection(Relation.from_pairs(u, [(1, "a")]), X, Y)


@given(st.integers(0, 100_000))
def test_random_injection_pairs(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 50)
    total = rng.randint(n, 2 * n)
    u = integer_universe(0, total - 1)
    xs, ys = rng.sample(range(total), n), rng.sample(range(total), n)
    p = Relation.from_pairs(u, list(zip(xs, rng.sample(ys, n))))
    q = Relation.from_pairs(u, list(zip(ys, rng.sample(xs, n))))
    X, Y = u.pointset(xs), u.pointset(ys)
    tr = schroder_bernstein_trace(X, Y, p, q)
    h = dict(tr.bijection.pairs())
    assert set(h) == set(xs) and sorted(h.values()) == sorted(ys)
    # fixpoint identity checked from pairs: Y0 = (X \ q[Y]) | f[Y0], f = q o p
    qy = {b for a, b in q.pairs() if a in set(ys)}
    f = {x: dict(q.pairs())[dict(p.pairs())[x]] for x in xs}
    y0 = set(tr.y0)
    assert y0 == (set(xs) - qy) | {f[x] for x in y0}


# -- enumerations ----------------------------------------------------------


def test_pairing_listing():
    assert [unpairing(m) for m in range(1, 7)] == [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3)]
    with pytest.raises(ValueError):
        pairing(0, 1)
    with pytest.raises(ValueError):
        unpairing(0)


def test_pairing_matches_walk_oracle():
    walk = []
    d = 2
    while len(walk) < 5000:
        walk.extend((d - k, k) for k in range(1, d))
        d += 1
    for m, pr in enumerate(walk, start=1):
        assert pairing(*pr) == m and unpairing(m) == pr


def test_absorb_finite_extra():
    X = naturals()
    ext = Enumeration.of_list(["a", "b"])
    a = absorb_countable(X, arithmetic(0, 2), ext)
    assert a.forward("a") == 0 and a.forward("b") == 2 and a.forward(4) == 8 and a.forward(3) == 3
    for x in ["a", "b"] + list(range(200)):
        assert a.backward(a.forward(x)) == x
    with pytest.raises(OverlappingSets):
        absorb_countable(X, arithmetic(0, 2), Enumeration.of_list([5]))


def test_absorb_empty_is_identity():
    a = absorb_countable(naturals(), arithmetic(0, 2), Enumeration.of_list([]))
    assert all(a.forward(x) == x for x in range(100))


def test_remove_first_ten_evens():
    removed = Enumeration.of_list(list(range(0, 20, 2)))
    keep = Enumeration(lambda i: 2 * i + 1, lambda x: (x - 1) // 2 if isinstance(x, int) and x % 2 == 1 else None)
    r = remove_countable(naturals(), removed, keep)
    images = [r.forward(x) for x in range(1000)]
    assert len(set(images)) == 1000
    assert not any(y in range(0, 20, 2) for y in images)
    assert all(r.backward(r.forward(x)) == x for x in range(1000))


# -- words -----------------------------------------------------------------


def test_word_canonical_and_dead():
    w = Word.parse("2:11(01)")
    assert str(w) == "2:1(10)"
    half = Word.parse("2:1(0)")
    assert half.is_dead and word_value(half) == Fraction(1, 2)
    assert not Word.parse("2:0(1)").is_dead and word_value(Word.parse("2:0(1)")) == Fraction(1, 2)
    zero = Word.parse("2:(0)")
    assert not zero.is_dead and word_value(zero) == 0


def test_words_of_half():
    ws = words_of(Fraction(1, 2), 2)
    assert [str(w) for w in ws] == ["2:0(1)", "2:1(0)"]


def test_base_three_value():
    w = Word(3, (2, 0), (2,))
    assert word_value(w) == Fraction(2, 3) + Fraction(1, 27) * 3
    assert w in words_of(word_value(w), 3)


@given(st.integers(0, 10_000), st.integers(2, 10))
def test_word_value_matches_digit_sum(seed, base):
    rng = random.Random(seed)
    w = random_word(rng, base)
    # truncated digit sums approach the value from below within base^-k
    k = 40
    s = sum(Fraction(w.digit(i), base ** i) for i in range(1, k + 1))
    v = word_value(w)
    assert s <= v <= s + Fraction(1, base ** k)
    assert w in words_of(v, base)


def test_dead_words_listing():
    ds = list(dead_words(2, 2))
    assert all(w.is_dead for w in ds)


def test_interleave_example():
    w = interleave(Word.parse("2:1(0)"), Word.parse("2:(0)"))
    assert str(w) == "2:1(0)"
    assert word_value(w) == Fraction(1, 2)


@given(st.integers(0, 10_000), st.integers(2, 10))
def test_interleave_roundtrip(seed, base):
    rng = random.Random(seed)
    a, b = random_word(rng, base), random_word(rng, base)
    w = interleave(a, b)
    assert all(w.digit(2 * i - 1) == a.digit(i) and w.digit(2 * i) == b.digit(i) for i in range(1, 30))
    sp = deinterleave(w)
    assert (sp.first, sp.second) == (a, b)


def test_period_01_not_alive_splittable():
    sp = deinterleave(Word.parse("2:11(01)"))
    assert sp.status == "NotAliveSplittable"
    assert str(sp.first) == "2:1(0)" and sp.first.is_dead


def test_diagonals():
    rows = [Word.parse(t) for t in ("2:1(0)", "2:01(0)", "2:001(0)")]
    d = diagonal(rows, 2, "flip")
    assert d.differs_everywhere and d.digits == (0, 0, 0)
    single = diagonal([Word.parse("2:(0)")], 2, "flip")
    assert single.digits == (1,)
    table = [Word.parse(t) for t in ("3:(0)", "3:(2)", "3:(2)", "3:(2)")]
    d = diagonal(table, 3, "complement")
    assert d.hazard and d.digits == (2, 0, 0, 0)
    safe = diagonal(table, 3, "avoid_zero")
    assert not safe.hazard and safe.differs_everywhere


def test_k_set_and_cantor():
    assert k_set(Word.parse("2:1(0)"), 2, 3) == Fraction(2, 3)
    assert cantor_membership(Fraction(2, 3), 10)
    assert k_set(Word.parse("2:01(0)"), 2, 3) == Fraction(2, 9)
    assert cantor_membership(Fraction(2, 9), 10)
    assert not cantor_membership(Fraction(1, 2), 1)
    with pytest.raises(ValueError):
        k_set(Word.parse("3:2(0)"), 2, 3)
    with pytest.raises(ValueError):
        k_set(Word.parse("2:1(0)"), 3, 6)


def in_cantor_by_intervals(v, depth):
    intervals = [(Fraction(0), Fraction(1))]
    for _ in range(depth):
        nxt = []
        for lo, hi in intervals:
            t = (hi - lo) / 3
            nxt += [(lo, lo + t), (hi - t, hi)]
        intervals = nxt
    return any(lo <= v <= hi for lo, hi in intervals)


@given(st.integers(0, 10_000))
def test_k_two_thirds_lands_in_the_cantor_set(seed):
    w = random_word(random.Random(seed), 2, digits=(0, 1))
    v = k_set(w, 2, 3)
    assert cantor_membership(v, 8) and in_cantor_by_intervals(v, 8)


@given(st.fractions(0, 1, max_denominator=200))
def test_cantor_membership_matches_interval_list(v):
    assert cantor_membership(v, 6) == in_cantor_by_intervals(v, 6)


# -- counting --------------------------------------------------------------


def test_finite_product():
    u = integer_universe(0, 2)
    two = u.pointset([0, 1])
    p = finite_product([two, two])
    assert len(p) == 4
    assert p.project((0, 1), 2) == 1
    cube = finite_product([u.everything()] * 3)
    tuples = list(cube)
    assert len(tuples) == 27
    assert all(cube.at(i) == t and cube.index_of(t) == i for i, t in enumerate(tuples))
    with pytest.raises(ValueError):
        finite_product([])


@pytest.mark.parametrize("size", range(1, 11))
def test_census_refutes_every_family(size):
    rep = indicator_census(integer_universe(1, size).everything(), samples=500, seed=size)
    assert rep.refuted_all and rep.injection_ok
    assert rep.mode == ("exhaustive" if (2 ** size) ** size <= 100_000 else "sampled")
