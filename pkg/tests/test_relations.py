import pytest
from hypothesis import given

from rlm.errors import NotEquivalence, OutsideCodomain
from rlm.relations import (
    Relation,
    check_relation_laws,
    classify_mapping,
    factorize,
    relation_properties,
)
from rlm.universe import integer_universe, make_universe

from conftest import universe_and_relations


def pairs_of(r):
    return set(r.pairs())


@given(universe_and_relations(2))
def test_compose_matches_pair_oracle(args):
    u, r, s = args
    # r.compose(s) is "r after s": x s y, y r z
    expected = {(x, z) for (x, y) in pairs_of(s) for (y2, z) in pairs_of(r) if y == y2}
    assert pairs_of(r.compose(s)) == expected


@given(universe_and_relations(2))
def test_inverse_union_intersect_match_pairs(args):
    u, r, s = args
    assert pairs_of(r.inverse()) == {(y, x) for x, y in pairs_of(r)}
    assert pairs_of(r.union(s)) == pairs_of(r) | pairs_of(s)
    assert pairs_of(r.intersect(s)) == pairs_of(r) & pairs_of(s)
    assert r.issubset(r.union(s))


@given(universe_and_relations(3, hi=6))
def test_algebra_identities(args):
    u, r, s, t = args
    assert r.compose(s.compose(t)) == r.compose(s).compose(t)
    assert r.compose(s).inverse() == s.inverse().compose(r.inverse())
    assert r.inverse().inverse() == r


def test_relation_laws_suite():
    rep = check_relation_laws(integer_universe(1, 6), 1000, 11)
    assert rep.ok
    assert min(rep.checked.values()) == 1000


def test_strict_image_inclusion_witness():
    u = integer_universe(1, 3)
    r = Relation.from_pairs(u, [(1, 3), (2, 3)])
    x, y = u.mask_of([1]), u.mask_of([2])
    assert r.image_mask(x & y) == 0
    assert r.image_mask(x) & r.image_mask(y) == u.mask_of([3])


def test_preimage_laws_on_a_bijection():
    u = integer_universe(1, 5)
    f = Relation.from_pairs(u, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])
    p, q = u.mask_of([1, 2, 3]), u.mask_of([3, 4])
    assert f.preimage_mask(p & ~q) == f.preimage_mask(p) & ~f.preimage_mask(q)
    assert f.preimage_mask(p & q) == f.preimage_mask(p) & f.preimage_mask(q)


def test_classify_mapping_examples():
    u = integer_universe(1, 5)
    rep = classify_mapping(Relation.identity(u), u.everything())
    assert rep.is_bijective
    v = make_universe([1, 2, "a", "b"])
    r = Relation.from_pairs(v, [(1, "a"), (2, "a")])
    rep = classify_mapping(r, v.pointset(["a", "b"]))
    assert rep.is_algebraic and not rep.is_injective and not rep.is_surjective
    multi = Relation.from_pairs(v, [(1, "a"), (1, "b")])
    assert not classify_mapping(multi, v.pointset(["a", "b"])).is_algebraic
    with pytest.raises(OutsideCodomain):
        classify_mapping(r, v.pointset(["b"]))


def test_relation_properties_examples():
    u = integer_universe(1, 8)
    assert relation_properties(Relation.identity(u)).equivalence
    parity = Relation.from_predicate(u, lambda x, y: (x - y) % 2 == 0)
    assert relation_properties(parity).equivalence
    lt = relation_properties(Relation.from_predicate(u, lambda x, y: x < y))
    assert (lt.reflexive, lt.symmetric, lt.transitive) == (False, False, True)
    assert "reflexive" in lt.witnesses


def test_factorize_examples():
    u = integer_universe(1, 8)
    parity = Relation.from_predicate(u, lambda x, y: (x - y) % 2 == 0)
    classes = {c.members for c in factorize(parity).classes}
    assert classes == {(1, 3, 5, 7), (2, 4, 6, 8)}
    assert all(len(c) == 1 for c in factorize(Relation.identity(u)).classes)
    with pytest.raises(NotEquivalence):
        factorize(Relation.from_predicate(u, lambda x, y: x < y))


@given(universe_and_relations(1))
def test_properties_match_definitions(args):
    u, r = args
    p = pairs_of(r)
    pts = list(u)
    props = relation_properties(r)
    assert props.reflexive == all((x, x) in p for x in pts)
    assert props.symmetric == all((y, x) in p for x, y in p)
    assert props.transitive == all((x, z) in p for x, y in p for y2, z in p if y == y2)
