"""The full property suite behind ``rlm selftest``.

Every section is seeded from one integer and reports counts and verdicts
only, so two runs with the same seed print the same JSON byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction
from importlib import resources

from .. import logic as L
from ..constructions import (
    Word,
    cantor_membership,
    deinterleave,
    diagonal,
    indicator_census,
    interleave,
    k_set,
    pairing,
    random_word,
    schroder_bernstein_trace,
    unpairing,
)
from ..orders import OrderKind, build_order, compare, grid_orders, random_order, well_order_check, zigzag_order
from ..pluralities import check_group, is_filter, metric_balls, random_r112_plurality, transformation_group
from ..pluralities import verify_upper_edge_equivalence
from ..relations import Relation, factorize, random_equivalence
from ..universe import PointSet, check_set_laws, integer_universe, make_universe
from .executor import execute
from .parser import parse

CORPUS = "worked_examples.rl"


def corpus_source() -> str:
    return resources.files("rlm.frontend").joinpath("data", CORPUS).read_text(encoding="utf-8")


def run_corpus(seed=0):
    return execute(parse(corpus_source()), seed=seed)


def _sub_seed(seed, tag):
    # string seeding is stable across runs, unlike hash()
    return random.Random(f"{seed}:{tag}").getrandbits(32)


def section_corpus(seed):
    reports = run_corpus(seed)
    checked = [r for r in reports if r.checked]
    failed = [r.label or f"{r.command} {r.target}" for r in reports if not r.ok]
    return {"ok": not failed and len(checked) >= 20, "checks": len(checked), "failed": failed}


def section_logic(seed, trials=2000):
    out = {"universes": [], "failures": []}
    for size in (3, 5, 8, 12):
        rep = L.check_laws(integer_universe(1, size), trials, _sub_seed(seed, f"logic{size}"))
        out["universes"].append({"size": size, "ok": rep.ok, "exhaustive": size <= 5,
                                 "checked": dict(sorted(rep.checked.items()))})
        out["failures"].extend(rep.failures)
    refute = L.refute_classical_laws(integer_universe(1, 12), _sub_seed(seed, "classical"))
    laws = {}
    for item in refute.items:
        laws[item.law] = laws.get(item.law, False) or item.refuted
    out["classical_refuted"] = laws
    min_checked = min(n for u in out["universes"] for n in u["checked"].values())
    out["min_instances_per_law"] = min_checked
    out["ok"] = (not out["failures"] and refute.ok and min_checked >= trials
                 and len(laws) == len(L.CLASSICAL_LAWS))
    return out


def section_algebra(seed, trials=1000):
    from ..relations import check_relation_laws
    u = integer_universe(1, 10)
    sets = check_set_laws(u, trials, _sub_seed(seed, "sets"))
    small = check_set_laws(integer_universe(1, 3), 1, _sub_seed(seed, "sets3"), exhaustive=True)
    rels = check_relation_laws(u, trials, _sub_seed(seed, "relations"))
    # a constructed strict inclusion r[X & Y] < r[X] & r[Y]
    cu = make_universe(["a", "b", "c"])
    r = Relation.from_pairs(cu, [("a", "c"), ("b", "c")])
    X, Y = cu.pointset(["a"]), cu.pointset(["b"])
    meet = r.image_mask(X.mask & Y.mask)
    both = r.image_mask(X.mask) & r.image_mask(Y.mask)
    strict = meet != both and meet & ~both == 0
    return {
        "ok": sets.ok and small.ok and rels.ok and strict,
        "set_laws": dict(sorted(sets.checked.items())),
        "relation_laws": dict(sorted(rels.checked.items())),
        "failures": sets.failures + small.failures + rels.failures,
        "strict_inclusion_witnessed": strict,
        "random_strict_inclusions": rels.stats.get("strict_inclusions", 0),
    }


def section_equivalence(seed, count=500):
    rng = random.Random(_sub_seed(seed, "equiv"))
    bad = 0
    for _ in range(count):
        u = integer_universe(1, rng.randint(1, 12))
        part = factorize(random_equivalence(u, rng))
        union = 0
        disjoint = True
        for c in part.classes:
            disjoint &= not (union & c.mask)
            union |= c.mask
        if not disjoint or union != u.full_mask:
            bad += 1
    orders_bad = 0
    for _ in range(count):
        u = integer_universe(1, rng.randint(1, 9))
        o = random_order(u, rng, density=rng.choice((0.1, 0.2, 0.4)))
        try:
            rep = well_order_check(o)
        except AssertionError:
            orders_bad += 1
            continue
        orders_bad += not rep.minimal_unique
    return {"ok": bad == 0 and orders_bad == 0, "partitions": count, "partition_failures": bad,
            "orders": count, "minimum_failures": orders_bad}


def section_orders(seed):
    z = zigzag_order(8)
    s_u = make_universe(["x1", "x2", "x3", "x4"])
    sigma = Relation.from_images(s_u, {"x1": ["x1", "x3", "x4"], "x2": ["x2", "x3", "x4"],
                                       "x3": ["x3"], "x4": ["x4"]})
    so = build_order(s_u, sigma)
    grid_p = grid_orders(3, "product")
    grid_l = grid_orders(3, "lexicographic")
    wl = well_order_check(grid_l)
    out = {
        "zigzag_chain": list(z.chain()),
        "four_point": {"minimal": so.minimal, "maximals": list(so.maximals.members),
                       "roots": list(so.roots.members),
                       "x1_x2": compare(so, "x1", "x2").value},
        "product_kind": grid_p.kind.value,
        "lex_kind": grid_l.kind.value,
        "lex_subsets": wl.subsets_checked,
        "lex_unique_minima": wl.verdict and wl.minimal_unique,
    }
    out["ok"] = (out["zigzag_chain"] == [0, 2, 4, 6, 7, 5, 3, 1]
                 and so.minimal is None and len(so.maximals) == 2 and len(so.roots) == 2
                 and out["four_point"]["x1_x2"] == "Incomparable"
                 and grid_p.kind is OrderKind.NORMAL and grid_l.kind is OrderKind.LINEAR
                 and wl.subsets_checked == 511 and out["lex_unique_minima"])
    return out


def section_pluralities(seed, count=200):
    d = integer_universe(0, 9)
    explicit = is_filter(metric_balls(d, [1, 2, 4, 8, 16]))
    symbolic = is_filter(metric_balls(d, "rationals > 0"))
    t = make_universe([1, 2, 3])
    s3 = transformation_group(t, [[(1, 2)], [(1, 2, 3)]])
    group = check_group(s3)
    s3f = is_filter(s3)
    rng = random.Random(_sub_seed(seed, "r112"))
    edge_bad = 0
    for _ in range(count):
        u = integer_universe(1, rng.randint(2, 8))
        p = random_r112_plurality(u, rng, size=rng.randint(1, 4), density=rng.choice((0.1, 0.3, 0.5)))
        rep = verify_upper_edge_equivalence(p)
        edge_bad += not (rep.applicable and rep.equivalence)
    out = {
        "balls": {"code": explicit.code.code, "minimal": explicit.minimal, "filter": explicit.verdict},
        "open_balls": {"code": symbolic.code.code, "filter": symbolic.verdict},
        "s3": {"members": len(s3), "group": group.is_group, "filter": s3f.verdict},
        "upper_edge": {"families": count, "failures": edge_bad},
    }
    out["ok"] = (explicit.code.code == "R_344" and explicit.minimal and not explicit.verdict
                 and symbolic.verdict and group.is_group and s3f.verdict and edge_bad == 0)
    return out


def _random_injection_pair(rng, size):
    n = rng.randint(1, size)
    total = rng.randint(n, 2 * n)
    u = integer_universe(0, total - 1)
    xs = rng.sample(range(total), n)
    ys = rng.sample(range(total), n)
    p = Relation.from_pairs(u, list(zip(xs, rng.sample(ys, n))))
    q = Relation.from_pairs(u, list(zip(ys, rng.sample(xs, n))))
    return u.pointset(xs), u.pointset(ys), p, q


def section_constructions(seed, sb_pairs=1000):
    rng = random.Random(_sub_seed(seed, "constructions"))
    sb_bad = 0
    for _ in range(sb_pairs):
        X, Y, p, q = _random_injection_pair(rng, 200 if rng.random() < 0.05 else 30)
        try:
            tr = schroder_bernstein_trace(X, Y, p, q)
        except AssertionError:
            sb_bad += 1
            continue
        h = tr.bijection
        images = [h.image_mask(1 << i) for i in range(X.universe.size) if X.mask >> i & 1]
        onto = 0
        for m in images:
            onto |= m
        sb_bad += not (onto == Y.mask and len(set(images)) == len(images))

    pair_bad = 0
    for n in range(1, 101):
        for k in range(1, 101):
            m = pairing(n, k)
            pair_bad += unpairing(m) != (n, k)
    first_six = [list(unpairing(m)) for m in range(1, 7)]

    il_bad = 0
    for _ in range(500):
        base = rng.randint(2, 10)
        a, b = random_word(rng, base), random_word(rng, base)
        sp = deinterleave(interleave(a, b))
        il_bad += (sp.first, sp.second) != (a, b)
    flagged = deinterleave(Word.parse("2:11(01)")).status

    table = [Word.parse(t) for t in ("3:(0)", "3:(2)", "3:(2)", "3:(2)")]
    hazard = diagonal(table, 3, "complement").hazard

    k_bad = 0
    for _ in range(200):
        w = random_word(rng, 2, digits=(0, 1))
        v = k_set(w, 2, 3)
        # v must survive every removal and sit in the interval its digits pick
        k_bad += not cantor_membership(v, 10)
        k_bad += word_to_ternary_check(w, v)

    census_bad = 0
    for size in range(1, 11):
        rep = indicator_census(integer_universe(1, size).everything(), samples=2000,
                               seed=_sub_seed(seed, f"census{size}"))
        census_bad += not rep.refuted_all
    out = {
        "bijections": {"pairs": sb_pairs, "failures": sb_bad},
        "pairing": {"checked": 10000, "failures": pair_bad, "first_six": first_six},
        "interleave": {"pairs": 500, "failures": il_bad, "period_01": flagged},
        "diagonal_hazard": hazard,
        "k_two_thirds": {"words": 200, "failures": k_bad},
        "census": {"sizes": 10, "failures": census_bad},
    }
    out["ok"] = (sb_bad == 0 and pair_bad == 0 and first_six == [[1, 1], [2, 1], [1, 2], [3, 1], [2, 2], [1, 3]]
                 and il_bad == 0 and flagged == "NotAliveSplittable" and hazard and k_bad == 0
                 and census_bad == 0)
    return out


def word_to_ternary_check(w: Word, v: Fraction, depth: int = 10) -> int:
    """1 when ``v`` leaves the depth-``depth`` interval picked by the digits 2 x_i."""
    lo = sum(Fraction(2 * w.digit(i), 3 ** i) for i in range(1, depth + 1))
    return int(not lo <= v <= lo + Fraction(1, 3 ** depth))


SECTIONS = (
    ("corpus", section_corpus),
    ("logic", section_logic),
    ("algebra", section_algebra),
    ("equivalence", section_equivalence),
    ("orders", section_orders),
    ("pluralities", section_pluralities),
    ("constructions", section_constructions),
)


def selftest(seed: int = 0) -> dict:
    out = {"seed": seed}
    for name, fn in SECTIONS:
        out[name] = fn(seed)
    out["ok"] = all(out[name]["ok"] for name, _ in SECTIONS)
    return out
