"""Indexed families of relations and their reflexivity/symmetry/transitivity code.

A plurality is a list of relations on one universe.  Its upper edge is the
union of the members, its lower edge (the germ) the intersection.  The code
R_xyz records how strongly the family forces the upper edge to be
reflexive (x), symmetric (y) and transitive (z); a family of code at least
(1,1,2) whose lower edge is not a member is a filter.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import RLError, UniverseMismatch
from .relations import Relation, relation_properties
from .universe import PointSet, Universe, iter_bits


class NotPermutation(RLError, ValueError):
    pass


@dataclass(frozen=True)
class RadiusDomain:
    """Radii ``{a in field : a > lower}`` (open) or ``a >= lower`` (closed)."""

    field: str
    lower: Fraction
    closed: bool

    def __str__(self):
        return f"{self.field} {'>=' if self.closed else '>'} {self.lower}"


_DOMAIN_RE = re.compile(r"^\s*(rationals|reals)\s*(>=|>)\s*(-?\d+(?:/\d+)?)\s*$")


def parse_radius_domain(text: str) -> RadiusDomain:
    m = _DOMAIN_RE.match(text)
    if not m:
        raise ValueError(f"cannot read radius domain {text!r}; expected e.g. 'rationals > 0'")
    dom = RadiusDomain(m.group(1), Fraction(m.group(3)), m.group(2) == ">=")
    if dom.lower < 0 or (dom.closed and dom.lower == 0):
        raise ValueError(f"radius domain {dom} admits radii that are not positive")
    return dom


@dataclass(frozen=True)
class SymbolicFamily:
    kind: str
    description: str
    domain: RadiusDomain | None = None


@dataclass(frozen=True)
class Plurality:
    universe: Universe
    members: tuple
    labels: tuple
    symbolic: SymbolicFamily | None = None
    name: str | None = None

    def __post_init__(self):
        if not self.members:
            raise ValueError("a plurality needs at least one member")
        if len(self.labels) != len(self.members):
            raise ValueError("one label per member is required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("member labels must be distinct")
        for r in self.members:
            if r.universe is not self.universe and r.universe != self.universe:
                raise UniverseMismatch("plurality members live on different universes")

    @classmethod
    def of(cls, members, labels=None, symbolic=None, name=None):
        members = tuple(members)
        if not members:
            raise ValueError("a plurality needs at least one member")
        if labels is None:
            labels = tuple(r.name or f"r{i}" for i, r in enumerate(members))
            if len(set(labels)) != len(labels):
                labels = tuple(f"r{i}" for i in range(len(members)))
        return cls(members[0].universe, members, tuple(labels), symbolic, name)

    def __len__(self):
        return len(self.members)

    def with_member(self, r: Relation, label=None) -> "Plurality":
        label = label or f"r{len(self.members)}"
        while label in self.labels:
            label += "'"
        return Plurality(self.universe, self.members + (r,), self.labels + (label,), None, self.name)


# -- the three axes ---------------------------------------------------------

REFLEXIVITY = ("weakly reflexive", "normally reflexive", "strongly reflexive")
SYMMETRY = ("weakly symmetric", "normally symmetric", "uniformly symmetric", "strongly symmetric")
TRANSITIVITY = ("weakly transitive", "normally transitive",
                "locally uniformly transitive", "uniformly transitive")


def _contains(big: Relation, small: Relation) -> bool:
    return all(s & ~b == 0 for b, s in zip(big.rows, small.rows))


def _packed(r: Relation) -> int:
    """All rows in one integer, so containment is a single mask test."""
    n = r.universe.size
    out = 0
    for i, row in enumerate(r.rows):
        out |= row << (i * n)
    return out


def _pairs(u, r: Relation, limit=None):
    out = []
    for i, row in enumerate(r.rows):
        for j in iter_bits(row):
            out.append((u.labels[i], u.labels[j]))
            if limit and len(out) >= limit:
                return out
    return out


class _Axes:
    """Every level check of the taxonomy, each returning (passed, witness)."""

    def __init__(self, p: Plurality):
        self.p = p
        self.u = p.universe
        self.ms = p.members
        self.lab = p.labels
        self.upper = _union(p)
        self.inverses = [r.inverse() for r in self.ms]
        # comps[(a, b)] = r_a ∘ r_b
        self.comps = {(a, b): self.ms[a].compose(self.ms[b])
                      for a in range(len(self.ms)) for b in range(len(self.ms))}
        self.packed = [_packed(r) for r in self.ms]
        self.packed_comps = {k: _packed(c) for k, c in self.comps.items()}
        self._normal_t = None

    def reflexivity(self, level):
        u, ms = self.u, self.ms
        if level == 1:
            for i in range(u.size):
                if not any(r.rows[i] >> i & 1 for r in ms):
                    return False, {"point": u.labels[i], "reason": "no member has a loop here"}
            return True, None
        if level == 2:
            for r in ms:
                if all(r.rows[i] >> i & 1 for i in range(u.size)):
                    return True, None
            return False, {"reason": "no member is reflexive at every point"}
        for k, r in enumerate(ms):
            for i in range(u.size):
                if not r.rows[i] >> i & 1:
                    return False, {"member": self.lab[k], "point": u.labels[i]}
        return True, None

    def _normal_symmetric(self):
        for a, inv in enumerate(self.inverses):
            if not any(_contains(r, inv) for r in self.ms):
                return False, {"member": self.lab[a], "reason": "no member contains its inverse"}
        return True, None

    def symmetry(self, level):
        if level == 1:
            for a, inv in enumerate(self.inverses):
                if not _contains(self.upper, inv):
                    missing = Relation(self.u, tuple(v & ~w for v, w in zip(inv.rows, self.upper.rows)))
                    y, x = _pairs(self.u, missing, 1)[0]
                    return False, {"member": self.lab[a], "pair": [x, y],
                                   "reason": "no member relates the pair backwards"}
            return True, None
        ok, wit = self._normal_symmetric()
        if level == 2 or not ok:
            return ok, wit
        if level == 3:
            # every member must contain the inverse of some member
            for b, r in enumerate(self.ms):
                if not any(_contains(r, inv) for inv in self.inverses):
                    return False, {"member": self.lab[b], "reason": "contains no member's inverse"}
            return True, None
        for a, r in enumerate(self.ms):
            if r != self.inverses[a]:
                return False, {"member": self.lab[a], "reason": "not equal to its inverse"}
        return True, None

    def _normal_transitive(self):
        if self._normal_t is None:
            self._normal_t = True, None
            for (a, b), c in self.packed_comps.items():
                if not any(c & ~r == 0 for r in self.packed):
                    self._normal_t = False, {"members": [self.lab[a], self.lab[b]],
                                             "reason": "no member contains their composition"}
                    break
        return self._normal_t

    def transitivity(self, level):
        if level == 1:
            for (a, b), c in self.comps.items():
                if not _contains(self.upper, c):
                    missing = Relation(self.u, tuple(v & ~w for v, w in zip(c.rows, self.upper.rows)))
                    x, z = _pairs(self.u, missing, 1)[0]
                    return False, {"members": [self.lab[b], self.lab[a]], "pair": [x, z],
                                   "reason": "the chained pair is related by no member"}
            return True, None
        ok, wit = self._normal_transitive()
        if level == 2 or not ok:
            return ok, wit
        comps = list(self.comps.values())
        if level == 3:
            for g, r in enumerate(self.ms):
                for i in range(self.u.size):
                    if not any(c.rows[i] & ~r.rows[i] == 0 for c in comps):
                        return False, {"member": self.lab[g], "point": self.u.labels[i],
                                       "reason": "image contains no composed image"}
            return True, None
        packed_comps = list(self.packed_comps.values())
        for g, r in enumerate(self.packed):
            if not any(c & ~r == 0 for c in packed_comps):
                return False, {"member": self.lab[g], "reason": "contains no composition of members"}
        return True, None


def _union(p: Plurality) -> Relation:
    rows = [0] * p.universe.size
    for r in p.members:
        rows = [a | b for a, b in zip(rows, r.rows)]
    return Relation(p.universe, tuple(rows), "J")


def _intersection(p: Plurality) -> Relation:
    rows = [p.universe.full_mask] * p.universe.size
    for r in p.members:
        rows = [a & b for a, b in zip(rows, r.rows)]
    return Relation(p.universe, tuple(rows), "j")


@dataclass(frozen=True)
class TaxonomyCode:
    reflexivity: int
    symmetry: int
    transitivity: int
    witnesses: dict = field(default_factory=dict, compare=False)
    trace: tuple = field(default=(), compare=False)

    @property
    def levels(self) -> tuple:
        return (self.reflexivity, self.symmetry, self.transitivity)

    @property
    def code(self) -> str:
        return "R_{}{}{}".format(*self.levels)

    def dominates(self, other) -> bool:
        other = other.levels if isinstance(other, TaxonomyCode) else tuple(other)
        return all(a >= b for a, b in zip(self.levels, other))

    def to_dict(self):
        return {
            "code": self.code,
            "axes": {"reflexivity": self.reflexivity, "symmetry": self.symmetry,
                     "transitivity": self.transitivity},
            "witnesses": [{"level": k, **v} for k, v in self.witnesses.items()],
            "trace": list(self.trace),
        }


def level_checks(p: Plurality) -> dict:
    """Run every level of every axis independently: {axis: [(passed, witness), ...]}."""
    ax = _Axes(p)
    return {
        "reflexivity": [ax.reflexivity(k) for k in (1, 2, 3)],
        "symmetry": [ax.symmetry(k) for k in (1, 2, 3, 4)],
        "transitivity": [ax.transitivity(k) for k in (1, 2, 3, 4)],
    }


def _analytic_balls(p: Plurality) -> TaxonomyCode:
    return TaxonomyCode(3, 4, 4, {}, (
        f"metric balls |x - y| < a, a in {p.symbolic.domain}: analytic rule",
        "every ball contains its centre: strongly reflexive",
        "|x - y| = |y - x|: every ball is strongly symmetric",
        "r_a o r_b lies in r_g for g > a + b, and r_g contains r_(g/2) o r_(g/2): uniformly transitive",
    ))


def taxonomy(p: Plurality) -> TaxonomyCode:
    """The R_xyz code: for each axis the strongest level whose check passes."""
    if p.symbolic is not None and p.symbolic.kind == "metric_balls":
        return _analytic_balls(p)
    checks = level_checks(p)
    names = {"reflexivity": REFLEXIVITY, "symmetry": SYMMETRY, "transitivity": TRANSITIVITY}
    levels = {}
    witnesses = {}
    trace = ["containments between members read as non-strict",
             "uniform symmetry quantifies over all members"]
    for axis, results in checks.items():
        best = 0
        for k, (ok, wit) in enumerate(results, start=1):
            if ok:
                best = k
            else:
                witnesses[f"{axis} {k} ({names[axis][k - 1]})"] = wit
        levels[axis] = best
        trace.append(f"{axis}: level {best}" + (f" ({names[axis][best - 1]})" if best else " (fails the weakest axiom)"))
    return TaxonomyCode(levels["reflexivity"], levels["symmetry"], levels["transitivity"],
                        witnesses, tuple(trace))


@dataclass(frozen=True)
class EdgeReport:
    upper_edge: Relation
    lower_edge: Relation
    has_minimal_element: bool
    germ_images: dict
    trace: tuple = ()

    def to_dict(self):
        u = self.upper_edge.universe
        return {
            "upper_edge": [list(pr) for pr in self.upper_edge.pairs()],
            "lower_edge": [list(pr) for pr in self.lower_edge.pairs()],
            "has_minimal_element": self.has_minimal_element,
            "germ_images": {str(x): list(self.germ_images[x].members) for x in u.labels},
            "trace": list(self.trace),
        }


def edges(p: Plurality) -> EdgeReport:
    upper, lower = _union(p), _intersection(p)
    trace = []
    if p.symbolic is not None and p.symbolic.kind == "metric_balls":
        dom = p.symbolic.domain
        minimal = dom.closed
        trace.append(f"radius domain {dom} is {'closed' if dom.closed else 'open'} at its lower end: "
                     + ("the smallest ball is a member" if minimal else "no smallest ball exists"))
        trace.append(f"{len(p.members)} distinct balls materialized on the finite universe")
    else:
        minimal = any(r == lower for r in p.members)
        trace.append("lower edge is a member" if minimal else "lower edge is not a member")
    germ = {x: lower.image(x) for x in p.universe.labels}
    return EdgeReport(upper, lower, minimal, germ, tuple(trace))


@dataclass(frozen=True)
class FilterVerdict:
    verdict: bool
    code: TaxonomyCode
    minimal: bool
    symbolic: bool = False

    def __bool__(self):
        return self.verdict

    def to_dict(self):
        out = self.code.to_dict()
        out["filter"] = self.verdict
        out["has_minimal_element"] = self.minimal
        out["symbolic"] = self.symbolic
        return out


FILTER_FLOOR = (1, 1, 2)


def is_filter(p: Plurality) -> FilterVerdict:
    code = taxonomy(p)
    minimal = edges(p).has_minimal_element
    return FilterVerdict(code.dominates(FILTER_FLOOR) and not minimal, code, minimal,
                         p.symbolic is not None)


def filter_image(p: Plurality, x) -> PointSet:
    """The stratum of ``x``: its image under the upper edge."""
    return _union(p).image(x)


@dataclass
class UpperEdgeReport:
    applicable: bool
    equivalence: bool
    properties: dict
    broken: list

    @property
    def ok(self) -> bool:
        return not self.applicable or self.equivalence

    def to_dict(self):
        return {"applicable": self.applicable, "equivalence": self.equivalence,
                "ok": self.ok, "properties": self.properties, "broken": self.broken}


def verify_upper_edge_equivalence(p: Plurality) -> UpperEdgeReport:
    """Check that a weakly reflexive/symmetric/transitive family has an equivalence as upper edge."""
    code = taxonomy(p)
    props = relation_properties(_union(p))
    broken = []
    pairs = (("reflexivity", "reflexive"), ("symmetry", "symmetric"), ("transitivity", "transitive"))
    for (axis, prop), level in zip(pairs, code.levels):
        if level == 0:
            broken.append({"axis": axis, "property": prop,
                           "holds_anyway": getattr(props, prop),
                           "witness": props.witnesses.get(prop)})
    return UpperEdgeReport(code.dominates((1, 1, 1)), props.equivalence, props.to_dict(), broken)


# -- groups -----------------------------------------------------------------


def _as_permutation(r: Relation):
    n = r.universe.size
    images = []
    for row in r.rows:
        if row == 0 or row & (row - 1):
            return None
        images.append(row.bit_length() - 1)
    return tuple(images) if len(set(images)) == n else None


@dataclass
class GroupReport:
    is_group: bool
    all_bijections: bool
    identity: str | None
    closed_under_inverse: bool
    closed_under_composition: bool
    witnesses: list
    trace: tuple

    def to_dict(self):
        return {
            "is_group": self.is_group,
            "all_bijections": self.all_bijections,
            "identity": self.identity,
            "closed_under_inverse": self.closed_under_inverse,
            "closed_under_composition": self.closed_under_composition,
            "witnesses": self.witnesses,
            "trace": list(self.trace),
        }


def check_group(p: Plurality) -> GroupReport:
    witnesses = []
    perms = []
    for lab, r in zip(p.labels, p.members):
        perm = _as_permutation(r)
        if perm is None:
            witnesses.append({"member": lab, "reason": "not a total bijective mapping"})
        perms.append(perm)
    bij = all(x is not None for x in perms)
    ident = tuple(range(p.universe.size))
    identity = next((lab for lab, q in zip(p.labels, perms) if q == ident), None)
    if identity is None:
        witnesses.append({"reason": "no identity member"})
    index = {q: lab for lab, q in zip(p.labels, perms) if q is not None}
    inv_ok = comp_ok = bij
    if bij:
        for lab, q in zip(p.labels, perms):
            inv = [0] * len(q)
            for i, j in enumerate(q):
                inv[j] = i
            if tuple(inv) not in index:
                inv_ok = False
                witnesses.append({"member": lab, "reason": "inverse is not a member"})
        for (la, qa), (lb, qb) in itertools.product(zip(p.labels, perms), repeat=2):
            # (a ∘ b)(i) = a(b(i))
            comp = tuple(qa[qb[i]] for i in range(len(qa)))
            if comp not in index:
                comp_ok = False
                witnesses.append({"members": [la, lb], "reason": "composition is not a member"})
                break
    trace = ("associativity of composition of relations is inherited by the members",)
    return GroupReport(bij and identity is not None and inv_ok and comp_ok, bij, identity,
                       inv_ok, comp_ok, witnesses, trace)


# -- families ---------------------------------------------------------------


def _permutation_from_cycles(u: Universe, cycles) -> tuple:
    images = list(range(u.size))
    seen = set()
    for cycle in cycles:
        idx = [u.index(x) for x in cycle]
        for i in idx:
            if i in seen:
                raise NotPermutation(f"point {u.labels[i]!r} appears in two cycles")
            seen.add(i)
        for a, b in zip(idx, idx[1:] + idx[:1]):
            images[a] = b
    return tuple(images)


def _permutation_from_mapping(u: Universe, mapping) -> tuple:
    images = list(range(u.size))
    for x, y in mapping.items():
        images[u.index(x)] = u.index(y)
    if len(set(images)) != u.size:
        raise NotPermutation("generator is not a bijection of the universe")
    return tuple(images)


def cycle_notation(u: Universe, perm: tuple) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = []
        i = start
        while i not in seen:
            seen.add(i)
            cycle.append(str(u.labels[i]))
            i = perm[i]
        parts.append("(" + " ".join(cycle) + ")")
    return "".join(parts) or "id"


def transformation_group(u: Universe, generators) -> Plurality:
    """The group generated by permutations given as cycle lists or dicts."""
    gens = []
    for g in generators:
        if isinstance(g, dict):
            gens.append(_permutation_from_mapping(u, g))
        else:
            gens.append(_permutation_from_cycles(u, g))
    ident = tuple(range(u.size))
    found = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for q in frontier:
            for g in gens:
                comp = tuple(g[q[i]] for i in range(u.size))
                if comp not in seen:
                    seen.add(comp)
                    found.append(comp)
                    nxt.append(comp)
        frontier = nxt
    members = []
    for q in found:
        name = cycle_notation(u, q)
        members.append(Relation(u, tuple(1 << j for j in q), name))
    return Plurality.of(members, symbolic=None)


def _distance(a, b):
    return abs(Fraction(a) - Fraction(b))


def metric_balls(u: Universe, radii) -> Plurality:
    """Balls ``|x - y| < a`` on a numeric universe.

    ``radii`` is either an explicit list of positive numbers or a radius
    domain such as ``"rationals > 0"``.  In the symbolic case the members
    are the distinct balls the domain produces on ``u``.
    """
    if isinstance(radii, (str, RadiusDomain)):
        dom = parse_radius_domain(radii) if isinstance(radii, str) else radii
        dists = sorted({_distance(a, b) for a in u.labels for b in u.labels})
        # a ball is fixed by which distances fall below the radius
        chosen = []
        for k, d in enumerate(dists):
            nxt = dists[k + 1] if k + 1 < len(dists) else d + 1
            if nxt > dom.lower or (dom.closed and nxt >= dom.lower):
                chosen.append(nxt)
        members = [_ball(u, a) for a in chosen]
        uniq = []
        for r in members:
            if r not in uniq:
                uniq.append(r)
        fam = SymbolicFamily("metric_balls", f"|x - y| < a, a in {dom}", dom)
        return Plurality.of(uniq, symbolic=fam)
    radii = [Fraction(a) for a in radii]
    if not radii:
        raise ValueError("no radii given")
    for a in radii:
        if a <= 0:
            raise ValueError(f"radius {a} is not positive")
    return Plurality.of([_ball(u, a) for a in radii])


def _ball(u: Universe, a: Fraction) -> Relation:
    label = f"ball<{a}"
    return Relation.from_predicate(u, lambda x, y: _distance(x, y) < a, name=label)


def make_family(kind: str, u: Universe, params) -> Plurality:
    if kind == "metric_balls":
        return metric_balls(u, params)
    if kind == "transformation_group":
        return transformation_group(u, params)
    raise ValueError(f"unknown family kind {kind!r}")


def random_r112_plurality(u: Universe, rng: random.Random, size: int = 3, density: float = 0.3) -> Plurality:
    """A random family repaired until it is weakly reflexive, weakly symmetric and normally transitive."""
    n = u.size
    members = []
    for _ in range(size):
        rows = tuple(sum(1 << j for j in range(n) if rng.random() < density) for _ in range(n))
        members.append(Relation(u, rows))
    # weak reflexivity: give every point a loop in some member
    for i in range(n):
        if not any(r.rows[i] >> i & 1 for r in members):
            k = rng.randrange(len(members))
            rows = list(members[k].rows)
            rows[i] |= 1 << i
            members[k] = Relation(u, tuple(rows))
    # weak symmetry: add the inverse of a random member's union
    upper = Relation(u, tuple(0 for _ in range(n)))
    for r in members:
        upper = upper | r
    members.append(upper.inverse())
    # normal transitivity: absorb compositions until every one has a superset member
    packed = [_packed(r) for r in members]
    pending = list(itertools.product(range(len(members)), repeat=2))
    added = 0
    while pending:
        a, b = pending.pop()
        c = members[a].compose(members[b])
        pc = _packed(c)
        if any(pc & ~r == 0 for r in packed):
            continue
        if added == 64:
            members.append(Relation.complete(u))
            break
        added += 1
        k = len(members)
        members.append(c)
        packed.append(pc)
        pending.extend((k, j) for j in range(k + 1))
        pending.extend((j, k) for j in range(k))
    uniq = []
    for r in members:
        if r not in uniq:
            uniq.append(r)
    return Plurality.of([Relation(u, r.rows, f"r{i}") for i, r in enumerate(uniq)])
