"""Orders given by transitive-reflexive relations.

The relation ``s`` is read through its images: ``s[x]`` is everything at or
above ``x``.  So ``x < y`` exactly when ``s[y]`` is a proper part of
``s[x]``, the minimum owns the whole universe as image, and a maximal point
sees only itself.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .errors import NotTransitiveReflexive, NotWellOrdered, UnknownPoint
from .relations import Partition, Relation, factorize, relation_properties
from .universe import PointSet, Universe, iter_bits, make_universe


class OrderKind(Enum):
    PARTIAL = "Partial"
    NORMAL = "Normal"
    LINEAR = "Linear"


class Comparison(Enum):
    LESS = "Less"
    GREATER = "Greater"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


def _sub(a: int, b: int) -> bool:
    return a & ~b == 0


def is_normal(rows) -> bool:
    """Every two points share an upper bound: some z with s[z] inside both images."""
    for a, b in itertools.combinations_with_replacement(rows, 2):
        meet = a & b
        if not any(_sub(z, meet) for z in rows):
            return False
    return True


def is_linear(rows) -> bool:
    return all(_sub(a, b) or _sub(b, a) for a, b in itertools.combinations(rows, 2))


@dataclass(frozen=True)
class OrderStructure:
    universe: Universe
    relation: Relation
    kind: OrderKind
    minimal: object
    maximals: PointSet
    roots: PointSet
    partition: Partition | None = None
    source: Universe | None = None

    def image_mask(self, x) -> int:
        return self.relation.rows[self.universe.index(self.point(x))]

    def point(self, x):
        """Map an original label onto its quotient class when the order was factorized."""
        if x in self.universe:
            return x
        if self.partition is not None and x in self.partition.class_of:
            return self.universe.labels[self.partition.class_of[x]]
        raise UnknownPoint(f"{x!r} is not a point of this order")

    def less(self, x, y) -> bool:
        sx, sy = self.image_mask(x), self.image_mask(y)
        return sx != sy and _sub(sy, sx)

    def chain(self) -> tuple | None:
        """The points from least to greatest, when the order is linear."""
        if self.kind is not OrderKind.LINEAR:
            return None
        rows = self.relation.rows
        order = sorted(range(self.universe.size), key=lambda i: -bin(rows[i]).count("1"))
        return tuple(self.universe.labels[i] for i in order)

    def to_dict(self):
        out = {
            "kind": self.kind.value,
            "minimal": _plain(self.minimal),
            "maximals": [_plain(x) for x in self.maximals.members],
            "roots": [_plain(x) for x in self.roots.members],
        }
        chain = self.chain()
        if chain is not None:
            out["chain"] = [_plain(x) for x in chain]
        if self.partition is not None:
            out["quotient"] = [[_plain(x) for x in c.members] for c in self.partition.classes]
        return out


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    return x


def build_order(u: Universe, s: Relation) -> OrderStructure:
    """Classify a transitive-reflexive relation, factorizing internal equivalences first."""
    props = relation_properties(s)
    for key in ("reflexive", "transitive"):
        if not getattr(props, key):
            raise NotTransitiveReflexive(f"relation is not {key}", witness=props.witnesses[key])
    partition = None
    source = None
    sym = s.intersect(s.inverse())
    if sym != Relation.identity(u):
        partition = factorize(sym)
        source = u
        qu = make_universe([c.members for c in partition.classes])
        rows = []
        for c in partition.classes:
            rep = next(iter_bits(c.mask))
            img = s.rows[rep]
            mask = 0
            for k, d in enumerate(partition.classes):
                if img & d.mask:
                    mask |= 1 << k
            rows.append(mask)
        s = Relation(qu, tuple(rows), s.name)
        u = qu
    rows = s.rows
    full = u.full_mask
    if is_linear(rows):
        kind = OrderKind.LINEAR
    elif is_normal(rows):
        kind = OrderKind.NORMAL
    else:
        kind = OrderKind.PARTIAL
    minimal = next((u.labels[i] for i, r in enumerate(rows) if r == full), None)
    maximals = 0
    roots = 0
    for i, r in enumerate(rows):
        if r == 1 << i:
            maximals |= 1 << i
        if r != full and not any(r != t and _sub(r, t) for t in rows):
            roots |= 1 << i
    return OrderStructure(u, s, kind, minimal, PointSet(u, maximals), PointSet(u, roots),
                          partition, source)


def compare(o: OrderStructure, x, y) -> Comparison:
    x, y = o.point(x), o.point(y)
    if x == y:
        return Comparison.EQUAL
    if o.less(x, y):
        return Comparison.LESS
    if o.less(y, x):
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


def zigzag_order(m: int) -> OrderStructure:
    """The order on 0..m-1 with s[n] = {k : (-1)^n k >= (-1)^k n}."""
    if m < 2:
        raise ValueError("zigzag order needs m >= 2")
    u = make_universe(range(m))
    s = Relation.from_predicate(u, lambda n, k: (-1) ** n * k >= (-1) ** k * n, name="zigzag")
    return build_order(u, s)


def grid_orders(m: int, kind: str) -> OrderStructure:
    """Product or lexicographic order on the m-by-m integer grid."""
    if m < 2:
        raise ValueError("grid orders need m >= 2")
    u = make_universe([(i, j) for i in range(m) for j in range(m)])
    if kind == "product":
        s = Relation.from_predicate(u, lambda x, y: y[0] >= x[0] and y[1] >= x[1], name="product")
    elif kind in ("lexicographic", "lex"):
        s1 = Relation.from_predicate(u, lambda x, y: y[0] > x[0])
        s2 = Relation.from_predicate(u, lambda x, y: y[0] == x[0] and y[1] >= x[1])
        s = s1.union(s2).named("lexicographic")
    else:
        raise ValueError(f"unknown grid order {kind!r}")
    return build_order(u, s)



def random_order(u: Universe, rng: random.Random, density: float = 0.2) -> OrderStructure:
    """Reflexive-transitive closure of a random relation, then classified."""
    n = u.size
    rows = [(1 << i) | sum(1 << j for j in range(n) if rng.random() < density) for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = rows[i]
            for j in iter_bits(rows[i]):
                acc |= rows[j]
            if acc != rows[i]:
                rows[i] = acc
                changed = True
    return build_order(u, Relation(u, tuple(rows), "random order"))

@dataclass
class WellOrderReport:
    verdict: bool
    mode: str
    subsets_checked: int
    witness: tuple | None
    linear: bool
    agrees_with_linearity: bool
    minimal_unique: bool

    def to_dict(self):
        return {
            "well_ordered": self.verdict,
            "mode": self.mode,
            "subsets_checked": self.subsets_checked,
            "witness": None if self.witness is None else [_plain(x) for x in self.witness],
            "linear": self.linear,
            "agrees_with_linearity": self.agrees_with_linearity,
            "minimal_unique": self.minimal_unique,
        }


EXHAUSTIVE_LIMIT = 20


def well_order_check(o: OrderStructure, mode: str = "exhaustive", samples: int = 2000,
                     seed: int = 0) -> WellOrderReport:
    """Does every nonempty subset Y own a point y with s[y] covering Y?

    Exhaustive mode visits every subset, smallest first.  On a finite set
    the answer must coincide with linearity; a disagreement raises.
    """
    n = o.universe.size
    rows = o.relation.rows
    if mode == "exhaustive":
        if n > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive mode is limited to {EXHAUSTIVE_LIMIT} points")
        subsets = (sum(1 << i for i in combo)
                   for k in range(1, n + 1) for combo in itertools.combinations(range(n), k))
    elif mode == "sampled":
        rng = random.Random(seed)
        subsets = (rng.getrandbits(n) or 1 for _ in range(samples))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    checked = 0
    witness = None
    unique = True
    for mask in subsets:
        checked += 1
        owners = [i for i in iter_bits(mask) if _sub(mask, rows[i])]
        if len(owners) > 1:
            unique = False
        if not owners and witness is None:
            witness = o.universe.labels_of(mask)
            if mode == "exhaustive":
                break
    verdict = witness is None
    linear = o.kind is OrderKind.LINEAR
    agrees = verdict == linear if mode == "exhaustive" else (verdict or not linear)
    if not agrees:
        raise AssertionError("well-ordering disagrees with linearity on a finite set")
    if not unique:
        raise AssertionError("a subset owns two minimal points")
    return WellOrderReport(verdict, mode, checked, witness, linear, agrees, unique)


@dataclass
class InductionReport:
    inductive: bool
    holds_everywhere: bool
    first_failure: object
    false_points: tuple

    def to_dict(self):
        return {
            "inductive": self.inductive,
            "holds_everywhere": self.holds_everywhere,
            "first_failure": _plain(self.first_failure),
            "false_points": [_plain(x) for x in self.false_points],
        }


def induction_check(o: OrderStructure, predicate: Callable) -> InductionReport:
    """Walk a well-ordered set upward and test the induction step at every point."""
    mode = "exhaustive" if o.universe.size <= EXHAUSTIVE_LIMIT else "sampled"
    if not well_order_check(o, mode).verdict:
        raise NotWellOrdered("induction needs a well-ordered set")
    chain = o.chain()
    values = {x: bool(predicate(x)) for x in chain}
    first = None
    for k, y in enumerate(chain):
        if all(values[x] for x in chain[:k]) and not values[y]:
            first = y
            break
    false_points = tuple(x for x in chain if not values[x])
    inductive = first is None
    holds = not false_points
    if inductive and not holds:
        raise AssertionError("an inductive predicate failed somewhere")
    return InductionReport(inductive, holds, first, false_points)
