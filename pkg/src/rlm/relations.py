"""Binary relations on a finite universe.

A relation is a dense bit matrix: ``rows[i]`` is the image of point ``i`` as
a bitmask.  Composition follows the image formula, so ``r.compose(s)`` is
"r after s": ``(r∘s)[x] = ∪ { r[y] : y ∈ s[x] }``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .errors import NotEquivalence, OutsideCodomain, PartialRelation
from .report import LawReport
from .universe import PointSet, Universe, iter_bits, popcount, same_universe


@dataclass(frozen=True, eq=False)
class Relation:
    universe: Universe
    rows: tuple
    name: str | None = field(default=None)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_pairs(cls, u: Universe, pairs: Iterable, name=None) -> "Relation":
        rows = [0] * u.size
        for x, y in pairs:
            rows[u.index(x)] |= 1 << u.index(y)
        return cls(u, tuple(rows), name)

    @classmethod
    def from_images(cls, u: Universe, images: Mapping, name=None) -> "Relation":
        rows = [0] * u.size
        for x, ys in images.items():
            rows[u.index(x)] = u.mask_of(ys)
        return cls(u, tuple(rows), name)

    @classmethod
    def from_predicate(cls, u: Universe, pred: Callable, name=None) -> "Relation":
        """Materialize ``{(x, y) : pred(x, y)}`` by scanning every pair."""
        labels = u.labels
        rows = []
        for x in labels:
            row = 0
            for j, y in enumerate(labels):
                if pred(x, y):
                    row |= 1 << j
            rows.append(row)
        return cls(u, tuple(rows), name)

    @classmethod
    def identity(cls, u: Universe, name="id") -> "Relation":
        return cls(u, tuple(1 << i for i in range(u.size)), name)

    @classmethod
    def empty(cls, u: Universe, name=None) -> "Relation":
        return cls(u, (0,) * u.size, name)

    @classmethod
    def complete(cls, u: Universe, name=None) -> "Relation":
        return cls(u, (u.full_mask,) * u.size, name)

    # -- equality ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.rows == other.rows and (
            self.universe is other.universe or self.universe == other.universe)

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        label = self.name or "Relation"
        return f"{label}({sorted(self.pairs(), key=repr)!r})"

    def named(self, name) -> "Relation":
        return Relation(self.universe, self.rows, name)

    # -- images and domains -----------------------------------------------

    def pairs(self) -> set:
        labels = self.universe.labels
        return {(labels[i], labels[j]) for i, row in enumerate(self.rows) for j in iter_bits(row)}

    def __len__(self):
        return sum(popcount(row) for row in self.rows)

    def __contains__(self, pair) -> bool:
        x, y = pair
        u = self.universe
        if x not in u or y not in u:
            return False
        return bool(self.rows[u.index(x)] >> u.index(y) & 1)

    def image(self, x) -> PointSet:
        return PointSet(self.universe, self.rows[self.universe.index(x)])

    def image_mask(self, mask: int) -> int:
        out = 0
        rows = self.rows
        for i in iter_bits(mask):
            out |= rows[i]
        return out

    def image_of(self, xs: PointSet) -> PointSet:
        """``r[X]``, the union of the images of the points of ``xs``."""
        same_universe(self.universe, xs.universe)
        return PointSet(self.universe, self.image_mask(xs.mask))

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for i, row in enumerate(self.rows):
            if row & mask:
                out |= 1 << i
        return out

    def preimage(self, ps: PointSet) -> PointSet:
        same_universe(self.universe, ps.universe)
        return PointSet(self.universe, self.preimage_mask(ps.mask))

    @property
    def domain_mask(self) -> int:
        out = 0
        for i, row in enumerate(self.rows):
            if row:
                out |= 1 << i
        return out

    @property
    def truth_domain(self) -> PointSet:
        """Points whose image is nonempty; the rest of the universe is the lie domain."""
        return PointSet(self.universe, self.domain_mask)

    @property
    def lie_domain(self) -> PointSet:
        return self.truth_domain.complement()

    @property
    def undefined(self) -> bool:
        return self.domain_mask == 0

    # -- algebra ----------------------------------------------------------

    def inverse(self) -> "Relation":
        n = self.universe.size
        rows = [0] * n
        for i, row in enumerate(self.rows):
            bit = 1 << i
            for j in iter_bits(row):
                rows[j] |= bit
        return Relation(self.universe, tuple(rows))

    def compose(self, other: "Relation") -> "Relation":
        """``self ∘ other``: apply ``other`` first, then ``self``."""
        same_universe(self.universe, other.universe)
        mine = self.rows
        rows = []
        for row in other.rows:
            out = 0
            for j in iter_bits(row):
                out |= mine[j]
            rows.append(out)
        return Relation(self.universe, tuple(rows))

    def union(self, other: "Relation") -> "Relation":
        same_universe(self.universe, other.universe)
        return Relation(self.universe, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def intersect(self, other: "Relation") -> "Relation":
        same_universe(self.universe, other.universe)
        return Relation(self.universe, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def issubset(self, other: "Relation") -> bool:
        same_universe(self.universe, other.universe)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def restrict(self, xs: PointSet) -> "Relation":
        """Keep only the pairs whose first point lies in ``xs`` (an exposition)."""
        same_universe(self.universe, xs.universe)
        return Relation(self.universe, tuple(
            row if xs.mask >> i & 1 else 0 for i, row in enumerate(self.rows)))

    __invert__ = inverse
    __matmul__ = compose
    __or__ = union
    __and__ = intersect
    __le__ = issubset


def relation_algebra(r: Relation, s: Relation, op: str) -> Relation:
    if op == "inverse":
        return r.inverse()
    if op == "compose":
        return r.compose(s)
    if op == "union":
        return r.union(s)
    if op == "intersect":
        return r.intersect(s)
    raise ValueError(f"unknown relation operation {op!r}")


@dataclass(frozen=True)
class MappingReport:
    is_algebraic: bool
    is_injective: bool
    is_surjective: bool
    is_bijective: bool
    witnesses: dict

    def to_dict(self):
        return {
            "algebraic": self.is_algebraic,
            "injective": self.is_injective,
            "surjective": self.is_surjective,
            "bijective": self.is_bijective,
            "witnesses": self.witnesses,
        }


def classify_mapping(r: Relation, codomain: PointSet, domain: PointSet | None = None) -> MappingReport:
    """Decide which mapping properties ``r: domain -> codomain`` has.

    Injectivity is ``f⁻¹∘f = id`` on the domain and surjectivity is
    ``f∘f⁻¹ = id`` on the codomain, evaluated pointwise.  When ``domain`` is
    omitted the truth domain of ``r`` is used.
    """
    u = r.universe
    same_universe(u, codomain.universe)
    dom = r.domain_mask
    if domain is not None:
        same_universe(u, domain.universe)
        if domain.mask != dom:
            missing = u.labels_of(domain.mask & ~dom)
            extra = u.labels_of(dom & ~domain.mask)
            raise PartialRelation(
                f"truth domain differs from declared domain (undefined at {list(missing)}, "
                f"defined outside at {list(extra)})")
    stray = [(u.labels[i], u.labels_of(r.rows[i] & ~codomain.mask))
             for i in iter_bits(dom) if r.rows[i] & ~codomain.mask]
    if stray:
        raise OutsideCodomain(f"images leave the codomain: {stray}")

    inv = r.inverse()
    witnesses = {}
    multi = [(u.labels[i], u.labels_of(r.rows[i])) for i in iter_bits(dom) if popcount(r.rows[i]) != 1]
    if multi:
        witnesses["algebraic"] = multi

    merged = []
    for i in iter_bits(dom):
        back = inv.image_mask(r.rows[i])
        if back != 1 << i:
            other = back & ~(1 << i)
            merged.append((u.labels[i], u.labels[other.bit_length() - 1]))
    if merged:
        witnesses["injective"] = merged

    missed = []
    for j in iter_bits(codomain.mask):
        if r.image_mask(inv.rows[j]) != 1 << j:
            missed.append(u.labels[j])
    if missed:
        witnesses["surjective"] = missed

    injective = "injective" not in witnesses
    surjective = "surjective" not in witnesses
    if not (injective and surjective):
        witnesses["bijective"] = {k: witnesses[k] for k in ("injective", "surjective") if k in witnesses}
    return MappingReport(
        is_algebraic=not multi,
        is_injective=injective,
        is_surjective=surjective,
        is_bijective=injective and surjective,
        witnesses=witnesses,
    )


@dataclass(frozen=True)
class RelationProperties:
    reflexive: bool
    symmetric: bool
    transitive: bool
    witnesses: dict

    @property
    def equivalence(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive

    def to_dict(self):
        return {
            "reflexive": self.reflexive,
            "symmetric": self.symmetric,
            "transitive": self.transitive,
            "equivalence": self.equivalence,
            "witnesses": self.witnesses,
        }


def _reflexive_witness(r):
    for i, row in enumerate(r.rows):
        if not row >> i & 1:
            return r.universe.labels[i]
    return None


def _symmetric_witness(r):
    rows = r.rows
    for i, row in enumerate(rows):
        for j in iter_bits(row):
            if not rows[j] >> i & 1:
                labels = r.universe.labels
                return (labels[i], labels[j])
    return None


def _transitive_witness(r):
    rows = r.rows
    for i, row in enumerate(rows):
        for j in iter_bits(row):
            bad = rows[j] & ~row
            if bad:
                labels = r.universe.labels
                return (labels[i], labels[j], labels[bad.bit_length() - 1])
    return None


def relation_properties(r: Relation) -> RelationProperties:
    witnesses = {}
    for key, finder in (("reflexive", _reflexive_witness),
                        ("symmetric", _symmetric_witness),
                        ("transitive", _transitive_witness)):
        w = finder(r)
        if w is not None:
            witnesses[key] = w
    return RelationProperties(
        reflexive="reflexive" not in witnesses,
        symmetric="symmetric" not in witnesses,
        transitive="transitive" not in witnesses,
        witnesses=witnesses,
    )


@dataclass(frozen=True)
class Partition:
    classes: tuple
    class_of: dict

    def to_dict(self):
        return {"classes": [list(c.members) for c in self.classes]}


def factorize(r: Relation) -> Partition:
    """Split the universe into the equivalence classes ``r[x]``."""
    props = relation_properties(r)
    if not props.equivalence:
        failed = next(k for k in ("reflexive", "symmetric", "transitive") if k in props.witnesses)
        raise NotEquivalence(f"relation is not {failed}", witness=props.witnesses[failed])
    u = r.universe
    classes = []
    class_of = {}
    seen = 0
    for i, row in enumerate(r.rows):
        if seen >> i & 1:
            continue
        idx = len(classes)
        classes.append(PointSet(u, row))
        for j in iter_bits(row):
            class_of[u.labels[j]] = idx
        seen |= row
    return Partition(tuple(classes), class_of)


def random_relation(u: Universe, rng: random.Random, density=None) -> Relation:
    """Random relation; ``density`` in (0, 1] thins the rows, default picks one at random."""
    n = u.size
    if density is None:
        density = rng.choice((0.1, 0.25, 0.5, 0.75))
    rows = []
    for _ in range(n):
        row = 0
        for j in range(n):
            if rng.random() < density:
                row |= 1 << j
        rows.append(row)
    return Relation(u, tuple(rows))


def random_mapping(u: Universe, rng: random.Random) -> Relation:
    return Relation(u, tuple(1 << rng.randrange(u.size) for _ in range(u.size)))


def random_equivalence(u: Universe, rng: random.Random) -> Relation:
    """Equivalence relation from a random assignment of points to blocks."""
    n = u.size
    k = rng.randint(1, n)
    blocks = [rng.randrange(k) for _ in range(n)]
    masks = {}
    for i, b in enumerate(blocks):
        masks[b] = masks.get(b, 0) | 1 << i
    return Relation(u, tuple(masks[b] for b in blocks))


def check_relation_laws(u: Universe, trials: int, seed: int) -> LawReport:
    """Relation-algebra and pre-image identities on random instances.

    The image-of-intersection law is only an inclusion; instances where it is
    strict are counted in the notes rather than treated as failures.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    report = LawReport("relation laws")
    n = u.size
    labels_of = u.labels_of
    strict = 0
    for _ in range(trials):
        r, s, t = (random_relation(u, rng) for _ in range(3))
        xm, ym = rng.getrandbits(n), rng.getrandbits(n)

        def tick(law, ok, **ctx):
            report.tick(law, ok, None if ok else {
                k: (sorted(v.pairs(), key=repr) if isinstance(v, Relation) else labels_of(v))
                for k, v in ctx.items()})

        tick("inverse is an involution", r.inverse().inverse() == r, r=r)
        tick("inverse of a composition", r.compose(s).inverse() == s.inverse().compose(r.inverse()), r=r, s=s)
        tick("composition associates", r.compose(s.compose(t)) == r.compose(s).compose(t), r=r, s=s, t=t)
        tick("image of a composition", r.compose(s).image_mask(xm) == r.image_mask(s.image_mask(xm)),
             r=r, s=s, X=xm)
        tick("image of a union", r.image_mask(xm | ym) == r.image_mask(xm) | r.image_mask(ym), r=r, X=xm, Y=ym)
        meet = r.image_mask(xm & ym)
        both = r.image_mask(xm) & r.image_mask(ym)
        tick("image of an intersection is included", meet & ~both == 0, r=r, X=xm, Y=ym)
        if meet != both:
            strict += 1

        f = random_mapping(u, rng)
        pm, qm = rng.getrandbits(n), rng.getrandbits(n)
        pre = f.preimage_mask
        tick("pre-image of a difference", pre(pm & ~qm) == pre(pm) & ~pre(qm), f=f, P=pm, Q=qm)
        tick("pre-image of a union", pre(pm | qm) == pre(pm) | pre(qm), f=f, P=pm, Q=qm)
        tick("pre-image of an intersection", pre(pm & qm) == pre(pm) & pre(qm), f=f, P=pm, Q=qm)
    report.notes.append(f"image-of-intersection inclusion was strict in {strict} of {trials} trials")
    report.stats["strict_inclusions"] = strict
    return report
