"""Finite universes of points and the Boolean algebra of point sets.

Sets are stored as integer bitmasks over the universe's point order, so a
union is ``a | b`` and membership is a shift.  A set whose mask is zero is a
legal value, but it is flagged ``undefined_identifier``: the identifier
behind it names no point, and operations that need an actual object refuse it.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import (
    ChoiceFromUndefinedSet,
    DuplicateLabel,
    EmptyUniverse,
    UniverseMismatch,
    UniverseTooLarge,
    UnknownPoint,
)
from .report import LawReport

DEFAULT_MAX_UNIVERSE = 4096


def max_universe_size() -> int:
    raw = os.environ.get("RLM_MAX_UNIVERSE")
    if raw is None:
        return DEFAULT_MAX_UNIVERSE
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_MAX_UNIVERSE


def iter_bits(mask: int):
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Universe:
    labels: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise UnknownPoint(f"{label!r} is not a point of this universe") from None

    def __contains__(self, label) -> bool:
        try:
            return label in self._index
        except TypeError:
            return False

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def mask_of(self, labels: Iterable) -> int:
        mask = 0
        for lab in labels:
            mask |= 1 << self.index(lab)
        return mask

    def labels_of(self, mask: int) -> tuple:
        return tuple(self.labels[i] for i in iter_bits(mask))

    def pointset(self, labels: Iterable = ()) -> "PointSet":
        return PointSet(self, self.mask_of(labels))

    def everything(self) -> "PointSet":
        return PointSet(self, self.full_mask)

    def nothing(self) -> "PointSet":
        return PointSet(self, 0)


def make_universe(labels: Sequence[Hashable]) -> Universe:
    labels = tuple(labels)
    if not labels:
        raise EmptyUniverse("a universe needs at least one point; the null set is not an object")
    seen = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(f"duplicate point label {lab!r}")
        seen.add(lab)
    cap = max_universe_size()
    if len(labels) > cap:
        raise UniverseTooLarge(f"{len(labels)} points exceeds the cap of {cap} (RLM_MAX_UNIVERSE)")
    return Universe(labels)


def integer_universe(lo: int, hi: int) -> Universe:
    """Universe of the integers ``lo..hi`` inclusive."""
    return make_universe(range(lo, hi + 1))


def same_universe(a: Universe, b: Universe):
    if a is not b and a != b:
        raise UniverseMismatch("operands live on different universes")


@dataclass(frozen=True)
class PointSet:
    universe: Universe
    mask: int
    origin: object = field(default=None, compare=False, repr=False)

    @property
    def undefined_identifier(self) -> bool:
        return self.mask == 0

    @property
    def members(self) -> tuple:
        return self.universe.labels_of(self.mask)

    def __contains__(self, label) -> bool:
        if label not in self.universe:
            return False
        return bool(self.mask >> self.universe.index(label) & 1)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return popcount(self.mask)

    def __repr__(self):
        flag = " undefined" if self.undefined_identifier else ""
        return f"PointSet({{{', '.join(map(repr, self.members))}}}{flag})"

    def _other(self, other: "PointSet") -> int:
        same_universe(self.universe, other.universe)
        return other.mask

    def union(self, other):
        return PointSet(self.universe, self.mask | self._other(other))

    def intersection(self, other):
        return PointSet(self.universe, self.mask & self._other(other))

    def difference(self, other):
        """Points of ``self`` that are not in ``other``."""
        return PointSet(self.universe, self.mask & ~self._other(other))

    def complement(self):
        return PointSet(self.universe, self.universe.full_mask & ~self.mask)

    def issubset(self, other) -> bool:
        return self.mask & ~self._other(other) == 0

    def is_strict_subset(self, other) -> bool:
        return self.issubset(other) and other.mask & ~self.mask != 0

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset
    __lt__ = is_strict_subset


@dataclass(frozen=True)
class SubsetTest:
    """Outcome of ``a ⊆ b``; ``strict`` additionally requires ``b \\ a`` nonempty."""

    subset: bool
    strict: bool

    def __bool__(self):
        return self.subset


def define_set(u: Universe, identifier) -> PointSet:
    """The set identified by ``identifier``: every x with (x, x) in it."""
    same_universe(u, identifier.universe)
    mask = 0
    for i, row in enumerate(identifier.rows):
        if row >> i & 1:
            mask |= 1 << i
    return PointSet(u, mask, origin=identifier)


def set_algebra(a: PointSet, b: PointSet, op: str):
    if op == "union":
        return a.union(b)
    if op == "intersection":
        return a.intersection(b)
    if op == "complement_of_a_in_b":
        return b.difference(a)
    if op == "subset_test":
        return SubsetTest(a.issubset(b), a.is_strict_subset(b))
    raise ValueError(f"unknown set operation {op!r}")


def choice_function(family: Sequence[PointSet]) -> dict:
    """Pick, for every family index, the member with the smallest position."""
    choices = {}
    for alpha, xs in enumerate(family):
        if xs.undefined_identifier:
            raise ChoiceFromUndefinedSet(f"family member {alpha} is undefined; f[∅] is ill-defined")
        low = xs.mask & -xs.mask
        choices[alpha] = xs.universe.labels[low.bit_length() - 1]
    return choices


# (name, law) pairs; each law maps three masks to its (lhs, rhs).
def _set_identities():
    return [
        ("union commutes", lambda x, y, z: (x | y, y | x)),
        ("intersection commutes", lambda x, y, z: (x & y, y & x)),
        ("union associates", lambda x, y, z: (x | (y | z), (x | y) | z)),
        ("intersection associates", lambda x, y, z: (x & (y & z), (x & y) & z)),
        ("intersection distributes over union", lambda x, y, z: (x & (y | z), (x & y) | (x & z))),
        ("union distributes over intersection", lambda x, y, z: (x | (y & z), (x | y) & (x | z))),
        ("double difference", lambda x, y, z: (x & ~(x & ~y), x & y)),
    ]


def _de_morgan(y: int, family: Sequence[int], full: int):
    union = 0
    inter = full
    for xa in family:
        union |= xa
        inter &= xa
    lhs1 = y & ~union
    rhs1 = full
    lhs2 = y & ~inter
    rhs2 = 0
    for xa in family:
        rhs1 &= y & ~xa
        rhs2 |= y & ~xa
    return (lhs1, rhs1), (lhs2, rhs2)


def check_triple(u: Universe, x: int, y: int, z: int, report: LawReport):
    for name, law in _set_identities():
        lhs, rhs = law(x, y, z)
        ok = lhs == rhs
        report.tick(name, ok, None if ok else {
            "X": u.labels_of(x), "Y": u.labels_of(y), "Z": u.labels_of(z),
            "lhs": u.labels_of(lhs), "rhs": u.labels_of(rhs),
        })


def check_family(u: Universe, y: int, family: Sequence[int], report: LawReport):
    names = ("de Morgan: difference of a union", "de Morgan: difference of an intersection")
    for name, (lhs, rhs) in zip(names, _de_morgan(y, family, u.full_mask)):
        ok = lhs == rhs
        report.tick(name, ok, None if ok else {
            "Y": u.labels_of(y), "family": [u.labels_of(m) for m in family],
            "lhs": u.labels_of(lhs), "rhs": u.labels_of(rhs),
        })


def check_set_laws(u: Universe, trials: int, seed: int, exhaustive: bool = False) -> LawReport:
    """Run the set-algebra identities on random (or all) triples and families.

    With ``exhaustive`` every triple of subsets is visited, which is only
    sensible for universes of five points or fewer.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    report = LawReport("set laws")
    n = u.size
    if exhaustive:
        subsets = range(1 << n)
        for x, y, z in itertools.product(subsets, repeat=3):
            check_triple(u, x, y, z, report)
            check_family(u, x, (y, z), report)
        report.notes.append(f"exhaustive over {(1 << n) ** 3} triples")
    for _ in range(trials):
        x, y, z = (rng.getrandbits(n) for _ in range(3))
        check_triple(u, x, y, z, report)
        family = [rng.getrandbits(n) for _ in range(rng.randint(1, 5))]
        check_family(u, rng.getrandbits(n), family, report)
    return report
