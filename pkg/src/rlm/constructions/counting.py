"""Finite products with projections, and the indicator-function counting argument."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from ..universe import PointSet


@dataclass(frozen=True)
class FiniteProduct:
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a product needs at least one factor")

    @property
    def sizes(self) -> tuple:
        return tuple(len(f) for f in self.factors)

    def __len__(self):
        n = 1
        for s in self.sizes:
            n *= s
        return n

    def __iter__(self):
        return itertools.product(*(f.members for f in self.factors))

    def at(self, index: int) -> tuple:
        """The tuple at position ``index`` (from 0) in lexicographic order."""
        if not 0 <= index < len(self):
            raise IndexError(index)
        out = []
        for f in reversed(self.factors):
            index, r = divmod(index, len(f))
            out.append(f.members[r])
        return tuple(reversed(out))

    def index_of(self, t: tuple) -> int:
        if len(t) != len(self.factors):
            raise ValueError("tuple has the wrong length")
        index = 0
        for f, x in zip(self.factors, t):
            index = index * len(f) + f.members.index(x)
        return index

    def project(self, t: tuple, beta: int):
        """p_beta, with coordinates counted from 1."""
        if not 1 <= beta <= len(self.factors):
            raise ValueError(f"no coordinate {beta}")
        return t[beta - 1]


def finite_product(sets) -> FiniteProduct:
    sets = tuple(sets)
    if not sets:
        raise ValueError("a product needs at least one factor")
    for s in sets:
        if not isinstance(s, PointSet):
            raise TypeError("factors must be point sets")
    return FiniteProduct(sets)


@dataclass
class CensusReport:
    size: int
    functions: int
    injection_ok: bool
    mode: str
    families_checked: int
    refuted_all: bool
    counterexample: list | None

    def to_dict(self):
        return {
            "size": self.size,
            "functions": self.functions,
            "injection_ok": self.injection_ok,
            "mode": self.mode,
            "families_checked": self.families_checked,
            "refuted_all": self.refuted_all,
            "counterexample": self.counterexample,
        }


EXHAUSTIVE_FAMILIES = 100_000


def indicator_census(E: PointSet, samples: int = 10_000, seed: int = 0) -> CensusReport:
    """Check that no family {g_x} indexed by E lists every function E -> {0,1}.

    Functions are bitmasks over E.  For each family the refuter is
    h(x) = 1 - g_x(x), which must differ from every g_x.  All families are
    visited when there are at most 100000 of them, otherwise ``samples``
    random ones.
    """
    n = len(E)
    if n > 20:
        raise ValueError("indicator census is limited to 20 points")
    nfun = 1 << n
    indicators = [1 << i for i in range(n)]
    injection_ok = len(set(indicators)) == n and all(
        (f >> j & 1) == (i == j) for i, f in enumerate(indicators) for j in range(n))
    if n == 0:
        return CensusReport(0, 1, True, "exhaustive", 1, True, None)
    total = nfun ** n
    if total <= EXHAUSTIVE_FAMILIES:
        mode = "exhaustive"
        families = itertools.product(range(nfun), repeat=n)
    else:
        mode = "sampled"
        rng = random.Random(seed)
        families = (tuple(rng.getrandbits(n) for _ in range(n)) for _ in range(samples))
    checked = 0
    bad = None
    for fam in families:
        checked += 1
        h = 0
        for x, g in enumerate(fam):
            if not g >> x & 1:
                h |= 1 << x
        if h in fam and bad is None:
            bad = list(fam)
    return CensusReport(n, nfun, injection_ok, mode, checked, bad is None, bad)
