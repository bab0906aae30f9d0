"""Countable enumerations: the anti-diagonal pairing and absorbing a countable set."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable, Optional

from ..errors import OverlappingSets


def pairing(n: int, k: int) -> int:
    """Position (from 1) of the pair (n, k) in the walk (1,1),(2,1),(1,2),(3,1),..."""
    if n < 1 or k < 1:
        raise ValueError("pairing indices start at 1")
    d = n + k
    return (d - 1) * (d - 2) // 2 + k


def unpairing(m: int) -> tuple:
    if m < 1:
        raise ValueError("pairing indices start at 1")
    t = (isqrt(8 * (m - 1) + 1) - 1) // 2
    k = m - t * (t + 1) // 2
    d = t + 2
    return d - k, k


@dataclass(frozen=True)
class Enumeration:
    """An indexing ``at(0), at(1), ...``; ``length`` is None when it never ends."""

    at: Callable[[int], object]
    index_of: Callable[[object], Optional[int]]
    length: Optional[int] = None

    def __contains__(self, x) -> bool:
        return self.index_of(x) is not None

    def prefix(self, k: int) -> list:
        stop = k if self.length is None else min(k, self.length)
        return [self.at(i) for i in range(stop)]

    @classmethod
    def of_list(cls, items) -> "Enumeration":
        items = list(items)
        pos = {x: i for i, x in enumerate(items)}
        return cls(items.__getitem__, pos.get, len(items))


def naturals() -> Enumeration:
    return Enumeration(lambda i: i, lambda x: x if isinstance(x, int) and x >= 0 else None)


def arithmetic(start: int, step: int) -> Enumeration:
    """``start, start + step, ...`` inside the naturals."""

    def index_of(x):
        if not isinstance(x, int) or x < start or (x - start) % step:
            return None
        return (x - start) // step

    return Enumeration(lambda i: start + step * i, index_of)


@dataclass(frozen=True)
class Absorption:
    """A bijection ``X ∪ extra -> X`` that moves only the designated points."""

    designated: Enumeration
    extra: Enumeration

    def _merged(self, i):
        L = self.extra.length
        if L is not None:
            return self.extra.at(i) if i < L else self.designated.at(i - L)
        return self.designated.at(i // 2) if i % 2 == 0 else self.extra.at(i // 2)

    def forward(self, x):
        L = self.extra.length
        j = self.extra.index_of(x)
        if j is not None:
            return self.designated.at(j if L is not None else 2 * j + 1)
        j = self.designated.index_of(x)
        if j is not None:
            return self.designated.at(L + j if L is not None else 2 * j)
        return x

    def backward(self, y):
        i = self.designated.index_of(y)
        return y if i is None else self._merged(i)


def absorb_countable(X: Enumeration, designated: Enumeration, extra: Enumeration,
                     probe: int = 1000) -> Absorption:
    """Merge ``extra`` into the designated subsequence of ``X`` and re-index onto it.

    A finite ``extra`` goes in front of the designated points; an infinite one
    is interleaved with them.  Disjointness from ``X`` is checked on the
    first ``probe`` elements of ``extra``.
    """
    if designated.length is not None:
        raise ValueError("the designated subsequence must be infinite")
    for e in extra.prefix(probe):
        if e in X:
            raise OverlappingSets(f"{e!r} lies in both X and the absorbed set")
    return Absorption(designated, extra)


@dataclass(frozen=True)
class Removal:
    """A bijection ``X -> X \\ removed`` obtained by absorbing the removed points back."""

    absorption: Absorption

    def forward(self, x):
        return self.absorption.forward(x)

    def backward(self, y):
        return self.absorption.backward(y)


def remove_countable(X: Enumeration, removed: Enumeration, designated: Enumeration,
                     probe: int = 1000) -> Removal:
    """``designated`` must run through ``X`` while avoiding ``removed``."""
    if designated.length is not None:
        raise ValueError("the designated subsequence must be infinite")
    for x in designated.prefix(probe):
        if x in removed or x not in X:
            raise OverlappingSets(f"designated point {x!r} is removed or not in X")
    for r in removed.prefix(probe):
        if r not in X:
            raise ValueError(f"removed point {r!r} is not in X")
    return Removal(Absorption(designated, removed))
