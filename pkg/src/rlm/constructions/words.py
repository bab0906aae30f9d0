"""Eventually periodic base-n digit words with exact rational values.

A word is ``prefix`` followed by ``period`` repeated forever and stands for
sum(x_i / n^i).  Words ending in zeros are dead: their value also has an
alive spelling ending in n-1 digits.  The all-zero word is the exception and
stays alive.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import BaseMismatch, NonPeriodicWithinBound

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def _canonical(prefix: tuple, period: tuple) -> tuple:
    p = len(period)
    for d in range(1, p + 1):
        if p % d == 0 and period == period[:d] * (p // d):
            period = period[:d]
            break
    while prefix and prefix[-1] == period[-1]:
        period = (prefix[-1],) + period[:-1]
        prefix = prefix[:-1]
    return prefix, period


@dataclass(frozen=True)
class Word:
    base: int
    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not 2 <= self.base <= len(DIGITS):
            raise ValueError(f"base must lie in 2..{len(DIGITS)}")
        prefix, period = tuple(self.prefix), tuple(self.period)
        if not period:
            raise ValueError("period must be nonempty")
        for d in prefix + period:
            if not (isinstance(d, int) and 0 <= d < self.base):
                raise ValueError(f"digit {d!r} out of range for base {self.base}")
        prefix, period = _canonical(prefix, period)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Read ``"base:prefix(period)"``, e.g. ``"2:1(0)"``."""
        try:
            base_s, rest = text.strip().split(":", 1)
            pre, per = rest.split("(", 1)
            if not per.endswith(")"):
                raise ValueError
            per = per[:-1]
            base = int(base_s)
            digits = lambda s: tuple(DIGITS.index(c) for c in s.lower() if not c.isspace())
            return cls(base, digits(pre), digits(per))
        except ValueError as exc:
            raise ValueError(f"cannot read word {text!r}: expected base:prefix(period)") from exc

    def __str__(self):
        show = lambda ds: "".join(DIGITS[d] for d in ds)
        return f"{self.base}:{show(self.prefix)}({show(self.period)})"

    @property
    def is_dead(self) -> bool:
        return self.period == (0,) and bool(self.prefix)

    @property
    def alive(self) -> bool:
        return not self.is_dead

    def digit(self, i: int) -> int:
        """The i-th digit, counting from 1."""
        if i < 1:
            raise ValueError("digit places start at 1")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.period[(i - len(self.prefix) - 1) % len(self.period)]

    def digits(self, k: int) -> tuple:
        return tuple(self.digit(i) for i in range(1, k + 1))

    @property
    def value(self) -> Fraction:
        return word_value(self)


def _digits_value(ds, n) -> Fraction:
    total = 0
    for d in ds:
        total = total * n + d
    return Fraction(total, n ** len(ds))


def word_value(w: Word, radix: int | None = None) -> Fraction:
    """Exact sum of x_i / radix^i; radix defaults to the word's base."""
    n = radix or w.base
    head = _digits_value(w.prefix, n)
    p = len(w.period)
    cycle = 0
    for d in w.period:
        cycle = cycle * n + d
    tail = Fraction(cycle, n ** p - 1) / n ** len(w.prefix)
    return head + tail


def words_of(value, base: int, max_len: int = 64) -> list:
    """Every word of ``base`` with the given value: the alive one first, then the dead one."""
    value = Fraction(value)
    if not 0 <= value <= 1:
        raise ValueError("value must lie in [0, 1]")
    if value == 1:
        return [Word(base, (), (base - 1,))]
    num, den = value.numerator, value.denominator
    seen = {}
    digits = []
    r = num
    while r not in seen:
        if len(digits) > max_len:
            raise NonPeriodicWithinBound(f"{value} has no period within {max_len} digits in base {base}")
        seen[r] = len(digits)
        r *= base
        digits.append(r // den)
        r %= den
    start = seen[r]
    greedy = Word(base, tuple(digits[:start]), tuple(digits[start:]))
    if not greedy.is_dead:
        return [greedy]
    pre = list(greedy.prefix)
    pre[-1] -= 1
    alive = Word(base, tuple(pre), (base - 1,))
    return [alive, greedy]


def dead_words(base: int, prefix_len: int):
    """All dead words whose canonical prefix has exactly ``prefix_len`` digits, by brute force."""
    for ds in itertools.product(range(base), repeat=prefix_len):
        w = Word(base, ds, (0,))
        if w.is_dead and len(w.prefix) == prefix_len:
            yield w


# -- interleaving -----------------------------------------------------------


def _lcm(a, b):
    return a * b // gcd(a, b)


def interleave(a: Word, b: Word) -> Word:
    """The word a1 b1 a2 b2 ..."""
    if a.base != b.base:
        raise BaseMismatch("words in different bases")
    L = max(len(a.prefix), len(b.prefix))
    P = _lcm(len(a.period), len(b.period))
    pre = [d for i in range(1, L + 1) for d in (a.digit(i), b.digit(i))]
    per = [d for i in range(L + 1, L + P + 1) for d in (a.digit(i), b.digit(i))]
    return Word(a.base, tuple(pre), tuple(per))


@dataclass(frozen=True)
class Split:
    first: Word
    second: Word
    alive_splittable: bool

    @property
    def status(self) -> str:
        return "ok" if self.alive_splittable else "NotAliveSplittable"

    def to_dict(self):
        return {"first": str(self.first), "second": str(self.second),
                "first_dead": self.first.is_dead, "second_dead": self.second.is_dead,
                "status": self.status}


def deinterleave(w: Word) -> Split:
    """Split into odd and even places; an alive word with a dead part is not alive-splittable."""
    L = len(w.prefix)
    P = len(w.period)
    odd = lambda i: w.digit(2 * i - 1)
    even = lambda i: w.digit(2 * i)
    parts = []
    for pick in (odd, even):
        pre = tuple(pick(i) for i in range(1, L + 1))
        per = tuple(pick(i) for i in range(L + 1, L + P + 1))
        parts.append(Word(w.base, pre, per))
    ok = w.is_dead or not (parts[0].is_dead or parts[1].is_dead)
    return Split(parts[0], parts[1], ok)


# -- diagonal ---------------------------------------------------------------


@dataclass(frozen=True)
class Diagonal:
    digits: tuple
    word: Word
    differs_everywhere: bool
    rule: str
    zero_tail_from: int | None
    hazard: bool

    def to_dict(self):
        return {
            "digits": list(self.digits),
            "word": str(self.word),
            "differs_everywhere": self.differs_everywhere,
            "rule": self.rule,
            "zero_tail_from": self.zero_tail_from,
            "dead_word_hazard": self.hazard,
        }


def _rule(rule, base):
    if callable(rule):
        return getattr(rule, "__name__", "custom"), rule
    if rule == "flip":
        if base != 2:
            raise ValueError("the flip rule is for base 2")
        return rule, lambda k, d, n: 1 - d
    if rule == "complement":
        return rule, lambda k, d, n: n - 1 - d
    if rule == "avoid_zero":
        if base < 3:
            raise ValueError("avoid_zero needs base 3 or more")
        return rule, lambda k, d, n: 2 if d == 1 else 1
    raise ValueError(f"unknown diagonal rule {rule!r}")


def diagonal(words, base: int, rule="flip") -> Diagonal:
    """Change the k-th digit of the k-th word for k = 1..L.

    ``rule`` is "flip" (base 2), "complement" (n-1 minus the digit),
    "avoid_zero", or a callable ``(k, digit, base) -> digit``.  For the
    complement rule the result is checked for a run of zeros closing the
    truncation after a nonzero digit: padded out, such a word is dead.
    """
    words = list(words)
    if not words:
        raise ValueError("need at least one word")
    L = len(words)
    diag = []
    for k, w in enumerate(words, start=1):
        if isinstance(w, Word):
            if w.base != base:
                raise BaseMismatch(f"word {k} is in base {w.base}")
            diag.append(w.digit(k))
        else:
            ds = tuple(w)
            if len(ds) < L:
                raise ValueError(f"word {k} has fewer than {L} digits and no period")
            diag.append(ds[k - 1])
    name, fn = _rule(rule, base)
    ys = []
    for k, d in enumerate(diag, start=1):
        y = fn(k, d, base)
        if not (isinstance(y, int) and 0 <= y < base):
            raise ValueError(f"rule produced digit {y!r} at place {k}")
        ys.append(y)
    differs = all(y != d for y, d in zip(ys, diag))
    zero_from = None
    nonzero = [k for k, y in enumerate(ys, start=1) if y]
    if nonzero and nonzero[-1] < L:
        zero_from = nonzero[-1] + 1
    hazard = name == "complement" and zero_from is not None
    return Diagonal(tuple(ys), Word(base, tuple(ys), (0,)), differs, name, zero_from, hazard)


# -- the sets K_{k/n} -------------------------------------------------------


def k_set(w: Word, k: int, n: int) -> Fraction:
    """sum(k x_i / n^i) for a word with digits in {0, 1}."""
    if any(d not in (0, 1) for d in w.prefix + w.period):
        raise ValueError("K-set words use the digits 0 and 1 only")
    if not 2 <= k < n or gcd(k, n) != 1:
        raise ValueError(f"{k}/{n} must be an irreducible fraction with 2 <= k < n")
    return k * word_value(w, radix=n)


def cantor_membership(value, depth: int) -> bool:
    """Survives ``depth`` rounds of removing open middle thirds from [0, 1]?"""
    x = Fraction(value)
    if not 0 <= x <= 1:
        return False
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(depth):
        third = (hi - lo) / 3
        if lo + third < x < hi - third:
            return False
        if x <= lo + third:
            hi = lo + third
        else:
            lo = hi - third
    return True


def random_word(rng: random.Random, base: int, max_prefix: int = 6, max_period: int = 4,
                digits=None) -> Word:
    pool = list(digits) if digits is not None else list(range(base))
    pre = tuple(rng.choice(pool) for _ in range(rng.randint(0, max_prefix)))
    per = tuple(rng.choice(pool) for _ in range(rng.randint(1, max_period)))
    return Word(base, pre, per)
