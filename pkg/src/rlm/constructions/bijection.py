"""Schröder–Bernstein on finite sets, built from the least fixpoint.

Given injections p: X -> Y and q: Y -> X, let f = q∘p and X1 = q[Y].  The
set Y0 is the least Z with Z = (X \\ X1) ∪ f[Z]; on Y0 we follow f, off it
we stay put, and pulling back through q gives the bijection.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NonTotal, NotAMapping, NotInjective, OutsideCodomain
from ..relations import Relation
from ..universe import PointSet, iter_bits, same_universe


@dataclass(frozen=True)
class BijectionTrace:
    bijection: Relation
    y0: PointSet
    x1: PointSet
    iterations: int

    def to_dict(self):
        return {
            "bijection": sorted(([x, y] for x, y in self.bijection.pairs()), key=repr),
            "Y0": list(self.y0.members),
            "X1": list(self.x1.members),
            "iterations": self.iterations,
        }


def check_injection(r: Relation, dom: PointSet, cod: PointSet, name="map") -> dict:
    """Validate ``r`` as an injective total mapping dom -> cod; return index -> index."""
    u = r.universe
    out = {}
    hit = {}
    for i in iter_bits(dom.mask):
        row = r.rows[i]
        if row == 0:
            raise NonTotal(f"{name} has no image at {u.labels[i]!r}", witness=u.labels[i])
        if row & (row - 1):
            raise NotAMapping(f"{name} sends {u.labels[i]!r} to several points", witness=u.labels[i])
        if row & ~cod.mask:
            raise OutsideCodomain(f"{name} sends {u.labels[i]!r} outside its codomain")
        j = row.bit_length() - 1
        if j in hit:
            raise NotInjective(f"{name} sends {u.labels[hit[j]]!r} and {u.labels[i]!r} to the same point",
                               witness=(u.labels[hit[j]], u.labels[i], u.labels[j]))
        hit[j] = i
        out[i] = j
    return out


def schroder_bernstein_trace(X: PointSet, Y: PointSet, p: Relation, q: Relation) -> BijectionTrace:
    u = X.universe
    for other in (Y.universe, p.universe, q.universe):
        same_universe(u, other)
    pm = check_injection(p, X, Y, "p")
    qm = check_injection(q, Y, X, "q")
    x0 = X.mask
    x1 = 0
    for j in qm.values():
        x1 |= 1 << j
    f = {i: qm[pm[i]] for i in pm}

    def f_image(mask):
        out = 0
        for i in iter_bits(mask):
            out |= 1 << f[i]
        return out

    base = x0 & ~x1
    z = 0
    steps = 0
    while True:
        nz = base | f_image(z)
        steps += 1
        if nz == z:
            break
        z = nz
    y0 = z
    if y0 != base | f_image(y0):
        raise AssertionError("Y0 is not a fixpoint")
    if x0 & ~y0 != x1 & ~f_image(y0):
        raise AssertionError("complement identity X0 \\ Y0 = X1 \\ f[Y0] fails")

    q_inv = {j: i for i, j in qm.items()}
    rows = [0] * u.size
    for i in iter_bits(x0):
        g = f[i] if y0 >> i & 1 else i
        rows[i] = 1 << q_inv[g]
    h = Relation(u, tuple(rows), "h")
    hm = check_injection(h, X, Y, "h")
    if set(hm.values()) != set(iter_bits(Y.mask)):
        raise AssertionError("h misses part of Y")
    return BijectionTrace(h, PointSet(u, y0), PointSet(u, x1), steps)


def schroder_bernstein(X: PointSet, Y: PointSet, p: Relation, q: Relation) -> Relation:
    """A verified bijection X -> Y from injections p: X -> Y and q: Y -> X."""
    return schroder_bernstein_trace(X, Y, p, q).bijection
