"""Sense classification of compound statements over a finite universe.

Every statement ends up in exactly one of four classes.  Sensible statements
carry a truth domain and answer Tr/Li pointwise; indefinite ones have no
truth machinery and answer Pr everywhere; nonsense and absurd ones have no
verdicts at all.  Absurd is the self-refuting part of nonsense.

Classification is bottom-up.  Nonsense and absurdity propagate through every
connective, because connectives are only defined over sensible operands.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum

from .errors import IndefiniteOperand, NonsenseEval, NotSensible, UniverseMismatch
from .relations import Relation
from .report import LawReport
from .universe import PointSet, Universe


class Tag(Enum):
    TR = "Tr"
    LI = "Li"


class Verdict(Enum):
    TR = "Tr"
    LI = "Li"
    PR = "Pr"


class Kind(Enum):
    SENSIBLE = "Sensible"
    INDEFINITE = "Indefinite"
    NONSENSE = "Nonsense"
    ABSURD = "Absurd"


class ImplicationType(Enum):
    SAME_DOMAIN = "SameDomain"
    LIE_IMPLIES_TRUE = "LieImpliesTrue"
    TRUE_IMPLIES_LIE = "TrueImpliesLie"


# -- statements -------------------------------------------------------------


class Statement:
    def render(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.render()


def _rel_name(r: Relation) -> str:
    return r.name or "<relation>"


@dataclass(frozen=True)
class Atom(Statement):
    relation: Relation

    def render(self):
        return _rel_name(self.relation)


@dataclass(frozen=True)
class Tagged(Statement):
    body: Statement
    tag: Tag

    def render(self):
        return f"tag_{self.tag.value.lower()}({self.body.render()})"


@dataclass(frozen=True)
class And(Statement):
    lhs: Statement
    rhs: Statement

    def render(self):
        return f"and({self.lhs.render()}, {self.rhs.render()})"


@dataclass(frozen=True)
class Or(Statement):
    lhs: Statement
    rhs: Statement

    def render(self):
        return f"or({self.lhs.render()}, {self.rhs.render()})"


@dataclass(frozen=True)
class Implies(Statement):
    lhs: Statement
    rhs: Statement

    def render(self):
        return f"implies({self.lhs.render()}, {self.rhs.render()})"


@dataclass(frozen=True)
class Iff(Statement):
    lhs: Statement
    rhs: Statement

    def render(self):
        return f"iff({self.lhs.render()}, {self.rhs.render()})"


@dataclass(frozen=True)
class ForAllField(Statement):
    """"Every statement of the field is <tag>" over a declared relation field."""

    field: tuple
    tag: Tag

    def render(self):
        return f"forall_{self.tag.value.lower()}({', '.join(map(_rel_name, self.field))})"


@dataclass(frozen=True)
class ExistsField(Statement):
    field: tuple
    tag: Tag

    def render(self):
        return f"exists_{self.tag.value.lower()}({', '.join(map(_rel_name, self.field))})"


@dataclass(frozen=True)
class Chain(Statement):
    """A conjunction chain of which only the first ``bound`` links are examined."""

    items: tuple
    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("chain bound must be at least 1")
        if not self.items:
            raise ValueError("chain needs at least one link")

    def render(self):
        return f"chain({self.bound}, {', '.join(s.render() for s in self.items)})"


def atoms_of(stmt: Statement):
    if isinstance(stmt, Atom):
        yield stmt.relation
    elif isinstance(stmt, Tagged):
        yield from atoms_of(stmt.body)
    elif isinstance(stmt, (And, Or, Implies, Iff)):
        yield from atoms_of(stmt.lhs)
        yield from atoms_of(stmt.rhs)
    elif isinstance(stmt, (ForAllField, ExistsField)):
        yield from stmt.field
    elif isinstance(stmt, Chain):
        for item in stmt.items:
            yield from atoms_of(item)
    else:
        raise TypeError(f"not a statement: {stmt!r}")


def statement_universe(stmt: Statement) -> Universe:
    u = None
    for r in atoms_of(stmt):
        if u is None:
            u = r.universe
        elif r.universe is not u and r.universe != u:
            raise UniverseMismatch(f"{stmt.render()} mixes relations from different universes")
    if u is None:
        raise ValueError("statement references no relation")
    return u


def as_statement(x) -> Statement:
    return Atom(x) if isinstance(x, Relation) else x


# -- classification ---------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    kind: Kind
    truth_domain: PointSet | None = None
    reason: str | None = None
    trace: tuple = ()
    implication_type: frozenset = field(default_factory=frozenset)

    @property
    def sensible(self) -> bool:
        return self.kind is Kind.SENSIBLE

    @property
    def nonsense(self) -> bool:
        """True for nonsense, including its absurd refinement."""
        return self.kind in (Kind.NONSENSE, Kind.ABSURD)

    @property
    def absurd(self) -> bool:
        return self.kind is Kind.ABSURD

    def to_dict(self) -> dict:
        out = {
            "class": Kind.NONSENSE.value if self.absurd else self.kind.value,
            "absurd": self.absurd,
        }
        if self.truth_domain is not None:
            out["truth_domain"] = list(self.truth_domain.members)
        if self.reason is not None:
            out["reason"] = self.reason
        if self.implication_type:
            out["implication_type"] = sorted(t.value for t in self.implication_type)
        out["trace"] = list(self.trace)
        return out


def _domain_text(u: Universe, mask: int) -> str:
    return "{" + ", ".join(map(str, u.labels_of(mask))) + "}"


class _Classifier:
    def __init__(self, u: Universe):
        self.u = u
        self.full = u.full_mask

    def sensible(self, mask, trace, line, itypes=frozenset()):
        return Classification(Kind.SENSIBLE, PointSet(self.u, mask), None,
                              trace + (line,), frozenset(itypes))

    def bad(self, kind, reason, trace):
        return Classification(kind, None, reason, trace + (f"{kind.value}: {reason}",))

    def propagate(self, parts, context, indefinite_as=Kind.INDEFINITE):
        trace = tuple(itertools.chain.from_iterable(p.trace for p in parts))
        kinds = [p.kind for p in parts]
        for kind in (Kind.ABSURD, Kind.NONSENSE):
            if kind in kinds:
                return self.bad(kind, f"{context} has a {kind.value.lower()} operand", trace)
        reason = f"{context} has an indefinite operand"
        if indefinite_as is Kind.ABSURD:
            reason += "; an indefinite premise or conclusion makes the implication absurd"
        return self.bad(indefinite_as, reason, trace)

    def domains(self, c):
        return c.truth_domain.mask

    def implication_types(self, a, b):
        types = set()
        if a == b:
            types.add(ImplicationType.SAME_DOMAIN)
        if b == self.full & ~a:
            types.add(ImplicationType.LIE_IMPLIES_TRUE)
        if a == self.full & ~b:
            types.add(ImplicationType.TRUE_IMPLIES_LIE)
        return frozenset(types)

    def run(self, stmt) -> Classification:
        method = getattr(self, "c_" + type(stmt).__name__, None)
        if method is None:
            raise TypeError(f"not a statement: {stmt!r}")
        return method(stmt)

    def c_Atom(self, stmt):
        r = stmt.relation
        mask = r.domain_mask
        if mask:
            return self.sensible(mask, (), f"{stmt.render()}: relation with truth domain {_domain_text(self.u, mask)}")
        return self.bad(Kind.INDEFINITE, f"{stmt.render()} is undefined on the universe (empty truth domain)", ())

    def c_Tagged(self, stmt):
        tags = []
        core = stmt
        while isinstance(core, Tagged):
            tags.append(core.tag)
            core = core.body
        tags.reverse()  # innermost first
        inner = self.run(core)
        trace = inner.trace
        state = None
        for depth, tag in enumerate(tags):
            if state is None:
                state = tag
            elif state is Tag.LI and tag is Tag.LI:
                state = Tag.TR
                trace += (f"double lie normalized to truth at tag depth {depth + 1}",)
            elif state is tag:
                state = Tag.TR
            else:
                what = "a lying statement declared true" if state is Tag.LI else "a true statement declared lying"
                return self.bad(Kind.ABSURD, f"tag clash in {stmt.render()}: {what}", trace)
        if not inner.sensible:
            return self.propagate([inner], f"tagged statement {stmt.render()}")
        mask = self.domains(inner)
        if state is Tag.LI:
            mask = self.full & ~mask
        return self.sensible(mask, trace,
                             f"{stmt.render()}: tagged {state.value}, truth domain {_domain_text(self.u, mask)}")

    def c_And(self, stmt):
        a, b = self.run(stmt.lhs), self.run(stmt.rhs)
        if not (a.sensible and b.sensible):
            return self.propagate([a, b], f"conjunction {stmt.render()}")
        return self.conjoin(self.domains(a), self.domains(b), a.trace + b.trace, stmt.render())

    def conjoin(self, am, bm, trace, text):
        meet = am & bm
        if meet:
            return self.sensible(meet, trace, f"{text}: truth domains overlap in {_domain_text(self.u, meet)}")
        if bm == self.full & ~am:
            return self.bad(Kind.ABSURD, f"{text}: complementary truth domains, one part refuses the other", trace)
        return self.bad(Kind.NONSENSE, f"{text}: empty conjunction, truth domains do not overlap", trace)

    def c_Or(self, stmt):
        a, b = self.run(stmt.lhs), self.run(stmt.rhs)
        if not (a.sensible and b.sensible):
            return self.propagate([a, b], f"disjunction {stmt.render()}")
        join = self.domains(a) | self.domains(b)
        return self.sensible(join, a.trace + b.trace, f"{stmt.render()}: union of truth domains {_domain_text(self.u, join)}")

    def c_Implies(self, stmt):
        a, b = self.run(stmt.lhs), self.run(stmt.rhs)
        if not (a.sensible and b.sensible):
            return self.propagate([a, b], f"implication {stmt.render()}", indefinite_as=Kind.ABSURD)
        types = self.implication_types(self.domains(a), self.domains(b))
        trace = a.trace + b.trace
        if types:
            names = ", ".join(sorted(t.value for t in types))
            return self.sensible(self.full, trace, f"{stmt.render()}: true implication ({names})", types)
        return self.bad(Kind.NONSENSE,
                        f"{stmt.render()}: truth domains neither coincide nor complement each other", trace)

    def c_Iff(self, stmt):
        a, b = self.run(stmt.lhs), self.run(stmt.rhs)
        if not (a.sensible and b.sensible):
            return self.propagate([a, b], f"equivalence {stmt.render()}", indefinite_as=Kind.ABSURD)
        am, bm = self.domains(a), self.domains(b)
        trace = a.trace + b.trace
        if am == bm:
            return self.sensible(self.full, trace, f"{stmt.render()}: equal truth domains, true equivalence")
        if bm == self.full & ~am:
            return self.sensible(0, trace, f"{stmt.render()}: complementary truth domains, lying equivalence")
        return self.bad(Kind.NONSENSE, f"{stmt.render()}: truth domains neither coincide nor complement each other", trace)

    def c_ForAllField(self, stmt):
        if stmt.tag is Tag.LI:
            alive = [r for r in stmt.field if r.domain_mask]
            if alive:
                return self.bad(Kind.ABSURD, f"{stmt.render()}: claims every statement lies, yet "
                                f"{_rel_name(alive[0])} is true somewhere", ())
            return self.bad(Kind.INDEFINITE, f"{stmt.render()}: no member of the field is defined", ())
        return self.run(_fold(And, stmt.field))

    def c_ExistsField(self, stmt):
        if stmt.tag is Tag.LI:
            return self.bad(Kind.INDEFINITE, f"{stmt.render()}: some statement lies, but which one is not said", ())
        return self.run(_fold(Or, stmt.field))

    def c_Chain(self, stmt):
        items = stmt.items
        limit = min(stmt.bound, len(items))
        trace = ()
        running = None
        for k in range(limit):
            c = self.run(items[k])
            if not c.sensible:
                return self.propagate([c], f"chain link {k + 1}")
            trace += c.trace
            mask = self.domains(c)
            if running is None:
                if mask == 0 and len(items) == 1:
                    return c
                running = mask
            else:
                prev, running = running, running & mask
                if running == 0 and k == len(items) - 1:
                    return self.conjoin(prev, mask, trace, stmt.render())
            if running == 0:
                return self.bad(Kind.INDEFINITE,
                                f"chain unresolved: running truth domain empties at link {k + 1} "
                                f"while {len(items) - k - 1} more links follow", trace)
        return self.sensible(running, trace,
                             f"{stmt.render()}: first {limit} links meet in {_domain_text(self.u, running)}")


def _fold(op, relations):
    stmts = [Atom(r) for r in relations]
    if not stmts:
        raise ValueError("empty relation field")
    out = stmts[0]
    for s in stmts[1:]:
        out = op(out, s)
    return out


def classify(stmt: Statement) -> Classification:
    stmt = as_statement(stmt)
    return _Classifier(statement_universe(stmt)).run(stmt)


def truth_domain_of(stmt: Statement) -> PointSet:
    c = classify(stmt)
    if not c.sensible:
        raise NotSensible(f"{as_statement(stmt).render()} is {c.kind.value}: {c.reason}")
    return c.truth_domain


def eval_at(stmt: Statement, x) -> Verdict:
    stmt = as_statement(stmt)
    c = classify(stmt)
    u = statement_universe(stmt)
    u.index(x)
    if c.sensible:
        return Verdict.TR if x in c.truth_domain else Verdict.LI
    if c.kind is Kind.INDEFINITE:
        return Verdict.PR
    raise NonsenseEval(f"{stmt.render()} is {c.kind.value} and has no verdicts")


def _sensible_mask(stmt) -> tuple:
    stmt = as_statement(stmt)
    c = classify(stmt)
    if not c.sensible:
        raise IndefiniteOperand(f"{stmt.render()} is {c.kind.value}, not sensible")
    return c.truth_domain.mask, c.truth_domain.universe


def implication_type(r, s) -> frozenset:
    """Which kinds of true implication ``r -> s`` admits; empty when none."""
    a, u = _sensible_mask(r)
    b, v = _sensible_mask(s)
    if u is not v and u != v:
        raise UniverseMismatch("operands live on different universes")
    return _Classifier(u).implication_types(a, b)


def equipollent(a, b) -> bool:
    am, u = _sensible_mask(a)
    bm, v = _sensible_mask(b)
    if u is not v and u != v:
        raise UniverseMismatch("operands live on different universes")
    return am == bm


# -- tag normalization ------------------------------------------------------


def normalize_tags(stmt: Statement, rng: random.Random | None = None) -> Statement:
    """Collapse every tag chain to at most one tag.

    Chains are folded innermost-first.  A clashing chain becomes the
    canonical clash ``tag_li(tag_tr(core))``.  Independent subterms are
    visited in an order drawn from ``rng`` when one is given.
    """
    stmt = as_statement(stmt)
    if isinstance(stmt, Tagged):
        tags = []
        core = stmt
        while isinstance(core, Tagged):
            tags.append(core.tag)
            core = core.body
        core = normalize_tags(core, rng)
        state = None
        for tag in reversed(tags):
            if state is None:
                state = tag
            elif state is tag:
                state = Tag.TR
            else:
                return Tagged(Tagged(core, Tag.TR), Tag.LI)
        return Tagged(core, Tag.LI) if state is Tag.LI else core
    if isinstance(stmt, (And, Or, Implies, Iff)):
        if rng is not None and rng.random() < 0.5:
            rhs = normalize_tags(stmt.rhs, rng)
            lhs = normalize_tags(stmt.lhs, rng)
        else:
            lhs = normalize_tags(stmt.lhs, rng)
            rhs = normalize_tags(stmt.rhs, rng)
        return type(stmt)(lhs, rhs)
    if isinstance(stmt, Chain):
        order = list(range(len(stmt.items)))
        if rng is not None:
            rng.shuffle(order)
        done = {}
        for i in order:
            done[i] = normalize_tags(stmt.items[i], rng)
        return Chain(tuple(done[i] for i in range(len(stmt.items))), stmt.bound)
    return stmt


# -- law suites -------------------------------------------------------------

LOGIC_LAWS = (
    "identity",
    "excluded third",
    "absurdity",
    "double negation",
    "contraposition",
    "de Morgan",
    "transitivity",
)


def atom_with_domain(u: Universe, mask: int, rng: random.Random | None = None, name=None) -> Atom:
    """An atom whose relation has exactly ``mask`` as truth domain."""
    rows = []
    for i in range(u.size):
        if mask >> i & 1:
            row = rng.getrandbits(u.size) if rng is not None else 0
            rows.append(row or 1 << i)
        else:
            rows.append(0)
    return Atom(Relation(u, tuple(rows), name))


def _same(a: Classification, b: Classification) -> bool:
    return a.kind is b.kind and (a.truth_domain == b.truth_domain)


def _law_instances(u: Universe, full: int):
    """Every law as (name, arity, check).  check returns True/False, or None to skip."""

    def identity(r):
        c = classify(r)
        if not c.sensible:
            return _same(c, classify(r))
        return r == r and _same(c, classify(r)) and equipollent(r, r)

    def excluded_third(r):
        c = classify(r)
        if not c.sensible:
            return None
        pointwise = all(eval_at(r, x) in (Verdict.TR, Verdict.LI) for x in u.labels)
        both = classify(Or(Tagged(r, Tag.TR), Tagged(r, Tag.LI)))
        return pointwise and both.sensible and both.truth_domain.mask == full

    def absurdity(r):
        return (classify(Tagged(Tagged(r, Tag.TR), Tag.LI)).absurd
                and classify(Tagged(Tagged(r, Tag.LI), Tag.TR)).absurd)

    def double_negation(r):
        c = classify(r)
        if not c.sensible:
            return None
        return _same(classify(Tagged(Tagged(r, Tag.LI), Tag.LI)), classify(Tagged(r, Tag.TR)))

    def contraposition(r, s):
        fwd = classify(Implies(r, s))
        if not fwd.sensible:
            return None
        back = classify(Implies(Tagged(s, Tag.LI), Tagged(r, Tag.LI)))
        return back.sensible and back.implication_type == fwd.implication_type

    def de_morgan(r, s):
        checked = False
        if classify(And(r, s)).sensible:
            checked = True
            if not _same(classify(Tagged(And(r, s), Tag.LI)),
                         classify(Or(Tagged(r, Tag.LI), Tagged(s, Tag.LI)))):
                return False
        rhs = classify(And(Tagged(r, Tag.LI), Tagged(s, Tag.LI)))
        if rhs.sensible:
            checked = True
            if not _same(classify(Tagged(Or(r, s), Tag.LI)), rhs):
                return False
        return True if checked else None

    def transitivity(r, s, t):
        if not (classify(Implies(r, s)).sensible and classify(Implies(s, t)).sensible):
            return None
        return classify(Implies(r, t)).sensible

    return (
        ("identity", 1, identity),
        ("excluded third", 1, excluded_third),
        ("absurdity", 1, absurdity),
        ("double negation", 1, double_negation),
        ("contraposition", 2, contraposition),
        ("de Morgan", 2, de_morgan),
        ("transitivity", 3, transitivity),
    )


def _related_mask(rng, n, base):
    full = (1 << n) - 1
    pick = rng.random()
    if pick < 0.35:
        return base
    if pick < 0.6:
        return full & ~base
    if pick < 0.8:
        return base & rng.getrandbits(n) or base
    return rng.getrandbits(n)


def check_laws(u: Universe, trials: int, seed: int, exhaustive: bool | None = None) -> LawReport:
    """Run the seven logic laws on random sensible atoms, and exhaustively on small universes.

    Every law gets ``trials`` applicable random instances; instances failing
    a law's side condition are counted as skipped and redrawn.  Atoms with
    an empty truth domain are drawn occasionally so the excluded-third law
    can record them as not applicable.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n = u.size
    full = u.full_mask
    if exhaustive is None:
        exhaustive = n <= 5
    rng = random.Random(seed)
    report = LawReport("logic laws")
    laws = _law_instances(u, full)

    def run(name, check, masks, draw_rng):
        args = [atom_with_domain(u, m, draw_rng, name=f"a{i}") for i, m in enumerate(masks)]
        verdict = check(*args)
        if verdict is None:
            report.skip(name)
            return False
        report.tick(name, verdict, None if verdict else {
            f"a{i}": list(u.labels_of(m)) for i, m in enumerate(masks)})
        return True

    if exhaustive:
        domains = range(1, 1 << n)
        for name, arity, check in laws:
            for masks in itertools.product(domains, repeat=arity):
                run(name, check, masks, None)
        report.notes.append(f"exhaustive over all nonempty truth domains of {n} points")

    for name, arity, check in laws:
        applied = 0
        attempts = 0
        while applied < trials and attempts < 50 * trials:
            attempts += 1
            if arity == 1 and rng.random() < 0.05:
                masks = [0]
            else:
                masks = [rng.getrandbits(n) or 1]
                for _ in range(arity - 1):
                    masks.append(_related_mask(rng, n, masks[-1]) or 1)
            if run(name, check, masks, rng):
                applied += 1
        if applied < trials:
            report.notes.append(f"{name}: only {applied} applicable instances in {attempts} draws")
    return report


# -- classical laws that fail -----------------------------------------------


@dataclass(frozen=True)
class Refutation:
    law: str
    statement: str
    classification: Classification
    domains: dict

    @property
    def refuted(self) -> bool:
        return self.classification.nonsense

    def to_dict(self):
        return {
            "law": self.law,
            "statement": self.statement,
            "refuted": self.refuted,
            "classification": self.classification.to_dict(),
            "domains": self.domains,
        }


@dataclass
class RefutationReport:
    items: list

    @property
    def ok(self) -> bool:
        laws = {}
        for item in self.items:
            laws[item.law] = laws.get(item.law, False) or item.refuted
        return bool(laws) and all(laws.values())

    def to_dict(self):
        return {"ok": self.ok, "refutations": [i.to_dict() for i in self.items]}


CLASSICAL_LAWS = (
    "conjunction elimination",
    "disjunction introduction",
    "truth follows from anything",
    "anything follows from a premise",
    "comparability of implications",
)


def _incomparable(a, b):
    return a & b and a & ~b and b & ~a


def refute_classical_laws(u: Universe, seed: int, r: Relation | None = None,
                          s: Relation | None = None) -> RefutationReport:
    """Exhibit a nonsense instance of each classical tautology that fails here.

    Uses ``r`` and ``s`` when given; otherwise draws truth domains that
    overlap without either containing the other, which is what every
    refutation needs.
    """
    if r is None or s is None:
        rng = random.Random(seed)
        n = u.size
        found = None
        for _ in range(10000):
            a, b = rng.getrandbits(n), rng.getrandbits(n)
            if _incomparable(a, b):
                found = (a, b)
                break
        if found is None:
            found = (u.full_mask, u.full_mask)
        r = atom_with_domain(u, found[0], rng, name="r").relation
        s = atom_with_domain(u, found[1], rng, name="s").relation
    ra, sa = Atom(r), Atom(s)
    domains = {
        _rel_name(r): list(r.truth_domain.members),
        _rel_name(s): list(s.truth_domain.members),
    }
    cases = [
        ("conjunction elimination", Implies(And(ra, sa), ra)),
        ("conjunction elimination", Implies(And(ra, sa), sa)),
        ("disjunction introduction", Implies(ra, Or(sa, ra))),
        ("disjunction introduction", Implies(sa, Or(sa, ra))),
        ("truth follows from anything", Implies(ra, Implies(sa, ra))),
        ("anything follows from a premise", Implies(ra, Implies(ra, sa))),
        ("comparability of implications", Or(Implies(ra, sa), Implies(sa, ra))),
    ]
    items = [Refutation(law, stmt.render(), classify(stmt), domains) for law, stmt in cases]
    return RefutationReport(items)
