"""Run a parsed script against the engine and collect one report per command."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .. import logic as L
from ..constructions import (
    Word,
    cantor_membership,
    deinterleave,
    diagonal,
    indicator_census,
    interleave,
    schroder_bernstein_trace,
    unpairing,
    words_of,
)
from ..errors import RLError
from ..orders import build_order, compare, grid_orders, well_order_check, zigzag_order
from ..pluralities import Plurality, check_group, edges, is_filter, metric_balls, transformation_group
from ..relations import Relation, check_relation_laws
from ..universe import check_set_laws, define_set, integer_universe, make_universe
from . import ast as A
from .parser import DSLError

DEFAULT_LAW_TRIALS = 500


class ExecutionError(DSLError):
    pass


def jsonable(v):
    """Plain JSON data: tuples become lists, fractions become "p/q" strings."""
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, (set, frozenset)):
        return sorted((jsonable(x) for x in v), key=repr)
    return v


@dataclass
class Report:
    command: str
    target: str
    result: dict
    trace: list
    label: str | None = None
    line: int = 0
    expects: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)

    @property
    def error(self):
        return self.result.get("error")

    @property
    def ok(self) -> bool:
        if self.mismatches:
            return False
        if self.error is not None:
            return any(k == "error" for k, _ in self.expects)
        return True

    @property
    def checked(self) -> bool:
        return bool(self.expects)

    def to_dict(self):
        out = {"command": self.command, "target": self.target,
               "result": self.result, "trace": self.trace}
        if self.label is not None:
            out["label"] = self.label
        if self.expects:
            out["expect"] = {"ok": self.ok, "mismatches": self.mismatches}
        return out


def _pred_fn(expr, params, env):
    """Compile a predicate expression to a function of the two parameters."""
    a, b = params

    def ev(e, m, n):
        if isinstance(e, A.PNum):
            return e.value
        if isinstance(e, A.PVar):
            if e.name == a:
                return m
            if e.name == b:
                return n
            return env.consts[e.name]
        if isinstance(e, A.PUnary):
            v = ev(e.arg, m, n)
            return (not _bool(v, e)) if e.op == "not" else -v
        if isinstance(e, A.PCall):
            v = ev(e.arg, m, n)
            if e.fn == "abs":
                return abs(v)
            if e.fn == "sign":
                return 1 if v % 2 == 0 else -1
            return _is_prime(v)
        if isinstance(e, A.PIn):
            v = ev(e.arg, m, n)
            if e.set_name is not None:
                return v in env.sets[e.set_name]
            return v in e.labels
        if isinstance(e, A.PBin):
            op = e.op
            if op == "and":
                return _bool(ev(e.lhs, m, n), e) and _bool(ev(e.rhs, m, n), e)
            if op == "or":
                return _bool(ev(e.lhs, m, n), e) or _bool(ev(e.rhs, m, n), e)
            x, y = ev(e.lhs, m, n), ev(e.rhs, m, n)
            if op in ("//", "%") and y == 0:
                raise ExecutionError("division by zero", *e.loc)
            return _BINOPS[op](x, y)
        raise TypeError(e)

    def pred(m, n):
        v = ev(expr, m, n)
        return _bool(v, expr)

    return pred


def _bool(v, node):
    if not isinstance(v, bool):
        raise ExecutionError("expected a condition, got a number", *node.loc)
    return v


def _is_prime(v):
    if v < 2:
        return False
    k = 2
    while k * k <= v:
        if v % k == 0:
            return False
        k += 1
    return True


_BINOPS = {
    "==": lambda x, y: x == y, "!=": lambda x, y: x != y,
    "<": lambda x, y: x < y, "<=": lambda x, y: x <= y,
    ">": lambda x, y: x > y, ">=": lambda x, y: x >= y,
    "+": lambda x, y: x + y, "-": lambda x, y: x - y, "*": lambda x, y: x * y,
    "//": lambda x, y: x // y, "%": lambda x, y: x % y,
}


class Env:
    def __init__(self, seed=0, law_trials=DEFAULT_LAW_TRIALS):
        self.seed = seed
        self.law_trials = law_trials
        self.universe = None
        self.consts = {}
        self.relations = {}
        self.sets = {}
        self.statements = {}
        self.pluralities = {}
        self.orders = {}

    def need_universe(self, node):
        if self.universe is None:
            raise ExecutionError("no universe declared yet", *node.loc)
        return self.universe

    # -- declarations -----------------------------------------------------

    def declare(self, d):
        try:
            self._declare(d)
        except DSLError:
            raise
        except (RLError, ValueError, TypeError, KeyError) as exc:
            raise ExecutionError(f"in {d.name}: {type(exc).__name__}: {exc}", *d.loc) from exc

    def _declare(self, d):
        if isinstance(d, A.UniverseDecl):
            if d.bounds is not None:
                self.universe = integer_universe(*d.bounds)
            else:
                self.universe = make_universe(d.labels)
        elif isinstance(d, A.ConstDecl):
            self.consts[d.name] = d.value
        elif isinstance(d, A.PredRelationDecl):
            u = self.need_universe(d)
            self.relations[d.name] = Relation.from_predicate(u, _pred_fn(d.expr, d.params, self), d.name)
        elif isinstance(d, A.PairsRelationDecl):
            self.relations[d.name] = Relation.from_pairs(self.need_universe(d), d.pairs, d.name)
        elif isinstance(d, A.ImagesRelationDecl):
            self.relations[d.name] = Relation.from_images(self.need_universe(d), dict(d.images), d.name)
        elif isinstance(d, A.OpRelationDecl):
            rs = [self.relations[a] for a in d.args]
            if d.op == "identity":
                r = Relation.identity(self.need_universe(d))
            elif d.op == "inverse":
                r = rs[0].inverse()
            elif d.op == "compose":
                r = rs[0].compose(rs[1])
            elif d.op == "union":
                r = rs[0].union(rs[1])
            else:
                r = rs[0].intersect(rs[1])
            self.relations[d.name] = r.named(d.name)
        elif isinstance(d, A.SetDecl):
            if d.relation is not None:
                r = self.relations[d.relation]
                self.sets[d.name] = define_set(r.universe, r)
            else:
                self.sets[d.name] = self.need_universe(d).pointset(d.labels)
        elif isinstance(d, A.StatementDecl):
            self.statements[d.name] = self.statement(d.expr)
        elif isinstance(d, A.PluralityDecl):
            self.pluralities[d.name] = self.plurality(d)
        elif isinstance(d, A.OrderDecl):
            if d.kind == "zigzag":
                o = zigzag_order(d.arg)
            elif d.kind == "product":
                o = grid_orders(d.arg, "product")
            elif d.kind == "lex":
                o = grid_orders(d.arg, "lexicographic")
            else:
                r = self.relations[d.arg]
                o = build_order(r.universe, r)
            self.orders[d.name] = o
        else:
            raise TypeError(d)

    def plurality(self, d) -> Plurality:
        if d.kind == "members":
            return Plurality.of([self.relations[n] for n in d.args], labels=d.args, name=d.name)
        u = self.need_universe(d)
        if d.kind == "balls":
            return metric_balls(u, d.args)
        if d.kind == "balls_domain":
            fld, op, bound = d.args
            return metric_balls(u, f"{fld} {op} {bound}")
        return transformation_group(u, d.args)

    def statement(self, e) -> L.Statement:
        if isinstance(e, A.SRef):
            if e.name in self.relations:
                return L.Atom(self.relations[e.name])
            return self.statements[e.name]
        if isinstance(e, A.SConn):
            args = [self.statement(a) for a in e.args]
            if e.op in ("tag_tr", "tag_li"):
                return L.Tagged(args[0], L.Tag.TR if e.op == "tag_tr" else L.Tag.LI)
            cls = {"and": L.And, "or": L.Or, "implies": L.Implies, "iff": L.Iff}[e.op]
            out = args[0]
            for a in args[1:]:
                out = cls(out, a)
            return out
        if isinstance(e, A.SQuant):
            field_ = tuple(self.relations[n] for n in e.names)
            q, tag = e.op.split("_")
            cls = L.ForAllField if q == "forall" else L.ExistsField
            return cls(field_, L.Tag.TR if tag == "tr" else L.Tag.LI)
        if isinstance(e, A.SChain):
            return L.Chain(tuple(self.statement(a) for a in e.args), e.bound)
        raise TypeError(e)

    # -- commands ---------------------------------------------------------

    def run(self, c: A.Command) -> Report:
        target = " ".join(A.fmt_arg(a) for a in c.args)
        try:
            result, trace = getattr(self, "c_" + c.name.rstrip("?"))(*c.args)
        except DSLError:
            raise
        except (RLError, ValueError, KeyError, ZeroDivisionError) as exc:
            result, trace = {"error": type(exc).__name__, "message": str(exc)}, []
        result = jsonable(result)
        report = Report(c.name, target, result, [str(t) for t in trace], c.label, c.loc[0])
        for key, expected in c.expects:
            report.expects.append((key, expected))
            want = jsonable(expected)
            if key not in result:
                report.mismatches.append({"key": key, "expected": want, "actual": None, "missing": True})
            elif result[key] != want:
                report.mismatches.append({"key": key, "expected": want, "actual": result[key]})
        return report

    def c_classify(self, e):
        c = L.classify(self.statement(e))
        d = c.to_dict()
        trace = d.pop("trace")
        return d, trace

    def c_truth_domain(self, e):
        td = L.truth_domain_of(self.statement(e))
        return {"truth_domain": list(td.members)}, []

    def c_equipollent(self, a, b):
        return {"equipollent": L.equipollent(self.statement(a), self.statement(b))}, []

    def c_taxonomy(self, name):
        p = self.pluralities[name]
        fv = is_filter(p)
        d = fv.to_dict()
        trace = d.pop("trace") + list(edges(p).trace)
        d["members"] = len(p)
        return d, trace

    def c_filter(self, name):
        fv = is_filter(self.pluralities[name])
        return {"filter": fv.verdict, "code": fv.code.code,
                "has_minimal_element": fv.minimal, "symbolic": fv.symbolic}, []

    def c_group(self, name):
        g = check_group(self.pluralities[name]).to_dict()
        return g, g.pop("trace")

    def c_order(self, name):
        o = self.orders[name]
        trace = ["x < y exactly when s[y] is a proper part of s[x]"]
        if o.partition is not None:
            trace.append("internal equivalence factored out before ordering")
        return o.to_dict(), trace

    def c_well_ordered(self, name):
        return well_order_check(self.orders[name]).to_dict(), []

    def c_compare(self, name, x, y):
        return {"relation": compare(self.orders[name], x, y).value}, []

    def _law_universe(self):
        return self.universe if self.universe is not None else integer_universe(1, 10)

    def c_laws(self, *args):
        trials = args[1] if args else self.law_trials
        u = self._law_universe()
        suites = {
            "logic": L.check_laws(u, trials, self.seed),
            "sets": check_set_laws(u, trials, self.seed),
            "relations": check_relation_laws(u, trials, self.seed),
        }
        out = {"ok": all(s.ok for s in suites.values()), "universe_size": u.size, "trials": trials}
        for k, s in suites.items():
            out[k] = {"ok": s.ok, "checked": dict(sorted(s.checked.items())),
                      "failures": s.failures}
        return out, [n for s in suites.values() for n in s.notes]

    def c_refute_classical(self, *names):
        if names:
            r, s = (self.relations[n] for n in names)
            rep = L.refute_classical_laws(r.universe, self.seed, r, s)
        else:
            rep = L.refute_classical_laws(self._law_universe(), self.seed)
        d = rep.to_dict()
        for item in d["refutations"]:
            item["classification"].pop("trace", None)
        return d, []

    def c_bijection(self, x, y, p, q):
        tr = schroder_bernstein_trace(self.sets[x], self.sets[y], self.relations[p], self.relations[q])
        d = tr.to_dict()
        d["verified"] = True
        return d, ["Y0 is the least fixpoint of Z -> (X \\ q[Y]) | f[Z] with f = q o p",
                   "h follows p on Y0 and q^-1 elsewhere"]

    def c_diagonal(self, rule, *texts):
        words = [Word.parse(t) for t in texts]
        return diagonal(words, words[0].base, rule).to_dict(), []

    def c_cantor(self, value, _kw, depth):
        return {"value": Fraction(value), "depth": depth,
                "member": cantor_membership(value, depth)}, []

    def c_words(self, value, _kw, base):
        ws = words_of(value, base)
        return {"value": Fraction(value), "words": [str(w) for w in ws],
                "dead": [w.is_dead for w in ws]}, []

    def c_split(self, text):
        return deinterleave(Word.parse(text)).to_dict(), []

    def c_interleave(self, a, b):
        w = interleave(Word.parse(a), Word.parse(b))
        return {"word": str(w), "dead": w.is_dead}, []

    def c_pairs(self, count):
        return {"pairs": [list(unpairing(m)) for m in range(1, count + 1)]}, []

    def c_census(self, arg):
        E = self.sets[arg] if isinstance(arg, str) else make_universe(range(arg)).everything()
        return indicator_census(E, seed=self.seed).to_dict(), []


def execute(script: A.Script, seed: int = 0, law_trials: int = DEFAULT_LAW_TRIALS) -> list:
    env = Env(seed, law_trials)
    reports = []
    for item in script.items:
        if isinstance(item, A.Command):
            reports.append(env.run(item))
        else:
            env.declare(item)
    return reports
