"""Syntax tree of ``.rl`` scripts and the printer that turns it back into text.

Every node carries its source location in ``loc``; locations are left out
of equality so a reparsed printout compares equal to the original tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

Loc = tuple  # (line, column), both from 1


def _loc():
    return field(default=(0, 0), compare=False, repr=False)


# -- predicate expressions --------------------------------------------------


@dataclass(frozen=True)
class PNum:
    value: int
    loc: Loc = _loc()


@dataclass(frozen=True)
class PVar:
    name: str
    loc: Loc = _loc()


@dataclass(frozen=True)
class PBin:
    op: str
    lhs: object
    rhs: object
    loc: Loc = _loc()


@dataclass(frozen=True)
class PUnary:
    op: str  # "-" or "not"
    arg: object
    loc: Loc = _loc()


@dataclass(frozen=True)
class PCall:
    fn: str  # abs, sign, prime
    arg: object
    loc: Loc = _loc()


@dataclass(frozen=True)
class PIn:
    arg: object
    set_name: str | None
    labels: tuple | None
    loc: Loc = _loc()


# -- statement expressions --------------------------------------------------


@dataclass(frozen=True)
class SRef:
    name: str
    loc: Loc = _loc()


@dataclass(frozen=True)
class SConn:
    op: str  # and, or, implies, iff, tag_tr, tag_li
    args: tuple
    loc: Loc = _loc()


@dataclass(frozen=True)
class SQuant:
    op: str  # forall_tr, forall_li, exists_tr, exists_li
    names: tuple
    loc: Loc = _loc()


@dataclass(frozen=True)
class SChain:
    bound: int
    args: tuple
    loc: Loc = _loc()


# -- declarations -----------------------------------------------------------


@dataclass(frozen=True)
class UniverseDecl:
    name: str
    bounds: tuple | None  # (lo, hi)
    labels: tuple | None
    loc: Loc = _loc()


@dataclass(frozen=True)
class ConstDecl:
    name: str
    value: int
    loc: Loc = _loc()


@dataclass(frozen=True)
class PredRelationDecl:
    name: str
    params: tuple
    expr: object
    loc: Loc = _loc()


@dataclass(frozen=True)
class PairsRelationDecl:
    name: str
    pairs: tuple
    loc: Loc = _loc()


@dataclass(frozen=True)
class ImagesRelationDecl:
    name: str
    images: tuple  # ((label, (labels...)), ...)
    loc: Loc = _loc()


@dataclass(frozen=True)
class OpRelationDecl:
    name: str
    op: str  # compose, inverse, union, intersect, identity
    args: tuple
    loc: Loc = _loc()


@dataclass(frozen=True)
class SetDecl:
    name: str
    relation: str | None
    labels: tuple | None
    loc: Loc = _loc()


@dataclass(frozen=True)
class StatementDecl:
    name: str
    expr: object
    loc: Loc = _loc()


@dataclass(frozen=True)
class PluralityDecl:
    name: str
    kind: str  # members, balls, balls_domain, group
    args: tuple
    loc: Loc = _loc()


@dataclass(frozen=True)
class OrderDecl:
    name: str
    kind: str  # zigzag, product, lex, build
    arg: object
    loc: Loc = _loc()


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    expects: tuple = ()
    label: str | None = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class Script:
    items: tuple

    @property
    def declarations(self):
        return [i for i in self.items if not isinstance(i, Command)]

    @property
    def commands(self):
        return [i for i in self.items if isinstance(i, Command)]


# -- printing ---------------------------------------------------------------

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def fmt_label(x) -> str:
    if isinstance(x, tuple):
        return "(" + ", ".join(fmt_label(v) for v in x) + ")"
    return str(x)


def fmt_labels(xs) -> str:
    return "{" + ", ".join(fmt_label(x) for x in xs) + "}"


def quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def fmt_value(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "null"
    if isinstance(v, list):
        return "[" + ", ".join(fmt_value(x) for x in v) + "]"
    if isinstance(v, tuple):
        return fmt_label(v)
    if isinstance(v, str) and (not _NAME.match(v) or v in ("true", "false", "null")):
        return quote(v)
    return str(v)


def fmt_pexpr(e) -> str:
    if isinstance(e, PNum):
        return str(e.value)
    if isinstance(e, PVar):
        return e.name
    if isinstance(e, PBin):
        return f"({fmt_pexpr(e.lhs)} {e.op} {fmt_pexpr(e.rhs)})"
    if isinstance(e, PUnary):
        sep = " " if e.op == "not" else ""
        return f"({e.op}{sep}{fmt_pexpr(e.arg)})"
    if isinstance(e, PCall):
        return f"{e.fn}({fmt_pexpr(e.arg)})"
    if isinstance(e, PIn):
        where = e.set_name if e.set_name is not None else fmt_labels(e.labels)
        return f"({fmt_pexpr(e.arg)} in {where})"
    raise TypeError(e)


def fmt_sexpr(e) -> str:
    if isinstance(e, SRef):
        return e.name
    if isinstance(e, SConn):
        return f"{e.op}({', '.join(fmt_sexpr(a) for a in e.args)})"
    if isinstance(e, SQuant):
        return f"{e.op}({', '.join(e.names)})"
    if isinstance(e, SChain):
        return f"chain({e.bound}, {', '.join(fmt_sexpr(a) for a in e.args)})"
    raise TypeError(e)


def _fmt_cycles(gen) -> str:
    return "".join("(" + " ".join(fmt_label(x) for x in c) + ")" for c in gen)


def fmt_arg(a) -> str:
    if isinstance(a, (SRef, SConn, SQuant, SChain)):
        return fmt_sexpr(a)
    return fmt_value(a)


def fmt_item(item) -> str:
    if isinstance(item, UniverseDecl):
        if item.bounds is not None:
            return f"universe {item.name} = {item.bounds[0]}..{item.bounds[1]}"
        return f"universe {item.name} = {fmt_labels(item.labels)}"
    if isinstance(item, ConstDecl):
        return f"const {item.name} = {item.value}"
    if isinstance(item, PredRelationDecl):
        return f"relation {item.name}({', '.join(item.params)}) := {fmt_pexpr(item.expr)}"
    if isinstance(item, PairsRelationDecl):
        body = ", ".join(f"({fmt_label(a)}, {fmt_label(b)})" for a, b in item.pairs)
        return f"relation {item.name} = {{{body}}}"
    if isinstance(item, ImagesRelationDecl):
        body = ", ".join(f"{fmt_label(x)} -> {fmt_labels(ys)}" for x, ys in item.images)
        return f"relation {item.name} = {{{body}}}"
    if isinstance(item, OpRelationDecl):
        return f"relation {item.name} = {item.op}({', '.join(item.args)})"
    if isinstance(item, SetDecl):
        if item.relation is not None:
            return f"set {item.name} := {item.relation}"
        return f"set {item.name} = {fmt_labels(item.labels)}"
    if isinstance(item, StatementDecl):
        return f"statement {item.name} := {fmt_sexpr(item.expr)}"
    if isinstance(item, PluralityDecl):
        if item.kind == "members":
            return f"plurality {item.name} = {{{', '.join(item.args)}}}"
        if item.kind == "balls":
            return f"plurality {item.name} = balls({', '.join(fmt_value(a) for a in item.args)})"
        if item.kind == "balls_domain":
            fld, op, bound = item.args
            return f"plurality {item.name} = balls({fld} {op} {bound})"
        return f"plurality {item.name} = group({', '.join(_fmt_cycles(g) for g in item.args)})"
    if isinstance(item, OrderDecl):
        return f"order {item.name} = {item.kind}({item.arg})"
    if isinstance(item, Command):
        return fmt_command(item)
    raise TypeError(item)


def fmt_command(c: Command) -> str:
    parts = []
    if c.label is not None:
        parts.append("check " + quote(c.label))
    parts.append(c.name)
    parts.extend(fmt_arg(a) for a in c.args)
    text = " ".join(parts)
    if c.expects:
        text += " expect " + ", ".join(f"{k} = {fmt_value(v)}" for k, v in c.expects)
    return text


def print_script(script: Script) -> str:
    return "".join(fmt_item(i) + "\n" for i in script.items)
