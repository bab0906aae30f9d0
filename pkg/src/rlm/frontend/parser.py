"""Recursive-descent parser for ``.rl`` scripts.

The grammar is LL(2) and whitespace-insensitive: every declaration and
command starts with a reserved word, so no separators are needed.  ``#``
starts a comment that runs to the end of the line.  See docs/grammar.md.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import RLError
from . import ast as A


class DSLError(RLError, ValueError):
    def __init__(self, message, line=0, column=0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DSLSyntaxError(DSLError):
    def __init__(self, message, line, column, expected=()):
        self.expected = tuple(sorted(set(expected)))
        if self.expected:
            message += "; expected one of: " + ", ".join(self.expected)
        super().__init__(message, line, column)


class UseBeforeDeclaration(DSLError):
    def __init__(self, name, line, column, kind=None):
        what = f"{kind} " if kind else ""
        super().__init__(f"{what}{name!r} is used before it is declared", line, column)
        self.name = name


class WrongKind(DSLError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, STRING, OP, EOF
    value: object
    line: int
    col: int

    def show(self):
        if self.kind == "EOF":
            return "end of input"
        if self.kind == "STRING":
            return A.quote(self.value)
        return repr(str(self.value))


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_]*\??)
  | (?P<INT>\d+)
  | (?P<STRING>"(?:[^"\\\n]|\\.)*")
  | (?P<OP>:=|\.\.|->|==|!=|<=|>=|//|[=<>+\-*%/(){}\[\],:])
""", re.VERBOSE)


def tokenize(source: str) -> list:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise DSLSyntaxError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            if kind == "INT":
                value = int(text)
            elif kind == "STRING":
                value = re.sub(r"\\(.)", r"\1", text[1:-1])
            else:
                value = text
            tokens.append(Token(kind, value, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", None, line, pos - line_start + 1))
    return tokens


DECL_WORDS = {"universe", "const", "relation", "set", "statement", "plurality", "order"}
COMMANDS = {
    "classify", "truth_domain", "equipollent", "taxonomy", "filter?", "group?", "order",
    "compare", "well_ordered", "laws", "refute_classical", "bijection", "diagonal",
    "cantor?", "words", "split", "interleave", "pairs", "census",
}
RESERVED = DECL_WORDS | COMMANDS | {
    "and", "or", "not", "in", "implies", "iff", "tag_tr", "tag_li", "chain",
    "forall_tr", "forall_li", "exists_tr", "exists_li", "expect", "check",
    "true", "false", "null", "abs", "sign", "prime",
}
CONNECTIVES = {"and": (2, None), "or": (2, None), "implies": (2, 2), "iff": (2, 2),
               "tag_tr": (1, 1), "tag_li": (1, 1)}
QUANTIFIERS = {"forall_tr", "forall_li", "exists_tr", "exists_li"}
RELATION_OPS = {"compose": 2, "inverse": 1, "union": 2, "intersect": 2, "identity": 0}
ORDER_KINDS = {"zigzag", "product", "lex", "build"}
DIAGONAL_RULES = {"flip", "complement", "avoid_zero"}
COMPARE_OPS = {"==", "!=", "<", "<=", ">", ">="}


class Parser:
    def __init__(self, source: str):
        self.toks = tokenize(source)
        self.i = 0
        self.symbols = {}  # name -> kind
        self.params = ()

    # -- token helpers ----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, *values) -> bool:
        t = self.tok
        return t.kind in ("OP", "NAME") and t.value in values

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def fail(self, expected, what=None):
        t = self.tok
        raise DSLSyntaxError(what or f"unexpected {t.show()}", t.line, t.col, expected)

    def take(self, value) -> Token:
        if not self.at(value):
            self.fail([repr(value)])
        return self.advance()

    def take_int(self) -> int:
        if self.tok.kind != "INT":
            self.fail(["integer"])
        return self.advance().value

    def take_name(self, what="name") -> Token:
        t = self.tok
        if t.kind != "NAME" or t.value in RESERVED or t.value.endswith("?"):
            self.fail([what])
        return self.advance()

    def loc(self, t=None):
        t = t or self.tok
        return (t.line, t.col)

    # -- symbols ----------------------------------------------------------

    def declare(self, tok: Token, kind: str):
        self.symbols[tok.value] = kind

    def ref(self, tok: Token, kinds, what):
        kind = self.symbols.get(tok.value)
        if kind is None:
            raise UseBeforeDeclaration(tok.value, tok.line, tok.col, what)
        if kind not in kinds:
            raise WrongKind(f"{tok.value!r} is a {kind}, expected a {what}", tok.line, tok.col)
        return tok.value

    def ref_name(self, kinds, what):
        return self.ref(self.take_name(what), kinds, what)

    # -- script -----------------------------------------------------------

    def script(self) -> A.Script:
        items = []
        while self.tok.kind != "EOF":
            items.append(self.item())
        return A.Script(tuple(items))

    def item(self):
        t = self.tok
        if t.kind == "NAME":
            if t.value == "order" and self.peek().kind == "NAME" and self.peek(2).kind == "OP" \
                    and self.peek(2).value == "=":
                return self.order_decl()
            if t.value in DECL_WORDS and t.value != "order":
                return getattr(self, t.value + "_decl")()
            if t.value in COMMANDS or t.value == "check":
                return self.command()
        self.fail(sorted(DECL_WORDS | COMMANDS | {"check"}))

    # -- labels and values ------------------------------------------------

    def label(self):
        t = self.tok
        if t.kind == "INT":
            return self.advance().value
        if self.at("-") and self.peek().kind == "INT":
            self.advance()
            return -self.advance().value
        if t.kind == "NAME" and t.value not in RESERVED:
            return self.advance().value
        if self.at("("):
            self.advance()
            parts = [self.label()]
            while self.at(","):
                self.advance()
                parts.append(self.label())
            self.take(")")
            return tuple(parts)
        self.fail(["label", "integer", "'('"])

    def label_set(self) -> tuple:
        self.take("{")
        out = []
        if not self.at("}"):
            out.append(self.label())
            while self.at(","):
                self.advance()
                out.append(self.label())
        self.take("}")
        return tuple(out)

    def number(self):
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        n = self.take_int()
        value = n
        if self.at("/"):
            self.advance()
            d = self.take_int()
            if d == 0:
                self.fail(["nonzero denominator"], "zero denominator")
            value = Fraction(n, d)
        return -value if neg else value

    def value(self):
        t = self.tok
        if t.kind == "STRING":
            return self.advance().value
        if t.kind == "INT" or self.at("-"):
            return self.number()
        if self.at("true", "false", "null"):
            return {"true": True, "false": False, "null": None}[self.advance().value]
        if t.kind == "NAME":
            return self.advance().value
        if self.at("["):
            self.advance()
            out = []
            if not self.at("]"):
                out.append(self.value())
                while self.at(","):
                    self.advance()
                    out.append(self.value())
            self.take("]")
            return out
        if self.at("("):
            return self.label()
        self.fail(["value"])

    # -- declarations -----------------------------------------------------

    def universe_decl(self):
        start = self.take("universe")
        name = self.take_name()
        self.take("=")
        if self.at("{"):
            node = A.UniverseDecl(name.value, None, self.label_set(), self.loc(start))
        else:
            lo = self.number()
            self.take("..")
            hi = self.number()
            if isinstance(lo, Fraction) or isinstance(hi, Fraction):
                self.fail(["integer"], "range bounds must be integers")
            node = A.UniverseDecl(name.value, (lo, hi), None, self.loc(start))
        self.declare(name, "universe")
        return node

    def const_decl(self):
        start = self.take("const")
        name = self.take_name()
        self.take("=")
        value = self.number()
        if isinstance(value, Fraction):
            self.fail(["integer"], "constants are integers")
        self.declare(name, "constant")
        return A.ConstDecl(name.value, value, self.loc(start))

    def relation_decl(self):
        start = self.take("relation")
        name = self.take_name()
        if self.at("("):
            self.advance()
            a = self.take_name("parameter").value
            self.take(",")
            b = self.take_name("parameter").value
            self.take(")")
            if a == b:
                self.fail(["distinct parameter"], "parameters must be distinct")
            self.take(":=")
            self.params = (a, b)
            try:
                expr = self.pexpr()
            finally:
                self.params = ()
            node = A.PredRelationDecl(name.value, (a, b), expr, self.loc(start))
        else:
            self.take("=")
            if self.at("{"):
                node = self.relation_literal(name.value, start)
            elif self.tok.kind == "NAME" and self.tok.value in RELATION_OPS:
                op = self.advance().value
                self.take("(")
                args = []
                if not self.at(")"):
                    args.append(self.ref_name({"relation"}, "relation"))
                    while self.at(","):
                        self.advance()
                        args.append(self.ref_name({"relation"}, "relation"))
                self.take(")")
                if len(args) != RELATION_OPS[op]:
                    raise DSLSyntaxError(f"{op} takes {RELATION_OPS[op]} arguments", *self.loc(start))
                node = A.OpRelationDecl(name.value, op, tuple(args), self.loc(start))
            else:
                self.fail(["'{'"] + sorted(RELATION_OPS) + ["'('"])
        self.declare(name, "relation")
        return node

    def relation_literal(self, name, start):
        self.take("{")
        if self.at("}"):
            self.advance()
            return A.PairsRelationDecl(name, (), self.loc(start))
        pairs, images = [], []
        while True:
            first = self.label()
            if self.at("->"):
                if pairs:
                    self.fail(["pair"], "cannot mix pairs and images")
                self.advance()
                images.append((first, self.label_set()))
            else:
                if images:
                    self.fail(["'->'"])
                if not (isinstance(first, tuple) and len(first) == 2):
                    self.fail(["'->'", "pair (a, b)"])
                pairs.append(first)
            if not self.at(","):
                break
            self.advance()
        self.take("}")
        if images:
            return A.ImagesRelationDecl(name, tuple(images), self.loc(start))
        return A.PairsRelationDecl(name, tuple(pairs), self.loc(start))

    def set_decl(self):
        start = self.take("set")
        name = self.take_name()
        if self.at(":="):
            self.advance()
            rel = self.ref_name({"relation"}, "relation")
            node = A.SetDecl(name.value, rel, None, self.loc(start))
        else:
            self.take("=")
            node = A.SetDecl(name.value, None, self.label_set(), self.loc(start))
        self.declare(name, "set")
        return node

    def statement_decl(self):
        start = self.take("statement")
        name = self.take_name()
        self.take(":=")
        expr = self.sexpr()
        self.declare(name, "statement")
        return A.StatementDecl(name.value, expr, self.loc(start))

    def plurality_decl(self):
        start = self.take("plurality")
        name = self.take_name()
        self.take("=")
        loc = self.loc(start)
        if self.at("{"):
            self.advance()
            members = [self.ref_name({"relation"}, "relation")]
            while self.at(","):
                self.advance()
                members.append(self.ref_name({"relation"}, "relation"))
            self.take("}")
            node = A.PluralityDecl(name.value, "members", tuple(members), loc)
        elif self.at("balls"):
            self.advance()
            self.take("(")
            if self.at("rationals", "reals"):
                fld = self.advance().value
                if not self.at(">", ">="):
                    self.fail(["'>'", "'>='"])
                op = self.advance().value
                node = A.PluralityDecl(name.value, "balls_domain", (fld, op, self.number()), loc)
            else:
                radii = [self.number()]
                while self.at(","):
                    self.advance()
                    radii.append(self.number())
                node = A.PluralityDecl(name.value, "balls", tuple(radii), loc)
            self.take(")")
        elif self.at("group"):
            self.advance()
            self.take("(")
            gens = [self.generator()]
            while self.at(","):
                self.advance()
                gens.append(self.generator())
            self.take(")")
            node = A.PluralityDecl(name.value, "group", tuple(gens), loc)
        else:
            self.fail(["'{'", "balls", "group"])
        self.declare(name, "plurality")
        return node

    def generator(self):
        cycles = []
        while self.at("("):
            self.advance()
            cyc = [self.label()]
            while not self.at(")"):
                cyc.append(self.label())
            self.advance()
            cycles.append(tuple(cyc))
        if not cycles:
            self.fail(["cycle '(a b ...)'"])
        return tuple(cycles)

    def order_decl(self):
        start = self.take("order")
        name = self.take_name()
        self.take("=")
        t = self.tok
        if not (t.kind == "NAME" and t.value in ORDER_KINDS):
            self.fail(sorted(ORDER_KINDS))
        kind = self.advance().value
        self.take("(")
        arg = self.ref_name({"relation"}, "relation") if kind == "build" else self.take_int()
        self.take(")")
        self.declare(name, "order")
        return A.OrderDecl(name.value, kind, arg, self.loc(start))

    # -- predicate expressions --------------------------------------------

    def pexpr(self):
        lhs = self.p_and()
        while self.at("or"):
            t = self.advance()
            lhs = A.PBin("or", lhs, self.p_and(), self.loc(t))
        return lhs

    def p_and(self):
        lhs = self.p_not()
        while self.at("and"):
            t = self.advance()
            lhs = A.PBin("and", lhs, self.p_not(), self.loc(t))
        return lhs

    def p_not(self):
        if self.at("not"):
            t = self.advance()
            return A.PUnary("not", self.p_not(), self.loc(t))
        return self.p_cmp()

    def p_cmp(self):
        lhs = self.p_add()
        if self.tok.kind == "OP" and self.tok.value in COMPARE_OPS:
            t = self.advance()
            return A.PBin(t.value, lhs, self.p_add(), self.loc(t))
        if self.at("in"):
            t = self.advance()
            if self.at("{"):
                return A.PIn(lhs, None, self.label_set(), self.loc(t))
            return A.PIn(lhs, self.ref_name({"set"}, "set"), None, self.loc(t))
        return lhs

    def p_add(self):
        lhs = self.p_mul()
        while self.at("+", "-"):
            t = self.advance()
            lhs = A.PBin(t.value, lhs, self.p_mul(), self.loc(t))
        return lhs

    def p_mul(self):
        lhs = self.p_unary()
        while self.at("*", "//", "%"):
            t = self.advance()
            lhs = A.PBin(t.value, lhs, self.p_unary(), self.loc(t))
        return lhs

    def p_unary(self):
        if self.at("-"):
            t = self.advance()
            return A.PUnary("-", self.p_unary(), self.loc(t))
        return self.p_atom()

    def p_atom(self):
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return A.PNum(t.value, self.loc(t))
        if self.at("("):
            self.advance()
            e = self.pexpr()
            self.take(")")
            return e
        if self.at("abs", "sign", "prime"):
            self.advance()
            self.take("(")
            e = self.pexpr()
            self.take(")")
            return A.PCall(t.value, e, self.loc(t))
        if t.kind == "NAME" and t.value not in RESERVED:
            self.advance()
            if t.value not in self.params:
                self.ref(t, {"constant"}, "constant or parameter")
            return A.PVar(t.value, self.loc(t))
        self.fail(["integer", "parameter", "'('", "abs", "sign", "prime", "'-'", "not"])

    # -- statement expressions --------------------------------------------

    def sexpr(self):
        t = self.tok
        if t.kind == "NAME" and t.value in CONNECTIVES:
            op = self.advance().value
            lo, hi = CONNECTIVES[op]
            self.take("(")
            args = [self.sexpr()]
            while self.at(","):
                self.advance()
                args.append(self.sexpr())
            self.take(")")
            if len(args) < lo or (hi is not None and len(args) > hi):
                want = str(lo) if lo == hi else f"at least {lo}"
                raise DSLSyntaxError(f"{op} takes {want} operands", t.line, t.col)
            return A.SConn(op, tuple(args), self.loc(t))
        if t.kind == "NAME" and t.value in QUANTIFIERS:
            op = self.advance().value
            self.take("(")
            names = [self.ref_name({"relation"}, "relation")]
            while self.at(","):
                self.advance()
                names.append(self.ref_name({"relation"}, "relation"))
            self.take(")")
            return A.SQuant(op, tuple(names), self.loc(t))
        if self.at("chain"):
            self.advance()
            self.take("(")
            bound = self.take_int()
            if bound < 1:
                raise DSLSyntaxError("chain bound must be at least 1", t.line, t.col)
            args = []
            while self.at(","):
                self.advance()
                args.append(self.sexpr())
            if not args:
                self.fail(["','"])
            self.take(")")
            return A.SChain(bound, tuple(args), self.loc(t))
        if t.kind == "NAME" and t.value not in RESERVED:
            self.advance()
            self.ref(t, {"relation", "statement"}, "relation or statement")
            return A.SRef(t.value, self.loc(t))
        self.fail(sorted(CONNECTIVES) + sorted(QUANTIFIERS) + ["chain", "name"])

    # -- commands ---------------------------------------------------------

    def command(self):
        start = self.tok
        label = None
        if self.at("check"):
            self.advance()
            if self.tok.kind != "STRING":
                self.fail(["string"])
            label = self.advance().value
        t = self.tok
        if not (t.kind == "NAME" and t.value in COMMANDS):
            self.fail(sorted(COMMANDS))
        name = self.advance().value
        args = tuple(getattr(self, "c_" + name.rstrip("?"))())
        expects = []
        if self.at("expect"):
            self.advance()
            expects.append(self.expectation())
            while self.at(","):
                self.advance()
                expects.append(self.expectation())
        return A.Command(name, args, tuple(expects), label, self.loc(start))

    def expectation(self):
        t = self.tok
        if t.kind != "NAME" or t.value.endswith("?"):
            self.fail(["result key"])
        key = self.advance().value
        self.take("=")
        return key, self.value()

    def _names(self, kinds, what, count):
        return [self.ref_name(kinds, what) for _ in range(count)]

    def c_classify(self):
        return [self.sexpr()]

    c_truth_domain = c_classify

    def c_equipollent(self):
        return [self.sexpr(), self.sexpr()]

    def c_taxonomy(self):
        return self._names({"plurality"}, "plurality", 1)

    c_filter = c_group = c_taxonomy

    def c_order(self):
        return self._names({"order"}, "order", 1)

    c_well_ordered = c_order

    def c_compare(self):
        return [self.ref_name({"order"}, "order"), self.label(), self.label()]

    def c_laws(self):
        if self.at("trials"):
            self.advance()
            return ["trials", self.take_int()]
        return []

    def c_refute_classical(self):
        if self.tok.kind == "NAME" and self.tok.value not in RESERVED:
            return self._names({"relation"}, "relation", 2)
        return []

    def c_bijection(self):
        return self._names({"set"}, "set", 2) + self._names({"relation"}, "relation", 2)

    def c_diagonal(self):
        t = self.tok
        if not (t.kind == "NAME" and t.value in DIAGONAL_RULES):
            self.fail(sorted(DIAGONAL_RULES))
        out = [self.advance().value]
        while self.tok.kind == "STRING":
            out.append(self.advance().value)
        if len(out) == 1:
            self.fail(["word string"])
        return out

    def c_cantor(self):
        v = self.number()
        self.take("depth")
        return [v, "depth", self.take_int()]

    def c_words(self):
        v = self.number()
        self.take("base")
        return [v, "base", self.take_int()]

    def c_split(self):
        if self.tok.kind != "STRING":
            self.fail(["word string"])
        return [self.advance().value]

    def c_interleave(self):
        return self.c_split() + self.c_split()

    def c_pairs(self):
        return [self.take_int()]

    def c_census(self):
        if self.tok.kind == "INT":
            return [self.take_int()]
        return self._names({"set"}, "set", 1)


def parse(source: str) -> A.Script:
    return Parser(source).script()
