"""Recursive-descent parser for formula text.

    formula := disj
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '!' unary | ('E' | 'A') var (',' var)* '(' formula ')' | atom
    atom    := 'InO' '(' term ')' | term '=' term | '(' formula ')'
    term    := prod (('+' | '-') prod)*
    prod    := neg ('*' neg)*
    neg     := '-' neg | power
    power   := base ('^' INT)?
    base    := INT | var | '`' text '`' | '(' term ')'

Variables match [a-z][a-zA-Z0-9_]*.  A bare identifier that names a
generator of the supplied field is read as that constant.
"""

from __future__ import annotations

import re
from typing import Iterable, List, Optional, Tuple

from ..errors import FormulaSyntaxError, UnknownConstant
from .ast import (Add, And, Const, Eq, Exists, Forall, Formula, InO, Mul, Neg, Not, Num, Or, Pow, Sub, Term,
                  Var)

_TOKEN = re.compile(r"\s*(?:(`[^`]*`)|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_VAR = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")

Token = Tuple[str, str, int]


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("const", m.group(1)[1:-1], start))
        elif m.group(2) is not None:
            out.append(("int", m.group(2), start))
        elif m.group(3) is not None:
            out.append(("name", m.group(3), start))
        else:
            ch = m.group(4)
            if ch == "`":
                raise FormulaSyntaxError("unterminated constant", start)
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, known: Optional[frozenset], field):
        self.tokens = tokenize(text)
        self.i = 0
        self.known = known or frozenset()
        self.field = field

    # -- helpers ------------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str):
        raise FormulaSyntaxError(msg, self.tok[2])

    def accept(self, kind: str, value: str | None = None) -> Optional[Token]:
        t = self.tok
        if t[0] == kind and (value is None or t[1] == value):
            self.i += 1
            return t
        return None

    def expect(self, kind: str, value: str | None = None) -> Token:
        t = self.accept(kind, value)
        if t is None:
            want = value if value is not None else kind
            got = self.tok[1] or "end of input"
            self.error(f"expected {want!r}, found {got!r}")
        return t

    # -- formulas -----------------------------------------------------------
    def formula(self) -> Formula:
        f = self.conj()
        while self.accept("op", "|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.accept("op", "&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.accept("op", "!"):
            return Not(self.unary())
        t = self.tok
        if t[0] == "name" and t[1] in ("E", "A"):
            self.i += 1
            names = [self.variable()]
            while self.accept("op", ","):
                names.append(self.variable())
            self.expect("op", "(")
            body = self.formula()
            self.expect("op", ")")
            node = Exists if t[1] == "E" else Forall
            return node(tuple(names), body)
        return self.atom()

    def variable(self) -> str:
        t = self.expect("name")
        if not _VAR.match(t[1]):
            self.i -= 1
            self.error(f"{t[1]!r} is not a variable name")
        return t[1]

    def atom(self) -> Formula:
        if self.accept("name", "InO"):
            self.expect("op", "(")
            arg = self.term()
            self.expect("op", ")")
            return InO(arg)
        if self.tok == ("op", "(", self.tok[2]):
            start = self.i
            try:
                left = self.term()
                if self.tok[:2] == ("op", "="):
                    self.i += 1
                    return Eq(left, self.term())
            except FormulaSyntaxError:
                pass
            self.i = start
            self.expect("op", "(")
            f = self.formula()
            self.expect("op", ")")
            return f
        left = self.term()
        self.expect("op", "=")
        return Eq(left, self.term())

    # -- terms --------------------------------------------------------------
    def term(self) -> Term:
        t = self.prod()
        while True:
            if self.accept("op", "+"):
                t = Add(t, self.prod())
            elif self.accept("op", "-"):
                t = Sub(t, self.prod())
            else:
                return t

    def prod(self) -> Term:
        t = self.neg()
        while self.accept("op", "*"):
            t = Mul(t, self.neg())
        return t

    def neg(self) -> Term:
        if self.accept("op", "-"):
            return Neg(self.neg())
        return self.power()

    def power(self) -> Term:
        b = self.base()
        if self.accept("op", "^"):
            e = self.expect("int")
            return Pow(b, int(e[1]))
        return b

    def base(self) -> Term:
        t = self.tok
        if t[0] == "int":
            self.i += 1
            return Num(int(t[1]))
        if t[0] == "const":
            self.i += 1
            self.check_constant(t)
            return Const(t[1].strip())
        if t[0] == "name":
            if t[1] in self.known:
                self.i += 1
                return Const(t[1])
            if _VAR.match(t[1]) and t[1] not in ("E", "A", "InO"):
                self.i += 1
                return Var(t[1])
            self.error(f"unexpected name {t[1]!r}")
        if self.accept("op", "("):
            inner = self.term()
            self.expect("op", ")")
            return inner
        got = t[1] or "end of input"
        self.error(f"unexpected {got!r}")

    def check_constant(self, t: Token):
        if self.field is None:
            return
        try:
            self.field.element(t[1].strip())
        except Exception:
            raise UnknownConstant(f"constant `{t[1]}` is not an element of the field (position {t[2]})") from None


def parse(text: str, field=None, constants: Iterable[str] = ()) -> Formula:
    """Parse formula text; constants are resolved against ``field`` when given."""
    known = set(constants)
    if field is not None:
        known |= set(field.generators)
    p = _Parser(text, frozenset(known), field)
    f = p.formula()
    if p.tok[0] != "end":
        p.error(f"unexpected {p.tok[1]!r}")
    return f


def parse_term(text: str, field=None, constants: Iterable[str] = ()) -> Term:
    known = set(constants)
    if field is not None:
        known |= set(field.generators)
    p = _Parser(text, frozenset(known), field)
    t = p.term()
    if p.tok[0] != "end":
        p.error(f"unexpected {p.tok[1]!r}")
    return t
