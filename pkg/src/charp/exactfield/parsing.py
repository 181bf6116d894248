"""Infix grammar for polynomials and rational functions.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('-' | '+') factor | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Whitespace is insignificant.  ``/`` is only accepted by
:func:`parse_rational`; polynomial strings must not use it.
"""

from __future__ import annotations

import re

from .poly import MultiPoly, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        else:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, ring: PolyRing):
        self.toks = tokenize(text)
        self.i = 0
        self.ring = ring
        self.text = text

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg):
        raise ValueError(f"{msg} at position {self.peek()[2]} in {self.text!r}")

    def mul(self, a, b):
        return (a[0] * b[0], a[1] * b[1])

    def expr(self):
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            n = acc[0] * rhs[1]
            m = rhs[0] * acc[1]
            acc = (n + m if op == "+" else n - m, acc[1] * rhs[1])
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                acc = self.mul(acc, rhs)
            else:
                if rhs[0].is_zero():
                    self.error("division by zero")
                acc = (acc[0] * rhs[1], acc[1] * rhs[0])
        return acc

    def factor(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            n, d = self.factor()
            return (-n if t[1] == "-" else n, d)
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "int":
                self.i -= 1
                self.error("expected integer exponent")
            return (base[0] ** t[1], base[1] ** t[1])
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return (self.ring.const(t[1]), self.ring.one())
        if t[0] == "name":
            try:
                return (self.ring.gen(t[1]), self.ring.one())
            except KeyError:
                self.i -= 1
                self.error(f"unknown variable {t[1]!r}")
        if t[0] == "op" and t[1] == "(":
            v = self.expr()
            if self.take()[1] != ")":
                self.i -= 1
                self.error("expected ')'")
            return v
        self.i -= 1
        self.error("unexpected token")


def parse_rational(text: str, ring: PolyRing):
    """Parse ``text`` to a (numerator, denominator) pair in ``ring``."""
    p = _Parser(text, ring)
    v = p.expr()
    if p.peek()[0] != "end":
        p.error("trailing input")
    if v[1].is_zero():
        raise ValueError(f"zero denominator in {text!r}")
    return v


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    return ring.parse(text)
