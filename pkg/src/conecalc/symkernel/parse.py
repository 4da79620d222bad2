"""Polynomial text format.

Grammar (whitespace insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | IDENT | "(" expr ")"

``IDENT`` is ``[A-Za-z_][A-Za-z0-9_]*``; ``p/q`` is a rational literal and
is the only place ``/`` may appear.  :func:`poly_str` prints in this grammar
with terms sorted by the ring order, so printing and parsing are inverse.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .poly import Poly, PolyRing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))")


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        super().__init__(f"{msg} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos


class UnknownVariable(PolySyntaxError):
    def __init__(self, name: str, pos: int, text: str = ""):
        super().__init__(f"unknown variable {name!r}", pos, text)
        self.name = name


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolySyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, tok[2], self.text)

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}", t)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Poly:
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                self.error("exponent must be a nonnegative integer literal", e)
            base = base ** int(e[1])
            t = self.peek()
            if t[0] == "op" and t[1] == "^":
                self.error("chained '^' is ambiguous; use parentheses")
        return base

    def atom(self) -> Poly:
        t = self.take()
        kind, val, pos = t
        if kind == "int":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "int":
                    self.error("rational literal needs an integer denominator", d)
                if int(d[1]) == 0:
                    self.error("zero denominator", d)
                return self.ring.const(mpq(int(val), int(d[1])))
            return self.ring.const(int(val))
        if kind == "id":
            if val not in self.ring.index:
                raise UnknownVariable(val, pos, self.text)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            self.error("unexpected end of input", t)
        self.error(f"unexpected token {val!r}", t)


def poly_parse(text: str, ring: PolyRing) -> Poly:
    """Parse ``text`` into a :class:`Poly` of ``ring``."""
    return _Parser(text, ring).parse()


def _monomial_str(ring: PolyRing, e) -> str:
    parts = []
    for v, a in zip(ring.variables, e):
        if a == 1:
            parts.append(v)
        elif a:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def poly_str(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for k, (e, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = _monomial_str(p.ring, e)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
