"""Recursive-descent parser for the ASCII polynomial grammar.

Variables are whatever names the target ring declares (``x1..x9``, ``y``,
``t`` in practice); coefficients are integers or ``a/b`` rationals;
operators are ``+ - * ^`` plus parentheses.  Juxtaposition such as ``2y``
is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        elif op is not None:
            if op not in "+-*^/()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial")
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("num", "name") or tok == ("op", "("):
                raise ParseError(f"implicit multiplication is not allowed in {self.text!r}")
            raise ParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            return base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val = tok
        if kind == "num":
            c = Fraction(val)
            if self.peek() == ("op", "/"):
                self.take()
                den = self.take()
                if den[0] != "num" or den[1] == 0:
                    raise ParseError(f"bad rational coefficient in {self.text!r}")
                c = Fraction(val, den[1])
            return self.ring.const(c)
        if kind == "name":
            if val not in self.ring.names:
                raise ParseError(f"unknown variable {val!r}; ring has {list(self.ring.names)}")
            return self.ring.var(val)
        if tok == ("op", "("):
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(text: str, ring):
    return _Parser(text, ring).parse()
