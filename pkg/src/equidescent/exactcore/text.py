"""A small recursive-descent parser for polynomial and rational expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') unary-integer)?
    atom   := number | name | '(' expr ')'

Names are resolved through a caller-supplied mapping, so the same parser
builds MPolys, RatFuncs, tower elements or anything else with ring operations.
Numbers become exact Fractions; ``1.25`` means 5/4.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError

__all__ = ["parse_expr", "tokenize"]

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r}", location=pos)
        num, name, op = m.groups()
        start = m.start(1) if num else m.start(2) if name else m.start(3)
        if num is not None:
            out.append(("num", Fraction(num), start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, symbols):
        self.toks = tokenize(text)
        self.i = 0
        self.symbols = symbols

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", location=pos)

    def expr(self):
        v = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                v = v + rhs if val == "+" else v - rhs
            else:
                return v

    def term(self):
        v = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                if val == "*":
                    v = v * rhs
                else:
                    try:
                        v = v / rhs
                    except ZeroDivisionError as exc:
                        raise ParseError(f"division by zero: {exc}", location=pos) from exc
            else:
                return v

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            v = self.unary()
            return -v if val == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            k, v, p = self.peek()
            if k == "op" and v == "-":
                self.take()
                sign = -1
            k, v, p = self.take()
            if k != "num" or v.denominator != 1:
                raise ParseError("exponent must be an integer literal", location=p)
            return base ** (sign * int(v))
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return val
        if kind == "name":
            try:
                return self.symbols(val) if callable(self.symbols) else self.symbols[val]
            except KeyError:
                raise ParseError(f"unknown symbol {val!r}", location=pos) from None
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        if kind == "end":
            raise ParseError("unexpected end of expression", location=pos)
        raise ParseError(f"unexpected token {val!r}", location=pos)


def parse_expr(text: str, symbols):
    """Evaluate ``text`` with names looked up in ``symbols`` (mapping or callable)."""
    if not isinstance(text, str):
        raise ParseError(f"expected an expression string, got {type(text).__name__}")
    p = _Parser(text, symbols)
    v = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input at {val!r}", location=pos)
    return v
