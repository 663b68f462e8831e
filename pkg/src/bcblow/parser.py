"""Recursive-descent parser for polynomial literals such as ``3*h^2 - 1/2*h*e``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | NAME | '(' expr ')'

Numbers are exact: ``1/2`` is the rational one half, ``0.25`` is 1/4.
Division is only allowed by a nonzero constant.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence, Tuple

from . import poly as P
from .errors import ParseError, UnknownGenerator

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", *_linecol(text, m.start(3)))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _linecol(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)
        self.tokens = _tokenize(text)
        self.i = 0

    def error(self, message: str, offset: int):
        raise ParseError(message, *_linecol(self.text, offset))

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value or tok[0] != "op":
            self.error(f"expected {value!r}", tok[2])

    def parse(self) -> P.Poly:
        if self.peek()[0] == "end":
            self.error("empty expression", 0)
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.error(f"unexpected {tok[1]!r}", tok[2])
        return result

    def expr(self) -> P.Poly:
        left = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            right = self.term()
            left = P.add(left, right, 1 if op == "+" else -1)
        return left

    def term(self) -> P.Poly:
        left = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            offset = self.peek()[2]
            right = self.unary()
            if op == "*":
                left = P.mul(left, right)
            else:
                const = right.get((0,) * self.nvars)
                if len(right) != 1 or const is None:
                    self.error("division only by a nonzero constant", offset)
                left = P.scale(left, Fraction(1) / const)
        return {m: P.normalize(c) for m, c in left.items()}

    def unary(self) -> P.Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return inner if tok[1] == "+" else P.scale(inner, -1)
        return self.power()

    def power(self) -> P.Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or "." in tok[1]:
                self.error("exponent must be a nonnegative integer", tok[2])
            base = P.power(base, int(tok[1]), self.nvars)
        return base

    def atom(self) -> P.Poly:
        kind, value, offset = self.take()
        if kind == "num":
            return P.constant(P.normalize(Fraction(value)), self.nvars)
        if kind == "name":
            if value not in self.names:
                line, col = _linecol(self.text, offset)
                raise UnknownGenerator(f"{line}:{col}: unknown generator {value!r}")
            return {P.unit(self.nvars, self.names[value]): 1}
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        self.error("unexpected end of input" if kind == "end" else f"unexpected {value!r}", offset)


def parse_polynomial(text: str, names: Sequence[str]) -> P.Poly:
    """Parse ``text`` into a sparse polynomial over the variables ``names``."""
    return _Parser(text, names).parse()


def format_coefficient(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(poly: P.Poly, names: Sequence[str], order=None) -> str:
    """Render in the grammar above; ``order`` sorts the monomials."""
    if not poly:
        return "0"
    monos = sorted(poly, key=order) if order else sorted(poly)
    parts = []
    for m in monos:
        c = Fraction(poly[m])
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = format_coefficient(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = format_coefficient(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)
