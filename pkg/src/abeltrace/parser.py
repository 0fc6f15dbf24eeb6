"""Recursive-descent parser for the polynomial expression grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | VARIABLE | '(' expr ')'

``^`` binds tightest, so ``-x1^2`` is ``-(x1^2)``.  A rational literal
``p/q`` is the division of two integers.  :func:`parse_poly` only accepts
division by nonzero constants; :func:`parse_ratfunc` accepts any nonzero
divisor.
"""

from __future__ import annotations

import re

from .errors import PolySyntaxError, UnknownVariable
from .poly import MultiPoly, Var
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", start, "an operator, number or variable")
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int, allow_division: bool):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.text = text
        self.n = n
        self.allow_division = allow_division
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, ch):
        kind, value, pos = self.take()
        if kind != "op" or value != ch:
            raise PolySyntaxError(f"unexpected {self._describe(kind, value)}", pos, repr(ch))

    @staticmethod
    def _describe(kind, value):
        return "end of input" if kind == "end" else repr(str(value))

    def parse(self) -> RatFunc:
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty expression", 0, "an expression")
        result = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected {self._describe(kind, value)}", pos, "an operator or end of input")
        return result

    def expr(self):
        value = self.term()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if op == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, op, pos = self.peek()
            if kind == "op" and op in "*/":
                self.take()
                rhs = self.unary()
                if op == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise PolySyntaxError("division by zero", pos)
                    if not self.allow_division and not rhs.is_constant():
                        raise PolySyntaxError("division by a non-constant", pos, "a constant divisor")
                    value = value / rhs
            else:
                return value

    def unary(self):
        kind, op, _ = self.peek()
        if kind == "op" and op in "+-":
            self.take()
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        kind, op, _ = self.peek()
        if kind == "op" and op == "^":
            self.take()
            kind, value, pos = self.take()
            if kind != "int":
                raise PolySyntaxError(f"unexpected {self._describe(kind, value)}", pos, "a nonnegative integer exponent")
            return base ** value
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == "int":
            return RatFunc.constant(self.n, value)
        if kind == "name":
            try:
                var = Var.parse(value)
                return RatFunc(MultiPoly.variable(self.n, var))
            except UnknownVariable as exc:
                raise UnknownVariable(f"{exc} (at position {pos})") from None
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise PolySyntaxError(f"unexpected {self._describe(kind, value)}", pos, "a number, variable or '('")


def parse_ratfunc(text: str, n: int) -> RatFunc:
    """Parse a rational expression in ``x1..xn, y, a1..an, b1..bn``."""
    return _Parser(text, n, allow_division=True).parse()


def parse_poly(text: str, n: int) -> MultiPoly:
    """Parse a polynomial; division is only allowed by constants."""
    return _Parser(text, n, allow_division=False).parse().num


def infer_dimension(text: str) -> int:
    """Smallest ``n`` for which every variable index in ``text`` is valid."""
    indices = [int(m.group(2)) for m in re.finditer(r"\b([xab])(\d+)\b", text)]
    return max(indices, default=1)
