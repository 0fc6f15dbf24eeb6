"""Reduced quotients of multivariate polynomials."""

from __future__ import annotations

from typing import Mapping

from .poly import MultiPoly, Rational, gcd, to_rational


class RatFunc:
    """``num / den`` with ``gcd(num, den) = 1`` and ``den`` integral, primitive
    and with positive leading coefficient (graded-lex).

    The normalization makes equality representational; polynomials always
    carry ``den == 1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, *, reduced: bool = False):
        if den is None:
            self.num, self.den = num, MultiPoly.one(num.n)
            return
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduced:
            self.num, self.den = num, den
            return
        if num.is_zero():
            self.num, self.den = num, MultiPoly.one(num.n)
            return
        if den.is_constant():
            self.num, self.den = num.scale(1 / den.constant_value()), MultiPoly.one(num.n)
            return
        g = gcd(num, den)
        if not g.is_one():
            num, den = num.exquo(g), den.exquo(g)
        c, den = den.primitive()
        if c != 1:
            num = num.scale(1 / c)
        self.num, self.den = num, den

    # construction -----------------------------------------------------

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFunc":
        return cls(p)

    @classmethod
    def constant(cls, n, c) -> "RatFunc":
        return cls(MultiPoly.constant(n, c))

    @classmethod
    def zero(cls, n):
        return cls(MultiPoly.zero(n))

    @classmethod
    def one(cls, n):
        return cls(MultiPoly.one(n))

    @classmethod
    def variable(cls, n, v):
        return cls(MultiPoly.variable(n, v))

    # queries ----------------------------------------------------------

    @property
    def n(self):
        return self.num.n

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.constant_value()

    def variables(self):
        return self.num.variables() | self.den.variables()

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, MultiPoly):
            return self.den.is_one() and self.num == other
        try:
            c = to_rational(other)
        except TypeError:
            return NotImplemented
        return self.den.is_one() and self.num == c

    def __hash__(self):
        return hash((self.num, self.den))

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(other)
        return RatFunc(MultiPoly.constant(self.n, other))

    def __add__(self, other):
        other = self._coerce(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            return RatFunc(self.num + other.num)
        if d1 == d2:
            return RatFunc(self.num + other.num, d1)
        if d1.is_one():
            return RatFunc(self.num * d2 + other.num, d2, reduced=True)
        if d2.is_one():
            return RatFunc(self.num + other.num * d1, d1, reduced=True)
        g = gcd(d1, d2)
        if g.is_one():
            return RatFunc(self.num * d2 + other.num * d1, d1 * d2, reduced=True).__normalize_lc()
        e1, e2 = d1.exquo(g), d2.exquo(g)
        num = self.num * e2 + other.num * e1
        return _reduce_against(num, d1 * e2, g)

    __radd__ = __add__

    def __normalize_lc(self):
        c, den = self.den.primitive()
        if c == 1:
            return self
        return RatFunc(self.num.scale(1 / c), den, reduced=True)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (RatFunc, MultiPoly)):
            c = to_rational(other)
            if not c:
                return RatFunc.zero(self.n)
            return RatFunc(self.num.scale(c), self.den, reduced=True)
        other = self._coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc.zero(self.n)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1.is_one() and d2.is_one():
            return RatFunc(n1 * n2)
        g1 = gcd(n1, d2) if not d2.is_one() else None
        g2 = gcd(n2, d1) if not d1.is_one() else None
        if g1 is not None and not g1.is_one():
            n1, d2 = n1.exquo(g1), d2.exquo(g1)
        if g2 is not None and not g2.is_one():
            n2, d1 = n2.exquo(g2), d1.exquo(g2)
        return RatFunc(n1 * n2, d1 * d2, reduced=True).__normalize_lc()._constant_den()

    __rmul__ = __mul__

    def _constant_den(self):
        if self.den.is_constant() and not self.den.is_one():
            return RatFunc(self.num.scale(1 / self.den.constant_value()))
        return self

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, reduced=True).__normalize_lc()._constant_den()

    def __truediv__(self, other):
        if not isinstance(other, (RatFunc, MultiPoly)):
            c = to_rational(other)
            return self * (1 / c)
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e, reduced=True)

    # calculus and evaluation ------------------------------------------

    def derivative(self, v) -> "RatFunc":
        dn = self.num.derivative(v)
        if self.den.is_one():
            return RatFunc(dn)
        dd = self.den.derivative(v)
        if dd.is_zero():
            return RatFunc(dn, self.den)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def substitute(self, mapping: Mapping) -> "RatFunc":
        return RatFunc(self.num.substitute(mapping)) / RatFunc(self.den.substitute(mapping))

    def evaluate(self, values: Mapping) -> "RatFunc":
        den = self.den.evaluate(values)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator of {self} vanishes at {dict(values)}")
        return RatFunc(self.num.evaluate(values), den)

    def eval_rational(self, values: Mapping) -> Rational:
        den = self.den.eval_rational(values)
        if not den:
            raise ZeroDivisionError(f"denominator of {self} vanishes")
        return self.num.eval_rational(values) / den

    def eval_complex(self, point) -> complex:
        return self.num.eval_complex(point) / self.den.eval_complex(point)

    def degree_in(self, v) -> int:
        """Degree of the numerator in ``v`` (meaningful when ``den`` is free of ``v``)."""
        return self.num.degree_in(v)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _reduce_against(num: MultiPoly, den: MultiPoly, g: MultiPoly) -> RatFunc:
    """Build ``num/den`` knowing any common factor divides ``g``."""
    if num.is_zero():
        return RatFunc.zero(num.n)
    h = gcd(num, g)
    if not h.is_one():
        num, den = num.exquo(h), den.exquo(h)
    if den.is_constant():
        return RatFunc(num.scale(1 / den.constant_value()))
    c, den = den.primitive()
    if c != 1:
        num = num.scale(1 / c)
    return RatFunc(num, den, reduced=True)
