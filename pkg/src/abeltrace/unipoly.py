"""Univariate polynomials in Y over the field of rational functions in (a, b)."""

from __future__ import annotations

from typing import Sequence

from .errors import NonMonicDivisor, NotCoprime, ZeroDegree
from .linalg import SingularMatrix, determinant, solve
from .poly import MultiPoly, _as_position
from .ratfunc import RatFunc


class UniPolyK:
    """Coefficients are stored low degree first: ``coeffs[k]`` multiplies ``Y^k``."""

    __slots__ = ("coeffs", "n")

    def __init__(self, coeffs: Sequence, n: int | None = None):
        cs = []
        for c in coeffs:
            if isinstance(c, MultiPoly):
                c = RatFunc(c)
            elif not isinstance(c, RatFunc):
                if n is None:
                    raise ValueError("n is required for numeric coefficients")
                c = RatFunc.constant(n, c)
            cs.append(c)
        if n is None:
            if not cs:
                raise ValueError("n is required for the zero polynomial")
            n = cs[0].n
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.n = n

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls((), n)

    @classmethod
    def one(cls, n):
        return cls((RatFunc.one(n),), n)

    @classmethod
    def monomial(cls, n, k, c=None):
        c = RatFunc.one(n) if c is None else c
        return cls([RatFunc.zero(n)] * k + [c], n)

    @classmethod
    def from_multipoly(cls, p: MultiPoly, var="y") -> "UniPolyK":
        """Read a polynomial in (y, a, b) as a polynomial in Y = ``var``."""
        parts = p.coeffs_in(var)
        if not parts:
            return cls.zero(p.n)
        deg = max(parts)
        zero = MultiPoly.zero(p.n)
        return cls([RatFunc(parts.get(k, zero)) for k in range(deg + 1)], p.n)

    @classmethod
    def from_ratfunc(cls, r: RatFunc, var="y") -> "UniPolyK":
        if r.den.degree_in(var) > 0:
            raise ValueError(f"{r} is not polynomial in {var}")
        inv = RatFunc(MultiPoly.one(r.n), r.den)
        return cls.from_multipoly(r.num, var).scale(inv)

    # queries ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self) -> RatFunc:
        return self.coeffs[-1] if self.coeffs else RatFunc.zero(self.n)

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def coefficient(self, k) -> RatFunc:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else RatFunc.zero(self.n)

    def __eq__(self, other):
        if not isinstance(other, UniPolyK):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPolyK(out, self.n)

    def _coerce(self, other):
        if isinstance(other, UniPolyK):
            return other
        if isinstance(other, RatFunc):
            return UniPolyK((other,), self.n)
        return UniPolyK((RatFunc.constant(self.n, other),), self.n)

    def __neg__(self):
        return UniPolyK([-c for c in self.coeffs], self.n)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    __radd__ = __add__

    def scale(self, c) -> "UniPolyK":
        if not isinstance(c, RatFunc):
            c = RatFunc.constant(self.n, c) if not isinstance(c, MultiPoly) else RatFunc(c)
        if c.is_zero():
            return UniPolyK.zero(self.n)
        if c.is_one():
            return self
        return UniPolyK([x * c for x in self.coeffs], self.n)

    def __mul__(self, other):
        if not isinstance(other, UniPolyK):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return UniPolyK.zero(self.n)
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                if y.is_zero():
                    continue
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = RatFunc.zero(self.n)
        return UniPolyK([zero if c is None else c for c in out], self.n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UniPolyK.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "UniPolyK":
        if not self.coeffs or k == 0:
            return self
        return UniPolyK([RatFunc.zero(self.n)] * k + list(self.coeffs), self.n)

    def monic(self) -> "UniPolyK":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.coeffs[-1]
        if lc.is_one():
            return self
        inv = lc.inverse()
        return UniPolyK([c * inv for c in self.coeffs[:-1]] + [RatFunc.one(self.n)], self.n)

    # calculus ---------------------------------------------------------

    def derivative(self) -> "UniPolyK":
        """d/dY."""
        return UniPolyK([c * k for k, c in enumerate(self.coeffs)][1:], self.n)

    def partial(self, v) -> "UniPolyK":
        """Coefficient-wise partial derivative in a parameter (or ``"Y"``)."""
        if v == "Y":
            return self.derivative()
        return UniPolyK([c.derivative(v) for c in self.coeffs], self.n)

    # evaluation -------------------------------------------------------

    def evaluate_params(self, values) -> "UniPolyK":
        return UniPolyK([c.evaluate(values) for c in self.coeffs], self.n)

    def eval_at(self, y: RatFunc) -> RatFunc:
        acc = RatFunc.zero(self.n)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def complex_coeffs(self, point) -> list:
        return [c.eval_complex(point) for c in self.coeffs]

    def to_ratfunc(self, var="y") -> RatFunc:
        """The element of the ambient field obtained by reading Y as ``var``."""
        acc = RatFunc.zero(self.n)
        pos = _as_position(var, self.n)
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                acc = acc + c * MultiPoly.one(self.n).shift(pos, k)
        return acc

    def __str__(self):
        return str(self.to_ratfunc())

    def __repr__(self):
        return f"UniPolyK({self})"


# ---------------------------------------------------------------- operations


def _require_monic(F: UniPolyK):
    if not F.is_monic():
        raise NonMonicDivisor(f"divisor {F} is not monic")


def divmod_monic(G: UniPolyK, F: UniPolyK):
    """Euclidean division by a monic ``F``: ``G = q F + r`` with ``deg r < deg F``."""
    _require_monic(F)
    d = F.degree
    rem = list(G.coeffs)
    if len(rem) <= d:
        return UniPolyK.zero(G.n), G
    quo = [RatFunc.zero(G.n)] * (len(rem) - d)
    fc = F.coeffs
    for k in range(len(rem) - 1, d - 1, -1):
        c = rem[k]
        if c.is_zero():
            continue
        quo[k - d] = c
        for i in range(d):
            if not fc[i].is_zero():
                rem[k - d + i] = rem[k - d + i] - c * fc[i]
        rem[k] = RatFunc.zero(G.n)
    return UniPolyK(quo, G.n), UniPolyK(rem[:d], G.n)


def divmod_general(G: UniPolyK, D: UniPolyK):
    """Euclidean division by any nonzero ``D`` (its leading coefficient is inverted)."""
    if D.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lc = D.leading()
    if lc.is_one():
        return divmod_monic(G, D)
    inv = lc.inverse()
    q, r = divmod_monic(G, D.monic())
    return q.scale(inv), r


def rem_monic(G: UniPolyK, F: UniPolyK) -> UniPolyK:
    return divmod_monic(G, F)[1]


def mulmod(A: UniPolyK, B: UniPolyK, F: UniPolyK) -> UniPolyK:
    return rem_monic(A * B, F)


def times_y_mod(R: UniPolyK, F: UniPolyK) -> UniPolyK:
    """``Y * R mod F`` for ``deg R < deg F`` (one reduction step)."""
    d = F.degree
    shifted = list(R.shift(1).coeffs)
    if len(shifted) <= d:
        return UniPolyK(shifted, R.n)
    top = shifted[d]
    out = shifted[:d]
    for i in range(d):
        if not F.coeffs[i].is_zero():
            out[i] = out[i] - top * F.coeffs[i]
    return UniPolyK(out, R.n)


def inverse_mod(D: UniPolyK, F: UniPolyK) -> UniPolyK:
    """``E`` with ``D E = 1 mod F`` and ``deg E < deg F``.

    Solved as the linear system for multiplication by ``D`` in ``K[Y]/(F)``;
    its determinant is ``Res(F, D)``, so singularity is exactly a common root.
    """
    _require_monic(F)
    d = F.degree
    if d == 0:
        raise ZeroDegree("inverse modulo a constant polynomial")
    Dr = rem_monic(D, F)
    if Dr.is_zero():
        raise NotCoprime(f"{D} is divisible by {F}")
    if Dr.degree == 0:
        return UniPolyK((Dr.coeffs[0].inverse(),), D.n)
    cols = []
    col = Dr
    for j in range(d):
        cols.append([col.coefficient(i) for i in range(d)])
        if j < d - 1:
            col = times_y_mod(col, F)
    rows = [[cols[j][i] for j in range(d)] for i in range(d)]
    zero, one = RatFunc.zero(D.n), RatFunc.one(D.n)
    try:
        sol = solve(rows, [one] + [zero] * (d - 1))
    except SingularMatrix:
        raise NotCoprime(f"{D} and {F} have a common factor") from None
    return UniPolyK(sol.values, D.n)


def resultant(F: UniPolyK, G: UniPolyK) -> RatFunc:
    """Sylvester resultant ``Res(F, G)`` (``Res(F, c) = c^deg F``)."""
    if F.is_zero() or G.is_zero():
        return RatFunc.zero(F.n)
    m, k = F.degree, G.degree
    if m == 0:
        return F.coeffs[0] ** k
    if k == 0:
        return G.coeffs[0] ** m
    size = m + k
    zero = RatFunc.zero(F.n)
    rows = []
    fhi = list(reversed(F.coeffs))
    ghi = list(reversed(G.coeffs))
    for i in range(k):
        rows.append([zero] * i + fhi + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + ghi + [zero] * (size - k - 1 - i))
    return determinant(rows)


def discriminant(F: UniPolyK) -> RatFunc:
    """``(-1)^(d(d-1)/2) Res(F, F')`` for monic ``F``; equals 1 when ``d = 1``."""
    _require_monic(F)
    d = F.degree
    if d < 1:
        raise ZeroDegree("discriminant of a constant")
    if d == 1:
        return RatFunc.one(F.n)
    r = resultant(F, F.derivative())
    return -r if (d * (d - 1) // 2) % 2 else r


def partial_derivative(p, v):
    """Formal partial derivative of a MultiPoly, RatFunc or UniPolyK.

    For UniPolyK, ``v == "Y"`` differentiates in the polynomial variable and
    any parameter name differentiates the coefficients.
    """
    if isinstance(p, UniPolyK):
        return p.partial(v)
    return p.derivative(v)
