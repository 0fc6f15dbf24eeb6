"""Sparse multivariate polynomials with exact rational coefficients.

The ambient variables for dimension ``n`` are, in increasing order::

    x1 < ... < xn < y < a1 < ... < an < b1 < ... < bn

A monomial is packed into a single Python int: the exponent of the variable
at position ``i`` occupies bits ``[16 i, 16 i + 15)`` and the total degree sits
in the field above the last variable.  Comparing packed ints therefore
compares total degree first and then exponents from the largest variable
down, which is exactly the graded-lex order used for canonical output.
Monomial multiplication is integer addition.  The top bit of every field is
kept clear and used as a borrow guard for monomial division.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from gmpy2 import gcd as _gcd_int
from gmpy2 import mpq, mpz

from .errors import UnknownVariable

try:
    import flint
    from flint.utils.flint_exceptions import DomainError as _FlintDomainError
except ImportError:  # pure-Python arithmetic only
    flint = None

SHIFT = 16
FIELD = (1 << SHIFT) - 1
MAX_EXPONENT = (1 << (SHIFT - 1)) - 1

Rational = type(mpq(0))
_ZERO = mpq(0)
_ONE = mpq(1)


def to_rational(value) -> Rational:
    if isinstance(value, Rational):
        return value
    if isinstance(value, (int, type(mpz(0)))):
        return mpq(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot use {value!r} as an exact rational")


def format_rational(c) -> str:
    c = to_rational(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------- variables


@dataclass(frozen=True)
class Var:
    """A coordinate (``x``/``y``) or pencil parameter (``a``/``b``)."""

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in ("x", "y", "a", "b"):
            raise UnknownVariable(f"unknown variable kind {self.kind!r}")
        if self.kind == "y" and self.index != 0:
            raise UnknownVariable("y carries no index")
        if self.kind != "y" and self.index < 1:
            raise UnknownVariable(f"{self.kind} needs an index >= 1")

    @classmethod
    def parse(cls, name: str) -> "Var":
        name = name.strip()
        if name == "y":
            return cls("y")
        if len(name) >= 2 and name[0] in "xab" and name[1:].isdigit():
            return cls(name[0], int(name[1:]))
        raise UnknownVariable(f"unknown variable {name!r}")

    def position(self, n: int) -> int:
        if self.kind == "y":
            return n
        if self.index > n:
            raise UnknownVariable(f"{self} is not a variable when n = {n}")
        offset = {"x": -1, "a": n, "b": 2 * n}[self.kind]
        return offset + self.index

    def __str__(self):
        return "y" if self.kind == "y" else f"{self.kind}{self.index}"


def var_name(pos: int, n: int) -> str:
    if pos < n:
        return f"x{pos + 1}"
    if pos == n:
        return "y"
    if pos <= 2 * n:
        return f"a{pos - n}"
    return f"b{pos - 2 * n}"


def y_pos(n):
    return n


def x_pos(n, i):
    return i - 1


def a_pos(n, i):
    return n + i


def b_pos(n, i):
    return 2 * n + i


def _as_position(v, n: int) -> int:
    if isinstance(v, int):
        if not 0 <= v < 3 * n + 1:
            raise UnknownVariable(f"variable position {v} out of range for n = {n}")
        return v
    if isinstance(v, str):
        v = Var.parse(v)
    return v.position(n)


# ---------------------------------------------------------------- monomials


@lru_cache(maxsize=None)
def _guard(nv: int) -> int:
    g = 0
    for i in range(nv + 1):
        g |= 1 << (SHIFT * i + SHIFT - 1)
    return g


@lru_cache(maxsize=None)
def _unit(nv: int, pos: int) -> int:
    """Packed monomial of a single variable to the first power."""
    return (1 << (SHIFT * pos)) | (1 << (SHIFT * nv))


def pack(exps: Iterable[int]) -> int:
    exps = tuple(exps)
    m = 0
    total = 0
    for i, e in enumerate(exps):
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            m |= e << (SHIFT * i)
            total += e
    if total > MAX_EXPONENT:
        raise OverflowError("total degree exceeds the packed monomial capacity")
    return m | (total << (SHIFT * len(exps)))


def unpack(m: int, nv: int) -> tuple:
    return tuple((m >> (SHIFT * i)) & FIELD for i in range(nv))


def _mdeg(m: int, nv: int) -> int:
    return m >> (SHIFT * nv)


def _mexp(m: int, pos: int) -> int:
    return (m >> (SHIFT * pos)) & FIELD


def _mono_quotient(m1: int, m2: int, guard: int):
    t = (m1 | guard) - m2
    if t & guard != guard:
        return None
    return t ^ guard


# ---------------------------------------------------------------- flint bridge

# Large products, exact quotients and gcds go through python-flint when it is
# installed.  Set ``USE_FLINT = False`` to force the pure-Python routines.
USE_FLINT = flint is not None
FLINT_MIN_WORK = 2000


@lru_cache(maxsize=None)
def _flint_ctx(nv: int):
    return flint.fmpq_mpoly_ctx.get(tuple(f"v{i}" for i in range(nv)), "lex")


def _to_flint(p: "MultiPoly"):
    nv = p.nvars
    fq = flint.fmpq
    return _flint_ctx(nv).from_dict(
        {unpack(m, nv): fq(int(c.numerator), int(c.denominator)) for m, c in p.terms.items()}
    )


def _from_flint(n: int, fp) -> "MultiPoly":
    nv = 3 * n + 1
    shifts = [SHIFT * i for i in range(nv)]
    top = SHIFT * nv
    terms = {}
    for e, c in zip(fp.monoms(), fp.coeffs()):
        e = [int(k) for k in e]
        m = sum(k << s for k, s in zip(e, shifts)) | (sum(e) << top)
        terms[m] = mpq(int(c.p), int(c.q))
    return MultiPoly(n, terms)


def _flint_worthwhile(p: "MultiPoly", q: "MultiPoly") -> bool:
    return USE_FLINT and len(p.terms) * len(q.terms) >= FLINT_MIN_WORK


# ---------------------------------------------------------------- polynomials


class MultiPoly:
    """Immutable sparse polynomial over Q in the ``3n + 1`` ambient variables."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: dict | None = None):
        # ``terms`` maps packed monomials to nonzero mpq; callers guarantee it.
        self.n = n
        self.terms = terms if terms is not None else {}
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def constant(cls, n, c):
        c = to_rational(c)
        return cls(n, {0: c} if c else {})

    @classmethod
    def one(cls, n):
        return cls(n, {0: _ONE})

    @classmethod
    def variable(cls, n, v, power: int = 1):
        pos = _as_position(v, n)
        nv = 3 * n + 1
        if power > MAX_EXPONENT:
            raise OverflowError("exponent too large")
        return cls(n, {_unit(nv, pos) * power: _ONE})

    @classmethod
    def from_exponents(cls, n, mapping: Mapping[tuple, object]):
        nv = 3 * n + 1
        terms = {}
        for exps, c in mapping.items():
            if len(exps) != nv:
                raise ValueError(f"exponent vector of length {len(exps)}, expected {nv}")
            c = to_rational(c)
            if c:
                m = pack(exps)
                v = terms.get(m, _ZERO) + c
                if v:
                    terms[m] = v
                else:
                    terms.pop(m, None)
        return cls(n, terms)

    # basic queries ----------------------------------------------------

    @property
    def nvars(self):
        return 3 * self.n + 1

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Rational:
        return self.terms.get(0, _ZERO)

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get(0) == 1

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return _mdeg(max(self.terms), self.nvars)

    def degree_in(self, v) -> int:
        if not self.terms:
            return -1
        pos = _as_position(v, self.n)
        return max(_mexp(m, pos) for m in self.terms)

    def degree_in_group(self, vs) -> int:
        """Total degree in a group of variables (the others count as constants)."""
        if not self.terms:
            return -1
        pos = [_as_position(v, self.n) for v in vs]
        return max(sum(_mexp(m, p) for p in pos) for m in self.terms)

    def variables(self) -> set:
        """Positions of the variables that actually occur."""
        nv = self.nvars
        acc = 0
        for m in self.terms:
            acc |= m
        return {i for i in range(nv) if (acc >> (SHIFT * i)) & FIELD}

    def leading(self):
        m = max(self.terms)
        return m, self.terms[m]

    def leading_coefficient(self) -> Rational:
        return self.terms[max(self.terms)] if self.terms else _ZERO

    def exponents(self):
        """(exponent tuple, coefficient) pairs in descending graded-lex order."""
        nv = self.nvars
        return [(unpack(m, nv), self.terms[m]) for m in sorted(self.terms, reverse=True)]

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.n == other.n and self.terms == other.terms
        try:
            c = to_rational(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({0: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.n != self.n:
                raise ValueError(f"dimension mismatch: n = {self.n} vs n = {other.n}")
            return other
        return MultiPoly.constant(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        terms = dict(big)
        for m, c in small.items():
            v = terms.get(m)
            if v is None:
                terms[m] = c
            else:
                v = v + c
                if v:
                    terms[m] = v
                else:
                    del terms[m]
        return MultiPoly(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m)
            if v is None:
                terms[m] = -c
            else:
                v = v - c
                if v:
                    terms[m] = v
                else:
                    del terms[m]
        return MultiPoly(self.n, terms)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = to_rational(c)
        if not c:
            return MultiPoly(self.n, {})
        if c == 1:
            return self
        return MultiPoly(self.n, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        t1, t2 = self.terms, other.terms
        if not t1 or not t2:
            return MultiPoly(self.n, {})
        if len(t1) == 1 and 0 in t1:
            return other.scale(t1[0])
        if len(t2) == 1 and 0 in t2:
            return self.scale(t2[0])
        nv = self.nvars
        if _mdeg(max(t1), nv) + _mdeg(max(t2), nv) > MAX_EXPONENT:
            raise OverflowError("product degree exceeds the packed monomial capacity")
        if _flint_worthwhile(self, other):
            return _from_flint(self.n, _to_flint(self) * _to_flint(other))
        if len(t1) < len(t2):
            t1, t2 = t2, t1
        res = {}
        get = res.get
        for m2, c2 in t2.items():
            for m1, c1 in t1.items():
                m = m1 + m2
                v = get(m)
                res[m] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly(self.n, {m: c for m, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, pos: int, k: int):
        """Multiply by the variable at ``pos`` raised to ``k``."""
        if k == 0:
            return self
        step = _unit(self.nvars, pos) * k
        if self.terms and self.total_degree() + k > MAX_EXPONENT:
            raise OverflowError("degree exceeds the packed monomial capacity")
        return MultiPoly(self.n, {m + step: c for m, c in self.terms.items()})

    def try_exquo(self, other):
        """Exact quotient ``self / other`` or ``None`` when ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return MultiPoly(self.n, {})
        if other.is_constant():
            return self.scale(1 / other.terms[0])
        nv = self.nvars
        guard = _guard(nv)
        lm_q, lc_q = other.leading()
        if _mono_quotient(max(self.terms), lm_q, guard) is None:
            return None
        if _flint_worthwhile(self, other):
            try:
                return _from_flint(self.n, _to_flint(self) / _to_flint(other))
            except _FlintDomainError:
                return None
        inv = 1 / lc_q
        tail = [(m, c) for m, c in other.terms.items() if m != lm_q]
        rem = dict(self.terms)
        quo = {}
        while rem:
            m = max(rem)
            c = rem.pop(m)
            qm = _mono_quotient(m, lm_q, guard)
            if qm is None:
                return None
            qc = c * inv
            quo[qm] = qc
            for mo, co in tail:
                k = qm + mo
                v = rem.get(k)
                if v is None:
                    rem[k] = -qc * co
                else:
                    v = v - qc * co
                    if v:
                        rem[k] = v
                    else:
                        del rem[k]
        return MultiPoly(self.n, quo)

    def exquo(self, other):
        q = self.try_exquo(other)
        if q is None:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other) -> bool:
        """True when ``self`` divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return True
        if self.total_degree() > other.total_degree():
            return False
        return other.try_exquo(self) is not None

    # calculus and substitution ----------------------------------------

    def derivative(self, v):
        pos = _as_position(v, self.n)
        unit = _unit(self.nvars, pos)
        terms = {}
        for m, c in self.terms.items():
            e = _mexp(m, pos)
            if e:
                terms[m - unit] = c * e
        return MultiPoly(self.n, terms)

    def coeffs_in(self, v) -> dict:
        """Split as ``sum_e c_e * v^e``; returns ``{e: c_e}`` with ``c_e`` free of ``v``."""
        pos = _as_position(v, self.n)
        unit = _unit(self.nvars, pos)
        out: dict = {}
        for m, c in self.terms.items():
            e = _mexp(m, pos)
            out.setdefault(e, {})[m - unit * e] = c
        return {e: MultiPoly(self.n, t) for e, t in out.items()}

    @classmethod
    def from_coeffs_in(cls, n, v, coeffs: Mapping[int, "MultiPoly"]):
        pos = _as_position(v, n)
        result = MultiPoly(n, {})
        for e, c in coeffs.items():
            result = result + c.shift(pos, e)
        return result

    def substitute(self, mapping: Mapping) -> "MultiPoly":
        """Compose: replace variables by polynomials (or numbers)."""
        n, nv = self.n, self.nvars
        subs = {}
        for v, val in mapping.items():
            pos = _as_position(v, n)
            subs[pos] = val if isinstance(val, MultiPoly) else MultiPoly.constant(n, val)
        positions = sorted(subs)
        groups: dict = {}
        for m, c in self.terms.items():
            key = tuple(_mexp(m, p) for p in positions)
            rest = m
            for p, e in zip(positions, key):
                if e:
                    rest -= _unit(nv, p) * e
            groups.setdefault(key, {})[rest] = c
        powers: dict = {}

        def power(p, e):
            if (p, e) not in powers:
                powers[(p, e)] = subs[p] ** e
            return powers[(p, e)]

        result = MultiPoly(n, {})
        for key, rest in groups.items():
            factor = MultiPoly.one(n)
            for p, e in zip(positions, key):
                if e:
                    factor = factor * power(p, e)
            result = result + factor * MultiPoly(n, rest)
        return result

    def evaluate(self, values: Mapping) -> "MultiPoly":
        """Substitute exact numbers for some variables."""
        n, nv = self.n, self.nvars
        vals = {_as_position(v, n): to_rational(x) for v, x in values.items()}
        terms: dict = {}
        for m, c in self.terms.items():
            rest = m
            for p, x in vals.items():
                e = _mexp(m, p)
                if e:
                    c = c * x ** e
                    rest -= _unit(nv, p) * e
            if c:
                v = terms.get(rest, _ZERO) + c
                if v:
                    terms[rest] = v
                else:
                    terms.pop(rest, None)
        return MultiPoly(n, terms)

    def eval_rational(self, values: Mapping) -> Rational:
        rest = self.evaluate(values)
        if not rest.is_constant():
            names = sorted(var_name(p, self.n) for p in rest.variables())
            raise ValueError(f"unassigned variables: {', '.join(names)}")
        return rest.constant_value()

    def eval_complex(self, point) -> complex:
        """Evaluate at a full vector of ``3n + 1`` complex values (position order)."""
        nv = self.nvars
        total = 0j
        for m, c in self.terms.items():
            t = complex(c)
            k = 0
            mm = m
            while mm and k < nv:
                e = mm & FIELD
                if e:
                    t *= point[k] ** e
                mm >>= SHIFT
                k += 1
            total += t
        return total

    # normalization ----------------------------------------------------

    def primitive(self):
        """``(c, p)`` with ``self = c * p``, ``p`` integral, coprime, positive leading coefficient."""
        if not self.terms:
            return _ZERO, self
        den = mpz(1)
        for c in self.terms.values():
            d = c.denominator
            den = den * d // _gcd_int(den, d)
        g = mpz(0)
        for c in self.terms.values():
            g = _gcd_int(g, c.numerator * (den // c.denominator))
            if g == 1:
                break
        content = mpq(g, den)
        if self.leading_coefficient() < 0:
            content = -content
        if content == 1:
            return content, self
        inv = 1 / content
        return content, MultiPoly(self.n, {m: c * inv for m, c in self.terms.items()})

    def monic(self):
        lc = self.leading_coefficient()
        if not lc:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self.scale(1 / lc)

    # printing ---------------------------------------------------------

    def monomial_string(self, m: int) -> str:
        parts = []
        for pos, e in enumerate(unpack(m, self.nvars)):
            if e:
                name = var_name(pos, self.n)
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = self.monomial_string(m)
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if not out:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(sign + body)
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly(n={self.n}, {self})"


# ---------------------------------------------------------------- gcd


_rng = random.Random(0x5EED)


def _normalize(p: MultiPoly) -> MultiPoly:
    return p.primitive()[1]


def _monomial_content(p: MultiPoly) -> int:
    """Largest monomial dividing every term of ``p`` (packed)."""
    nv = p.nvars
    mins = None
    for m in p.terms:
        ex = unpack(m, nv)
        mins = list(ex) if mins is None else [min(a, b) for a, b in zip(mins, ex)]
    return pack(mins)


def _specialize(p: MultiPoly, pos: int, values: dict) -> list:
    """Dense coefficient list in the variable at ``pos`` after substituting ints."""
    nv = p.nvars
    deg = p.degree_in(pos)
    out = [_ZERO] * (deg + 1)
    for m, c in p.terms.items():
        t = c
        for q in range(nv):
            if q != pos:
                e = _mexp(m, q)
                if e:
                    t = t * values[q] ** e
        out[_mexp(m, pos)] += t
    return out


def _uni_gcd_degree(f: list, g: list) -> int:
    """Degree of gcd of two dense univariate rational polynomials."""

    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    f, g = trim(list(f)), trim(list(g))
    while g:
        lg = g[-1]
        while len(f) >= len(g):
            if not f[-1]:
                f.pop()
                continue
            q = f[-1] / lg
            off = len(f) - len(g)
            for i, c in enumerate(g):
                f[off + i] -= q * c
            f.pop()
            trim(f)
            if not f:
                break
        f, g = g, trim(f)
    return len(f) - 1


def _coprime_by_specialization(p, q, common) -> bool:
    """Sound certificate that gcd(p, q) = 1 (may give up and return False).

    For every shared variable v, all other variables are replaced by random
    integers; if both v-leading coefficients survive and the univariate gcd
    is constant, the true gcd has v-degree 0.  Zero v-degree in every shared
    variable means the gcd is a constant.
    """
    nv = p.nvars
    for pos in common:
        ok = False
        for _ in range(2):
            values = {i: mpq(_rng.randint(-97, 97) or 1) for i in range(nv)}
            fp = _specialize(p, pos, values)
            fq = _specialize(q, pos, values)
            if not fp[-1] or not fq[-1]:
                continue
            if _uni_gcd_degree(fp, fq) == 0:
                ok = True
            break
        if not ok:
            return False
    return True


def _lc_in(p: MultiPoly, pos: int):
    deg = p.degree_in(pos)
    unit = _unit(p.nvars, pos) * deg
    return deg, MultiPoly(p.n, {m - unit: c for m, c in p.terms.items() if _mexp(m, pos) == deg})


def _prem(a: MultiPoly, b: MultiPoly, pos: int) -> MultiPoly:
    da = a.degree_in(pos)
    db, lcb = _lc_in(b, pos)
    e = da - db + 1
    r = a
    while not r.is_zero():
        dr, lcr = _lc_in(r, pos)
        if dr < db:
            break
        r = r * lcb - (lcr * b).shift(pos, dr - db)
        e -= 1
    return r * lcb ** e if e > 0 else r


def content_in(p: MultiPoly, pos: int) -> MultiPoly:
    coeffs = sorted(p.coeffs_in(pos).values(), key=len)
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = gcd(g, c)
    return _normalize(g) if not g.is_constant() else MultiPoly.one(p.n)


def _subresultant_pp(a: MultiPoly, b: MultiPoly, pos: int) -> MultiPoly:
    if a.degree_in(pos) < b.degree_in(pos):
        a, b = b, a
    one = MultiPoly.one(a.n)
    g = h = one
    while True:
        delta = a.degree_in(pos) - b.degree_in(pos)
        r = _prem(a, b, pos)
        if r.is_zero():
            break
        if r.degree_in(pos) == 0:
            return one
        a, b = b, r.exquo(g * h ** delta)
        g = _lc_in(a, pos)[1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g ** delta).exquo(h ** (delta - 1))
    return _normalize(b.exquo(content_in(b, pos)))


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to integer coprime coefficients
    with positive leading coefficient (the gcd of 0 and 0 is 0)."""
    if p.is_zero():
        return _normalize(q)
    if q.is_zero():
        return _normalize(p)
    n = p.n
    if p.is_constant() or q.is_constant():
        return MultiPoly.one(n)
    if len(p.terms) == 1 or len(q.terms) == 1:
        mono = _monomial_content(MultiPoly(n, {**{m: _ONE for m in p.terms}, **{m: _ONE for m in q.terms}}))
        return MultiPoly(n, {mono: _ONE})
    if p.total_degree() <= q.total_degree():
        if p.divides(q):
            return _normalize(p)
    elif q.divides(p):
        return _normalize(q)
    common = p.variables() & q.variables()
    if not common:
        return MultiPoly.one(n)
    if _coprime_by_specialization(p, q, common):
        return MultiPoly.one(n)
    if USE_FLINT:
        return _normalize(_from_flint(n, _to_flint(p).gcd(_to_flint(q))))
    return _normalize(_gcd_rec(_normalize(p), _normalize(q)))


def _gcd_rec(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    vp, vq = p.variables(), q.variables()
    if vp - vq:
        return gcd(content_in(p, min(vp - vq)), q)
    if vq - vp:
        return gcd(p, content_in(q, min(vq - vp)))
    pos = min(vp, key=lambda i: (max(p.degree_in(i), q.degree_in(i)), i))
    cp, cq = content_in(p, pos), content_in(q, pos)
    pp, qq = p.exquo(cp), q.exquo(cq)
    c = gcd(cp, cq)
    if pp.degree_in(pos) == 0 or qq.degree_in(pos) == 0:
        return c
    return c * _subresultant_pp(pp, qq, pos)


def lcm(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if p.is_zero() or q.is_zero():
        return MultiPoly.zero(p.n)
    if p == q:
        return p
    g = gcd(p, q)
    return (p * q.exquo(g)).monic()
