"""Seeded generators of small reduced cycles and functions on them."""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .poly import MultiPoly, x_pos, y_pos
from .trace import Cycle, MeroFunc, _uni_gcd_degree, is_reduced, tilt, tilt_uni
from .unipoly import UniPolyK


def _monomial(n, exps_xy, coeff):
    nv = 3 * n + 1
    full = list(exps_xy) + [0] * (nv - n - 1)
    return MultiPoly.from_exponents(n, {tuple(full): coeff})


def _monomials_xy(n, deg):
    out = []

    def rec(prefix, left):
        if len(prefix) == n + 1:
            out.append(tuple(prefix))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e)

    rec([], deg)
    return out


def random_polynomial(rng: random.Random, n: int, d: int, terms: int = 3, mixed_top: bool = False) -> MultiPoly:
    """``c y^d`` plus ``terms`` random monomials of lower degree (or of degree ``d``
    involving ``x`` when ``mixed_top``), small integer coefficients."""
    f = _monomial(n, [0] * n + [d], rng.choice([1, 1, 1, -1, 2]))
    lower = [e for e in _monomials_xy(n, d) if sum(e) < d]
    top = [e for e in _monomials_xy(n, d) if sum(e) == d and e[n] < d]
    for e in rng.sample(lower, min(terms, len(lower))):
        f = f + _monomial(n, e, rng.choice([-3, -2, -1, 1, 2, 3]))
    if mixed_top:
        f = f + _monomial(n, rng.choice(top), rng.choice([-1, 1]))
    # guarantee some x-dependence so the cycle is not a union of horizontal planes
    if all(f.degree_in(x_pos(n, i)) <= 0 for i in range(1, n + 1)):
        f = f + _monomial(n, [1] + [0] * n, -1)
    return f


def random_function(rng: random.Random, n: int, allow_poles: bool = True) -> MeroFunc:
    """A small polynomial in ``(x, y)``, sometimes divided by ``y + c`` or ``x1 + c``."""
    num = MultiPoly.zero(n)
    while num.is_zero():
        for e in rng.sample(_monomials_xy(n, 2), 2):
            num = num + _monomial(n, e, rng.choice([-2, -1, 1, 2, 3]))
    den = MultiPoly.one(n)
    if allow_poles and rng.random() < 0.3:
        var = rng.choice([y_pos(n), x_pos(n, 1)])
        den = MultiPoly.variable(n, var) + rng.choice([-2, -1, 1, 2, 3])
    return MeroFunc(num, den)


@dataclass(frozen=True)
class Sample:
    V: Cycle
    h: MeroFunc

    @property
    def n(self):
        return self.V.n


def _coprime(P: UniPolyK, Q: UniPolyK, rng: random.Random) -> bool:
    """Coprimality over ``Q(a, b)`` certified at one random rational point.

    Coprime images with the degree of ``Q`` preserved imply a nonzero
    resultant.  A failed certificate only rejects the sample.
    """
    n = Q.n
    point = {p: mpq(rng.randint(-30, 30), rng.randint(1, 5)) for p in range(n + 1, 3 * n + 1)}
    try:
        p = [c.eval_rational(point) for c in P.coeffs]
        q = [c.eval_rational(point) for c in Q.coeffs]
    except ZeroDivisionError:
        return False
    if q[-1] == 0:
        return False
    return _uni_gcd_degree(p, q) == 0


def _usable(V: Cycle, h: MeroFunc, rng: random.Random) -> bool:
    T = tilt(V)
    if not T.is_global or not is_reduced(V):
        return False
    if not h.den.is_constant() and not _coprime(tilt_uni(h.den), T.Q, rng):
        return False
    # h must not vanish identically on a component
    return all(_coprime(tilt_uni(h.num), c.Q, rng) for c in T.components)


def reduced_corpus(seed: int, count: int, ns=(1, 2), dmax: int = 4, dmax_by_n=None, plain_n=()) -> list:
    """``count`` reduced cycles with a function each.

    Dimensions alternate through ``ns``; degrees are drawn from ``2..dmax``
    (capped per dimension by ``dmax_by_n``) with an occasional line.  Roughly
    one sample in five is a sum of two components and one in four has a
    non-constant leading coefficient after tilting.

    For dimensions in ``plain_n`` the tilted leading coefficient is kept
    constant and ``h`` polynomial.  Exact Hankel solves over four or more
    parameters grow quickly otherwise.
    """
    rng = random.Random(seed)
    caps = dict(dmax_by_n or {})
    out = []
    i = 0
    while len(out) < count:
        n = ns[i % len(ns)]
        i += 1
        cap = min(dmax, caps.get(n, dmax))
        d = 1 if cap == 1 or rng.random() < 0.1 else rng.randint(2, cap)
        plain = n in plain_n
        mixed = not plain and rng.random() < 0.25
        if rng.random() < 0.2 and d >= 2:
            d1 = rng.randint(1, d - 1)
            comps = (
                (random_polynomial(rng, n, d1, terms=2), 1),
                (random_polynomial(rng, n, d - d1, terms=2), 1),
            )
            try:
                V = Cycle(n, comps)
            except Exception:
                continue
        else:
            V = Cycle.from_poly(random_polynomial(rng, n, d, terms=3, mixed_top=mixed))
        h = random_function(rng, n, allow_poles=not plain)
        if plain and not tilt(V).lc.is_constant():
            continue
        if _usable(V, h, rng):
            out.append(Sample(V, h))
    return out


# fixed, hand-checkable members used alongside the random ones
NAMED = {
    "parabola": ("y^2 - x1", 1),
    "cubic": ("y^3 - x1^3 - 1", 1),
    "quartic": ("y^4 + x1^4 - 1", 1),
    "quadric": ("y^2 - x1*y + x2^2 - 1", 2),
}

