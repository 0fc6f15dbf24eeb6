"""Maximal-degree abelian forms ``P / (df/dy) dx`` and their dimension count."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from gmpy2 import mpq

from .errors import (
    DegreeDropAtInfinity,
    InputError,
    NotCoprime,
    NotReduced,
    OutOfRange,
    PolarLocusMeetsCycle,
)
from .linalg import rational_rank
from .poly import MultiPoly, b_pos, pack, x_pos, y_pos
from .reconstruct import _at_a_zero
from .residue import residue_sequence
from .trace import Cycle, MeroFunc, _as_mero, is_squarefree, tilt, tilt_uni, trace_form
from .unipoly import UniPolyK


@dataclass(frozen=True)
class NullityCertificate:
    """Evidence that the trace of ``P / (df/dy) dx`` vanishes.

    ``degrees[k]`` is ``deg_Y(Y^k P(aY+b, Y))``; each is at most ``d - 2``,
    so the residue over the degree-``d`` tilted polynomial is zero.  ``w`` is
    the same trace recomputed through the general trace-form routine.
    """

    generator: MultiPoly
    degrees: tuple
    w: tuple

    @property
    def vanishes(self) -> bool:
        return all(x.is_zero() for x in self.w)


@dataclass(frozen=True)
class AbelianBasis:
    f: MultiPoly
    n: int
    d: int
    generators: tuple
    dimension: int
    certificates: tuple = ()
    independent: bool | None = None

    def forms(self):
        """Each generator as the function ``P / (df/dy)`` multiplying ``dx``."""
        fy = self.f.derivative(y_pos(self.n))
        return [MeroFunc(P, fy) for P in self.generators]


def _monomials_up_to(n: int, deg: int) -> list:
    """Monomials in ``x1..xn, y`` of total degree at most ``deg``, ascending graded-lex."""
    if deg < 0:
        return []
    nv = 3 * n + 1
    out = []
    for exps in itertools.product(range(deg + 1), repeat=n + 1):
        if sum(exps) <= deg:
            full = list(exps) + [0] * (nv - n - 1)
            out.append(pack(full))
    out.sort()
    return [MultiPoly(n, {m: mpq(1)}) for m in out]


def castelnuovo_bound(d: int, n: int, q: int) -> int:
    """``C(n, q) * C(d + n - q - 1, n + 1)``."""
    for name, v in (("d", d), ("n", n), ("q", q)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise OutOfRange(f"{name} must be an integer, got {v!r}")
    if d < 1:
        raise OutOfRange(f"d = {d} must be at least 1")
    if n < 0 or not 0 <= q <= n:
        raise OutOfRange(f"need 0 <= q <= n, got q = {q}, n = {n}")
    return comb(n, q) * comb(d + n - q - 1, n + 1)


def _check_global(f: MultiPoly, n: int) -> int:
    V = Cycle.from_poly(f)
    T = tilt(V)
    d = f.total_degree()
    if T.d != d:
        raise DegreeDropAtInfinity(
            f"vertical degree {T.d} differs from the total degree {d}",
            vertical_degree=T.d,
            global_degree=d,
        )
    if not is_squarefree(T.Q):
        raise NotReduced(f"{f} is not reduced")
    return d


def abelian_basis(f: MultiPoly, n: int | None = None, verify: bool = True) -> AbelianBasis:
    """Generators ``x^alpha y^beta`` with ``|alpha| + beta <= d - n - 2``.

    With ``verify`` every generator gets a :class:`NullityCertificate` and
    the basis an independence verdict from its vertical-slice trace data.
    """
    n = f.n if n is None else n
    if n != f.n:
        raise InputError(f"polynomial lives in dimension {f.n}, not {n}")
    d = _check_global(f, n)
    gens = tuple(_monomials_up_to(n, d - n - 2))
    dim = len(gens)
    if dim != comb(d - 1, n + 1):
        raise ArithmeticError(f"generator count {dim} disagrees with C({d - 1}, {n + 1})")
    if not verify:
        return AbelianBasis(f, n, d, gens, dim)
    V = Cycle.from_poly(f)
    fy = f.derivative(y_pos(n))
    certs = []
    for P in gens:
        tP = tilt_uni(P)
        degrees = tuple(tP.degree + k for k in range(n + 1))
        w = trace_form(V, MeroFunc(P, fy)).w
        certs.append(NullityCertificate(P, degrees, w))
    independent = generators_independent(f, n, gens) if gens else True
    return AbelianBasis(f, n, d, gens, dim, tuple(certs), independent)


def _slice_polynomial(f: MultiPoly) -> UniPolyK:
    """``F(Y, 0, b)``: the monic tilted polynomial on the vertical lines ``x = b``."""
    n = f.n
    F = tilt(Cycle.from_poly(f)).require_global().Q
    return UniPolyK([_at_a_zero(c) for c in F.coeffs], n)


def _on_slice(p: MultiPoly) -> UniPolyK:
    """``p(b, Y)``."""
    n = p.n
    mapping = {x_pos(n, i): MultiPoly.variable(n, b_pos(n, i)) for i in range(1, n + 1) if p.degree_in(x_pos(n, i))}
    return UniPolyK.from_multipoly(p.substitute(mapping) if mapping else p)


def _slice_traces(F0: UniPolyK, h: MeroFunc, kmax: int) -> list:
    base = _on_slice(h.num) * F0.derivative()
    try:
        return residue_sequence(base, F0, kmax + 1, _on_slice(h.den))
    except NotCoprime:
        raise PolarLocusMeetsCycle(f"the polar locus of {h} contains a component of the cycle") from None


def qform_trace_coeffs(f: MultiPoly, n: int, q: int, h: dict, kmax: int) -> dict:
    """``t_{I,k}(b) = Res[Y^k h_I(b, Y) dF(Y,0,b)/dY dY / F(Y,0,b)]`` for ``k <= kmax``."""
    if not 0 <= q <= n:
        raise OutOfRange(f"need 0 <= q <= n, got q = {q}")
    if kmax < 0:
        raise OutOfRange("kmax must be nonnegative")
    F0 = _slice_polynomial(f)
    out = {}
    for I, hI in h.items():
        I = tuple(I)
        if len(I) != q or list(I) != sorted(set(I)) or any(not 1 <= i <= n for i in I):
            raise InputError(f"{I} is not an increasing {q}-multi-index of 1..{n}")
        t = _slice_traces(F0, _as_mero(hI, n), kmax)
        for k, val in enumerate(t):
            out[(I, k)] = val
    return out


def generators_independent(f: MultiPoly, n: int, gens) -> bool:
    """Linear independence over Q of ``P / (df/dy)`` on ``{f = 0}``.

    The traces ``t_0..t_{d-1}`` on vertical lines determine a function on the
    hypersurface, so independent coefficient vectors certify independent forms.
    """
    F0 = _slice_polynomial(f)
    d = F0.degree
    fy = f.derivative(y_pos(n))
    rows = []
    for P in gens:
        t = _slice_traces(F0, MeroFunc(P, fy), d - 1)
        row = {}
        for k, val in enumerate(t):
            if not val.is_polynomial():
                raise ArithmeticError(f"slice trace {val} is not polynomial in b")
            for m, c in val.num.terms.items():
                row[(k, m)] = c
        rows.append(row)
    keys = sorted({key for row in rows for key in row})
    vectors = [[row.get(key, 0) for key in keys] for row in rows]
    if not keys:
        return False
    return rational_rank(vectors) == len(gens)


def lattice_point_count(n: int, top: int) -> int:
    """``#{(alpha, beta) in N^(n+1) : |alpha| + beta <= top}`` by direct enumeration."""
    if top < 0:
        return 0
    return sum(1 for e in itertools.product(range(top + 1), repeat=n + 1) if sum(e) <= top)


def genus_plane_curve(d: int) -> int:
    return (d - 1) * (d - 2) // 2


__all__ = [
    "AbelianBasis",
    "NullityCertificate",
    "abelian_basis",
    "castelnuovo_bound",
    "generators_independent",
    "genus_plane_curve",
    "lattice_point_count",
    "qform_trace_coeffs",
]
