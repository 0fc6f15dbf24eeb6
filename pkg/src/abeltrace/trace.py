"""Traces along the pencil of lines ``x = a y + b``.

A hypersurface ``f(x, y) = 0`` meets the line ``x = a y + b`` where the
tilted polynomial ``f(a Y + b, Y)`` vanishes.  Dividing out its leading
coefficient (a polynomial in ``a`` only) gives the monic ``Q`` whose roots are
the ``y``-coordinates of the intersection points, so every trace is a
complete residue sum over ``Q``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import (
    DegreeDropAtInfinity,
    ImproperIntersection,
    InputError,
    NotCoprime,
    PolarLocusMeetsCycle,
)
from .parser import parse_poly, parse_ratfunc
from .poly import MultiPoly, _uni_gcd_degree, a_pos, b_pos, x_pos, y_pos
from .ratfunc import RatFunc
from .residue import residue_sequence
from .unipoly import UniPolyK, discriminant


def _check_xy(p: MultiPoly, what: str):
    n = p.n
    bad = [v for v in p.variables() if v > y_pos(n)]
    if bad:
        raise InputError(f"{what} must only involve x1..x{n} and y, got {p}")


@dataclass(frozen=True)
class Cycle:
    """A formal sum ``k_1 V_1 + ... + k_s V_s`` of hypersurfaces ``V_i = {f_i = 0}``."""

    n: int
    components: tuple

    def __post_init__(self):
        comps = tuple((f, int(k)) for f, k in self.components)
        if not comps:
            raise InputError("a cycle needs at least one component")
        for f, k in comps:
            if f.n != self.n:
                raise InputError(f"component {f} lives in dimension {f.n}, expected {self.n}")
            if k < 1:
                raise InputError(f"multiplicity {k} of {f} must be positive")
            _check_xy(f, "cycle components")
            if f.is_constant():
                raise InputError(f"component {f} is constant")
            if f.evaluate({x_pos(self.n, i): 0 for i in range(1, self.n + 1)}).is_zero():
                raise ImproperIntersection(f"{{{f} = 0}} contains the vertical line x = 0")
        for (f, _), (g, _) in itertools.permutations(comps, 2):
            if g.divides(f):
                raise InputError(f"component {f} is divisible by component {g}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_poly(cls, f: MultiPoly, multiplicity: int = 1) -> "Cycle":
        return cls(f.n, ((f, multiplicity),))

    @classmethod
    def parse(cls, text: str, n: int) -> "Cycle":
        return cls.from_poly(parse_poly(text, n))

    def polynomial(self) -> MultiPoly:
        out = MultiPoly.one(self.n)
        for f, k in self.components:
            out = out * f ** k
        return out

    @property
    def is_multiplicity_free(self):
        return all(k == 1 for _, k in self.components)

    def __add__(self, other: "Cycle") -> "Cycle":
        if other.n != self.n:
            raise InputError("cannot add cycles of different dimensions")
        comps = [list(c) for c in self.components]
        for g, k in other.components:
            for c in comps:
                if c[0].primitive()[1] == g.primitive()[1]:
                    c[1] += k
                    break
            else:
                comps.append([g, k])
        return Cycle(self.n, tuple(tuple(c) for c in comps))

    def scaled(self, k: int) -> "Cycle":
        return Cycle(self.n, tuple((f, m * k) for f, m in self.components))

    def __str__(self):
        parts = []
        for f, k in self.components:
            parts.append(f"({f})" if k == 1 else f"{k}*({f})")
        return " + ".join(parts)


@dataclass(frozen=True)
class MeroFunc:
    """A meromorphic function ``num / den`` in the coordinates ``(x, y)``."""

    num: MultiPoly
    den: MultiPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise InputError("meromorphic function with zero denominator")
        _check_xy(self.num, "functions")
        _check_xy(self.den, "functions")

    @classmethod
    def from_ratfunc(cls, r: RatFunc) -> "MeroFunc":
        return cls(r.num, r.den)

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "MeroFunc":
        return cls(p, MultiPoly.one(p.n))

    @classmethod
    def parse(cls, text: str, n: int) -> "MeroFunc":
        return cls.from_ratfunc(parse_ratfunc(text, n))

    @classmethod
    def one(cls, n) -> "MeroFunc":
        return cls.from_poly(MultiPoly.one(n))

    @property
    def n(self):
        return self.num.n

    def as_ratfunc(self) -> RatFunc:
        return RatFunc(self.num, self.den)

    def __str__(self):
        return str(self.as_ratfunc())


# ---------------------------------------------------------------- tilting


def tilt_poly(p: MultiPoly) -> MultiPoly:
    """``p(a y + b, y)``."""
    n = p.n
    y = MultiPoly.variable(n, y_pos(n))
    mapping = {}
    for i in range(1, n + 1):
        if p.degree_in(x_pos(n, i)):
            a = MultiPoly.variable(n, a_pos(n, i))
            b = MultiPoly.variable(n, b_pos(n, i))
            mapping[x_pos(n, i)] = a * y + b
    return p.substitute(mapping) if mapping else p


def tilt_uni(p: MultiPoly) -> UniPolyK:
    """``p(a Y + b, Y)`` as a polynomial in ``Y`` over ``Q(a, b)``."""
    return UniPolyK.from_multipoly(tilt_poly(p))


def vertical_degree(f: MultiPoly) -> int:
    """``deg_y f(0, y)``: the number of intersection points with ``x = 0``."""
    n = f.n
    return f.evaluate({x_pos(n, i): 0 for i in range(1, n + 1)}).degree_in(y_pos(n))


@dataclass(frozen=True)
class TiltedComponent:
    Q: UniPolyK
    multiplicity: int
    d: int
    lc: RatFunc

    @property
    def global_degree(self):
        return self.Q.degree


@dataclass(frozen=True)
class TiltedCycle:
    """Monic model ``Q = prod Q_i^k_i`` of a tilted cycle.

    ``d`` is the vertical degree.  ``Q`` has degree ``global_degree``, which
    exceeds ``d`` when the leading coefficient ``lc`` vanishes at ``a = 0``
    (some intersection points escape to infinity as the line becomes
    vertical).  Only when the two agree is ``Q`` the polynomial whose roots
    are the intersection points near the vertical line; every operation that
    relies on that calls :meth:`require_global`.
    """

    n: int
    Q: UniPolyK
    d: int
    lc: RatFunc
    components: tuple

    @property
    def global_degree(self) -> int:
        return self.Q.degree

    @property
    def is_global(self) -> bool:
        return self.Q.degree == self.d

    def require_global(self) -> "TiltedCycle":
        if not self.is_global:
            raise DegreeDropAtInfinity(
                f"vertical degree {self.d} but the tilted polynomial has degree "
                f"{self.global_degree} in Y (leading coefficient {self.lc})",
                vertical_degree=self.d,
                global_degree=self.global_degree,
            )
        return self


def tilt(V: Cycle) -> TiltedCycle:
    comps = []
    Q = UniPolyK.one(V.n)
    lc = RatFunc.one(V.n)
    d = 0
    for f, k in V.components:
        ft = tilt_uni(f)
        lead = ft.leading()
        Qi = ft.monic()
        di = vertical_degree(f)
        comps.append(TiltedComponent(Qi, k, di, lead))
        Q = Q * Qi ** k
        lc = lc * lead ** k
        d += k * di
    return TiltedCycle(V.n, Q, d, lc, tuple(comps))


# ---------------------------------------------------------------- traces


@dataclass(frozen=True)
class TraceData:
    u: tuple
    v: tuple | None = None


@dataclass(frozen=True)
class TraceForm:
    """Coefficients ``w_0..w_kmax`` of the trace of ``h dx1 ^ ... ^ dxn``.

    The trace is ``sum_k w_k sum_{|I| = k} sign(I, J) da_I ^ db_J`` where ``J``
    is the complement of ``I`` in ``1..n`` and ``sign(I, J)`` is the
    signature of the permutation listing ``I`` then ``J`` (each increasing).
    Entries beyond ``w_n`` are the continuation of the same residue formula.
    """

    n: int
    w: tuple

    def terms(self):
        """``(I, J, sign, w_|I|)`` for every multi-index ``I`` of ``1..n``."""
        out = []
        idx = range(1, self.n + 1)
        for k in range(self.n + 1):
            for I in itertools.combinations(idx, k):
                J = tuple(i for i in idx if i not in I)
                out.append((I, J, orientation_sign(I, J), self.w[k]))
        return out


def orientation_sign(I, J) -> int:
    perm = list(I) + list(J)
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def newton_power_sums(Q: UniPolyK, m: int) -> list:
    """Power sums ``p_0..p_m`` of the roots of a monic ``Q`` (Newton's identities)."""
    if not Q.is_monic():
        raise ValueError("Newton's identities need a monic polynomial")
    d = Q.degree
    c = Q.coeffs
    p = [RatFunc.constant(Q.n, d)]
    for k in range(1, m + 1):
        acc = RatFunc.zero(Q.n)
        for i in range(1, min(k - 1, d) + 1):
            if not c[d - i].is_zero():
                acc = acc + c[d - i] * p[k - i]
        if k <= d and not c[d - k].is_zero():
            acc = acc + c[d - k] * k
        p.append(-acc)
    return p


def power_sums(T: TiltedCycle, m: int) -> TraceData:
    """``u_k = Tr_V(y^k)`` for ``k = 0..m``."""
    if m < 0:
        raise InputError("m must be nonnegative")
    T.require_global()
    return TraceData(tuple(newton_power_sums(T.Q, m)))


def power_sums_by_residues(T: TiltedCycle, m: int) -> list:
    T.require_global()
    return residue_sequence(T.Q.derivative(), T.Q, m + 1)


def _residues_or_polar(base, Q, count, den):
    try:
        return residue_sequence(base, Q, count, den)
    except NotCoprime:
        raise PolarLocusMeetsCycle("the polar locus of h contains a component of V") from None


def _as_mero(h, n) -> MeroFunc:
    if isinstance(h, MeroFunc):
        return h
    if isinstance(h, RatFunc):
        return MeroFunc.from_ratfunc(h)
    if isinstance(h, MultiPoly):
        return MeroFunc.from_poly(h)
    if isinstance(h, str):
        return MeroFunc.parse(h, n)
    raise TypeError(f"cannot interpret {h!r} as a function")


def trace_function(V: Cycle, h, m: int) -> TraceData:
    """``v_k = Tr_V(y^k h)`` for ``k = 0..m`` together with the power sums.

    Multiplicities are honoured: the residue of ``dQ/Q`` at a root of order
    ``k`` is ``k``, so the result is ``sum k_i Tr_{V_i}``.
    """
    if m < 0:
        raise InputError("m must be nonnegative")
    h = _as_mero(h, V.n)
    T = tilt(V).require_global()
    Q = T.Q
    base = tilt_uni(h.num) * Q.derivative()
    v = _residues_or_polar(base, Q, m + 1, tilt_uni(h.den))
    return TraceData(tuple(newton_power_sums(Q, m)), tuple(v))


def trace_form_weight(F: UniPolyK) -> UniPolyK:
    """``dF/dY - sum_i a_i dF/db_i``."""
    n = F.n
    G = F.derivative()
    for i in range(1, n + 1):
        G = G - F.partial(b_pos(n, i)).scale(RatFunc.variable(n, a_pos(n, i)))
    return G


def trace_form(V: Cycle, h, kmax: int | None = None) -> TraceForm:
    """``w_k = Res[Y^k h~ (dF/dY - sum a_i dF/db_i) dY / F]`` for ``k = 0..kmax``.

    ``F`` is the monic model of the tilted cycle; ``kmax`` defaults to ``n``.
    """
    h = _as_mero(h, V.n)
    kmax = V.n if kmax is None else kmax
    if kmax < 0:
        raise InputError("kmax must be nonnegative")
    F = tilt(V).require_global().Q
    base = tilt_uni(h.num) * trace_form_weight(F)
    w = _residues_or_polar(base, F, kmax + 1, tilt_uni(h.den))
    return TraceForm(V.n, tuple(w))


# ---------------------------------------------------------------- reducedness

_rng = random.Random(0xC0FFEE)


def is_squarefree(F: UniPolyK, attempts: int = 3) -> bool:
    """Whether a polynomial over ``Q(a, b)`` has no repeated root.

    A random rational specialization with a squarefree image is a proof;
    otherwise the exact discriminant decides.
    """
    if F.degree <= 1:
        return True
    F = F.monic()
    n = F.n
    params = list(range(n + 1, 3 * n + 1))
    for _ in range(attempts):
        point = {p: mpq(_rng.randint(-50, 50), _rng.randint(1, 7)) for p in params}
        try:
            coeffs = [c.eval_rational(point) for c in F.coeffs]
        except ZeroDivisionError:
            continue
        deriv = [c * k for k, c in enumerate(coeffs)][1:]
        if _uni_gcd_degree(coeffs, deriv) == 0:
            return True
    return not discriminant(F).is_zero()


def is_reduced(V: Cycle) -> bool:
    """True when every multiplicity is 1 and the tilted polynomial is squarefree."""
    if not V.is_multiplicity_free:
        return False
    return is_squarefree(tilt(V).Q)
