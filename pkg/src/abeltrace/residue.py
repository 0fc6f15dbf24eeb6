"""Complete residue sums in one variable and the duality (membership) test.

The sum of the local residues of ``num / (den F) dY`` over all roots of a
monic ``F`` of degree ``d`` is the coefficient of ``Y^(d-1)`` in
``num * den^(-1) mod F``.  No root is ever computed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ZeroDegree
from .ratfunc import RatFunc
from .unipoly import UniPolyK, divmod_general, inverse_mod, rem_monic, times_y_mod


def monicize(F: UniPolyK) -> UniPolyK:
    if F.is_zero():
        raise ZeroDegree("the zero polynomial cannot be monicized")
    return F.monic()


@dataclass(frozen=True)
class ResidueQuery:
    """``Res[ numerator dY / (denominator F) ]``; a non-monic F is monicized."""

    numerator: UniPolyK
    denominator: UniPolyK
    F: UniPolyK

    def __post_init__(self):
        F = monicize(self.F)
        if F.degree < 1:
            raise ZeroDegree("residue sums need deg F >= 1")
        object.__setattr__(self, "F", F)


def _reduced_integrand(num: UniPolyK, den: UniPolyK, F: UniPolyK) -> UniPolyK:
    if den.degree > 0:
        # a denominator that divides the numerator outright needs no inverse
        q, rest = divmod_general(num, den)
        if rest.is_zero():
            num, den = q, UniPolyK.one(num.n)
    r = rem_monic(num, F)
    if r.is_zero():
        return r
    if den.degree == 0:
        c = den.coeffs[0]
        return r if c.is_one() else r.scale(c.inverse())
    return rem_monic(r * inverse_mod(den, F), F)


def residue_sum(q: ResidueQuery) -> RatFunc:
    """Sum of the local residues of ``(num/den)/F dY`` over the roots of F."""
    d = q.F.degree
    if q.denominator.is_zero():
        raise ZeroDivisionError("zero denominator in residue query")
    return _reduced_integrand(q.numerator, q.denominator, q.F).coefficient(d - 1)


def residue(num: UniPolyK, F: UniPolyK, den: UniPolyK | None = None) -> RatFunc:
    """Shorthand for ``residue_sum(ResidueQuery(num, den or 1, F))``."""
    den = UniPolyK.one(num.n) if den is None else den
    return residue_sum(ResidueQuery(num, den, F))


def residue_sequence(base: UniPolyK, F: UniPolyK, count: int, den: UniPolyK | None = None) -> list:
    """``[Res[Y^k base dY / (den F)] for k < count]``.

    Reduces ``base/den`` once and then multiplies by ``Y`` modulo ``F``, which
    is far cheaper than reducing each ``Y^k base`` from scratch.
    """
    F = monicize(F)
    d = F.degree
    if d < 1:
        raise ZeroDegree("residue sums need deg F >= 1")
    den = UniPolyK.one(base.n) if den is None else den
    r = _reduced_integrand(base, den, F)
    out = []
    for k in range(count):
        out.append(r.coefficient(d - 1))
        if k + 1 < count:
            r = times_y_mod(r, F)
    return out


def dual_membership_test(H: UniPolyK, F: UniPolyK) -> bool:
    """True iff ``F`` divides ``H``, decided by the vanishing of the residues
    ``Res[Y^k H dY / F]`` for ``k < deg F`` and cross-checked against the
    Euclidean remainder."""
    F = monicize(F)
    if F.degree < 1:
        raise ZeroDegree("membership test needs deg F >= 1")
    by_residues = all(r.is_zero() for r in residue_sequence(H, F, F.degree))
    by_division = rem_monic(H, F).is_zero()
    if by_residues != by_division:
        raise ArithmeticError("residue duality and Euclidean division disagree")
    return by_residues
