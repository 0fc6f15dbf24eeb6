"""Recovering a hypersurface and a function on it from their traces.

Power sums ``u_k`` determine the monic ``F`` through the Hankel system
``sum_{j<d} u_{k+j} c_j = -u_{k+d}``; traces ``v_k`` of a function then give
its interpolating polynomial ``H`` through ``sum_j u_{k+j} tau_j = v_k``.
From the trace-form coefficients ``w_k`` alone the same two steps run with
``w`` in place of ``u`` and the weighted moments ``xi_k`` in place of ``u``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .errors import (
    DegenerateHankel,
    DegenerateStildeSystem,
    InputError,
    NonSpecializable,
    NotCoprime,
    StarStarViolation,
    StarViolation,
)
from .linalg import SingularMatrix, determinant, rank_by_specialization, solve
from .poly import MultiPoly, a_pos, b_pos, x_pos, y_pos
from .ratfunc import RatFunc
from .residue import residue_sequence
from .trace import (
    Cycle,
    MeroFunc,
    TraceData,
    _as_mero,
    newton_power_sums,
    tilt,
    tilt_uni,
    trace_form,
    trace_form_weight,
    trace_function,
)
from .unipoly import UniPolyK, discriminant, inverse_mod, rem_monic


@dataclass(frozen=True)
class HankelSystem:
    """``A x = rhs`` with ``A[i][j] = seq[i + j]``."""

    A: tuple
    rhs: tuple
    detA: RatFunc

    @classmethod
    def build(cls, seq: Sequence[RatFunc], d: int, rhs: Sequence[RatFunc]) -> "HankelSystem":
        if len(seq) < 2 * d - 1:
            raise InputError(f"a {d}x{d} Hankel matrix needs {2 * d - 1} entries, got {len(seq)}")
        A = tuple(tuple(seq[i + j] for j in range(d)) for i in range(d))
        return cls(A, tuple(rhs), determinant([list(r) for r in A]))

    def solve(self):
        return solve([list(r) for r in self.A], list(self.rhs)).values


@dataclass(frozen=True)
class AbelianPair:
    F: UniPolyK
    H: UniPolyK


def _seq(data) -> list:
    if isinstance(data, TraceData):
        return list(data.u)
    return list(data)


def _degree_from_u0(u0: RatFunc) -> int:
    if not u0.is_constant():
        raise InputError(f"u_0 = {u0} is not a constant")
    d = u0.constant_value()
    if d.denominator != 1 or d < 1:
        raise InputError(f"u_0 = {u0} is not a positive integer")
    return int(d)


def _monic_from_low(n: int, low: Sequence[RatFunc]) -> UniPolyK:
    return UniPolyK(list(low) + [RatFunc.one(n)], n)


# ---------------------------------------------------------------- (S)


def solve_S(u) -> UniPolyK:
    """Monic ``F`` whose roots have power sums ``u_0, u_1, ...`` (needs ``u_0..u_{2d-1}``)."""
    u = _seq(u)
    if not u:
        raise InputError("empty power-sum sequence")
    d = _degree_from_u0(u[0])
    if len(u) < 2 * d:
        raise InputError(f"need u_0..u_{2 * d - 1}, got {len(u)} values")
    system = HankelSystem.build(u, d, [-u[k + d] for k in range(d)])
    if system.detA.is_zero():
        raise DegenerateHankel("the power-sum Hankel matrix is singular (cycle not reduced)")
    return _monic_from_low(u[0].n, system.solve())


def hankel_check(u, Q: UniPolyK):
    """``(det A, Disc Q, equal)`` for the Hankel matrix of ``u_0..u_{2d-2}``."""
    u = _seq(u)
    d = Q.degree
    A = HankelSystem.build(u, d, [RatFunc.zero(Q.n)] * d)
    disc = discriminant(Q)
    return A.detA, disc, A.detA == disc


# ---------------------------------------------------------------- star conditions


def _star_remainders(P: UniPolyK, F: UniPolyK):
    n = F.n
    y = UniPolyK.monomial(n, 1)
    for i in range(1, n + 1):
        yield rem_monic(P.partial(a_pos(n, i)) - y * P.partial(b_pos(n, i)), F)


def star_check(F: UniPolyK) -> bool:
    """``F`` divides ``dF/da_i - Y dF/db_i`` for every ``i``."""
    return all(r.is_zero() for r in _star_remainders(F, F))


def starstar_check(H: UniPolyK, F: UniPolyK) -> bool:
    """``F`` divides ``dH/da_i - Y dH/db_i`` for every ``i``."""
    return all(r.is_zero() for r in _star_remainders(H, F))


# ---------------------------------------------------------------- Pi


def pi_map(V: Cycle, validate: bool = True) -> UniPolyK:
    """The monic tilted polynomial of ``V``.

    With ``validate`` the result is compared with the Hankel reconstruction
    from its own power sums whenever that system is nondegenerate.
    """
    T = tilt(V).require_global()
    if validate:
        try:
            F = solve_S(newton_power_sums(T.Q, 2 * T.d - 1))
        except DegenerateHankel:
            return T.Q
        if F != T.Q:
            raise ArithmeticError("Hankel reconstruction disagrees with the tilted polynomial")
    return T.Q


def _at_a_zero(c: RatFunc) -> RatFunc:
    n = c.n
    try:
        return c.evaluate({a_pos(n, i): 0 for i in range(1, n + 1)})
    except ZeroDivisionError:
        raise NonSpecializable(f"coefficient {c} has a pole along a = 0") from None


def _b_to_x(p: MultiPoly) -> MultiPoly:
    n = p.n
    if not any(p.degree_in(b_pos(n, i)) > 0 for i in range(1, n + 1)):
        return p
    return p.substitute({b_pos(n, i): MultiPoly.variable(n, x_pos(n, i)) for i in range(1, n + 1)})


def specialize_a_zero(P: UniPolyK) -> RatFunc:
    """``P(y, 0, x)``: set ``a = 0``, read ``b`` as ``x`` and ``Y`` as ``y``."""
    n = P.n
    y = MultiPoly.variable(n, y_pos(n))
    acc = RatFunc.zero(n)
    for k, c in enumerate(P.coeffs):
        c0 = _at_a_zero(c)
        if not c0.is_zero():
            acc = acc + RatFunc(_b_to_x(c0.num), _b_to_x(c0.den)) * RatFunc(y ** k)
    return acc


def pi_inverse(F: UniPolyK) -> MultiPoly:
    """Defining polynomial ``f(x, y)`` of the cycle with tilted polynomial ``F``.

    Normalized to coprime integer coefficients with positive leading
    coefficient.
    """
    if not F.is_monic():
        raise InputError("pi_inverse expects a monic polynomial")
    if not star_check(F):
        raise StarViolation(f"{F} does not come from a cycle")
    f = specialize_a_zero(F)
    return f.num.primitive()[1]


# ---------------------------------------------------------------- rho


def rho_map(V: Cycle, h) -> UniPolyK:
    """Interpolating polynomial ``H`` of ``h`` on ``V`` (``deg H < d``)."""
    h = _as_mero(h, V.n)
    T = tilt(V).require_global()
    Q, d = T.Q, T.d
    data = trace_function(V, h, d - 1)
    u = newton_power_sums(Q, 2 * d - 2)
    system = HankelSystem.build(u, d, data.v)
    if system.detA.is_zero():
        raise DegenerateHankel("the power-sum Hankel matrix is singular (cycle not reduced)")
    H = UniPolyK(system.solve(), V.n)
    if not starstar_check(H, Q):
        raise StarStarViolation("the interpolating polynomial fails the double-star condition")
    if not rem_monic(tilt_uni(h.num) - H * tilt_uni(h.den), Q).is_zero():
        raise StarStarViolation("the interpolating polynomial does not agree with h on V")
    return H


def rho_inverse(F: UniPolyK, H: UniPolyK) -> MeroFunc:
    """``h(x, y) = H(y, 0, x)``."""
    if not starstar_check(H, F):
        raise StarStarViolation(f"{H} does not satisfy the double-star condition relative to {F}")
    return MeroFunc.from_ratfunc(specialize_a_zero(H))


# ---------------------------------------------------------------- Wood


def wood_test(u1: RatFunc, d: int | None = None) -> bool:
    """Whether ``u1`` is a polynomial of degree at most 1 in the ``b`` variables.

    ``d`` is accepted for interface symmetry; the criterion does not use it.
    """
    n = u1.n
    bs = [b_pos(n, i) for i in range(1, n + 1)]
    if u1.den.degree_in_group(bs) > 0:
        return False
    return u1.num.degree_in_group(bs) <= 1


# ---------------------------------------------------------------- shock waves


def shock_check(seq: Sequence[RatFunc]) -> bool:
    """``d seq[k]/da_i == d seq[k+1]/db_i`` for all ``i`` and consecutive ``k``."""
    if len(seq) < 2:
        raise InputError("shock_check needs at least two terms")
    n = seq[0].n
    for k in range(len(seq) - 1):
        for i in range(1, n + 1):
            if seq[k].derivative(a_pos(n, i)) != seq[k + 1].derivative(b_pos(n, i)):
                return False
    return True


def power_sum_shock_check(u: Sequence[RatFunc]) -> bool:
    """``(k+1) du_k/da_i == k du_{k+1}/db_i``, the identity power sums do satisfy."""
    n = u[0].n
    for k in range(len(u) - 1):
        for i in range(1, n + 1):
            if u[k].derivative(a_pos(n, i)) * (k + 1) != u[k + 1].derivative(b_pos(n, i)) * k:
                return False
    return True


def vanishing_pattern_ok(w: Sequence[RatFunc]) -> bool:
    """If ``w_k`` is the first zero entry, each later ``w_{k+j}`` must be
    polynomial in ``b`` of degree at most ``j - 1``."""
    first = next((k for k, x in enumerate(w) if x.is_zero()), None)
    if first is None:
        return True
    n = w[0].n
    bs = [b_pos(n, i) for i in range(1, n + 1)]
    for j in range(1, len(w) - first):
        x = w[first + j]
        if x.is_zero():
            continue
        if x.den.degree_in_group(bs) > 0 or x.num.degree_in_group(bs) > j - 1:
            return False
    return True


# ---------------------------------------------------------------- Abel inverse


def _diagnose(msg, rows, reference, n):
    rank = _generic_rank(rows, n)
    cause = "undetermined"
    if reference is not None:
        F_ref, H_ref = reference
        if _shares_factor(F_ref, H_ref):
            cause = "vanishing_on_component"
        elif _shares_factor(F_ref, trace_form_weight(F_ref)):
            cause = "vertical_line"
    return DegenerateStildeSystem(f"{msg} (rank {rank}, cause: {cause})", cause=cause, rank=rank)


_rank_rng = random.Random(0xAB1)


def _generic_rank(rows, n) -> int:
    """Rank at a few random rational parameter values (the maximum seen)."""
    best = 0
    for _ in range(3):
        point = {p: mpq(_rank_rng.randint(-40, 40), _rank_rng.randint(1, 9)) for p in range(n + 1, 3 * n + 1)}
        try:
            best = max(best, rank_by_specialization(rows, point))
        except ZeroDivisionError:
            continue
    return best


def _shares_factor(F: UniPolyK, P: UniPolyK) -> bool:
    """Whether ``F`` and ``P`` have a common root over ``Q(a, b)``."""
    if P.is_zero():
        return True
    try:
        inverse_mod(P, F)
    except NotCoprime:
        return True
    return False


def abel_inverse(w: Sequence[RatFunc], d: int, n: int | None = None, reference=None) -> AbelianPair:
    """Recover ``(F, H)`` from the trace-form coefficients ``w_0..w_{2d-1}``.

    ``reference`` is an optional ``(F, H)`` pair used only to explain a
    singular system: with it the error tells a component on which ``h``
    vanishes apart from a component where the trace-form weight vanishes.
    """
    w = list(w)
    if d < 1:
        raise InputError("d must be positive")
    if len(w) < 2 * d:
        raise InputError(f"need w_0..w_{2 * d - 1}, got {len(w)} values")
    n = w[0].n if n is None else n
    if any(x.n != n for x in w):
        raise InputError("all w_k must live in the same dimension")
    rows = [[w[k + j] for j in range(d)] for k in range(d)]
    try:
        sigma = solve(rows, [-w[k + d] for k in range(d)]).values
    except SingularMatrix:
        raise _diagnose("the trace-form Hankel system is singular", rows, reference, n) from None
    F = _monic_from_low(n, sigma)
    G = trace_form_weight(F)
    xi = residue_sequence(G, F, 2 * d - 1)
    xrows = [[xi[k + i] for i in range(d)] for k in range(d)]
    try:
        tau = solve(xrows, w[:d]).values
    except SingularMatrix:
        raise _diagnose("the weighted moment system is singular", xrows, (F, UniPolyK.one(n)), n) from None
    H = UniPolyK(tau, n)
    if not star_check(F):
        raise StarViolation(f"reconstructed {F} fails the star condition")
    if not starstar_check(H, F):
        raise StarStarViolation(f"reconstructed {H} fails the double-star condition")
    return AbelianPair(F, H)


def trace_pipeline_w(V: Cycle, h) -> list:
    """``w_0..w_{2d-1}`` for ``(V, h)``, the input expected by :func:`abel_inverse`."""
    T = tilt(V).require_global()
    return list(trace_form(V, h, 2 * T.d - 1).w)
