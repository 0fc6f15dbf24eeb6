"""Fraction-free (Bareiss) elimination over the field of rational functions.

Each row is first scaled by the lcm of its denominators so the elimination
runs on polynomials with exact divisions only; the single gcd per unknown
happens when the Cramer numerators are turned back into rational functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import poly
from .poly import MultiPoly, lcm
from .ratfunc import RatFunc


class SingularMatrix(ArithmeticError):
    pass


def _scale_rows(rows):
    """Clear denominators row by row; returns (poly rows, row multipliers)."""
    out, mults = [], []
    for row in rows:
        den = None
        for x in row:
            if x.den.is_one():
                continue
            den = x.den if den is None else lcm(den, x.den)
        if den is None:
            out.append([x.num for x in row])
            mults.append(None)
        else:
            out.append([x.num * den.exquo(x.den) for x in row])
            mults.append(den)
    return out, mults


class _PolyRing:
    """Ring operations Bareiss needs, on MultiPoly or on flint polynomials."""

    def __init__(self, n: int, flint_backed: bool):
        self.n = n
        self.flint = flint_backed
        if flint_backed:
            ctx = poly._flint_ctx(3 * n + 1)
            self.zero, self.one = ctx.from_dict({}), ctx.from_dict({(0,) * (3 * n + 1): 1})
        else:
            self.zero, self.one = MultiPoly.zero(n), MultiPoly.one(n)

    @classmethod
    def for_matrix(cls, m):
        n = m[0][0].n
        work = sum(len(x.terms) for row in m for x in row)
        return cls(n, poly.USE_FLINT and work >= _FLINT_MATRIX_TERMS)

    def load(self, m):
        return [[poly._to_flint(x) for x in row] for row in m] if self.flint else m

    def unload(self, x) -> MultiPoly:
        return poly._from_flint(self.n, x) if self.flint else x

    def exquo(self, a, b):
        return a / b if self.flint else a.exquo(b)


# matrices with fewer stored terms than this stay in pure Python
_FLINT_MATRIX_TERMS = 200


def _forward(m, ncols, ring):
    """In-place Bareiss on a square-left-block polynomial matrix.

    Returns ``(last_pivot, sign)`` or raises SingularMatrix with the column
    where no pivot exists.
    """
    size = len(m)
    prev = ring.one
    sign = 1
    for k in range(size):
        if m[k][k].is_zero():
            for p in range(k + 1, size):
                if not m[p][k].is_zero():
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                raise SingularMatrix(k)
        pivot = m[k][k]
        for i in range(k + 1, size):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, ncols):
                val = row_i[j] * pivot
                if not mik.is_zero():
                    val = val - mik * row_k[j]
                row_i[j] = val if k == 0 else ring.exquo(val, prev)
            row_i[k] = ring.zero
        prev = pivot
    return prev, sign


def determinant(rows) -> RatFunc:
    """Exact determinant of a square matrix of RatFunc."""
    size = len(rows)
    if size == 0:
        raise ValueError("empty matrix")
    n = rows[0][0].n
    m, mults = _scale_rows(rows)
    ring = _PolyRing.for_matrix(m)
    try:
        last, sign = _forward(ring.load(m), size, ring)
    except SingularMatrix:
        return RatFunc.zero(n)
    det = RatFunc(ring.unload(last) * sign)
    for mult in mults:
        if mult is not None:
            det = det / RatFunc(mult)
    return det


@dataclass(frozen=True)
class Solution:
    values: list
    det: RatFunc


def solve(rows, rhs) -> Solution:
    """Solve ``A x = rhs`` exactly; raises SingularMatrix when det A = 0."""
    size = len(rows)
    if any(len(r) != size for r in rows) or len(rhs) != size:
        raise ValueError("solve expects a square system")
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, mults = _scale_rows(aug)
    ring = _PolyRing.for_matrix(m)
    m = ring.load(m)
    last, sign = _forward(m, size + 1, ring)
    # fraction-free back substitution: x_i = X_i / last with X_i polynomial
    xs = [None] * size
    for i in range(size - 1, -1, -1):
        acc = m[i][size] * last
        for j in range(i + 1, size):
            if not m[i][j].is_zero():
                acc = acc - m[i][j] * xs[j]
        xs[i] = ring.exquo(acc, m[i][i]) if i < size - 1 else m[i][size]
    last = ring.unload(last)
    values = [RatFunc(ring.unload(x), last) for x in xs]
    det = RatFunc(last * sign)
    for mult in mults:
        if mult is not None:
            det = det / RatFunc(mult)
    return Solution(values, det)


def _fraction_rank(mat) -> int:
    mat = [list(r) for r in mat]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][c] != 0:
                f = mat[r][c] / mat[rank][c]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def rank_by_specialization(rows, point) -> int:
    """Rank of the matrix evaluated at an exact rational point.

    A lower bound for the generic rank; equal to it off a proper subvariety.
    """
    return _fraction_rank([[x.eval_rational(point) for x in row] for row in rows])


def rational_rank(vectors) -> int:
    """Rank over Q of a list of equal-length rational vectors."""
    return _fraction_rank(vectors)
