"""Floating-point cross-checks by explicit root finding.

Everything here works on a specialized, purely numeric polynomial
``f(a y + b, y)`` and sums over its complex roots, which is independent of
the residue machinery used for the exact results.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from gmpy2 import mpq

from .errors import (
    DegreeDropAtInfinity,
    LeadingCoefficientVanishes,
    NearDiscriminant,
    OracleFailure,
    PoleHit,
    RootConvergenceError,
)
from .poly import MultiPoly, a_pos, b_pos, format_rational, to_rational, var_name, x_pos, y_pos
from .ratfunc import RatFunc
from .trace import Cycle, MeroFunc, _as_mero, vertical_degree
from .unipoly import UniPolyK

RESIDUAL_TOL = 1e-12
COMPARE_TOL = 1e-9
DISC_GUARD = 1e-6
POLE_GUARD = 1e-9


# ---------------------------------------------------------------- sampling


@dataclass(frozen=True)
class SamplePlan:
    """Random rational parameter points ``(a, b)`` with ``|a_i|, |b_i| <= box``.

    ``exclusion`` is the discriminant guard applied a posteriori: points where
    the specialized polynomial has nearly coincident roots are skipped.
    """

    seed: int
    count: int
    box: object = 2
    exclusion: float = DISC_GUARD
    denominator: int = 64

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("a sample plan needs count >= 1")
        object.__setattr__(self, "box", to_rational(self.box))

    def points(self, n: int):
        """Endless deterministic stream of points ``{position: mpq}``."""
        rng = np.random.default_rng(self.seed)
        q = self.denominator
        top = int(self.box * q)
        while True:
            raw = rng.integers(-top, top + 1, size=2 * n)
            point = {}
            for i in range(1, n + 1):
                point[a_pos(n, i)] = mpq(int(raw[i - 1]), q)
                point[b_pos(n, i)] = mpq(int(raw[n + i - 1]), q)
            yield point


def point_label(point, n) -> dict:
    return {var_name(p, n): format_rational(v) for p, v in sorted(point.items())}


# ---------------------------------------------------------------- roots


def _horner(coeffs, z):
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def _initial_guesses(c):
    d = len(c) - 1
    radius = 1 + max(abs(x) for x in c[:-1])
    k = np.arange(d)
    angles = 2 * np.pi * k / d + 0.4 + 0.1 * np.sin(k + 1.0)
    return radius * np.exp(1j * angles) * (1 + 0.01 * np.cos(3.0 * k))


def find_roots(coeffs, max_iter: int = 500) -> np.ndarray:
    """Complex roots of ``sum coeffs[k] z^k`` by Aberth-Ehrlich iteration.

    Raises LeadingCoefficientVanishes for a zero top coefficient and
    RootConvergenceError when the polished residual is above tolerance.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c[-1] == 0:
        raise LeadingCoefficientVanishes("the specialized polynomial lost its leading term")
    c = c / c[-1]
    d = len(c) - 1
    if d == 0:
        return np.zeros(0, dtype=complex)
    dc = c[1:] * np.arange(1, d + 1)
    z = _initial_guesses(c)
    for _ in range(max_iter):
        p = _horner(c, z)
        dp = _horner(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dp != 0, p / dp, p)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            repulsion = (1 / diff).sum(axis=1) - 1
            step = ratio / (1 - ratio * repulsion)
        step = np.where(np.isfinite(step), step, 0)
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * (1 + np.abs(z))):
            break
    for _ in range(3):
        dp = _horner(dc, z)
        safe = dp != 0
        z = np.where(safe, z - _horner(c, z) / np.where(safe, dp, 1), z)
    # |p(z)| against the size of the terms summed at z, so large roots are not
    # held to a tolerance below Horner's own rounding
    scale = np.maximum(_horner(np.abs(c), np.abs(z)).real, 1 + np.max(np.abs(c)))
    residual = np.max(np.abs(_horner(c, z)) / scale)
    if not residual <= RESIDUAL_TOL:
        raise RootConvergenceError(f"scaled root residual {residual:.3e} above {RESIDUAL_TOL:.1e}")
    order = np.lexsort((z.imag, z.real))
    return z[order]


def _root_separation(rts) -> float:
    """``prod_{i<j} (y_i - y_j)^2``, the discriminant of the monic polynomial."""
    if len(rts) < 2:
        return 1.0
    disc = 1.0 + 0j
    for i in range(len(rts)):
        for j in range(i + 1, len(rts)):
            disc *= (rts[i] - rts[j]) ** 2
    return abs(disc)


def roots(F: UniPolyK, at) -> list:
    """Sorted complex roots of ``F`` at the parameter point ``at``."""
    try:
        coeffs = [float(c.eval_rational(at)) for c in F.coeffs]
    except ZeroDivisionError:
        raise LeadingCoefficientVanishes("a coefficient has a pole at the sample point") from None
    rts = find_roots(coeffs)
    if _root_separation(rts) < DISC_GUARD:
        raise NearDiscriminant("sample point is too close to the discriminant locus")
    return list(rts)


# ---------------------------------------------------------------- intersections


def _specialized_line_poly(f: MultiPoly, at) -> list:
    """Exact coefficients (low first) of ``y -> f(a y + b, y)`` at a numeric ``(a, b)``."""
    n = f.n
    y = MultiPoly.variable(n, y_pos(n))
    mapping = {
        x_pos(n, i): y.scale(at[a_pos(n, i)]) + at[b_pos(n, i)]
        for i in range(1, n + 1)
    }
    g = f.substitute(mapping)
    parts = g.coeffs_in(y_pos(n))
    deg = max(parts) if parts else 0
    return [parts[k].constant_value() if k in parts else mpq(0) for k in range(deg + 1)]


@dataclass
class Intersection:
    """Points of ``V`` on the line ``x = a y + b``, one entry per component."""

    n: int
    at: dict
    components: list = field(default_factory=list)  # (f, multiplicity, roots)

    def points(self):
        for f, k, rts in self.components:
            for y in rts:
                yield f, k, y

    def x_of(self, y):
        n = self.n
        return [complex(self.at[a_pos(n, i)]) * y + complex(self.at[b_pos(n, i)]) for i in range(1, n + 1)]

    def full_point(self, y):
        """Evaluation vector (position order) for ``(x, y, a, b)``."""
        n = self.n
        vec = [0j] * (3 * n + 1)
        xs = self.x_of(y)
        for i in range(1, n + 1):
            vec[x_pos(n, i)] = xs[i - 1]
            vec[a_pos(n, i)] = complex(self.at[a_pos(n, i)])
            vec[b_pos(n, i)] = complex(self.at[b_pos(n, i)])
        vec[y_pos(n)] = y
        return vec


def intersect(V: Cycle, at) -> Intersection:
    """Roots of every component on the line through the sample point ``at``.

    Results are memoized per (cycle, point) so several quantities compared at
    the same sample share one root computation.
    """
    return _intersect(V, tuple(sorted(at.items())))


@lru_cache(maxsize=2048)
def _intersect(V: Cycle, key) -> Intersection:
    at = dict(key)
    inter = Intersection(V.n, at)
    everything = []
    for f, k in V.components:
        total, vd = f.total_degree(), vertical_degree(f)
        if vd != total:
            raise DegreeDropAtInfinity(
                f"{f} has vertical degree {vd} but total degree {total}",
                vertical_degree=vd,
                global_degree=total,
            )
        coeffs = _specialized_line_poly(f, at)
        if len(coeffs) - 1 < total:
            raise LeadingCoefficientVanishes(f"the line meets {{{f} = 0}} at infinity")
        rts = find_roots([float(c) for c in coeffs])
        inter.components.append((f, k, list(rts)))
        everything.extend(rts)
    if _root_separation(everything) < DISC_GUARD:
        raise NearDiscriminant("sample point is too close to the discriminant locus")
    return inter


def _eval_mero(h: MeroFunc, vec) -> complex:
    den = h.den.eval_complex(vec)
    if abs(den) < POLE_GUARD:
        raise PoleHit("h has a pole at an intersection point")
    return h.num.eval_complex(vec) / den


def numeric_trace(V: Cycle, h, k: int, at) -> complex:
    """``sum_j y_j^k h(a y_j + b, y_j)`` with component multiplicities."""
    h = _as_mero(h, V.n)
    inter = intersect(V, at)
    total = 0j
    for _, mult, y in inter.points():
        total += mult * y ** k * _eval_mero(h, inter.full_point(y))
    return total


def numeric_trace_form(V: Cycle, h, k: int, at) -> complex:
    """Coefficient ``w_k`` of the trace of ``h dx`` summed over the intersection points.

    At a point of ``{f = 0}`` on the line, implicit differentiation gives the
    weight ``f_y / (f_y + sum_i a_i f_{x_i})``.
    """
    h = _as_mero(h, V.n)
    n = V.n
    inter = intersect(V, at)
    total = 0j
    for f, mult, y in inter.points():
        vec = inter.full_point(y)
        fy = f.derivative(y_pos(n)).eval_complex(vec)
        slope = fy + sum(complex(at[a_pos(n, i)]) * f.derivative(x_pos(n, i)).eval_complex(vec) for i in range(1, n + 1))
        if abs(slope) < POLE_GUARD:
            raise PoleHit("the line is tangent to V at an intersection point")
        total += mult * y ** k * _eval_mero(h, vec) * fy / slope
    return total


def numeric_elementary(V: Cycle, j: int, at) -> complex:
    """``e_j`` of the intersection ``y``-coordinates (with multiplicity)."""
    ys = [y for _, mult, y in intersect(V, at).points() for _ in range(mult)]
    poly = np.poly(np.array(ys)) if ys else np.array([1.0])
    return complex((-1) ** j * poly[j])


def numeric_interpolant(V: Cycle, h, at) -> list:
    """Coefficients of the polynomial of degree ``< d`` taking the values of ``h``
    at the intersection points (Vandermonde solve)."""
    h = _as_mero(h, V.n)
    inter = intersect(V, at)
    ys, vals = [], []
    for _, _, y in inter.points():
        ys.append(y)
        vals.append(_eval_mero(h, inter.full_point(y)))
    vander = np.vander(np.array(ys), increasing=True)
    return list(np.linalg.solve(vander, np.array(vals)))


def numeric_residue(num: UniPolyK, den: UniPolyK, F: UniPolyK, at) -> complex:
    """``sum_j (num/den)(y_j) / F'(y_j)`` over the roots of a squarefree ``F``."""
    F = F.monic()
    rts = roots(F, at)
    total = 0j
    for y in rts:
        vec = [0j] * (3 * F.n + 1)
        for p, v in at.items():
            vec[p] = complex(v)
        vec[y_pos(F.n)] = y
        d = sum(c.eval_complex(vec) * y ** k for k, c in enumerate(den.coeffs))
        if abs(d) < POLE_GUARD:
            raise PoleHit("denominator vanishes at a root")
        nv = sum(c.eval_complex(vec) * y ** k for k, c in enumerate(num.coeffs))
        fp = sum(c.eval_complex(vec) * k * y ** (k - 1) for k, c in enumerate(F.coeffs) if k)
        total += nv / d / fp
    return total


# ---------------------------------------------------------------- comparison


@dataclass(frozen=True)
class SampleResult:
    point: dict
    symbolic: str
    numeric: tuple
    error: float
    passed: bool


@dataclass(frozen=True)
class OracleReport:
    label: str
    tolerance: float
    samples: tuple
    skipped: int
    unconverged: int = 0

    @property
    def max_error(self) -> float:
        return max((s.error for s in self.samples), default=0.0)

    @property
    def passed(self) -> bool:
        return bool(self.samples) and all(s.passed for s in self.samples)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "max_error": self.max_error,
            "passed": self.passed,
            "samples": [
                {
                    "error": s.error,
                    "numeric": list(s.numeric),
                    "passed": s.passed,
                    "point": s.point,
                    "symbolic": s.symbolic,
                }
                for s in self.samples
            ],
            "skipped": self.skipped,
            "tolerance": self.tolerance,
            "unconverged": self.unconverged,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)


def compare_values(exact, approx: complex, tol: float = COMPARE_TOL):
    """``(error, passed)``: relative error, or absolute when ``|exact| < 1``."""
    ref = complex(exact)
    diff = abs(approx - ref)
    err = diff / abs(ref) if abs(ref) >= 1 else diff
    return err, err <= tol


SKIPPABLE = (NearDiscriminant, PoleHit, LeadingCoefficientVanishes, ZeroDivisionError)


def oracle_compare(
    symbolic: RatFunc,
    plan: SamplePlan,
    evaluator: Callable,
    label: str = "",
    tol: float = COMPARE_TOL,
    max_attempts: int | None = None,
) -> OracleReport:
    """Evaluate ``symbolic`` exactly and ``evaluator`` numerically at ``plan.count``
    valid sample points; points near the discriminant or at poles are skipped."""
    n = symbolic.n
    results = []
    skipped = unconverged = 0
    limit = max_attempts if max_attempts is not None else 20 * plan.count + 20
    for attempt, point in enumerate(plan.points(n)):
        if len(results) == plan.count:
            break
        if attempt >= limit:
            raise OracleFailure(f"only {len(results)} of {plan.count} sample points were usable")
        try:
            exact = symbolic.eval_rational(point)
            approx = complex(evaluator(point))
        except SKIPPABLE:
            skipped += 1
            continue
        except RootConvergenceError:
            unconverged += 1
            continue
        err, ok = compare_values(exact, approx, tol)
        if math.isnan(err):
            err, ok = float("inf"), False
        results.append(
            SampleResult(point_label(point, n), format_rational(exact), (approx.real, approx.imag), err, ok)
        )
    return OracleReport(label, tol, tuple(results), skipped, unconverged)


__all__ = [
    "COMPARE_TOL",
    "DISC_GUARD",
    "OracleReport",
    "SamplePlan",
    "compare_values",
    "find_roots",
    "intersect",
    "numeric_elementary",
    "numeric_interpolant",
    "numeric_residue",
    "numeric_trace",
    "numeric_trace_form",
    "oracle_compare",
    "roots",
]
