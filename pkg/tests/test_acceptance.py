"""End-to-end acceptance checks, one test per criterion.

Each test records a ``PASS`` or ``FAIL`` line (printed in the terminal
summary and on stdout with ``-s``) and then asserts the criterion at its
stated tolerance.
"""

import functools
import json
import random
import shutil
import subprocess
import sys

import numpy as np
import pytest
import sympy
from gmpy2 import mpq

from abeltrace import oracle
from abeltrace.abelian import abelian_basis, castelnuovo_bound, genus_plane_curve
from abeltrace.corpus import reduced_corpus
from abeltrace.errors import DegenerateStildeSystem
from abeltrace.oracle import (
    SamplePlan,
    numeric_elementary,
    numeric_interpolant,
    numeric_trace,
    numeric_trace_form,
    oracle_compare,
)
from abeltrace.parser import parse_poly, parse_ratfunc
from abeltrace.poly import x_pos, y_pos
from abeltrace.ratfunc import RatFunc
from abeltrace.reconstruct import (
    abel_inverse,
    hankel_check,
    pi_inverse,
    pi_map,
    power_sum_shock_check,
    rho_inverse,
    rho_map,
    shock_check,
    trace_pipeline_w,
    wood_test,
)
from abeltrace.trace import Cycle, MeroFunc, power_sums, tilt, trace_form, trace_function

SEED = 2024
RESULTS = []


def record(criterion, passed, detail):
    line = f"{'PASS' if passed else 'FAIL'} criterion {criterion}: {detail}"
    RESULTS.append(line)
    print(line)
    return passed


@functools.lru_cache(maxsize=None)
def corpus():
    """20 reduced cycles with a function each, n in {1, 2}, d <= 4."""
    return reduced_corpus(SEED, 20, ns=(1, 2), dmax=4)


@functools.lru_cache(maxsize=None)
def pipeline_corpus():
    """Same generator; n = 2 members capped at d = 3 to keep exact solves short."""
    return reduced_corpus(SEED, 20, ns=(1, 2), dmax=4, dmax_by_n={2: 3})


def test_criterion_1_hankel_discriminant():
    bad = []
    for i, s in enumerate(corpus()):
        T = tilt(s.V)
        detA, disc, _ = hankel_check(power_sums(T, 2 * T.d - 2).u, T.Q)
        if not (detA - disc).is_zero():
            bad.append(i)
    dims = sorted({(s.n, tilt(s.V).d) for s in corpus()})
    ok = record(1, not bad, f"det A - Disc Q == 0 on {len(corpus()) - len(bad)}/20 cycles, (n, d) in {dims}")
    assert ok


def test_criterion_2_shock_wave_power_sums_and_traces():
    failures = []
    for i, s in enumerate(corpus()):
        d = tilt(s.V).d
        u = power_sums(tilt(s.V), 2 * d + 1).u
        v = trace_function(s.V, s.h, 2 * d + 1).v
        if not shock_check(u):
            failures.append((i, "u"))
        if not shock_check(v):
            failures.append((i, "v"))
    ok = record(
        2,
        not failures,
        f"d u_k/da_i == d u_(k+1)/db_i and likewise v_k, k <= 2d: {len(failures)} of 40 sequences violate it",
    )
    assert ok, (
        "power sums satisfy (k+1) du_k/da = k du_(k+1)/db, not the unweighted identity; "
        "e.g. u_1 = a1, u_2 = a1^2 + 2*b1 for y^2 - x1"
    )


def test_criterion_2_trace_form_variant():
    # companion check: the unweighted identity does hold for the trace-form
    # coefficients w_k, and the weighted one for the power sums
    bad_w, bad_u = [], []
    for i, s in enumerate(corpus()):
        d = tilt(s.V).d
        if not shock_check(trace_form(s.V, s.h, 2 * d + 1).w):
            bad_w.append(i)
        if not power_sum_shock_check(power_sums(tilt(s.V), 2 * d + 1).u):
            bad_u.append(i)
    ok = record(
        "2 (w_k form)",
        not bad_w and not bad_u,
        f"d w_k/da_i == d w_(k+1)/db_i on {20 - len(bad_w)}/20; (k+1) du_k/da_i == k du_(k+1)/db_i on {20 - len(bad_u)}/20",
    )
    assert ok


def _points_on_surface(f, rng, count):
    """Points ``(x, y)`` with ``f(x, y) = 0``, ``x`` random rational."""
    n = f.n
    out = []
    while len(out) < count:
        xs = {x_pos(n, i): mpq(rng.randint(-60, 60), 32) for i in range(1, n + 1)}
        g = f.evaluate(xs)
        parts = g.coeffs_in(y_pos(n))
        deg = max(parts)
        coeffs = [float(parts[k].constant_value()) if k in parts else 0.0 for k in range(deg + 1)]
        for y in np.roots(coeffs[::-1]):
            out.append([complex(xs[x_pos(n, i)]) for i in range(1, n + 1)] + [complex(y)])
    return out[:count]


def _eval_xy(r: RatFunc, point):
    n = r.n
    vec = [0j] * (3 * n + 1)
    for i in range(n + 1):
        vec[i] = point[i]
    return r.num.eval_complex(vec) / r.den.eval_complex(vec)


def test_criterion_3_round_trips():
    rng = random.Random(SEED)
    exact_ok = numeric_ok = 0
    worst = 0.0
    problems = []
    samples = pipeline_corpus()
    for i, s in enumerate(samples):
        f = s.V.polynomial()
        F = pi_map(s.V)
        back = pi_inverse(F)
        ratio = RatFunc(back) / RatFunc(f)
        if not ratio.is_constant():
            problems.append((i, "pi"))
            continue
        hb = rho_inverse(F, rho_map(s.V, s.h))
        diff = s.h.num * hb.den - hb.num * s.h.den
        if s.n == 1:
            if f.divides(diff):
                exact_ok += 1
            else:
                problems.append((i, "rho"))
        else:
            h = s.h.as_ratfunc()
            hr = hb.as_ratfunc()
            errs = []
            for pt in _points_on_surface(f, rng, 20):
                want = _eval_xy(h, pt)
                got = _eval_xy(hr, pt)
                errs.append(abs(got - want) / max(1.0, abs(want)))
            worst = max(worst, max(errs))
            if max(errs) <= 1e-9:
                numeric_ok += 1
            else:
                problems.append((i, "rho-numeric"))
    n1 = sum(1 for s in samples if s.n == 1)
    ok = record(
        3,
        not problems,
        f"pi_inverse(pi_map(V)) ~ f on all 20; rho round trip exact on {exact_ok}/{n1} (n=1), "
        f"numeric on {numeric_ok}/{20 - n1} (n=2, 20 points, max err {worst:.1e})",
    )
    assert ok, problems


def test_criterion_4_abel_inverse_pipeline():
    mismatches = []
    for i, s in enumerate(pipeline_corpus()):
        d = tilt(s.V).d
        pair = abel_inverse(trace_pipeline_w(s.V, s.h), d, s.n)
        if pair.F != pi_map(s.V) or pair.H != rho_map(s.V, s.h):
            mismatches.append(i)
    crafted = [
        (Cycle.parse("y - x1", 1) + Cycle.parse("y^2 - x1 - 1", 1), "y - x1"),
        (Cycle.parse("y^2 - x1", 1) + Cycle.parse("y + x1 - 2", 1), "y^2 - x1"),
        (Cycle.parse("y - x1 - x2", 2) + Cycle.parse("y^2 + x2 - 1", 2), "x1 + x2 - y"),
    ]
    diagnosed = 0
    for V, text in crafted:
        h = MeroFunc.parse(text, V.n)
        try:
            abel_inverse(trace_pipeline_w(V, h), tilt(V).d, V.n, reference=(pi_map(V), rho_map(V, h)))
        except DegenerateStildeSystem as exc:
            diagnosed += exc.cause == "vanishing_on_component"
    ok = record(
        4,
        not mismatches and diagnosed == len(crafted),
        f"(F, H) recovered exactly on {20 - len(mismatches)}/20; "
        f"{diagnosed}/{len(crafted)} degenerate inputs diagnosed as vanishing on a component",
    )
    assert ok


def test_criterion_5_wood():
    algebraic = [wood_test(power_sums(tilt(s.V), 1).u[1]) for s in corpus()]
    crafted = ["b1^2", "a1*b1^2 + b1", "1/(b1 + 1)"]
    verdicts = [wood_test(parse_ratfunc(t, 1)) for t in crafted]
    ok = record(
        5,
        all(algebraic) and not any(verdicts),
        f"u_1 affine in b on {sum(algebraic)}/20 corpus members; crafted {crafted} -> {verdicts}",
    )
    assert ok


CURVES = {3: "y^3 - x1^3 - 1", 4: "y^4 + x1^4 - 1", 5: "y^5 + x1^5 - x1*y + 2"}


@functools.lru_cache(maxsize=None)
def plane_bases():
    return {d: abelian_basis(parse_poly(t, 1), 1) for d, t in CURVES.items()}


def test_criterion_6_abelian_dimension():
    dims, exact, numeric = {}, True, True
    worst = 0.0
    for d, B in plane_bases().items():
        dims[d] = B.dimension
        exact &= B.dimension == genus_plane_curve(d) and all(c.vanishes for c in B.certificates)
        V = Cycle.from_poly(B.f)
        for form in B.forms():
            for k in range(2):
                rep = oracle_compare(
                    RatFunc.zero(1), SamplePlan(SEED, 20), lambda p: numeric_trace_form(V, form, k, p), f"w{k}"
                )
                worst = max(worst, rep.max_error)
                numeric &= rep.passed
    ok = record(
        6,
        exact and numeric and [dims[d] for d in (3, 4, 5)] == [1, 3, 6],
        f"dimensions {dims} == genus; w_0, w_1 exactly zero; numeric max |w| {worst:.1e} over 20 samples",
    )
    assert ok


def test_criterion_7_castelnuovo():
    mismatches = []
    count = 0
    for n in range(0, 4):
        for q in range(0, n + 1):
            for d in range(1, 7):
                expected = int(sympy.binomial(n, q) * sympy.binomial(d + n - q - 1, n + 1))
                count += 1
                if castelnuovo_bound(d, n, q) != expected:
                    mismatches.append((d, n, q))
    top = {d: castelnuovo_bound(d, 1, 1) for d in (3, 4, 5)}
    matches_6 = all(top[d] == plane_bases()[d].dimension for d in top)
    ok = record(7, not mismatches and matches_6, f"{count - len(mismatches)}/{count} values match; q = n equals criterion 6 dims {top}")
    assert ok


def _oracle_suite(samples, plan):
    """Reports for every exported trace quantity of every sample."""
    reports = []
    for idx, s in enumerate(samples):
        V, h = s.V, s.h
        T = tilt(V)
        d = T.d
        kmax = 2 * d - 1
        u = power_sums(T, kmax).u
        v = trace_function(V, h, kmax).v
        w = trace_form(V, h, kmax).w
        F, H = pi_map(V), rho_map(V, h)
        for k in range(kmax + 1):
            reports.append(oracle_compare(u[k], plan, lambda p, k=k: numeric_trace(V, "1", k, p), f"{idx}:u{k}"))
            reports.append(oracle_compare(v[k], plan, lambda p, k=k: numeric_trace(V, h, k, p), f"{idx}:v{k}"))
            reports.append(oracle_compare(w[k], plan, lambda p, k=k: numeric_trace_form(V, h, k, p), f"{idx}:w{k}"))
        for j in range(1, d + 1):
            sigma = F.coefficient(d - j) * (-1) ** j
            reports.append(oracle_compare(sigma, plan, lambda p, j=j: numeric_elementary(V, j, p), f"{idx}:e{j}"))
        for i in range(d):
            reports.append(
                oracle_compare(H.coefficient(i), plan, lambda p, i=i: numeric_interpolant(V, h, p)[i], f"{idx}:tau{i}")
            )
    return reports


def test_criterion_8_oracle_agreement():
    plan = SamplePlan(SEED, 50)
    reports = _oracle_suite(pipeline_corpus(), plan)
    failed = [r.label for r in reports if not r.passed or len(r.samples) != 50]
    worst = max(r.max_error for r in reports)
    # determinism: recompute a slice from scratch and compare the JSON
    oracle._intersect.cache_clear()
    again = _oracle_suite(pipeline_corpus()[:3], plan)
    first = [r.to_json() for r in reports[: len(again)]]
    deterministic = first == [r.to_json() for r in again]
    ok = record(
        8,
        not failed and deterministic,
        f"{len(reports) - len(failed)}/{len(reports)} quantities (u, v, w, e_j, tau_i) within 1e-9 on 50 samples each, "
        f"max err {worst:.1e}; rerun identical: {deterministic}",
    )
    assert ok, failed[:10]


CLI_EXAMPLES = [
    ["trace", "--n", "1", "--f", "y^2 - x1", "--h", "x1", "--kmax", "2"],
    ["castelnuovo", "--d", "4", "--n", "2", "--q", "1"],
    ["wood", "--u1", "b1^2"],
]


def _cli(args):
    exe = shutil.which("abeltrace")
    cmd = [exe] + args if exe else [sys.executable, "-m", "abeltrace.cli"] + args
    return subprocess.run(cmd, capture_output=True, check=True).stdout


def test_criterion_9_cli_examples():
    outputs = [(_cli(args), _cli(args)) for args in CLI_EXAMPLES]
    identical = all(a == b for a, b in outputs)
    trace_doc = json.loads(outputs[0][0])
    content = (
        trace_doc["v"][:2] == ["a1^2+2*b1", "a1^3+3*a1*b1"]
        and outputs[1][0].strip() == b'{"pi_q": 8}'
        and outputs[2][0].strip() == b'{"affine_in_b": false}'
    )
    ok = record(9, identical and content, f"3 documented commands byte-identical across two runs: {identical}; expected content: {content}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
