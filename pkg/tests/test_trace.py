import pytest
import sympy

from abeltrace.corpus import reduced_corpus
from abeltrace.errors import DegreeDropAtInfinity, ImproperIntersection, InputError
from abeltrace.oracle import SamplePlan, numeric_trace, numeric_trace_form, oracle_compare
from abeltrace.poly import b_pos
from abeltrace.trace import (
    Cycle,
    MeroFunc,
    TraceForm,
    newton_power_sums,
    orientation_sign,
    power_sums,
    power_sums_by_residues,
    tilt,
    trace_form,
    trace_function,
)
from abeltrace.unipoly import UniPolyK

from conftest import R, sym


def cyc(text, n=1):
    return Cycle.parse(text, n)


def h_(text, n=1):
    return MeroFunc.parse(text, n)


def rs(*texts, n=1):
    return [R(t, n) for t in texts]


def test_tilt_parabola():
    T = tilt(cyc("y^2 - x1"))
    assert T.Q == UniPolyK.from_ratfunc(R("y^2 - a1*y - b1", 1))
    assert T.d == 2 and T.lc.is_one() and T.is_global


def test_tilt_cusp_reports_both_degrees():
    T = tilt(cyc("y^2 - x1^3"))
    assert T.d == 2 and T.global_degree == 3
    assert T.lc == R("-a1^3", 1)
    with pytest.raises(DegreeDropAtInfinity) as info:
        T.require_global()
    assert (info.value.vertical_degree, info.value.global_degree) == (2, 3)


def test_improper_intersection():
    with pytest.raises(ImproperIntersection):
        cyc("x1")


def test_cycle_rejects_nested_components():
    f = cyc("y - x1").polynomial()
    with pytest.raises(InputError):
        Cycle(1, ((f, 1), (f * f, 1)))


def test_power_sums_examples():
    T = tilt(cyc("y^2 - x1"))
    assert list(power_sums(T, 2).u) == rs("2", "a1", "a1^2 + 2*b1")
    u = power_sums(T, 4).u
    assert u[3] == R("a1^3 + 3*a1*b1", 1)
    assert u[4] == R("a1^4 + 4*a1^2*b1 + 2*b1^2", 1)


def test_power_sums_against_sympy_roots():
    # tilt is Y^3 - a1*Y - b1; sympy symmetrizes the power sums independently
    T = tilt(cyc("y^3 - x1"))
    Y, a, b = sympy.symbols("y a1 b1")
    poly = sympy.Poly(sym(T.Q.to_ratfunc()), Y)
    u = power_sums(T, 5).u
    roots = sympy.symbols("r0:3")
    elem = [sympy.Integer(1)] + [(-1) ** k * c for k, c in enumerate(poly.all_coeffs()[1:], 1)]
    for k in range(6):
        psum = sum(r ** k for r in roots)
        sym_expr = sympy.polys.polyfuncs.symmetrize(psum, *roots, formal=True)
        e1, e2, e3 = elem[1], elem[2], elem[3]
        subs = dict(zip([s for s, _ in sym_expr[2]], [e1, e2, e3]))
        expected = sympy.expand(sym_expr[0].subs(subs))
        assert sympy.expand(sym(u[k]) - expected) == 0


def test_newton_and_residue_routes_agree():
    for text in ["y^3 + x1*y - 2", "2*y^4 - x1^2*y^2 + y - x1", "y^2 + x1^2 - 1"]:
        T = tilt(cyc(text))
        assert newton_power_sums(T.Q, 6) == power_sums_by_residues(T, 6)


def test_u0_is_degree():
    for sample in reduced_corpus(1, 8):
        T = tilt(sample.V)
        assert power_sums(T, 0).u[0] == R(str(T.d), sample.n)


@pytest.mark.parametrize(
    "h, m, expected",
    [
        ("x1", 1, ["a1^2 + 2*b1", "a1^3 + 3*a1*b1"]),
        ("1/(2*y)", 0, ["-a1/(2*b1)"]),
        ("1", 2, ["2", "a1", "a1^2 + 2*b1"]),
    ],
)
def test_trace_function_examples(h, m, expected):
    assert list(trace_function(cyc("y^2 - x1"), h_(h), m).v) == rs(*expected)


@pytest.mark.parametrize(
    "h, expected",
    [("y", ["2*a1", "2*a1^2 + 2*b1"]), ("1", ["2", "2*a1"])],
)
def test_trace_form_examples(h, expected):
    assert list(trace_form(cyc("y^2 - x1"), h_(h)).w) == rs(*expected)


def test_trace_form_of_elliptic_differential_vanishes():
    w = trace_form(cyc("y^3 - x1^3 - 1"), h_("1/(3*y^2)")).w
    assert all(x.is_zero() for x in w) and len(w) == 2


def test_orientation_sign():
    assert orientation_sign((1,), (2,)) == 1
    assert orientation_sign((2,), (1,)) == -1
    tf = TraceForm(2, tuple(rs("1", "a1", "b2", n=2)))
    signs = {(I, J): s for I, J, s, _ in tf.terms()}
    assert signs[((), (1, 2))] == 1 and signs[((2,), (1,))] == -1


def test_semigroup_and_multiplicity():
    V1, V2 = cyc("y^2 - x1"), cyc("y - x1 - 1")
    T = tilt(V1 + V2)
    assert T.Q == tilt(V1).Q * tilt(V2).Q
    u, u1, u2 = (power_sums(tilt(V), 4).u for V in (V1 + V2, V1, V2))
    assert list(u) == [p + q for p, q in zip(u1, u2)]
    h = h_("x1*y + 1")
    v = trace_function(V1.scaled(3) + V2, h, 3).v
    v1, v2 = trace_function(V1, h, 3).v, trace_function(V2, h, 3).v
    assert list(v) == [p * R("3", 1) + q for p, q in zip(v1, v2)]


def test_power_sums_polynomial_for_algebraic_cycles():
    for sample in reduced_corpus(4, 10):
        T = tilt(sample.V)
        if T.lc.is_constant():
            assert all(x.is_polynomial() for x in power_sums(T, 2 * T.d).u)


def test_pole_locus_of_tilted_coefficients_is_b_free():
    # empirical check: denominators of the monic tilted coefficients avoid b
    for sample in reduced_corpus(8, 12):
        T = tilt(sample.V)
        n = sample.n
        for c in T.Q.coeffs:
            assert all(c.den.degree_in(b_pos(n, i)) <= 0 for i in range(1, n + 1))


@pytest.mark.parametrize("k", [0, 1, 3])
def test_numeric_agreement_on_corpus(k):
    plan = SamplePlan(21, 50)
    for sample in reduced_corpus(6, 4):
        V, h = sample.V, sample.h
        v = trace_function(V, h, k).v[k]
        w = trace_form(V, h, k).w[k]
        assert oracle_compare(v, plan, lambda p: numeric_trace(V, h, k, p), f"v{k}").passed
        assert oracle_compare(w, plan, lambda p: numeric_trace_form(V, h, k, p), f"w{k}").passed
