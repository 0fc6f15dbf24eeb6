import sys

import pytest
import sympy

from abeltrace import poly
from abeltrace.parser import parse_poly, parse_ratfunc


def sym(obj):
    """Independent sympy image of a MultiPoly / RatFunc via its printed form."""
    return sympy.sympify(str(obj).replace("^", "**"))


def symbols_for(n):
    xs = sympy.symbols(f"x1:{n + 1}")
    a = sympy.symbols(f"a1:{n + 1}")
    b = sympy.symbols(f"b1:{n + 1}")
    return xs, sympy.Symbol("y"), a, b


def same(obj, expr):
    return sympy.simplify(sym(obj) - expr) == 0


@pytest.fixture(params=[True, False], ids=["flint", "pure"])
def backend(request, monkeypatch):
    """Run a test once with the flint accelerator and once without."""
    if request.param and poly.flint is None:
        pytest.skip("python-flint not installed")
    monkeypatch.setattr(poly, "USE_FLINT", request.param)
    monkeypatch.setattr(poly, "FLINT_MIN_WORK", 1)
    return request.param


P = parse_poly
R = parse_ratfunc


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
