"""Exact traces of functions and forms along line pencils, Abel-inverse
reconstruction of hypersurfaces, and abelian forms of maximal degree."""

__version__ = "0.1.0"

from .abelian import AbelianBasis, abelian_basis, castelnuovo_bound, qform_trace_coeffs
from .errors import AbelTraceError, InputError, MathError, OracleFailure
from .parser import parse_poly, parse_ratfunc
from .poly import MultiPoly
from .ratfunc import RatFunc
from .reconstruct import (
    AbelianPair,
    abel_inverse,
    hankel_check,
    pi_inverse,
    pi_map,
    rho_inverse,
    rho_map,
    shock_check,
    solve_S,
    star_check,
    starstar_check,
    vanishing_pattern_ok,
    wood_test,
)
from .residue import ResidueQuery, dual_membership_test, residue_sum
from .trace import Cycle, MeroFunc, TraceData, TraceForm, power_sums, tilt, trace_form, trace_function
from .unipoly import UniPolyK, discriminant, resultant

__all__ = [
    "AbelTraceError",
    "AbelianBasis",
    "AbelianPair",
    "Cycle",
    "InputError",
    "MathError",
    "MeroFunc",
    "MultiPoly",
    "OracleFailure",
    "RatFunc",
    "ResidueQuery",
    "TraceData",
    "TraceForm",
    "UniPolyK",
    "abel_inverse",
    "abelian_basis",
    "castelnuovo_bound",
    "discriminant",
    "dual_membership_test",
    "hankel_check",
    "parse_poly",
    "parse_ratfunc",
    "pi_inverse",
    "pi_map",
    "power_sums",
    "qform_trace_coeffs",
    "residue_sum",
    "resultant",
    "rho_inverse",
    "rho_map",
    "shock_check",
    "solve_S",
    "star_check",
    "starstar_check",
    "tilt",
    "trace_form",
    "trace_function",
    "vanishing_pattern_ok",
    "wood_test",
]
