"""Exception hierarchy.

Every error carries ``name`` (the identifier reported by the CLI) and an
``exit_code`` used when it escapes to the command line: 2 for invalid input,
3 for mathematical degeneracy, 4 for oracle failures.
"""


class AbelTraceError(Exception):
    name = "AbelTraceError"
    exit_code = 2


class InputError(AbelTraceError):
    name = "InputError"
    exit_code = 2


class PolySyntaxError(InputError):
    name = "SyntaxError"

    def __init__(self, message, position=None, expected=None):
        self.position = position
        self.expected = expected
        if position is not None:
            message = f"{message} at position {position}"
        if expected:
            message = f"{message} (expected {expected})"
        super().__init__(message)


class UnknownVariable(InputError):
    name = "UnknownVariable"


class OutOfRange(InputError):
    name = "OutOfRange"


class ImproperIntersection(InputError):
    name = "ImproperIntersection"


class MathError(AbelTraceError):
    """Base class of the degeneracies a computation can run into."""

    name = "MathError"
    exit_code = 3


class NonMonicDivisor(MathError):
    name = "NonMonicDivisor"


class NotCoprime(MathError):
    name = "NotCoprime"


class ZeroDegree(MathError):
    name = "ZeroDegree"


class PolarLocusMeetsCycle(NotCoprime):
    name = "PolarLocusMeetsCycle"


class DegreeDropAtInfinity(MathError):
    name = "DegreeDropAtInfinity"

    def __init__(self, message, vertical_degree=None, global_degree=None):
        self.vertical_degree = vertical_degree
        self.global_degree = global_degree
        super().__init__(message)


class NotReduced(MathError):
    name = "NotReduced"


class DegenerateHankel(MathError):
    name = "DegenerateHankel"


class DegenerateStildeSystem(MathError):
    """The trace-form Hankel system is singular.

    ``cause`` is one of ``"vanishing_on_component"``, ``"vertical_line"`` or
    ``"undetermined"`` (when no reference polynomials were available to tell
    the two apart); ``rank`` is the rank of the singular matrix.
    """

    name = "DegenerateStildeSystem"

    def __init__(self, message, cause="undetermined", rank=None):
        self.cause = cause
        self.rank = rank
        super().__init__(message)


class NonSpecializable(MathError):
    name = "NonSpecializable"


class StarViolation(MathError):
    name = "StarViolation"


class StarStarViolation(MathError):
    name = "StarStarViolation"


class NearDiscriminant(MathError):
    name = "NearDiscriminant"


class LeadingCoefficientVanishes(MathError):
    name = "LeadingCoefficientVanishes"


class PoleHit(MathError):
    name = "PoleHit"


class RootConvergenceError(MathError):
    name = "RootConvergenceError"


class OracleFailure(AbelTraceError):
    name = "OracleFailure"
    exit_code = 4
