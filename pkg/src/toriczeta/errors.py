"""Exception hierarchy.

Every error carries a short machine-readable ``code`` and the process exit
status the CLI uses when it surfaces.
"""


class ToricZetaError(Exception):
    code = "error"
    exit_code = 1

    def to_json(self):
        return {"error": self.code, "message": str(self)}


# ff
class NotPrime(ToricZetaError):
    code = "not_prime"
    exit_code = 2


class DegreeOverflow(ToricZetaError):
    code = "degree_overflow"
    exit_code = 3


class WrongField(ToricZetaError):
    code = "wrong_field"
    exit_code = 2


class NotIrreducible(ToricZetaError):
    code = "not_irreducible"
    exit_code = 2


# laurent
class PolySyntaxError(ToricZetaError):
    code = "syntax_error"
    exit_code = 2

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)
        self.pos = pos


class ZeroPolynomial(ToricZetaError):
    code = "zero_polynomial"
    exit_code = 2


class BadVariable(ToricZetaError):
    code = "bad_variable"
    exit_code = 2


class ZeroCoordinate(ToricZetaError):
    code = "zero_coordinate"
    exit_code = 2


class EmptyRestriction(ToricZetaError):
    code = "empty_restriction"
    exit_code = 2


# geometry
class NotSimplex(ToricZetaError):
    code = "not_simplex"
    exit_code = 4


class DegeneratePolytope(ToricZetaError):
    code = "degenerate_polytope"
    exit_code = 4


class NotAFace(ToricZetaError):
    code = "not_a_face"
    exit_code = 4


# counting
class BudgetExceeded(ToricZetaError):
    code = "budget_exceeded"
    exit_code = 3


# koszul
class NotRegular(ToricZetaError):
    code = "not_regular"
    exit_code = 5


class BadCharacteristic(ToricZetaError):
    code = "bad_characteristic"
    exit_code = 6


# zeta
class DegreeMismatch(ToricZetaError):
    code = "degree_mismatch"
    exit_code = 7


class NonIntegral(ToricZetaError):
    code = "non_integral"
    exit_code = 7


class WidthMismatch(ToricZetaError):
    code = "width_mismatch"
    exit_code = 7
