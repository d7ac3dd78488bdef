"""Exception hierarchy.

``ValidationError`` subclasses signal bad input data; ``CheckFailure``
subclasses signal that an internal exact check did not hold (for example a
Galois-descent coercion that left a non-rational residue).
"""


class PVError(Exception):
    pass


class ValidationError(PVError, ValueError):
    pass


class CheckFailure(PVError, ArithmeticError):
    pass


class NotSquarefree(ValidationError):
    pass


class NotARoot(ValidationError):
    def __init__(self, index, msg=None):
        self.index = index
        super().__init__(msg or f"automorphism image #{index} is not a root of the defining polynomial")


class NotClosedUnderComposition(ValidationError):
    pass


class BaseMismatch(ValidationError):
    pass


class TowerMismatch(ValidationError):
    pass


class NotAUnit(ValidationError, ZeroDivisionError):
    pass


class SingularGroupElement(ValidationError):
    pass


class UnsupportedDegree(ValidationError):
    pass


class UnsupportedField(ValidationError):
    pass


class ZeroInput(ValidationError):
    pass


class DIsSquare(ValidationError):
    pass


class ZeroBeta(ValidationError):
    pass


class DegenerateForm(ValidationError):
    pass


class DegeneratePolynomial(ValidationError):
    pass


class NotSemistable(ValidationError):
    pass


class CharTwoUnsupported(ValidationError):
    pass


class NonUnit(ValidationError):
    pass


class FiberDataMismatch(ValidationError):
    pass


class NormConditionUnsatisfiable(ValidationError):
    pass


class UnsupportedGaloisCase(ValidationError):
    pass


class FactorBoundExceeded(ValidationError):
    pass


class BudgetExceeded(PVError, MemoryError):
    pass


class NotRational(CheckFailure):
    pass


class NotHermitian(CheckFailure):
    pass


class NotStabilizing(CheckFailure):
    pass
