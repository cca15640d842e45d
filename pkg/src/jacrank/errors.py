"""Exception types raised across jacrank."""


class JacrankError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(JacrankError, ValueError):
    pass


class NonPrime(ValidationError):
    pass


class DegreeZero(ValidationError):
    pass


class FieldMismatch(JacrankError, TypeError):
    pass


class ModulusMismatch(JacrankError, TypeError):
    pass


class DivideByZero(JacrankError, ZeroDivisionError):
    pass


class OrderMismatch(ValidationError):
    """m does not divide q - 1."""


class NonUnit(ValidationError):
    pass


class RamifiedPrime(ValidationError):
    pass


class ZeroElement(ValidationError):
    pass


class PrecisionExhausted(JacrankError, ArithmeticError):
    pass


class BadExponent(ValidationError):
    pass


class SupportMeetsT(ValidationError):
    pass


class DegreeTooLarge(JacrankError):
    pass


class BudgetExceeded(JacrankError):
    pass


class NoUnitMatch(JacrankError, AssertionError):
    pass


class HypothesisViolated(JacrankError):
    pass


class BaseNotP1(HypothesisViolated):
    pass


class NotSquarefree(ValidationError):
    pass


class EvenCharacteristic(ValidationError):
    pass


class WrongGenus(ValidationError):
    pass


class WrongShape(ValidationError):
    pass


class InconsistentCounts(JacrankError, AssertionError):
    pass
