"""Exception hierarchy shared by every module of the package."""


class EquidescentError(Exception):
    """Base class for all errors raised by equidescent."""


# exact core / tower
class ZeroDenominator(EquidescentError, ZeroDivisionError):
    pass


class DivisionByZero(EquidescentError, ZeroDivisionError):
    pass


class NotInvertible(EquidescentError, ArithmeticError):
    """Raised when an element shares a factor with the modulus it lives modulo."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class ZeroDivisor(NotInvertible):
    pass


class NotMonic(EquidescentError, ValueError):
    pass


# cascade
class DegreeZeroInput(EquidescentError, ValueError):
    pass


class AllZeroInput(EquidescentError, ValueError):
    pass


class InternalContradiction(EquidescentError, RuntimeError):
    pass


class CascadeMismatch(EquidescentError):
    def __init__(self, level, reason):
        super().__init__(f"level {level}: {reason}")
        self.level = level
        self.reason = reason


# numerics
class OracleFailure(EquidescentError, RuntimeError):
    pass


class PrecisionFailure(EquidescentError, RuntimeError):
    pass


class DepthExceeded(PrecisionFailure):
    pass


class NotSquarefree(EquidescentError, ValueError):
    pass


class PathUncertifiable(EquidescentError, RuntimeError):
    pass


# specialization / descent
class DiscriminantVanishes(EquidescentError, ValueError):
    pass


class PoleAtPoint(EquidescentError, ZeroDivisionError):
    pass


class SearchExhausted(EquidescentError, RuntimeError):
    pass


# verification
class RelationNotSatisfiedByInput(EquidescentError, ValueError):
    pass


class TraceDivergence(EquidescentError):
    pass


class GuardExceeded(EquidescentError):
    pass


# input files
class ParseError(EquidescentError, ValueError):
    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class ValidationError(ParseError):
    pass
