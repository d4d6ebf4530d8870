"""Exception types raised across the package."""


class SubcodeError(Exception):
    """Base class for all package errors."""


class FieldMismatch(SubcodeError, ValueError):
    """Operands live in different finite fields."""


class DivisionByZero(SubcodeError, ZeroDivisionError):
    pass


class ShapeError(SubcodeError, ValueError):
    pass


class PivotNotInvertible(SubcodeError, ValueError):
    """The requested pivot Pluecker coordinate is zero."""


class EmptyComplement(SubcodeError, ValueError):
    pass


class EmptyProfile(SubcodeError, ValueError):
    pass


class FitError(SubcodeError, ValueError):
    """A matrix has a nonzero entry outside the free positions of a pattern."""


class AmbientMismatch(SubcodeError, ValueError):
    pass


class ParamError(SubcodeError, ValueError):
    pass


class BudgetExceeded(SubcodeError, RuntimeError):
    """An exhaustive check would exceed its configured budget."""
