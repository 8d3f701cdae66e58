"""Exception and warning types shared across the package."""


class AlgebraError(Exception):
    pass


class BadForm(AlgebraError, ValueError):
    """Gram matrix has the wrong symmetry type, shape, or is degenerate."""


class MissingForm(AlgebraError, ValueError):
    pass


class WrongKind(AlgebraError, ValueError):
    pass


class DimensionMismatch(AlgebraError, ValueError):
    pass


class ClosureViolation(AlgebraError, ArithmeticError):
    """A product or bracket left the space it was required to stay in."""


class PoleAtMinusOne(AlgebraError, ZeroDivisionError):
    pass


class DegenerateAlpha(UserWarning):
    """alpha lands on a value outside the simple D(2,1;alpha) family."""


class UnverifiedInput(AlgebraError, ValueError):
    """Input failed the axiom suite required before construction."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
