"""Exception hierarchy shared by every module."""


class QGUEError(Exception):
    """Base class for all errors raised by this package."""


class InexactDivisionError(QGUEError, ArithmeticError):
    """A quotient asserted to be polynomial left a nonzero remainder."""


class UnsupportedModeError(QGUEError, ValueError):
    pass


class NonTerminatingSeriesError(QGUEError, ValueError):
    pass


class DomainError(QGUEError, ValueError):
    pass


class SingularPointError(QGUEError, ValueError):
    """Evaluation requested exactly at a non-integrable singularity."""


class BudgetExceededError(QGUEError, RuntimeError):
    """An enumeration would visit more objects than the configured budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"enumeration of {required} objects exceeds budget {budget}")


class ToleranceError(QGUEError, RuntimeError):
    """A truncation or quadrature could not reach the requested tolerance."""


class InconsistentEntryError(QGUEError, ValueError):
    """Two provenances produced different values for the same table cell."""


class IntegralityError(QGUEError, ArithmeticError):
    """A moment polynomial that must have nonnegative integer coefficients does not."""
