"""Exact and numeric spectral moments of the discrete q-deformed GUE."""

__version__ = "0.1.0"

from .exceptions import (  # noqa: E402
    BudgetExceededError,
    DomainError,
    InconsistentEntryError,
    InexactDivisionError,
    IntegralityError,
    NonTerminatingSeriesError,
    QGUEError,
    SingularPointError,
    ToleranceError,
    UnsupportedModeError,
)
from .qcore import QPoly, q_binomial, q_integer  # noqa: E402

__all__ = [
    "__version__", "QPoly", "q_binomial", "q_integer", "QGUEError", "BudgetExceededError",
    "DomainError", "InconsistentEntryError", "InexactDivisionError", "IntegralityError",
    "NonTerminatingSeriesError", "SingularPointError", "ToleranceError", "UnsupportedModeError",
]
