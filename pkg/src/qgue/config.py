"""Central tolerance and budget defaults.

Every floating-point routine reads its default tolerance from
:func:`current`; the CLI's ``--tol`` and ``--budget`` flags apply a
modified copy for the duration of a command via :func:`overrides`.
"""

from contextlib import contextmanager
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    special: float = 1e-13  # incomplete beta, q-Pochhammer tails
    quadrature: float = 1e-10  # Jackson sums, adaptive quadrature targets
    acceptance: float = 1e-8  # float cross-check comparisons
    enumeration_budget: int = 10**8
    pochhammer_max_terms: int = 1_000_000
    mp_dps: int = 40  # working precision for large-N scaled moments


DEFAULTS = Tolerances()
_active = DEFAULTS


def current() -> Tolerances:
    return _active


@contextmanager
def overrides(**changes):
    """Temporarily replace fields of the active configuration (not thread-safe)."""
    global _active
    saved = _active
    _active = replace(saved, **changes)
    try:
        yield _active
    finally:
        _active = saved
