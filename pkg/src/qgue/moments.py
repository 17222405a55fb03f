"""Closed-form spectral moments of the GUE and the discrete q-deformed GUE.

Notation: ``m(N, p)`` is the ``2p``-th moment summed over the first ``N``
polynomials and ``m(p, j)`` (the "partial" moment) is the increment from
the ``j``-th polynomial alone, so ``m(N, p) = sum_{j<N} m(p, j)``.  The
q-GUE moments returned here are the rescaled ones (``q``-polynomials with
nonnegative integer coefficients); the lattice moments differ by
``(1 - q)^p``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .config import current
from .exceptions import InconsistentEntryError, IntegralityError, UnsupportedModeError
from .qcore import (
    ONE,
    ZERO,
    QPoly,
    catalan,
    double_factorial,
    hyp_2f1_terminating,
    q_binomial,
    q_double_factorial,
    q_factorial,
    q_hyp_rphis,
    q_pochhammer,
    stirling_first,
)

# ---------------------------------------------------------------- GUE ----


def gue_partial_positive(p: int, j: int) -> int:
    return double_factorial(2 * p - 1) * sum(
        math.comb(j, l) * math.comb(p, l) * 2**l for l in range(p + 1)
    )


def gue_moment_positive(N: int, p: int) -> int:
    """``(2p-1)!! sum_l C(N, l+1) C(p, l) 2^l``."""
    return double_factorial(2 * p - 1) * sum(
        math.comb(N, l + 1) * math.comb(p, l) * 2**l for l in range(p + 1)
    )


def gue_partial_alternating(p: int, j: int) -> int:
    return double_factorial(2 * p - 1) * sum(
        (-1) ** r * math.comb(j + 2 * p - 2 * r, 2 * p) * math.comb(p, r) for r in range(p + 1)
    )


def gue_moment_alternating(N: int, p: int) -> int:
    if p == 0:
        return N
    return double_factorial(2 * p - 1) * sum(
        (-1) ** r
        * (math.comb(N + 2 * p - 2 * r - 1, 2 * p) + math.comb(N + 2 * p - 2 * r - 2, 2 * p))
        * math.comb(p - 1, r)
        for r in range(p)
    )


def gue_moment_hypergeometric(N: int, p: int) -> int:
    """``(2p-1)!! N 2F1(-p, 1-N; 2; 2)`` through the terminating evaluator."""
    val = double_factorial(2 * p - 1) * N * hyp_2f1_terminating(-p, 1 - N, 2, 2)
    if val.denominator != 1:
        raise IntegralityError(f"hypergeometric GUE moment ({N}, {p}) is not an integer: {val}")
    return int(val)


def harer_zagier_check(p_max: int = 20, N_max: int = 20) -> bool:
    """``(p+1) m_p = (4p-2) N m_{p-1} + (p-1)(2p-1)(2p-3) m_{p-2}`` for ``2 <= p <= p_max``."""
    if p_max < 2:
        raise ValueError("p_max must be at least 2")
    for N in range(1, N_max + 1):
        m = [gue_moment_positive(N, p) for p in range(p_max + 1)]
        for p in range(2, p_max + 1):
            lhs = (p + 1) * m[p]
            rhs = (4 * p - 2) * N * m[p - 1] + (p - 1) * (2 * p - 1) * (2 * p - 3) * m[p - 2]
            if lhs != rhs:
                return False
    return True


def _genus_inner(p: int, r: int) -> Fraction:
    if r > p + 1:
        return Fraction(0)  # s(n, k) vanishes for k < 0
    return sum(
        (
            Fraction(stirling_first(p + 1 - m, p + 1 - r), math.factorial(p + 1 - m))
            * math.comb(p, m)
            * 2 ** (p - m)
            for m in range(min(r, p) + 1)
        ),
        Fraction(0),
    )


@dataclass(frozen=True)
class GenusCoefficient:
    g: int
    p: int
    value: Fraction


def genus_coefficient(g: int, p: int) -> Fraction:
    """Number of genus-``g`` gluings of a ``2p``-gon, from Stirling numbers."""
    if g < 0:
        return Fraction(0)
    return double_factorial(2 * p - 1) * _genus_inner(p, 2 * g)


def genus_coefficient_closed(g: int, p: int) -> Fraction:
    """Independent closed forms for ``g <= 4`` (valid when ``p >= 2g``, zero otherwise)."""
    if p < 2 * g:
        return Fraction(0)
    polys = {
        0: (Fraction(1), 1),
        1: (Fraction(1, 12), 1),
        2: (Fraction(5 * p - 2, 1440), 1),
        3: (Fraction(35 * p**2 - 77 * p + 12, 362880), 1),
        4: (Fraction(175 * p**3 - 945 * p**2 + 1094 * p - 72, 87091200), 1),
    }
    if g not in polys:
        raise ValueError("closed forms are tabulated only for g <= 4")
    frac, _ = polys[g]
    if g == 0:
        return Fraction(catalan(p))
    return catalan(p) * Fraction(math.factorial(p + 1), math.factorial(p - 2 * g)) * frac


def genus_table(p_max: int) -> list[GenusCoefficient]:
    return [
        GenusCoefficient(g, p, genus_coefficient(g, p))
        for p in range(p_max + 1)
        for g in range((p + 1) // 2 + 1)
    ]


def lagrange_coefficients(points: list[tuple[int, int]]) -> list[Fraction]:
    """Ascending coefficients of the unique polynomial through ``points`` (exact)."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for k, (xk, _) in enumerate(points):
            if k == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xk * basis[d + 1]
            denom *= xi - xk
        for d in range(n):
            coeffs[d] += yi * basis[d] / denom
    return coeffs


def gue_moment_polynomial(p: int) -> list[Fraction]:
    """``m(N, p)`` as ascending coefficients in ``N``, interpolated from ``p+2`` values."""
    return lagrange_coefficients([(N, gue_moment_positive(N, p)) for N in range(1, p + 3)])


def genus_expansion_check(p: int) -> bool:
    coeffs = gue_moment_polynomial(p)
    expected = [Fraction(0)] * (p + 2)
    for g in range((p + 1) // 2 + 1):
        expected[p + 1 - 2 * g] = genus_coefficient(g, p)
    return coeffs == expected


def odd_vanishing_check(p: int, r: int | None = None) -> bool:
    rs = [r] if r is not None else range(1, p + 2, 2)
    return all(_genus_inner(p, rr) == 0 for rr in rs if rr % 2 == 1)


def topological_recursion_check(g_max: int = 4, p_max: int = 10) -> bool:
    """``(p+2) E_g(p+1) = 2(2p+1) E_g(p) + p(2p+1)(2p-1) E_{g-1}(p-1)``."""
    for g in range(g_max + 1):
        for p in range(1, p_max + 1):
            lhs = (p + 2) * genus_coefficient(g, p + 1)
            rhs = 2 * (2 * p + 1) * genus_coefficient(g, p) + p * (2 * p + 1) * (
                2 * p - 1
            ) * genus_coefficient(g - 1, p - 1)
            if lhs != rhs:
                return False
    return True


# -------------------------------------------------------------- q-GUE ----


def _check_integral(poly: QPoly, label: str) -> QPoly:
    if not poly.is_polynomial() or not poly.is_integral() or any(c < 0 for c in poly.terms.values()):
        raise IntegralityError(f"{label} is not a polynomial with nonnegative integer coefficients: {poly}")
    return poly


@lru_cache(maxsize=None)
def _positive_weight(p: int, l: int) -> QPoly:
    # [2p]! / ([2p-2l]!! [l]!), always a polynomial
    return q_factorial(2 * p).exact_div(q_double_factorial(2 * p - 2 * l) * q_factorial(l))


@lru_cache(maxsize=None)
def qgue_partial_positive(p: int, j: int) -> QPoly:
    """Positive sum over ``l``; terms with ``l > j`` vanish and are skipped."""
    if p < 0 or j < 0:
        raise ValueError("p and j must be nonnegative")
    total = ZERO
    for l in range(min(p, j) + 1):
        e = (j - l) * (2 * p - l) + l * (l - 1) // 2
        total = total + (q_binomial(j, l) * _positive_weight(p, l)).shift(e)
    return _check_integral(total, f"positive partial moment (p={p}, j={j})")


def qgue_moment_positive(N: int, p: int) -> QPoly:
    if N < 1:
        raise ValueError("N must be positive")
    total = ZERO
    for j in range(N):
        total = total + qgue_partial_positive(p, j)
    return total


@lru_cache(maxsize=None)
def qgue_partial_alternating(p: int, j: int) -> QPoly:
    if p < 0 or j < 0:
        raise ValueError("p and j must be nonnegative")
    acc = ZERO
    for r in range(p + 1):
        term = (q_binomial(j + 2 * p - 2 * r, 2 * p) * q_binomial(p, r, 2)).shift(r * (r - 1))
        acc = acc - term if r % 2 else acc + term
    return _check_integral(q_double_factorial(2 * p - 1) * acc, f"alternating partial moment (p={p}, j={j})")


@lru_cache(maxsize=None)
def qgue_moment_alternating(N: int, p: int) -> QPoly:
    if N < 1:
        raise ValueError("N must be positive")
    if p == 0:
        return QPoly(N)
    acc = ZERO
    for r in range(p):
        bins = q_binomial(N + 2 * p - 2 * r - 1, 2 * p) + q_binomial(N + 2 * p - 2 * r - 2, 2 * p)
        term = (bins * q_binomial(p - 1, r, 2)).shift(r * (r + 1))
        acc = acc - term if r % 2 else acc + term
    return _check_integral(q_double_factorial(2 * p - 1) * acc, f"alternating moment (N={N}, p={p})")


def _flsy(p: int, j: int, q: float) -> float:
    total = 0.0
    qq = q * q
    for k in range(p + 1):
        for l in range(k + 1):
            if 2 * l > j:
                continue
            e = k * k + 2 * k * j + l * (4 * l - 4 * k - 2 * j - 1)
            ratio = 1.0  # [j]! / [j-2l]!
            for i in range(j - 2 * l + 1, j + 1):
                ratio *= (1 - q**i) / (1 - q)
            total += (
                (-1) ** k
                * q**e
                * (1 - q) ** (2 * l - p)
                * q_binomial(p, k, 2).evaluate(q)
                * q_binomial(k, k - l, 2).evaluate(q) ** 2
                * ratio
            )
    return total


def _cohen_prefactor(p: int, q: float) -> float:
    return (
        q_double_factorial(2 * p - 1).evaluate(q)
        * q ** (-(p * p + p) // 2)
        * q_pochhammer(-q, p, q)
        / ((1 - q**p) * q_pochhammer(q, p, q))
    )


def _cohen_phi(p: int, q: float, z: float) -> float:
    return q_hyp_rphis([-(q ** (p + 1)), q**p, q ** (-p)], [-q, q ** (p + 1)], q, z)


def cohen_total(N: int, p: int, q: float) -> float:
    """Total moment from the terminating ``3phi2`` representation."""
    q = Fraction(q)
    return float(_cohen_prefactor(p, q) * (_cohen_phi(p, q, q) - q ** (N * p) * _cohen_phi(p, q, q ** (N + 1))))


def qgue_alternative_forms(p: int, j: int, mode: str, q_numeric: float) -> float:
    """Partial moment at a numeric ``q`` from an alternative representation.

    ``mode`` is ``"flsy_double_sum"`` (double alternating sum) or
    ``"cohen_3phi2"`` (difference of two terminating ``3phi2`` series).
    """
    if not 0 < q_numeric < 1:
        raise UnsupportedModeError("alternative forms need 0 < q < 1")
    q = float(q_numeric)
    if mode == "flsy_double_sum":
        return _flsy(p, j, q)
    if mode == "cohen_3phi2":
        if p < 1:
            raise UnsupportedModeError("the 3phi2 representation needs p >= 1")
        # exact binary value of q: the series terms reach q^-p and cancel
        q = Fraction(q)
        pref = _cohen_prefactor(p, q)
        return float(pref * (
            q ** (p * j) * _cohen_phi(p, q, q ** (j + 1))
            - q ** (p * (j + 1)) * _cohen_phi(p, q, q ** (j + 2))
        ))
    raise UnsupportedModeError(f"unknown alternative form {mode!r}")


# ------------------------------------------------------ scaled moments ----


def _scaled_sum_mp(N: int, p: int, lam) -> mpmath.mpf:
    """``(q(1-q))^p m(N, p)`` at ``q = exp(-lam/N)``, summed term by term.

    Each ``(j, l)`` summand of the positive form is positive, so the only
    precision concern is ``1 - q^k`` for ``q`` near 1 (handled by expm1).
    """
    h = lam / N
    q = mpmath.exp(-h)

    def one_minus(k):
        return -mpmath.expm1(-k * h)

    weights = [_positive_weight(p, l).evaluate(q) for l in range(p + 1)]
    total = mpmath.mpf(0)
    for j in range(N):
        binom = mpmath.mpf(1)
        for l in range(min(p, j) + 1):
            if l:
                binom = binom * one_minus(j - l + 1) / one_minus(l)
            e = (j - l) * (2 * p - l) + l * (l - 1) // 2
            total += mpmath.exp(-h * e) * binom * weights[l]
    return (q * one_minus(1)) ** p * total


def scaled_moment(N: int, p: int, lam: float, dps: int | None = None) -> float:
    """``q^p`` times the lattice moment at ``q = exp(-lam/N)``."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if lam == 0:
        return float(N) if p == 0 else 0.0
    with mpmath.workdps(dps or current().mp_dps):
        return float(_scaled_sum_mp(N, p, mpmath.mpf(lam)))


def scaled_moment_symbolic(N: int, p: int, lam: float) -> float:
    """Same quantity via the full symbolic polynomial (small ``N`` only)."""
    q = math.exp(-lam / N)
    return (q * -math.expm1(-lam / N)) ** p * float(qgue_moment_positive(N, p).evaluate(q))


# -------------------------------------------------------- MomentTable ----

PROVENANCES = ("positive", "alternating", "hypergeometric", "oracle")
KINDS = ("GUE", "qGUE-symbolic", "qGUE-numeric")


def format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


@dataclass
class MomentTable:
    """Moments keyed by ``(N, p)`` with every formula that produced them.

    Inserting a value under a second provenance requires exact agreement
    (or ``tol`` agreement for the numeric kind); otherwise
    :class:`InconsistentEntryError`.
    """

    kind: str
    tol: float = 0.0
    entries: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown table kind {self.kind!r}")

    def insert(self, key: tuple[int, int], value, provenance: str) -> None:
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        if key in self.entries:
            old = self.entries[key]
            if self.kind == "qGUE-numeric":
                same = abs(old - value) <= self.tol * max(1.0, abs(old))
            else:
                same = old == value
            if not same:
                raise InconsistentEntryError(
                    f"{key}: {provenance} gives {format_value(value)}, "
                    f"{'/'.join(self.provenance[key])} gave {format_value(old)}"
                )
            if provenance not in self.provenance[key]:
                self.provenance[key].append(provenance)
        else:
            self.entries[key] = value
            self.provenance[key] = [provenance]

    def __getitem__(self, key):
        return self.entries[key]

    def __contains__(self, key) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    HEADER = ("kind", "N", "p", "provenance", "value")

    def rows(self) -> list[tuple[str, int, int, str, str]]:
        return [
            (self.kind, k[0], k[1], "+".join(sorted(self.provenance[k])), format_value(self.entries[k]))
            for k in sorted(self.entries)
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(self.HEADER)
        w.writerows(self.rows())
        return buf.getvalue()

    def to_json(self, meta: dict | None = None) -> str:
        rows = [dict(zip(self.HEADER, r)) for r in self.rows()]
        return json.dumps({"meta": meta or {}, "rows": rows}, indent=2, sort_keys=True) + "\n"


def build_table(kind: str, N_values, p_values, q_value=None) -> MomentTable:
    """Fill a table from every applicable closed form (each insertion cross-checks)."""
    table = MomentTable(kind, tol=current().acceptance)
    for N in N_values:
        for p in p_values:
            key = (N, p)
            if kind == "GUE":
                table.insert(key, gue_moment_positive(N, p), "positive")
                table.insert(key, gue_moment_alternating(N, p), "alternating")
                table.insert(key, gue_moment_hypergeometric(N, p), "hypergeometric")
            else:
                pos = qgue_moment_positive(N, p)
                alt = qgue_moment_alternating(N, p)
                if kind == "qGUE-symbolic":
                    table.insert(key, pos, "positive")
                    table.insert(key, alt, "alternating")
                else:
                    table.insert(key, _eval_numeric(pos, q_value), "positive")
                    table.insert(key, _eval_numeric(alt, q_value), "alternating")
    return table


def _eval_numeric(poly: QPoly, q):
    v = poly.evaluate(q)
    return v if isinstance(q, Fraction) else float(v)


__all__ = [
    "gue_partial_positive", "gue_moment_positive", "gue_partial_alternating",
    "gue_moment_alternating", "gue_moment_hypergeometric", "harer_zagier_check",
    "GenusCoefficient", "genus_coefficient", "genus_coefficient_closed", "genus_table",
    "lagrange_coefficients", "gue_moment_polynomial", "genus_expansion_check",
    "odd_vanishing_check", "topological_recursion_check", "qgue_partial_positive",
    "qgue_moment_positive", "qgue_partial_alternating", "qgue_moment_alternating",
    "qgue_alternative_forms", "cohen_total", "scaled_moment", "scaled_moment_symbolic",
    "MomentTable", "build_table", "format_value", "ONE",
]
