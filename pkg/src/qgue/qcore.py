"""Exact arithmetic core: Laurent polynomials in ``q`` over the rationals.

Everything symbolic in the package is a :class:`QPoly`.  Coefficients are
:class:`fractions.Fraction` (Python integers are arbitrary precision, so
``Fraction`` is already a big-rational type).  The q-combinatorial
building blocks (q-integers, q-factorials, Gaussian binomials,
q-Pochhammer symbols) and the terminating hypergeometric evaluators live
here as well.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

from .config import current
from .exceptions import (
    InexactDivisionError,
    NonTerminatingSeriesError,
    ToleranceError,
    UnsupportedModeError,
)

Scalar = Union[int, Fraction]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"QPoly coefficients must be rational, got {type(c).__name__}")


class QPoly:
    """Laurent polynomial in ``q`` with exact rational coefficients.

    Instances are immutable and canonical: zero coefficients are never
    stored, so two equal polynomials have equal ``terms`` mappings and
    equal hashes.

    >>> q = QPoly.q()
    >>> (1 + q) * (1 - q)
    1 - q^2
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | Scalar | None = None):
        if terms is None:
            clean: dict[int, Fraction] = {}
        elif isinstance(terms, Mapping):
            clean = {}
            for e, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[int(e)] = c
        else:
            c = _as_fraction(terms)
            clean = {0: c} if c else {}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "QPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def q(cls, power: int = 1) -> "QPoly":
        return cls._raw({power: Fraction(1)})

    @classmethod
    def coerce(cls, other) -> "QPoly":
        if isinstance(other, QPoly):
            return other
        return cls(other)

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coeff(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    @property
    def valuation(self) -> int | None:
        """Lowest exponent present (``None`` for the zero polynomial)."""
        return min(self._terms) if self._terms else None

    def is_polynomial(self) -> bool:
        return not self._terms or min(self._terms) >= 0

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def coefficients(self) -> list[Fraction]:
        """Dense ascending coefficient list starting at ``q^0``."""
        if not self._terms:
            return []
        if min(self._terms) < 0:
            raise UnsupportedModeError("dense coefficients requested for a Laurent polynomial")
        return [self.coeff(e) for e in range(self.degree + 1)]

    # ring operations -----------------------------------------------------

    def __add__(self, other) -> "QPoly":
        try:
            other = QPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return QPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "QPoly":
        try:
            other = QPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QPoly":
        return QPoly.coerce(other) - self

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return QPoly()
            return QPoly._raw({e: c * other for e, c in self._terms.items()})
        try:
            other = QPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return QPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPoly":
        if not isinstance(n, int):
            raise ValueError("QPoly powers must be integers")
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers are defined for monomials only")
            (e, c), = self._terms.items()
            return QPoly._raw({e * n: Fraction(1) / c ** (-n)})
        result = QPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "QPoly":
        """Multiply by ``q**k``."""
        return QPoly._raw({e + k: c for e, c in self._terms.items()})

    def subs_power(self, b: int) -> "QPoly":
        """Substitute ``q -> q**b`` (``b`` a positive integer)."""
        if b <= 0:
            raise ValueError("base exponent must be positive")
        return QPoly._raw({e * b: c for e, c in self._terms.items()})

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        """Long division of ordinary polynomials (no negative exponents)."""
        other = QPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if not (self.is_polynomial() and other.is_polynomial()):
            raise UnsupportedModeError("divmod is defined for ordinary polynomials only")
        rem = dict(self._terms)
        quot: dict[int, Fraction] = {}
        dd = other.degree
        lead = other._terms[dd]
        while rem:
            top = max(rem)
            if top < dd:
                break
            factor = rem[top] / lead
            shift = top - dd
            quot[shift] = factor
            for e, c in other._terms.items():
                k = e + shift
                v = rem.get(k, 0) - factor * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return QPoly._raw(quot), QPoly._raw(rem)

    def exact_div(self, other) -> "QPoly":
        """Divide, asserting the quotient is a Laurent polynomial.

        Both operands are first normalised by their lowest power of ``q``
        (a unit in the Laurent ring), then divided as ordinary polynomials.
        """
        other = QPoly.coerce(other)
        if self.is_zero():
            return QPoly()
        sv, ov = self.valuation, other.valuation
        quot, rem = self.shift(-sv).divmod(other.shift(-ov))
        if not rem.is_zero():
            raise InexactDivisionError(f"({self}) / ({other}) leaves remainder {rem}")
        return quot.shift(sv - ov)

    def __truediv__(self, other) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self.exact_div(other)

    # comparison ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == QPoly(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # evaluation ----------------------------------------------------------

    def evaluate(self, x):
        """Evaluate at ``x``.

        Rational ``x`` (``int``/``Fraction``) is evaluated exactly.  A
        ``float`` is evaluated with compensated Horner on each of the
        nonnegative and negative parts.  Anything else (e.g. an
        ``mpmath.mpf``) falls back to plain Horner in that type.
        """
        if not self._terms:
            return Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            return sum((c * x**e for e, c in self._terms.items()), Fraction(0))
        if isinstance(x, float):
            return _eval_laurent_float(self._terms, x)
        acc = 0 * x
        for e in range(max(self.degree, 0), -1, -1):
            acc = acc * x + _mp_or_float(x, self.coeff(e))
        lo = self.valuation
        if lo < 0:
            inv = 1 / x
            tail = 0 * x
            for e in range(lo, 0):
                tail = (tail + _mp_or_float(x, self.coeff(e))) * inv
            acc = acc + tail
        return acc

    __call__ = evaluate

    # text form -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e in sorted(self._terms):
            c = self._terms[e]
            mag = abs(c)
            if e == 0:
                body = _fmt_rat(mag)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{_fmt_rat(mag)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"QPoly({self})"

    @classmethod
    def parse(cls, text: str) -> "QPoly":
        """Inverse of ``str``: parse the canonical text form."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        out: dict[int, Fraction] = {}
        pos = 0
        for m in _TERM_RE.finditer(s):
            if m.start() != pos:
                raise ValueError(f"cannot parse QPoly text {text!r}")
            pos = m.end()
            sign = -1 if m.group("sign") == "-" else 1
            coef = m.group("coef")
            mono = m.group("mono")
            if coef is None and mono is None:
                raise ValueError(f"cannot parse QPoly text {text!r}")
            c = Fraction(coef) if coef is not None else Fraction(1)
            if mono is None:
                e = 0
            else:
                e = int(m.group("exp")) if m.group("exp") is not None else 1
            out[e] = out.get(e, 0) + sign * c
        if pos != len(s):
            raise ValueError(f"cannot parse QPoly text {text!r}")
        return cls(out)


_TERM_RE = re.compile(
    r"(?P<sign>[+-])(?P<coef>\d+(?:/\d+)?)?(?:\*?(?P<mono>q(?:\^(?P<exp>-?\d+))?))?"
)


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mp_or_float(x, c: Fraction):
    try:
        import mpmath

        if isinstance(x, (mpmath.mpf, mpmath.mpc)):
            return mpmath.mpf(c.numerator) / c.denominator
    except ImportError:  # pragma: no cover
        pass
    return float(c)


# error-free transformations for compensated Horner (Graillat et al.)
_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def _comp_horner(coeffs: Sequence[float], x: float) -> float:
    """Compensated Horner: ``coeffs`` in descending degree order."""
    s = coeffs[0]
    err = 0.0
    for a in coeffs[1:]:
        p, pi = _two_prod(s, x)
        s, sigma = _two_sum(p, a)
        err = err * x + (pi + sigma)
    return s + err


def _eval_laurent_float(terms: Mapping[int, Fraction], x: float) -> float:
    hi = max(terms)
    lo = min(terms)
    total = 0.0
    if hi >= 0:
        desc = [float(terms.get(e, 0)) for e in range(hi, max(lo, 0) - 1, -1)]
        val = _comp_horner(desc, x)
        if lo > 0:
            val *= x**lo
        total += val
    if lo < 0:
        top = min(hi, -1)
        # sum_{e=lo}^{top} c_e x^e = x^top * sum_k c_{top-k} (1/x)^k
        desc = [float(terms.get(e, 0)) for e in range(lo, top + 1)]
        total += _comp_horner(desc, 1.0 / x) * x**top
    return total


@dataclass(frozen=True)
class QRat:
    """Transient quotient ``num/den`` of Laurent polynomials."""

    num: QPoly
    den: QPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("QRat with zero denominator")

    def __mul__(self, other: "QRat | QPoly") -> "QRat":
        if isinstance(other, QPoly):
            return QRat(self.num * other, self.den)
        return QRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "QRat | QPoly") -> "QRat":
        if isinstance(other, QPoly):
            return QRat(self.num, self.den * other)
        return QRat(self.num * other.den, self.den * other.num)

    def to_qpoly(self) -> QPoly:
        return self.num.exact_div(self.den)

    def evaluate(self, x):
        return self.num.evaluate(x) / self.den.evaluate(x)


# q-combinatorial primitives ---------------------------------------------

ONE = QPoly(1)
ZERO = QPoly()


@lru_cache(maxsize=None)
def q_integer(n: int) -> QPoly:
    """``[n]_q = 1 + q + ... + q^(n-1)``; zero for ``n = 0``."""
    if n < 0:
        raise ValueError("q_integer requires n >= 0")
    return QPoly._raw({e: Fraction(1) for e in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QPoly:
    if n < 0:
        raise ValueError("q_factorial requires n >= 0")
    out = ONE
    for k in range(2, n + 1):
        out = out * q_integer(k)
    return out


@lru_cache(maxsize=None)
def q_double_factorial(n: int) -> QPoly:
    """``[n]_q!! = [n][n-2][n-4]...``; the empty product (``n <= 0``) is 1."""
    out = ONE
    k = n
    while k > 1:
        out = out * q_integer(k)
        k -= 2
    return out


def _one_minus_q_power(k: int) -> QPoly:
    return QPoly._raw({0: Fraction(1), k: Fraction(-1)}) if k else ZERO


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int, base_exponent: int = 1) -> QPoly:
    """Gaussian binomial ``[n choose k]`` in the variable ``q**base_exponent``.

    Computed as ``(q;q)_n / ((q;q)_k (q;q)_{n-k})`` by exact long
    division; a remainder would raise :class:`InexactDivisionError`.
    """
    if n < 0 or k < 0:
        raise ValueError("q_binomial requires n, k >= 0")
    if k > n:
        return ZERO
    k = min(k, n - k)
    num = ONE
    den = ONE
    for i in range(k):
        num = num * _one_minus_q_power(n - i)
        den = den * _one_minus_q_power(i + 1)
    return num.exact_div(den).subs_power(base_exponent)


def q_pascal_binomial(n: int, k: int) -> QPoly:
    """Gaussian binomial via the q-Pascal rule only (no division).

    Independent of :func:`q_binomial`; used as its oracle in tests.
    """
    row = [ONE]
    for m in range(1, n + 1):
        new = [ONE]
        for i in range(1, m):
            new.append(row[i - 1] + row[i].shift(i))
        new.append(ONE)
        row = new
    return row[k] if 0 <= k <= n else ZERO


def stirling_first(n: int, k: int) -> int:
    """Signed Stirling number of the first kind ``s(n, k)``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return _stirling_row(n)[k]


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        # s(n, k) = s(n-1, k-1) - (n-1) s(n-1, k)
        row[k] = prev[k - 1] - (n - 1) * (prev[k] if k < n else 0)
    return tuple(row)


def stirling_first_bruteforce(n: int, k: int) -> int:
    """``s(n,k)`` straight from the elementary-symmetric-sum definition."""
    if k > n or k < 0:
        return 0
    if k == n:
        return 1
    if k == 0:
        return 0
    total = sum(math.prod(c) for c in combinations(range(1, n), n - k))
    return (-1) ** (n - k) * total


def catalan(p: int) -> int:
    if p < 0:
        raise ValueError("catalan requires p >= 0")
    return math.comb(2 * p, p) // (p + 1)


def double_factorial(n: int) -> int:
    """Classical ``n!!`` with the empty product (``n <= 0``) equal to 1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


# q-Pochhammer ------------------------------------------------------------


@dataclass(frozen=True)
class InfiniteProduct:
    value: float
    terms: int
    tail_bound: float  # bound on |log(dropped tail)|


def q_pochhammer(a, n, q):
    """``(a; q)_n = (1-a)(1-aq)...(1-aq^(n-1))``.

    ``a`` and ``q`` may be :class:`QPoly` (exact, finite ``n`` only),
    rationals, or floats.  ``n = math.inf`` is numeric-only; see
    :func:`q_pochhammer_inf` for the truncation details.
    """
    if n == math.inf:
        if isinstance(a, QPoly) or isinstance(q, QPoly):
            raise UnsupportedModeError("infinite q-Pochhammer product requested symbolically")
        return q_pochhammer_inf(float(a), float(q)).value
    if n < 0 or int(n) != n:
        raise ValueError("q_pochhammer requires a nonnegative integer n or infinity")
    out = ONE if isinstance(a, QPoly) or isinstance(q, QPoly) else 1
    factor = a
    for _ in range(int(n)):
        out = out * (1 - factor)
        factor = factor * q
    return out


def q_pochhammer_inf(a: float, q: float, tol: float | None = None,
                     max_terms: int | None = None) -> InfiniteProduct:
    """Truncated ``(a; q)_inf`` with a rigorous bound on the dropped tail.

    The product stops at the first ``K`` with
    ``|a| q^K / ((1-q)(1-|a| q^K)) <= tol``, which bounds
    ``|sum_{k>=K} log(1 - a q^k)|``.
    """
    tol = current().special if tol is None else tol
    max_terms = current().pochhammer_max_terms if max_terms is None else max_terms
    if not 0 <= q < 1:
        raise UnsupportedModeError("infinite q-Pochhammer needs 0 <= q < 1")
    value = 1.0
    aqk = a
    for k in range(max_terms + 1):
        mag = abs(aqk)
        if mag < 1:
            bound = mag / ((1 - q) * (1 - mag)) if q < 1 else math.inf
            if bound <= tol:
                return InfiniteProduct(value, k, bound)
        value *= 1 - aqk
        aqk *= q
    raise ToleranceError(f"(a;q)_inf tail bound {tol} not reached within {max_terms} factors")


# hypergeometric series ---------------------------------------------------


def _rising(a, k):
    out = 1
    for i in range(k):
        out = out * (a + i)
    return out


def hyp_2f1_terminating(a: int, b, c, z) -> Fraction:
    """Terminating Gauss series ``2F1(a, b; c; z)`` with ``a`` a nonpositive integer."""
    if int(a) != a or a > 0:
        raise NonTerminatingSeriesError("2F1 exact evaluation needs a nonpositive integer a")
    b, c, z = Fraction(b), Fraction(c), Fraction(z)
    total = Fraction(0)
    term = Fraction(1)
    for k in range(-int(a) + 1):
        total += term
        den = (c + k) * (k + 1)
        if den == 0:
            raise ZeroDivisionError("2F1 lower parameter hits a nonpositive integer before termination")
        term = term * (a + k) * (b + k) * z / den
    return total


def q_hyp_rphis(a_list: Sequence, b_list: Sequence, q, z, max_terms: int | None = None,
                tol: float | None = None):
    """Basic hypergeometric series ``r phi s (a; b; q, z)``.

    Includes the ``((-1)^k q^(k(k-1)/2))^(1+s-r)`` factor.  With rational
    ``q``, ``z`` and parameters the sum is exact and must terminate (some
    ``(a_i; q)_k`` reaches exactly zero) within ``max_terms``; otherwise
    :class:`NonTerminatingSeriesError`.  With floats the sum also stops
    once a numerator factor ``1 - a_i q^k`` vanishes to rounding, or when
    the terms fall below ``tol`` relative to the partial sum.
    """
    exact = all(isinstance(v, (int, Fraction)) for v in (*a_list, *b_list, q, z))
    r, s = len(a_list), len(b_list)
    power = 1 + s - r
    if exact:
        a_list = [Fraction(v) for v in a_list]
        b_list = [Fraction(v) for v in b_list]
        q, z = Fraction(q), Fraction(z)
        limit = 10_000 if max_terms is None else max_terms
    else:
        a_list = [float(v) for v in a_list]
        b_list = [float(v) for v in b_list]
        q, z = float(q), float(z)
        limit = 100_000 if max_terms is None else max_terms
        tol = current().special if tol is None else tol
    total = 0 if exact else 0.0
    term = Fraction(1) if exact else 1.0
    for k in range(limit + 1):
        total += term
        if not term and exact:
            return total
        qk = q**k
        num = 1
        stop = False
        for a in a_list:
            f = 1 - a * qk
            if exact and f == 0:
                stop = True
            elif not exact and abs(f) <= 1e-12 * max(1.0, abs(a * qk)):
                stop = True
            num *= f
        if stop:
            return total
        den = 1 - q ** (k + 1)
        for b in b_list:
            den *= 1 - b * qk
        if den == 0:
            raise ZeroDivisionError("r phi s lower parameter produces a zero denominator")
        extra = ((-1) * qk) ** power if power >= 0 else 1 / ((-1) * qk) ** (-power)
        term = term * num * z * extra / den
        if not exact and abs(term) <= tol * abs(total) and k > 2:
            return total + term
    if exact:
        raise NonTerminatingSeriesError(f"series did not terminate within {limit} terms")
    raise NonTerminatingSeriesError(f"series did not converge within {limit} terms")


def as_qpoly_sum(items: Iterable[QPoly]) -> QPoly:
    out = ZERO
    for it in items:
        out = out + it
    return out
