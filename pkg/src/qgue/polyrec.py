"""Monic orthogonal polynomials from a three-term recurrence.

``P_{n+1}(x) = (x - b_n) P_n(x) - lam_n P_{n-1}(x)`` with ``P_0 = 1``.
Coefficients in ``x`` may be :class:`~qgue.qcore.QPoly`, rationals, or
floats; the families used throughout the package (classical Hermite and
three q-Hermite conventions) are provided ready-made.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .qcore import ONE, ZERO, QPoly, q_integer, q_pochhammer


@dataclass(frozen=True)
class RecurrenceSpec:
    b_seq: Callable[[int], object]
    lambda_seq: Callable[[int], object]
    kind: str = "exact"  # "exact" (QPoly / Fraction) or "float"

    def zero(self):
        return ZERO if self.kind == "exact" else 0.0

    def one(self):
        return ONE if self.kind == "exact" else 1.0


class XPoly:
    """Polynomial in ``x`` with coefficients (ascending degree) of any ring type."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self):
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, XPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash(self.coeffs)

    def map_coeffs(self, fn) -> "XPoly":
        return XPoly([fn(c) for c in self.coeffs])

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reflect(self) -> "XPoly":
        """Coefficients of ``P(-x)``."""
        return XPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def __str__(self) -> str:
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if _is_zero(c):
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            neg, body = _coeff_text(c)
            if mono:
                if body == "1":
                    body = mono
                else:
                    body = f"{body}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts) if parts else "0"

    __repr__ = __str__


def _is_zero(c) -> bool:
    if isinstance(c, QPoly):
        return c.is_zero()
    return c == 0


def _coeff_text(c) -> tuple[bool, str]:
    """Sign and magnitude text; compound QPoly coefficients are parenthesised."""
    if isinstance(c, QPoly):
        terms = c.terms
        if len(terms) == 1:
            (_, v), = terms.items()
            if v < 0:
                return True, str(-c)
            return False, str(c)
        if terms[min(terms)] < 0:
            return True, f"({-c})".replace(" ", "")
        return False, f"({c})".replace(" ", "")
    if c < 0:
        return True, str(-c)
    return False, str(c)


def _xmul_shift(p: Sequence) -> list:
    return [p[0] * 0] + list(p)


def generate(rec: RecurrenceSpec, n_max: int) -> list[XPoly]:
    """``P_0 .. P_{n_max}`` from the recurrence, exact in the recurrence's coefficient kind."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    prev: list = []
    cur: list = [rec.one()]
    out = [XPoly(cur)]
    for n in range(n_max):
        b = rec.b_seq(n)
        lam = rec.lambda_seq(n)
        nxt = _xmul_shift(cur)
        for k, c in enumerate(cur):
            if not _is_zero(b):
                nxt[k] = nxt[k] - b * c
        for k, c in enumerate(prev):
            nxt[k] = nxt[k] - lam * c
        prev, cur = cur, nxt
        out.append(XPoly(cur))
    return out


def hermite_spec() -> RecurrenceSpec:
    return RecurrenceSpec(lambda n: ZERO, lambda n: QPoly(n))


def q_hermite_spec() -> RecurrenceSpec:
    """``H_n(x;q)``: ``lam_n = q^(n-1) (1 - q^n)``."""
    return RecurrenceSpec(lambda n: ZERO, lambda n: (ONE - QPoly.q(n)).shift(n - 1) if n else ZERO)


def q_hermite_hat_spec() -> RecurrenceSpec:
    """Rescaled ``H^_n(x;q)``: ``lam_n = q^(n-1) [n]_q``."""
    return RecurrenceSpec(lambda n: ZERO, lambda n: q_integer(n).shift(n - 1) if n else ZERO)


def q_hermite_tilde_spec() -> RecurrenceSpec:
    """``H~_n(x;q)``: ``lam_n = [n]_q``."""
    return RecurrenceSpec(lambda n: ZERO, lambda n: q_integer(n))


@lru_cache(maxsize=None)
def _family(name: str, n_max: int) -> tuple[XPoly, ...]:
    rec = {
        "He": hermite_spec,
        "H": q_hermite_spec,
        "hat": q_hermite_hat_spec,
        "tilde": q_hermite_tilde_spec,
    }[name]()
    return tuple(generate(rec, n_max))


def _member(name: str, n: int) -> XPoly:
    if n < 0:
        raise ValueError("polynomial index must be nonnegative")
    size = max(16, 1 << (n.bit_length()))
    return _family(name, size)[n]


def hermite_He(n: int) -> XPoly:
    """Classical probabilists' Hermite polynomial with QPoly (constant) coefficients."""
    return _member("He", n)


def q_hermite_H(n: int) -> XPoly:
    return _member("H", n)


def q_hermite_hat(n: int) -> XPoly:
    return _member("hat", n)


def q_hermite_tilde(n: int) -> XPoly:
    return _member("tilde", n)


def explicit_H(n: int) -> XPoly:
    """``H_n(x;q)`` from its terminating ``2phi0`` sum (no recurrence).

    ``sum_k (-1)^k (q^-n;q^2)_k (q^(1-n);q^2)_k q^(k(2n-k)) / (q^2;q^2)_k  x^(n-2k)``
    """
    q2 = QPoly.q(2)
    coeffs = [ZERO] * (n + 1)
    for k in range(n // 2 + 1):
        num = q_pochhammer(QPoly.q(-n), k, q2) * q_pochhammer(QPoly.q(1 - n), k, q2)
        den = q_pochhammer(q2, k, q2)
        c = num.exact_div(den).shift(k * (2 * n - k))
        coeffs[n - 2 * k] = c if k % 2 == 0 else -c
    return XPoly(coeffs)


def explicit_H_check(n: int, bound: int = 12) -> bool:
    """Recurrence-generated ``H_n`` equals the explicit sum, coefficient by coefficient."""
    if n > bound:
        raise ValueError(f"n={n} exceeds the configured bound {bound}")
    return q_hermite_H(n) == explicit_H(n)


def at_q(p: XPoly, qval) -> XPoly:
    """Substitute a value for ``q`` in every coefficient."""
    return p.map_coeffs(lambda c: c.evaluate(qval) if isinstance(c, QPoly) else c)


def evaluate_at(p: XPoly, x: float, q: float) -> float:
    return at_q(p, q).evaluate(x)


def hat_from_H_numeric(n: int, x: float, q: float) -> float:
    """``(1-q)^(-n/2) H_n(sqrt(1-q) x; q)`` evaluated in floating point."""
    s = math.sqrt(1.0 - q)
    return evaluate_at(q_hermite_H(n), s * x, q) / s**n


def q_hermite_numeric(n_max: int, x: float, q: float) -> list[float]:
    """``H_0(x;q) .. H_{n_max}(x;q)`` by the float recurrence at a point."""
    vals = [1.0]
    if n_max == 0:
        return vals
    vals.append(x)
    qn1 = 1.0  # q^(n-1) for n = 1
    for n in range(1, n_max):
        lam = qn1 * -math.expm1(n * math.log(q))
        vals.append(x * vals[n] - lam * vals[n - 1])
        qn1 *= q
    return vals


def scalar_coeffs(p: XPoly) -> list[Fraction]:
    """Coefficients of an ``XPoly`` whose entries are constant ``QPoly``s."""
    out = []
    for c in p.coeffs:
        if isinstance(c, QPoly):
            if c.is_zero():
                out.append(Fraction(0))
            elif set(c.terms) == {0}:
                out.append(c.coeff(0))
            else:
                raise ValueError("coefficient depends on q")
        else:
            out.append(Fraction(c))
    return out
