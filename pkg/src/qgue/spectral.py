"""Floating-point side: lattice weight and density, Jackson sums, the
incomplete beta function, large-N coefficients and limiting densities.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath
from scipy import integrate

from .config import current
from .exceptions import DomainError, SingularPointError, ToleranceError
from .polyrec import q_hermite_numeric
from .qcore import q_pochhammer_inf

LOG2 = math.log(2.0)

# ------------------------------------------------------ incomplete beta ----


def _beta_cf(x: float, a: float, b: float, tol: float) -> float:
    # modified Lentz evaluation of the standard continued fraction
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = 1.0 / (d if abs(d) > tiny else tiny)
    h = d
    for m in range(1, 10_000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > tiny else tiny)
        c = 1.0 + aa / c
        c = c if abs(c) > tiny else tiny
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > tiny else tiny)
        c = 1.0 + aa / c
        c = c if abs(c) > tiny else tiny
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= tol:
            return h
    raise ToleranceError(f"incomplete beta continued fraction did not converge at x={x}, a={a}, b={b}")


def _beta_integer(x: float, a: int, b: int) -> float:
    # I_x(a, b) = P(Binomial(a+b-1, x) >= a); all terms positive
    n = a + b - 1
    y = -math.expm1(math.log1p(-x)) if 0 < x < 1 else x
    one_minus = 1.0 - y
    return math.fsum(math.comb(n, k) * y**k * one_minus ** (n - k) for k in range(a, n + 1))


def incomplete_beta_reg(x: float, a: float, b: float, tol: float | None = None) -> float:
    """Regularised incomplete beta ``I_x(a, b)``.

    Integer ``a, b`` use the finite binomial tail (no truncation at all);
    otherwise a continued fraction is evaluated on whichever side of the
    symmetry ``I_x(a,b) = 1 - I_{1-x}(b,a)`` converges fastest.
    """
    if not (0.0 <= x <= 1.0) or a <= 0 or b <= 0 or math.isnan(x):
        raise DomainError(f"incomplete beta needs 0 <= x <= 1 and a, b > 0 (got x={x}, a={a}, b={b})")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    if float(a).is_integer() and float(b).is_integer() and a + b < 400:
        return _beta_integer(x, int(a), int(b))
    tol = current().special if tol is None else tol
    log_front = (
        a * math.log(x) + b * math.log1p(-x) + math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(x, a, b, tol) / a
    return 1.0 - front * _beta_cf(1.0 - x, b, a, tol) / b


# ---------------------------------------------------- large-N coefficients ----


@dataclass(frozen=True)
class AsymptoticCoeffs:
    p: float
    lam: float
    M0: float
    M1: float

    def predict(self, N: float) -> float:
        """Two-term prediction ``M0 N + M1 / N`` for the scaled moment."""
        return self.M0 * N + self.M1 / N


def _central_ratio(p: float) -> float:
    # (2p-1)! / (p! (p-1)!)
    if float(p).is_integer():
        return float(math.comb(2 * int(p) - 1, int(p)))
    return math.exp(math.lgamma(2 * p) - math.lgamma(p + 1) - math.lgamma(p))


def asym_coeffs(p: float, lam: float) -> AsymptoticCoeffs:
    """Leading and subleading coefficients of the scaled moment in ``N`` and ``1/N``.

    ``lam = 0`` returns the limiting zeros (both coefficients carry ``lam^p``).
    """
    if p <= 0 or lam < 0:
        raise DomainError("asym_coeffs needs p > 0 and lambda >= 0")
    if lam == 0:
        return AsymptoticCoeffs(p, 0.0, 0.0, 0.0)
    u = -math.expm1(-lam)
    eta = math.exp(-lam)
    ib = incomplete_beta_reg(u, p + 1, p)
    M0 = ib / (lam * p)
    # 2 + p - (2p+1) eta, arranged to avoid cancellation for small lambda
    tail = (1 - p) - (2 * p + 1) * math.expm1(-lam)
    M1 = -(lam * p / 6.0) * (ib + _central_ratio(p) * eta**p * u ** (p - 1) * tail)
    return AsymptoticCoeffs(p, lam, M0, M1)


def asym_M0_alternating(p: int, lam: float) -> float:
    """Leading coefficient from the signed finite sum over ``(-e^{-lam})^k``, ``p <= k <= 2p``."""

    def dfact(n: int) -> int:
        return math.prod(range(n, 0, -2)) if n > 0 else 1

    acc = 0.0
    for k in range(p, 2 * p + 1):
        c = 2 * dfact(2 * k - 2) * dfact(2 * p - 1) / (
            k * dfact(2 * k - 2 * p) * math.factorial(k - 1) * math.factorial(2 * p - k)
        )
        acc += (-1) ** k * c * math.exp(-lam * k)
    return (1.0 / p + (-1) ** (p - 1) * acc) / lam


def continuum_limit_check(p: int, lam_small: float) -> tuple[float, float]:
    """``(M0 / lam^p, lam^-p ((27p-1)p/24 lam^2 M0 + M1))`` at small ``lam``."""
    if not 0 < lam_small <= 0.1:
        raise DomainError("continuum_limit_check needs 0 < lambda <= 0.1")
    c = asym_coeffs(p, lam_small)
    scale = lam_small**p
    return c.M0 / scale, ((27 * p - 1) * p / 24.0 * lam_small**2 * c.M0 + c.M1) / scale


# ------------------------------------------------ lattice weight & density ----


def weight_dH(x: float, q: float, tol: float | None = None) -> float:
    """Discrete q-Hermite weight ``(qx, -qx; q)_inf / (q, -1, -q; q)_inf``."""
    if not 0 < q < 1:
        raise DomainError("weight needs 0 < q < 1")
    tol = current().special if tol is None else tol
    num = q_pochhammer_inf(q * x, q, tol).value * q_pochhammer_inf(-q * x, q, tol).value
    den = (
        q_pochhammer_inf(q, q, tol).value
        * q_pochhammer_inf(-1.0, q, tol).value
        * q_pochhammer_inf(-q, q, tol).value
    )
    return num / den


def jackson_integral(f: Callable[[float], float], a: float, b: float, q: float,
                     K: int | None = None, tol: float | None = None) -> float:
    """``int_a^b f d_q x`` as ``int_0^b - int_0^a`` of lattice sums.

    With ``K`` given, ``k = 0..K`` are summed.  Otherwise terms are added
    until ``|alpha q^k f(alpha q^k)| / (1 - q)`` (a tail estimate for
    ``f`` bounded near 0) drops below ``tol``.
    """
    if not 0 < q < 1:
        raise DomainError("Jackson integral needs 0 < q < 1")
    tol = current().quadrature * 1e-2 if tol is None else tol
    cap = current().pochhammer_max_terms

    def from_zero(alpha: float) -> float:
        if alpha == 0:
            return 0.0
        terms = []
        k = 0
        while True:
            t = alpha * q**k * f(alpha * q**k)
            terms.append(t)
            if K is not None:
                if k >= K:
                    break
            elif abs(t) <= tol * (1 - q) and abs(alpha * q**k) <= tol:
                break
            k += 1
            if k > cap:
                raise ToleranceError("Jackson sum tail did not fall below tolerance")
        return (1 - q) * math.fsum(terms)

    return from_zero(b) - from_zero(a)


def jackson_symmetric(f: Callable[[float], float], q: float, K: int | None = None,
                      tol: float | None = None) -> float:
    """``int_{-1}^{1} f d_q x = (1-q) sum_k q^k (f(q^k) + f(-q^k))``."""
    return jackson_integral(f, -1.0, 1.0, q, K, tol)


@dataclass(frozen=True)
class LatticeDensity:
    """Density of the N-point discrete ensemble at the lattice points ``q^k`` (even in x)."""

    N: int
    q: float
    ks: tuple[int, ...]
    xs: tuple[float, ...]
    weights: tuple[float, ...]
    values: tuple[float, ...]
    K: int
    tail_bound: float

    def jackson_moment(self, p: int) -> float:
        """``int_{-1}^{1} |x|^{2p} rho_N d_q x`` over the stored lattice."""
        terms = [2 * x * x ** (2 * p) * v for x, v in zip(self.xs, self.values)]
        return (1 - self.q) * math.fsum(terms)

    def normalization(self) -> float:
        return self.jackson_moment(0)


def lattice_density(N: int, q: float, K: int | None = None, tol: float | None = None) -> LatticeDensity:
    """``rho_N = (1-q)^-1 sum_{j<N} H_j^2 / ((q;q)_j q^(j(j-1)/2)) * weight`` on ``q^k``.

    Without ``K`` the lattice is extended until the Jackson tail
    ``2 q^k rho(q^k) / (1-q) * (1-q)`` bound drops below ``tol``.
    """
    if N < 1:
        raise DomainError("N must be positive")
    if not 0 < q < 1:
        raise DomainError("lattice density needs 0 < q < 1")
    tol = current().quadrature * 1e-2 if tol is None else tol
    norms = []
    qq = 1.0
    for j in range(N):
        if j:
            qq *= -math.expm1(j * math.log(q))
        norms.append(qq * q ** (j * (j - 1) // 2))
    inf_mq = q_pochhammer_inf(-q, q).value
    ks, xs, ws, vals = [], [], [], []
    k = 0
    # finite Pochhammer ratios (q^(k+1);q)_inf / (q;q)_inf = 1/(q;q)_k, same for -q
    qk_fin = 1.0
    mqk_fin = 1.0
    tail = math.inf
    while True:
        x = q**k
        w = 1.0 / (2.0 * inf_mq * qk_fin * mqk_fin)
        hs = q_hermite_numeric(N - 1, x, q)
        v = w / (1 - q) * math.fsum(h * h / n for h, n in zip(hs, norms))
        ks.append(k)
        xs.append(x)
        ws.append(w)
        vals.append(v)
        # values tend to a finite limit at x -> 0, so the remaining lattice sum is
        # bounded by 2 q^(k+1) * max(v) / (1 - q) * (1 - q)
        tail = 2 * q ** (k + 1) * max(vals[-1], vals[0]) / (1 - q)
        if K is not None:
            if k >= K:
                break
        elif tail <= tol:
            break
        k += 1
        qk_fin *= 1 - q**k
        mqk_fin *= 1 + q**k
        if k > current().pochhammer_max_terms:
            raise ToleranceError("lattice density tail tolerance not reached")
    return LatticeDensity(N, q, tuple(ks), tuple(xs), tuple(ws), tuple(vals), k, tail)


def lattice_weight_closed(k: int, q: float) -> float:
    """Weight at ``+-q^k`` in product form ``1 / (2 (q^2;q^2)_k (-q;q)_inf)``."""
    prod = 1.0
    for i in range(1, k + 1):
        prod *= 1 - q ** (2 * i)
    return 1.0 / (2.0 * prod * q_pochhammer_inf(-q, q).value)


# ------------------------------------------------------ limiting densities ----


def support_edge(lam: float) -> float:
    """``b(lam) = 2 sqrt((1 - e^-lam) e^-lam)``."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    return 2.0 * math.sqrt(-math.expm1(-lam) * math.exp(-lam))


def support_edge_squared(eta):
    """``b^2 = 4 eta (1 - eta)`` in terms of ``eta = e^-lam`` (exact for rational ``eta``)."""
    return 4 * eta * (1 - eta)


def density_rho0(x: float, lam: float) -> float:
    """Limiting density on ``(-1, 1)``.

    In ``|x| < b`` the arg of the quotient is evaluated as
    ``atan2(2 x sqrt(b^2 - x^2), 4 e^-lam - 2 x^2)``, which is the same
    angle with no cancellation near ``x = 0``.  For ``lam > log 2`` the
    plateau ``1/(lam |x|)`` fills ``b <= |x| < 1``.  ``lam = log 2`` takes
    the lower branch (the plateau is then empty).
    """
    if lam <= 0:
        raise DomainError("lambda must be positive")
    ax = abs(x)
    if ax >= 1.0:
        return 0.0
    eta = math.exp(-lam)
    b2 = 4.0 * eta * -math.expm1(-lam)
    if ax * ax < b2:
        s = math.sqrt(b2 - ax * ax)
        if ax == 0.0:
            return s / (2.0 * math.pi * lam * eta)
        return math.atan2(2.0 * ax * s, 4.0 * eta - 2.0 * ax * ax) / (math.pi * lam * ax)
    if lam > LOG2:
        return 1.0 / (lam * ax)
    return 0.0


def _rho0_bulk_theta(theta: float, lam: float) -> float:
    # density at x = b sin(theta), using sqrt(b^2 - x^2) = b cos(theta)
    eta = math.exp(-lam)
    b = support_edge(lam)
    s, c = math.sin(theta), math.cos(theta)
    if s == 0.0:
        return b / (2.0 * math.pi * lam * eta)
    return math.atan2(2.0 * b * b * s * c, 4.0 * eta - 2.0 * b * b * s * s) / (math.pi * lam * b * s)


def rho_hat(y: float, lam: float) -> float:
    """Unrescaled limit density on ``|y| < 1/sqrt(lam)``, via the complex quotient."""
    sl = math.sqrt(lam)
    if abs(y) >= 1.0 / sl:
        return 0.0
    eta = math.exp(-lam)
    a = support_edge(lam) / sl
    out = 0.0
    if abs(y) < a:
        if y == 0.0:
            return support_edge(lam) / (2.0 * math.pi * lam * eta) * sl
        root = cmath.sqrt(4.0 * (1.0 - eta) * eta - lam * y * y)
        z = (2.0 * eta - sl * y + 1j * root) / (2.0 * eta + sl * y + 1j * root)
        out = cmath.phase(z) / (math.pi * lam * y)
    elif lam > LOG2:
        out = 1.0 / (lam * abs(y))
    return out


def rho0_arctan(x: float, lam: float) -> float:
    """Difference-of-arctangents form in the ``y`` variable (valid for ``lam < log 2``)."""
    if lam >= LOG2:
        raise DomainError("the arctangent form is stated for lambda < log 2")
    a = support_edge(lam) / math.sqrt(lam)
    if x == 0.0 or abs(x) >= a:
        raise DomainError("arctangent form needs 0 < |x| < a(lambda)")
    el = math.exp(lam)
    sl = math.sqrt(lam)
    r = math.sqrt(4 * el - 4 - el * el * x * x * lam)
    return (math.atan(r / (2 - el * x * sl)) - math.atan(r / (2 + el * x * sl))) / (math.pi * lam * x)


def semicircle(x: float) -> float:
    if abs(x) >= 2.0:
        return 0.0
    return math.sqrt(4.0 - x * x) / (2.0 * math.pi)


def semicircle_limit_check(lam_small: float, x: float) -> float:
    sl = math.sqrt(lam_small)
    return abs(sl * density_rho0(sl * x, lam_small) - semicircle(x))


# order-one correction ------------------------------------------------------


def _rho1_first(x: float, lam: float) -> float:
    eta = math.exp(-lam)
    u = -math.expm1(-lam)
    b2 = 4.0 * eta * u
    if x * x >= b2:
        return 0.0
    return -(lam * eta * u / 2.0) * (x * x - 2.0 * eta) * (b2 - x * x) ** -2.5 / math.pi


def _t_window(x: float, lam):
    """Singular endpoints and the integration window of the second term."""
    xs = mpmath.sqrt(1 - mpmath.mpf(x) ** 2) / 2
    t0, t1 = mpmath.mpf(0.5) - xs, mpmath.mpf(0.5) + xs
    u = -mpmath.expm1(-mpmath.mpf(lam))
    return t0, t1, u


def _poly(t, x2):
    return t * (x2 + 2 * t * (1 - t))


def _dpoly(t, x2):
    return x2 + 4 * t - 6 * t * t


def _fp_lower(t0, t1, T, x2):
    """Finite part of ``int_{t0}^{T} (t-t0)^(-5/2) g(t) dt`` with ``g = P (4(t1-t))^(-5/2)``."""

    def g(t):
        return _poly(t, x2) * (4 * (t1 - t)) ** mpmath.mpf(-2.5)

    w0 = 4 * (t1 - t0)
    A0 = _poly(t0, x2) * w0 ** mpmath.mpf(-2.5)
    A1 = _dpoly(t0, x2) * w0 ** mpmath.mpf(-2.5) + _poly(t0, x2) * 10 * w0 ** mpmath.mpf(-3.5)
    D = T - t0

    # t = t0 + s^2: the subtracted remainder becomes 2 s^-4 (g - A0 - A1 s^2), smooth in s
    def rem(s):
        return 2 * (g(t0 + s * s) - A0 - A1 * s * s) / s**4

    body = mpmath.quad(rem, [0, mpmath.sqrt(D)], method="gauss-legendre")
    return body - mpmath.mpf(2) / 3 * A0 * D ** mpmath.mpf(-1.5) - 2 * A1 * D ** mpmath.mpf(-0.5)


def _fp_upper(t0, t1, T, x2):
    """Finite part of ``int_{T}^{t1} (t1-t)^(-5/2) h(t) dt`` with ``h = P (4(t-t0))^(-5/2)``."""

    def h(t):
        return _poly(t, x2) * (4 * (t - t0)) ** mpmath.mpf(-2.5)

    v0 = 4 * (t1 - t0)
    B0 = _poly(t1, x2) * v0 ** mpmath.mpf(-2.5)
    # d/ds h(t1 - s) at s = 0
    B1 = -(_dpoly(t1, x2) * v0 ** mpmath.mpf(-2.5) - _poly(t1, x2) * 10 * v0 ** mpmath.mpf(-3.5))
    D = t1 - T

    def rem(s):
        return 2 * (h(t1 - s * s) - B0 - B1 * s * s) / s**4

    body = mpmath.quad(rem, [0, mpmath.sqrt(D)], method="gauss-legendre")
    return body - mpmath.mpf(2) / 3 * B0 * D ** mpmath.mpf(-1.5) - 2 * B1 * D ** mpmath.mpf(-0.5)


def rho1_second_integral(x: float, lam: float, dps: int = 30) -> float:
    """Regularised t-integral of the second term (before the ``-lam/(3 pi)`` factor)."""
    with mpmath.workdps(dps):
        t0, t1, u = _t_window(x, lam)
        if u <= t0:
            return 0.0
        x2 = mpmath.mpf(x) ** 2
        if u < t1:
            return float(_fp_lower(t0, t1, u, x2))
        mid = (t0 + t1) / 2
        return float(_fp_lower(t0, t1, mid, x2) + _fp_upper(t0, t1, mid, x2))


def density_rho1(x: float, lam: float) -> float:
    """Order-one correction to the limiting density (Hadamard-regularised)."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    if abs(x) >= 1.0:
        raise DomainError("the correction density is defined for |x| < 1")
    b = support_edge(lam)
    if abs(abs(x) - b) <= 1e-12 * max(1.0, b):
        raise SingularPointError(f"x = {x} sits on the edge b({lam}) = {b}")
    return _rho1_first(x, lam) - lam / (3.0 * math.pi) * rho1_second_integral(x, lam)


def _continued_piece(g, r, alpha):
    """``int_0^r s^alpha g(s) ds`` continued in ``alpha`` via a circle of radius ``r``."""
    # branch of s^alpha continuous along the loop: arg runs over [0, 2 pi]
    def on_circle(theta):
        z = r * mpmath.expj(theta)
        return r**alpha * mpmath.expj(alpha * theta) * g(z) * 1j * z

    loop = mpmath.quad(on_circle, [0, mpmath.pi / 2, mpmath.pi, 3 * mpmath.pi / 2, 2 * mpmath.pi])
    return loop / (mpmath.expj(2 * mpmath.pi * alpha) - 1)


def rho1_second_integral_oracle(x: float, lam: float, dps: int = 30) -> float:
    """Same integral by analytic continuation in the exponent.

    Near each singular endpoint the piece ``int_0^r s^(-5/2) g`` is
    replaced by a closed-loop integral around the endpoint divided by
    ``e^(2 pi i alpha) - 1``; the rest is an ordinary integral.  No
    Taylor coefficients are used, so this is independent of the
    subtraction evaluator.
    """
    alpha = mpmath.mpf(-2.5)
    with mpmath.workdps(dps):
        t0, t1, u = _t_window(x, lam)
        if u <= t0:
            return 0.0
        x2 = mpmath.mpf(x) ** 2

        def g_low(s):
            t = t0 + s
            return _poly(t, x2) * (4 * (t1 - t)) ** alpha

        def g_up(s):
            t = t1 - s
            return _poly(t, x2) * (4 * (t - t0)) ** alpha

        def f_plain(t):
            return (t - t0) ** alpha * g_low(t - t0)

        if u < t1:
            r = min((u - t0) / 2, (t1 - t0) / 4)
            val = _continued_piece(g_low, r, alpha) + mpmath.quad(f_plain, [t0 + r, u])
        else:
            r = (t1 - t0) / 4
            val = (
                _continued_piece(g_low, r, alpha)
                + _continued_piece(g_up, r, alpha)
                + mpmath.quad(f_plain, [t0 + r, t1 - r])
            )
        return float(mpmath.re(val))


def density_rho1_oracle(x: float, lam: float) -> float:
    return _rho1_first(x, lam) - lam / (3.0 * math.pi) * rho1_second_integral_oracle(x, lam)


# ------------------------------------------------------ moments of rho0 ----


def density_moment(p: float, lam: float) -> float:
    """``int_{-1}^{1} |x|^{2p} rho0(x) dx``.

    The bulk uses ``x = b sin(theta)`` so the square-root edge becomes a
    smooth integrand; the plateau (``lam > log 2``) is elementary.
    """
    if lam <= 0 or p <= -0.5:
        raise DomainError("density moments need lambda > 0 and p > -1/2")
    b = support_edge(lam)
    tol = current().quadrature

    def integrand(theta):
        s = math.sin(theta)
        return (b * s) ** (2 * p) * _rho0_bulk_theta(theta, lam) * b * math.cos(theta)

    bulk, err = integrate.quad(integrand, 0.0, math.pi / 2, epsabs=tol * 1e-3, epsrel=tol * 1e-3, limit=200)
    if err > tol:
        raise ToleranceError(f"density moment quadrature error {err} exceeds {tol}")
    total = 2.0 * bulk
    if lam > LOG2 and b < 1.0:
        total += (-2.0 * math.log(b) if p == 0 else (1.0 - b ** (2 * p)) / p) / lam
    return total


def density_moment_check(p: float, lam: float) -> float:
    """``|int |x|^{2p} rho0 - M0(p, lam)|`` with ``M0 = 1`` at ``p = 0``."""
    target = 1.0 if p == 0 else asym_coeffs(p, lam).M0
    return abs(density_moment(p, lam) - target)


# ------------------------------------------------------ profiles ----


@dataclass(frozen=True)
class DensityProfile:
    lam: float
    order: int
    xs: tuple[float, ...]
    values: tuple[float, ...]
    b: float
    regularized: bool
    masked: tuple[float, ...] = field(default_factory=tuple)

    def rows(self) -> list[tuple[float, float, int, float]]:
        return [(x, v, self.order, self.lam) for x, v in zip(self.xs, self.values)]


def density_profile(lam: float, order: int = 0, points: int = 201, mask_width: float = 1e-3) -> DensityProfile:
    """Sample a density on an even grid strictly inside ``(-1, 1)``.

    For ``order=1`` grid points within ``mask_width`` of ``|x| = b`` are
    dropped and listed in ``masked``.
    """
    if order not in (0, 1):
        raise DomainError("order must be 0 or 1")
    if points < 2:
        raise DomainError("need at least two grid points")
    b = support_edge(lam)
    step = 2.0 / (points + 1)
    grid = [-1.0 + step * (i + 1) for i in range(points)]
    xs, vals, masked = [], [], []
    for x in grid:
        if order == 1 and abs(abs(x) - b) < mask_width:
            masked.append(x)
            continue
        xs.append(x)
        vals.append(density_rho0(x, lam) if order == 0 else density_rho1(x, lam))
    return DensityProfile(lam, order, tuple(xs), tuple(vals), b, order == 1, tuple(masked))


__all__ = [
    "incomplete_beta_reg", "AsymptoticCoeffs", "asym_coeffs", "asym_M0_alternating",
    "continuum_limit_check", "weight_dH", "jackson_integral", "jackson_symmetric",
    "LatticeDensity", "lattice_density", "lattice_weight_closed", "support_edge",
    "support_edge_squared", "density_rho0", "rho_hat", "rho0_arctan", "semicircle",
    "semicircle_limit_check", "density_rho1", "density_rho1_oracle",
    "rho1_second_integral", "rho1_second_integral_oracle", "density_moment",
    "density_moment_check", "DensityProfile", "density_profile",
]
