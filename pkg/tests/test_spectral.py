import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from qgue import moments, spectral
from qgue.exceptions import DomainError, SingularPointError
from qgue.qcore import catalan

LOG2 = math.log(2.0)
LAMS = (0.3, LOG2, 2.0)


# --- incomplete beta -----------------------------------------------------------


def test_incomplete_beta_values():
    assert spectral.incomplete_beta_reg(0.5, 2, 1) == pytest.approx(0.25, rel=1e-15)
    assert spectral.incomplete_beta_reg(0.0, 3, 4) == 0.0
    assert spectral.incomplete_beta_reg(1.0, 3, 4) == 1.0
    assert spectral.incomplete_beta_reg(0.5, 3, 2) == pytest.approx(5 / 16, rel=1e-15)
    with pytest.raises(DomainError):
        spectral.incomplete_beta_reg(1.5, 1, 1)


@settings(max_examples=60)
@given(st.floats(0.001, 0.999), st.floats(0.3, 12), st.floats(0.3, 12))
def test_incomplete_beta_against_scipy(x, a, b):
    assert spectral.incomplete_beta_reg(x, a, b) == pytest.approx(special.betainc(a, b, x), rel=1e-11, abs=1e-14)


# --- asymptotic coefficients ---------------------------------------------------


def alternating_M0_mp(p, lam, dps=60):
    """Signed finite sum for the leading coefficient, in high precision (the terms cancel)."""
    with mpmath.workdps(dps):
        def df(n):
            return mpmath.mpf(math.prod(range(n, 0, -2)) if n > 0 else 1)

        acc = mpmath.mpf(0)
        for k in range(p, 2 * p + 1):
            c = 2 * df(2 * k - 2) * df(2 * p - 1) / (
                k * df(2 * k - 2 * p) * mpmath.factorial(k - 1) * mpmath.factorial(2 * p - k))
            acc += (-1) ** k * c * mpmath.exp(-mpmath.mpf(lam) * k)
        return float((mpmath.mpf(1) / p + (-1) ** (p - 1) * acc) / lam)


@pytest.mark.parametrize("p", range(1, 7))
@pytest.mark.parametrize("lam", [0.05, 0.3, LOG2, 1.0, 2.0, 5.0])
def test_leading_coefficient_two_ways(p, lam):
    assert spectral.asym_coeffs(p, lam).M0 == pytest.approx(alternating_M0_mp(p, lam), rel=1e-12)


@pytest.mark.parametrize("p", range(1, 5))
@pytest.mark.parametrize("lam", [0.3, LOG2, 2.0])
def test_float_alternating_sum(p, lam):
    assert spectral.asym_coeffs(p, lam).M0 == pytest.approx(spectral.asym_M0_alternating(p, lam), rel=1e-9)


def test_leading_coefficient_examples():
    assert spectral.asym_coeffs(1, 1.0).M0 == pytest.approx((1 - math.exp(-1)) ** 2, rel=1e-14)
    assert spectral.asym_coeffs(2, LOG2).M0 == pytest.approx(5 / (32 * LOG2), rel=1e-14)
    assert spectral.asym_coeffs(3, 1e-4).M0 / 1e-12 == pytest.approx(5, rel=1e-3)
    zero = spectral.asym_coeffs(2, 0.0)
    assert (zero.M0, zero.M1) == (0.0, 0.0)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_subleading_coefficient_from_finite_N_fit(p):
    # the residual (scaled - M0 N) N is M1 + O(1/N^2); one Richardson step removes that
    lam = 1.3
    c = spectral.asym_coeffs(p, lam)
    r = [(moments.scaled_moment(N, p, lam) - c.M0 * N) * N for N in (200, 400)]
    assert (4 * r[1] - r[0]) / 3 == pytest.approx(c.M1, rel=1e-6)


def test_continuum_limit_examples():
    e0, e1 = spectral.continuum_limit_check(2, 1e-3)
    assert abs(e0 - 2) < 1e-2 and abs(e1 - 1) < 1e-2
    assert abs(spectral.continuum_limit_check(1, 1e-3)[1]) < 1e-2
    e0, e1 = spectral.continuum_limit_check(3, 1e-3)
    assert abs(e0 - 5) / 5 < 1e-2 and abs(e1 - 10) / 10 < 1e-2
    with pytest.raises(DomainError):
        spectral.continuum_limit_check(1, 0.5)


# --- lattice -------------------------------------------------------------------


def test_jackson_integral_of_identity():
    for q in (0.2, 0.5, 0.9):
        assert spectral.jackson_integral(lambda x: x, 0.0, 1.0, q) == pytest.approx(1 / (1 + q), rel=1e-12)


@pytest.mark.parametrize("q", [0.3, 0.5, 0.7])
def test_weight_normalisation_and_second_moment(q):
    # the Jackson mass of the weight is 1 - q; its second moment is (1 - q) * lambda_1
    w = lambda x: spectral.weight_dH(x, q)  # noqa: E731
    assert spectral.jackson_symmetric(w, q) == pytest.approx(1 - q, rel=1e-12)
    assert spectral.jackson_symmetric(lambda x: x * x * w(x), q) == pytest.approx((1 - q) ** 2, rel=1e-12)


@pytest.mark.parametrize("k", range(8))
def test_weight_product_form(k):
    q = 0.45
    assert spectral.weight_dH(q**k, q) == pytest.approx(spectral.lattice_weight_closed(k, q), rel=1e-12)


def test_lattice_normalisation():
    assert spectral.lattice_density(4, 0.5).normalization() == pytest.approx(4.0, abs=1e-10)


def test_lattice_single_level_is_the_weight():
    ld = spectral.lattice_density(1, 0.5)
    for w, v in zip(ld.weights, ld.values):
        assert v == pytest.approx(w / 0.5, rel=1e-14)


@pytest.mark.parametrize("q", [0.3, 0.5])
@pytest.mark.parametrize("N", range(1, 5))
def test_lattice_moments_match_symbolic(N, q):
    ld = spectral.lattice_density(N, q)
    for p in range(1, 4):
        exact = (1 - q) ** p * float(moments.qgue_moment_positive(N, p).evaluate(q))
        assert ld.jackson_moment(p) == pytest.approx(exact, abs=1e-10)


def test_lattice_second_moment_value():
    assert spectral.lattice_density(2, 0.5).jackson_moment(1) == pytest.approx(0.5 * 2.75, abs=1e-10)


def test_lattice_rejects_bad_q():
    with pytest.raises(DomainError):
        spectral.lattice_density(2, 1.0)


# --- rho0 ----------------------------------------------------------------------


def test_support_edge():
    assert spectral.support_edge(LOG2) == 1.0
    assert spectral.support_edge_squared(Fraction(1, 2)) == 1


@settings(max_examples=80)
@given(st.floats(0.02, 4.0), st.floats(1e-4, 0.999), st.booleans())
def test_rho0_agrees_with_complex_phase_form(lam, ax, neg):
    # the phase form has absolute error ~1e-16 in the angle, so tiny |x| is excluded
    x = -ax if neg else ax
    sl = math.sqrt(lam)
    b = spectral.support_edge(lam)
    if abs(ax - b) < 1e-9:
        return
    assert spectral.density_rho0(x, lam) == pytest.approx(spectral.rho_hat(x / sl, lam) / sl, rel=1e-9, abs=1e-12)


@settings(max_examples=60)
@given(st.floats(0.02, 0.69), st.floats(0.01, 0.99))
def test_rho0_agrees_with_arctangent_form(lam, frac):
    sl = math.sqrt(lam)
    x = frac * spectral.support_edge(lam)
    assert spectral.density_rho0(x, lam) == pytest.approx(spectral.rho0_arctan(x / sl, lam) / sl, rel=1e-8)


def test_rho0_regions():
    b = spectral.support_edge(0.3)
    assert spectral.density_rho0((b + 1) / 2, 0.3) == 0.0
    b2 = spectral.support_edge(2.0)
    x = (b2 + 1) / 2
    assert spectral.density_rho0(x, 2.0) == pytest.approx(1 / (2.0 * x), rel=1e-15)
    assert spectral.density_rho0(1.0, 2.0) == 0.0
    # continuity at the edge when the plateau exists
    assert spectral.density_rho0(b2 * (1 - 1e-12), 2.0) == pytest.approx(1 / (2.0 * b2), rel=1e-5)


def test_log2_branches_coincide():
    for x in (0.0, 0.3, 0.9, 0.999):
        lo = spectral.density_rho0(x, LOG2)
        hi = spectral.density_rho0(x, math.nextafter(LOG2, 1.0))
        assert lo == pytest.approx(hi, rel=1e-6, abs=1e-12)


@pytest.mark.parametrize("lam", LAMS)
@pytest.mark.parametrize("p", range(0, 7))
def test_density_moments(p, lam):
    tol = 1e-10 if p == 0 else 1e-8
    assert spectral.density_moment_check(p, lam) < tol


def test_semicircle_limit():
    for x in (0.0, 1.0, -1.0, 1.9, -1.9):
        assert spectral.semicircle_limit_check(1e-3, x) < 1e-2


# --- rho1 ----------------------------------------------------------------------


def test_rho1_small_lambda_limit():
    lam = 1e-2
    sl = math.sqrt(lam)
    got = sl * spectral.density_rho1(sl, lam)
    assert got == pytest.approx(3 ** -2.5 / math.pi, rel=0.03)


def test_rho1_positive_at_origin_for_small_lambda():
    assert spectral.density_rho1(0.0, 0.05) > 0


def test_rho1_errors():
    with pytest.raises(SingularPointError):
        spectral.density_rho1(spectral.support_edge(0.5), 0.5)
    with pytest.raises(DomainError):
        spectral.density_rho1(1.0, 0.5)


@settings(max_examples=10, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(-0.95, 0.95))
def test_rho1_finite_part_matches_contour_oracle(lam, frac):
    x = frac * spectral.support_edge(lam)
    a = spectral.density_rho1(x, lam)
    b = spectral.density_rho1_oracle(x, lam)
    assert a == pytest.approx(b, rel=1e-6)


def test_rho1_vanishes_on_plateau():
    lam = 2.0
    x = (spectral.support_edge(lam) + 1) / 2
    assert abs(spectral.density_rho1(x, lam)) < 1e-12
    assert abs(spectral.density_rho1_oracle(x, lam)) < 1e-12


# --- profiles ------------------------------------------------------------------


def test_profile_masks_singular_points():
    lam = 0.5
    b = spectral.support_edge(lam)
    prof = spectral.density_profile(lam, order=1, points=401, mask_width=5e-3)
    assert prof.regularized
    assert all(abs(abs(x) - b) >= 5e-3 for x in prof.xs)
    assert len(prof.masked) > 0


def test_profile_is_even_and_deterministic():
    a = spectral.density_profile(1.0, points=51)
    b = spectral.density_profile(1.0, points=51)
    assert a == b
    vals = a.values
    assert all(v == pytest.approx(w, rel=1e-12) for v, w in zip(vals, reversed(vals)))


def test_catalan_small_lambda_sequence():
    for p in range(1, 6):
        e0, _ = spectral.continuum_limit_check(p, 1e-3)
        assert abs(e0 - catalan(p)) / catalan(p) < 1e-2
