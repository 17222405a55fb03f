import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgue import moments as m
from qgue.enumor import matching_sum, matching_total
from qgue.exceptions import InconsistentEntryError, UnsupportedModeError
from qgue.qcore import ONE, QPoly, catalan, double_factorial

q = QPoly.q()


def gue_by_hermite_integration(N, p):
    """Exact GUE moment from the kernel sum: sum_j E[x^2p He_j^2] / j! under N(0,1).

    E[x^k] for the standard Gaussian is (k-1)!! for even k, so every moment is an
    integer combination of Hermite coefficients.
    """
    from qgue.polyrec import hermite_He, scalar_coeffs

    def gauss(k):
        return 0 if k % 2 else double_factorial(k - 1)

    total = Fraction(0)
    for j in range(N):
        c = scalar_coeffs(hermite_He(j))
        sq = [Fraction(0)] * (2 * len(c) - 1)
        for a, ca in enumerate(c):
            for b, cb in enumerate(c):
                sq[a + b] += ca * cb
        total += sum(v * gauss(k + 2 * p) for k, v in enumerate(sq)) / math.factorial(j)
    return total


# --- GUE ---------------------------------------------------------------------


def test_gue_examples():
    assert m.gue_moment_positive(3, 1) == 9
    assert m.gue_moment_positive(2, 2) == 18
    assert m.gue_moment_positive(2, 3) == 120
    assert m.gue_moment_alternating(3, 1) == 9
    assert m.gue_partial_alternating(1, 0) == 1
    assert m.gue_partial_alternating(2, 0) == 3
    assert m.gue_moment_hypergeometric(1, 3) == 15
    assert m.gue_moment_hypergeometric(4, 1) == 16
    assert m.gue_moment_hypergeometric(2, 2) == 18


@pytest.mark.parametrize("N,p", [(N, p) for N in range(1, 7) for p in range(6)])
def test_gue_forms_agree_with_gaussian_integration(N, p):
    want = gue_by_hermite_integration(N, p)
    assert m.gue_moment_positive(N, p) == want
    assert m.gue_moment_alternating(N, p) == want
    assert m.gue_moment_hypergeometric(N, p) == want


def test_low_moment_polynomials():
    for N in range(1, 10):
        assert m.gue_moment_positive(N, 1) == N * N
        assert m.gue_moment_positive(N, 2) == 2 * N**3 + N
        assert m.gue_moment_positive(N, 3) == 5 * N**4 + 10 * N**2
        assert m.gue_moment_positive(N, 4) == 14 * N**5 + 70 * N**3 + 21 * N


def test_harer_zagier():
    assert 3 * m.gue_moment_positive(1, 2) == 6 * m.gue_moment_positive(1, 1) + 3 * m.gue_moment_positive(1, 0)
    assert m.harer_zagier_check(20, 20)


# --- genus -------------------------------------------------------------------


def test_genus_values():
    assert m.genus_coefficient(0, 3) == 5
    assert m.genus_coefficient(1, 3) == 10
    assert m.genus_coefficient(1, 4) == 70
    assert m.genus_coefficient(2, 4) == 21
    assert m.genus_coefficient(-1, 4) == 0
    assert m.genus_coefficient(3, 4) == 0


@pytest.mark.parametrize("g", range(5))
def test_genus_closed_forms(g):
    for p in range(14):
        assert m.genus_coefficient(g, p) == m.genus_coefficient_closed(g, p)


@pytest.mark.parametrize("p", range(13))
def test_genus_expansion_and_parity(p):
    assert m.genus_expansion_check(p)
    assert m.odd_vanishing_check(p)


def test_topological_recursion():
    assert 4 * m.genus_coefficient(1, 3) == 10 * m.genus_coefficient(1, 2) + 30 * m.genus_coefficient(0, 1)
    assert m.odd_vanishing_check(2, 1)
    assert m.topological_recursion_check(4, 10)


def test_genus_table_rows():
    rows = m.genus_table(4)
    assert [(r.g, r.p, r.value) for r in rows if r.p == 4] == [(0, 4, 14), (1, 4, 70), (2, 4, 21)]


def test_lagrange_interpolation():
    pts = [(x, 3 * x**2 - x + 7) for x in range(3)]
    assert m.lagrange_coefficients(pts) == [7, -1, 3]


# --- q-GUE ---------------------------------------------------------------------


def test_qgue_examples():
    assert m.qgue_moment_positive(1, 1) == ONE
    assert m.qgue_moment_positive(2, 1) == 2 * ONE + q + q * q
    assert m.qgue_moment_positive(1, 2) == ONE + q + q * q
    assert m.qgue_moment_alternating(1, 1) == ONE
    assert m.qgue_partial_alternating(1, 1) == ONE + q + q * q
    assert m.qgue_moment_alternating(2, 2).evaluate(1) == 18


@pytest.mark.parametrize("p,j", [(p, j) for p in range(1, 5) for j in range(6)])
def test_three_routes_agree(p, j):
    pos = m.qgue_partial_positive(p, j)
    assert pos == m.qgue_partial_alternating(p, j) == matching_sum(p, j)
    assert pos.is_integral()


@pytest.mark.parametrize("N,p", [(N, p) for N in range(1, 9) for p in range(6)])
def test_q_equals_one(N, p):
    ref = m.gue_moment_positive(N, p)
    assert m.qgue_moment_positive(N, p).evaluate(1) == ref
    assert m.qgue_moment_alternating(N, p).evaluate(1) == ref


@pytest.mark.parametrize("N,p", [(N, p) for N in range(1, 5) for p in range(4)])
def test_total_equals_oracle_total(N, p):
    assert m.qgue_moment_positive(N, p) == matching_total(N, p)


def test_alternative_forms():
    assert m.qgue_alternative_forms(1, 1, "flsy_double_sum", 0.5) == pytest.approx(1.75, rel=1e-12)
    assert m.qgue_alternative_forms(1, 0, "cohen_3phi2", 0.5) == pytest.approx(1.0, rel=1e-12)
    assert m.qgue_alternative_forms(2, 0, "cohen_3phi2", 0.3) == pytest.approx(1.39, rel=1e-12)
    with pytest.raises(UnsupportedModeError):
        m.qgue_alternative_forms(1, 1, "nope", 0.5)
    with pytest.raises(UnsupportedModeError):
        m.qgue_alternative_forms(1, 1, "flsy_double_sum", 1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 5), st.floats(0.05, 0.95))
def test_alternative_forms_match_symbolic(p, j, qq):
    ref = float(m.qgue_partial_positive(p, j).evaluate(qq))
    for mode in ("flsy_double_sum", "cohen_3phi2"):
        assert m.qgue_alternative_forms(p, j, mode, qq) == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_cohen_total():
    for N in range(1, 6):
        assert m.cohen_total(N, 3, 0.5) == pytest.approx(float(m.qgue_moment_positive(N, 3).evaluate(0.5)), rel=1e-12)


# --- scaled moments ------------------------------------------------------------


def test_scaled_moment_edges():
    assert m.scaled_moment(10, 2, 0.0) == 0.0
    assert m.scaled_moment(10, 0, 0.0) == 10.0
    with pytest.raises(ValueError):
        m.scaled_moment(10, 1, -1.0)


@pytest.mark.parametrize("N,p,lam", [(5, 1, 0.7), (8, 3, 2.0), (12, 2, 0.3), (6, 4, 1.1)])
def test_scaled_moment_accumulation_matches_polynomial(N, p, lam):
    assert m.scaled_moment(N, p, lam) == pytest.approx(m.scaled_moment_symbolic(N, p, lam), rel=1e-12)


def test_scaled_moment_leading_order():
    assert m.scaled_moment(1000, 1, 1.0) / 1000 == pytest.approx((1 - math.exp(-1)) ** 2, abs=1e-3)


# --- tables --------------------------------------------------------------------


def test_table_cross_checks_and_serialises():
    t = m.build_table("GUE", [1, 2, 3], [0, 1, 2])
    assert t[(2, 2)] == 18
    assert t.rows()[0][3] == "alternating+hypergeometric+positive"
    csv_text = t.to_csv()
    assert csv_text.startswith("kind,N,p,provenance,value\r\n")
    assert json.loads(t.to_json({"x": 1}))["rows"][0]["kind"] == "GUE"


def test_table_rejects_disagreement():
    t = m.MomentTable("qGUE-symbolic")
    t.insert((2, 1), 2 * ONE + q + q * q, "positive")
    with pytest.raises(InconsistentEntryError):
        t.insert((2, 1), 2 * ONE + q, "oracle")


def test_numeric_table_uses_tolerance():
    t = m.build_table("qGUE-numeric", [2], [1], 0.5)
    t.insert((2, 1), 2.75 + 1e-12, "oracle")
    with pytest.raises(InconsistentEntryError):
        t.insert((2, 1), 2.76, "oracle")


def test_exact_rational_evaluation():
    t = m.build_table("qGUE-numeric", [2], [1], Fraction(1, 2))
    assert t[(2, 1)] == Fraction(11, 4)


def test_catalan_leading_coefficient():
    for p in range(8):
        coeffs = m.gue_moment_polynomial(p)
        assert coeffs[p + 1] == catalan(p)
