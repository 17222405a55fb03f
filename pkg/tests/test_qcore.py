import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgue.exceptions import InexactDivisionError, NonTerminatingSeriesError, UnsupportedModeError
from qgue.qcore import (
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
    q_integer,
    q_pascal_binomial,
    q_pochhammer,
    q_pochhammer_inf,
    stirling_first,
    stirling_first_bruteforce,
)

q = QPoly.q()

laurent = st.dictionaries(
    st.integers(-4, 6),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    max_size=5,
).map(QPoly)


# --- QPoly arithmetic -------------------------------------------------------


@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(laurent, laurent)
def test_exact_div_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a


def test_exact_div_rejects_remainder():
    with pytest.raises(InexactDivisionError):
        (ONE + q).exact_div(ONE + q * q)


@given(laurent)
def test_text_round_trip(a):
    assert QPoly.parse(str(a)) == a


def test_canonical_text():
    assert str(QPoly({0: 2, 1: 1, 2: 1})) == "2 + q + q^2"
    assert str(QPoly({-2: Fraction(-1, 3), 1: 1})) == "-1/3*q^-2 + q"
    assert str(ZERO) == "0"


@given(laurent, st.fractions(min_value=Fraction(1, 10), max_value=2, max_denominator=10))
def test_evaluation_is_a_homomorphism(a, x):
    b = a * a + ONE
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)


# --- q-integers and friends ---------------------------------------------------


def test_q_integer_values():
    assert q_integer(0) == ZERO
    assert q_integer(1) == ONE
    assert q_integer(3) == ONE + q + q * q


def test_factorials():
    assert q_factorial(0) == ONE
    assert q_double_factorial(3) == ONE + q + q * q
    assert q_factorial(3).evaluate(1) == 6
    for n in range(9):
        assert q_factorial(n).evaluate(1) == math.factorial(n)
        assert q_double_factorial(n).evaluate(1) == double_factorial(n)


def test_q_binomial_examples():
    assert q_binomial(4, 2) == QPoly({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})
    assert q_binomial(7, 0) == ONE
    assert q_binomial(3, 5) == ZERO


@given(st.integers(0, 12), st.integers(0, 12))
def test_q_binomial_division_free_oracle(n, k):
    assert q_binomial(n, k) == q_pascal_binomial(n, k)


@given(st.integers(0, 10), st.integers(0, 10), st.integers(1, 3))
def test_q_binomial_base_and_classical_limit(n, k, b):
    g = q_binomial(n, k, b)
    assert g == q_pascal_binomial(n, k).subs_power(b)
    assert g.evaluate(1) == math.comb(n, k)


def test_stirling():
    assert stirling_first(4, 2) == 11
    assert stirling_first(5, 3) == 35
    for n in range(8):
        assert stirling_first(n, n) == 1
        for k in range(n + 1):
            assert stirling_first(n, k) == stirling_first_bruteforce(n, k)
        assert sum(abs(stirling_first(n, k)) for k in range(n + 1)) == math.factorial(n)


def test_catalan():
    assert [catalan(p) for p in range(6)] == [1, 1, 2, 5, 14, 42]


# --- Pochhammer and series ----------------------------------------------------


def test_pochhammer_finite():
    assert q_pochhammer(q, 0, q) == ONE
    assert q_pochhammer(q, 2, q) == (ONE - q) * (ONE - q * q)
    assert q_pochhammer(Fraction(1, 2), 2, Fraction(1, 2)) == Fraction(3, 8)


def test_pochhammer_infinite():
    assert q_pochhammer_inf(-0.0, 0.0).value == 1.0
    with pytest.raises(UnsupportedModeError):
        q_pochhammer(q, math.inf, q)
    # Euler: (q;q)_inf = sum (-1)^k q^(k(3k-1)/2) over all integers k
    x = 0.4
    pent = sum((-1) ** k * x ** (k * (3 * k - 1) // 2) for k in range(-30, 31))
    got = q_pochhammer_inf(x, x)
    assert abs(got.value - pent) < 1e-13
    assert got.tail_bound <= 1e-13


@settings(max_examples=40)
@given(st.floats(0.05, 0.9), st.floats(-0.9, 0.9))
def test_pochhammer_inf_matches_long_finite_product(qq, a):
    assert math.isclose(q_pochhammer_inf(a, qq).value, q_pochhammer(a, 2000, qq), rel_tol=1e-12)


def test_2f1():
    assert hyp_2f1_terminating(0, 3, 5, 7) == 1
    for N in range(1, 6):
        assert hyp_2f1_terminating(-1, 1 - N, 2, 2) == N
    with pytest.raises(NonTerminatingSeriesError):
        hyp_2f1_terminating(Fraction(1, 2), 1, 1, Fraction(1, 2))


def test_rphis_basic():
    assert q_hyp_rphis([Fraction(1, 3)], [], Fraction(1, 2), 0) == 1
    # q-binomial theorem: 1phi0(q^-n; ; q, z) = (z q^-n; q)_n
    qq = Fraction(1, 3)
    for n in range(5):
        z = Fraction(2, 5)
        assert q_hyp_rphis([qq**-n], [], qq, z) == q_pochhammer(z * qq**-n, n, qq)
    with pytest.raises(NonTerminatingSeriesError):
        q_hyp_rphis([Fraction(1, 3)], [], Fraction(1, 2), Fraction(1, 2), max_terms=50)


def test_rphis_float_summation_formula():
    # q-Gauss: 2phi1(a, b; c; q, c/(ab)) = (c/a, c/b; q)_inf / (c, c/(ab); q)_inf
    a, b, c, qq = 0.8, 0.9, 0.5, 0.4
    lhs = q_hyp_rphis([a, b], [c], qq, c / (a * b))
    P = lambda x: q_pochhammer_inf(x, qq).value  # noqa: E731
    assert math.isclose(lhs, P(c / a) * P(c / b) / (P(c) * P(c / (a * b))), rel_tol=1e-12)
