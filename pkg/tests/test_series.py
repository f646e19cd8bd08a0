"""Series evaluation: spec'd values, certified errors, series properties.

Brute-force oracles here sum the coefficient series directly from exact
factorials (independent of the production kernels, which use the
incremental ratio recurrence and certified stopping rules).
"""

from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from conftest import COSH_1, INV_PI, SINH_1_HALF, oracle, within
from sqcos import DomainError, EvalConfig, NonConvergenceError
from sqcos.approx import ApproxValue, exact_neg
from sqcos.exact import derivative_at_zero
from sqcos.series import closed_form, eval_abs_series_negative, eval_series


def brute_force_deriv(n: int, z, terms: int = 120, prec: int = 420):
    """Oracle: direct factorial summation of the derivative series."""
    with mp.workprec(prec):
        total = mpmath.mpmathify(0)
        for k in range(terms):
            c = mpf(factorial(k + n)) / (factorial(k) * factorial(2 * k + 2 * n))
            total += c * (-mpmath.mpmathify(z)) ** k
        return total if n % 2 == 0 else -total


class TestEvalSeries:
    def test_zero_of_cosine_at_pi_half_squared(self):
        with mp.workprec(256):
            x = mpf(mpmath.pi) ** 2 / 4
        v = eval_series(0, x)
        # x is pi^2/4 only to 256 bits; allow for the point's own offset
        assert within(v, mpf(0), extra=mpf(10) ** -70)

    def test_cosh_branch_value(self):
        v = eval_series(0, -1)
        assert within(v, oracle(COSH_1), extra=mpf(10) ** -38)

    def test_first_derivative_at_zero_is_exact(self):
        v = eval_series(1, 0)
        assert v.value == mpf(-0.5)
        assert v.abs_error == 0

    def test_matches_brute_force_on_both_signs_and_complex(self):
        for n, z in [(0, mpf(3)), (2, mpf(-7)), (5, mpf("0.125")),
                     (3, mpc(-2, 3)), (1, mpc(5, -1)), (7, mpf(40))]:
            v = eval_series(n, z)
            ref = brute_force_deriv(n, z)
            with mp.workprec(400):
                assert abs(v.value - ref) <= v.abs_error + mpf(10) ** -90

    def test_tolerance_is_honored(self, cfg):
        for n, x in [(0, mpf(10) ** 4), (20, mpf(10) ** 4), (3, mpf(-50)),
                     (1, mpf("1e-4")), (10, mpf(100))]:
            v = eval_series(n, x, cfg)
            assert v.abs_error <= cfg.tolerance

    def test_non_convergence_signal(self):
        tight = EvalConfig(max_terms=8)
        with pytest.raises(NonConvergenceError):
            eval_series(0, 50, tight)

    def test_provenance_at_zero(self, cfg):
        for n in (0, 1, 2, 7, 20):
            v = eval_series(n, 0, cfg)
            ref = ApproxValue.from_fraction(derivative_at_zero(n),
                                            cfg.precision_bits)
            assert v.value == ref.value
            assert v.abs_error <= ref.abs_error + mpf(2) ** (
                mpmath.mag(v.value) - cfg.precision_bits)

    def test_bad_order_rejected(self):
        with pytest.raises(ValueError):
            eval_series(-1, 0)
        with pytest.raises(TypeError):
            eval_series(1.5, 0)


class TestAbsSeriesNegative:
    def test_at_zero_single_term(self):
        v = eval_abs_series_negative(0, 0)
        assert v.value == 1
        assert v.abs_error == 0

    def test_cosh_value(self):
        v = eval_abs_series_negative(0, -1)
        assert within(v, oracle(COSH_1), extra=mpf(10) ** -38)

    def test_first_derivative_magnitude(self):
        v = eval_abs_series_negative(1, -1)
        assert within(v, oracle(SINH_1_HALF), extra=mpf(10) ** -38)

    def test_agrees_with_signed_series(self):
        for n, x in [(0, mpf(-3)), (4, mpf(-10)), (9, mpf("-0.5"))]:
            a = eval_abs_series_negative(n, x)
            s = eval_series(n, x)
            with mp.workprec(400):
                assert abs(a.value - abs(s.value)) <= a.abs_error + s.abs_error

    def test_domain_checked(self):
        with pytest.raises(DomainError):
            eval_abs_series_negative(0, mpf("1e-30"))
        with pytest.raises(DomainError):
            eval_abs_series_negative(0, mpc(-1, 1))


class TestClosedForm:
    def test_cos_of_pi_at_pi_squared(self):
        with mp.workprec(256):
            x = mpf(mpmath.pi) ** 2
        v = closed_form(0, x)
        assert within(v, mpf(-1), extra=mpf(10) ** -70)

    def test_first_derivative_at_quarter_pi_squared(self):
        with mp.workprec(256):
            x = mpf(mpmath.pi) ** 2 / 4
        v = closed_form(1, x)
        assert within(v, exact_neg(oracle(INV_PI)), extra=mpf(10) ** -38)

    def test_limit_value_at_zero(self):
        v = closed_form(1, 0)
        assert v.value == mpf(-0.5)
        assert v.abs_error == 0

    def test_order_validation(self):
        with pytest.raises(DomainError):
            closed_form(2, 1)
        with pytest.raises(DomainError):
            closed_form(0, mpc(1, 1))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(0, 1),
       x=st.floats(min_value=-100, max_value=100,
                   allow_nan=False, allow_infinity=False))
def test_series_and_closed_form_agree(n, x):
    s = eval_series(n, x)
    c = closed_form(n, x)
    with mp.workprec(400):
        assert abs(s.value - c.value) <= s.abs_error + c.abs_error


def test_alternating_structure_positive_axis():
    """For x > 0 the signed terms alternate; once the term ratio is below
    1, magnitudes decrease and partial sums bracket the limit."""
    n, x = 3, Fraction(29, 4)
    terms = []
    for k in range(80):
        c = Fraction(factorial(k + n), factorial(k) * factorial(2 * k + 2 * n))
        terms.append(c * (-x) ** k * (-1) ** n)
    assert all(terms[k] * terms[k + 1] < 0 for k in range(len(terms) - 1))
    ratios = [abs(terms[k + 1] / terms[k]) for k in range(len(terms) - 1)]
    k_dec = next(k for k, r in enumerate(ratios) if r < 1)
    assert all(r < 1 for r in ratios[k_dec:])
    partials = []
    total = Fraction(0)
    for t in terms:
        total += t
        partials.append(total)
    # beyond the decrease point, consecutive partial sums bracket all
    # later ones, so the first omitted term bounds the truncation error
    for k in range(k_dec, 60):
        later = partials[k + 1:70]
        lo, hi = min(partials[k], partials[k + 1]), max(partials[k], partials[k + 1])
        assert all(lo <= p <= hi for p in later)


def test_positive_series_partial_sums_increase():
    """For x <= 0 all terms are positive and partial sums are increasing
    lower bounds of the certified value."""
    n, x = 2, Fraction(-9, 2)
    v = eval_abs_series_negative(n, mpf("-4.5"))
    total = Fraction(0)
    prev = Fraction(-1)
    with mp.workprec(400):
        upper = v.value + v.abs_error
        for k in range(60):
            c = Fraction(factorial(k + n), factorial(k) * factorial(2 * k + 2 * n))
            term = c * abs(x) ** k
            assert term > 0
            total += term
            assert total > prev
            prev = total
            assert mpf(total.numerator) / total.denominator <= upper
