"""Exact rational layer: coefficients, derivative values at 0, bounds."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqcos.exact import (coeff_ratio, derivative_at_zero, derivative_bound,
                         general_prefactor, series_coeff,
                         sinc_derivative_at_zero)


def coeff_by_factorials(n: int, k: int) -> Fraction:
    # independent oracle: direct factorial evaluation
    return Fraction(factorial(k + n), factorial(k) * factorial(2 * k + 2 * n))


def test_coeff_trivial_and_small_values():
    assert series_coeff(0, 0) == 1
    assert series_coeff(1, 0) == Fraction(1, 2)
    assert series_coeff(1, 1) == coeff_by_factorials(1, 1) == Fraction(1, 12)


def test_derivative_at_zero_values():
    assert derivative_at_zero(0) == 1
    assert derivative_at_zero(1) == Fraction(-1, 2)
    assert derivative_at_zero(2) == Fraction(factorial(2), factorial(4))


def test_derivative_at_zero_signs_and_magnitude():
    for n in range(51):
        expected = Fraction((-1) ** n * factorial(n), factorial(2 * n))
        assert derivative_at_zero(n) == expected


def test_bound_values():
    assert derivative_bound(0) == 1
    assert derivative_bound(1) == Fraction(1, 2)
    assert derivative_bound(2) == Fraction(2, 24)


def test_exactness_identity():
    # coeff(n,0) * (2n)!/n! == 1, exactly, for n <= 50
    for n in range(51):
        assert series_coeff(n, 0) * Fraction(factorial(2 * n), factorial(n)) == 1


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 40), k=st.integers(0, 80))
def test_coeff_recurrence_matches_direct(n, k):
    assert series_coeff(n, k + 1) == series_coeff(n, k) * coeff_ratio(n, k)
    assert series_coeff(n, k) == coeff_by_factorials(n, k)


def test_prefactor_values_and_validation():
    assert general_prefactor(3, 3) == 1
    assert general_prefactor(1, 0) == Fraction(1, 2)
    assert general_prefactor(2, 1) == Fraction(factorial(2) * 2, factorial(4))
    with pytest.raises(ValueError):
        general_prefactor(1, 2)


def test_sinc_derivative_at_zero():
    assert sinc_derivative_at_zero(0) == 1
    assert sinc_derivative_at_zero(1) == 0
    # second series coefficient: 2! * (-1/3!) = -1/3
    assert sinc_derivative_at_zero(2) == Fraction(factorial(2) * -1, factorial(3))
    for n in range(0, 13):
        value = sinc_derivative_at_zero(n)
        if n % 2:
            assert value == 0
        else:
            assert abs(value) == Fraction(1, n + 1)
            assert value == Fraction((-1) ** (n // 2), n + 1)


def test_rationals_are_normalized():
    q = series_coeff(7, 9)
    assert q.denominator > 0
    from math import gcd
    assert gcd(q.numerator, q.denominator) == 1


@pytest.mark.parametrize("fn", [series_coeff, coeff_ratio])
def test_index_validation(fn):
    with pytest.raises(ValueError):
        fn(-1, 0)
    with pytest.raises(ValueError):
        fn(0, -2)
    with pytest.raises(TypeError):
        fn(1.0, 0)
    with pytest.raises(TypeError):
        fn(True, 0)
