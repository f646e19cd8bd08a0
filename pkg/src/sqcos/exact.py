"""Exact rational arithmetic for series coefficients and derivative bounds.

Everything in this module is computed with integer/rational arithmetic
only; no value here ever carries a rounding error. ``ExactRational`` is
the stdlib ``fractions.Fraction``, which already guarantees lowest terms
and a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

ExactRational = Fraction


def series_coeff(n: int, k: int) -> Fraction:
    """Coefficient of the derivative series: (k+n)! / (k! (2k+2n)!).

    ``series_coeff(n, 0)`` equals n!/(2n)!.
    """
    _check_index(n, "n")
    _check_index(k, "k")
    return _series_coeff(n, k)


@lru_cache(maxsize=None)
def _series_coeff(n: int, k: int) -> Fraction:
    return Fraction(factorial(k + n), factorial(k) * factorial(2 * k + 2 * n))


def coeff_ratio(n: int, k: int) -> Fraction:
    """Exact step ratio series_coeff(n, k+1) / series_coeff(n, k)."""
    _check_index(n, "n")
    _check_index(k, "k")
    return Fraction(k + n + 1, (k + 1) * (2 * k + 2 * n + 1) * (2 * k + 2 * n + 2))


def derivative_at_zero(n: int) -> Fraction:
    """Exact n-th derivative at the origin: (-1)^n n!/(2n)!."""
    _check_index(n, "n")
    sign = -1 if n % 2 else 1
    return sign * _series_coeff(n, 0)


def derivative_bound(n: int) -> Fraction:
    """The uniform derivative bound on the positive half-axis: n!/(2n)!."""
    _check_index(n, "n")
    return _series_coeff(n, 0)


def general_prefactor(n: int, m: int) -> Fraction:
    """Exact prefactor n!(2m)! / ((2n)! m!) of the two-index bound.

    Requires 0 <= m <= n.
    """
    _check_index(n, "n")
    _check_index(m, "m")
    if m > n:
        raise ValueError(f"need m <= n, got m={m}, n={n}")
    return Fraction(factorial(n) * factorial(2 * m), factorial(2 * n) * factorial(m))


def sinc_derivative_at_zero(n: int) -> Fraction:
    """Exact n-th derivative of sin(x)/x at 0: 0 for odd n, (-1)^(n/2)/(n+1) else."""
    _check_index(n, "n")
    if n % 2:
        return Fraction(0)
    sign = -1 if (n // 2) % 2 else 1
    return Fraction(sign, n + 1)


def _check_index(value: int, name: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < 0:
        raise ValueError(f"{name} must be nonnegative, got {value}")
