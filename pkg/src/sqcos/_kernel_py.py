"""Pure-Python series kernels (mpmath).

These mirror the compiled MPFR kernels in sqcos._kernel operation for
operation: both perform the same sequence of correctly-rounded
nearest-even operations at the same working precision, so the two
backends produce bit-identical sums. Keep the loops in sync.

Kernel contract (shared with the compiled module):

* ``cos_series(n, x, alt, prec, tol, max_terms)`` sums
  S = sum_k s_k c(n,k) x^k with c(n,k) = (k+n)!/(k!(2k+2n)!) and
  s_k = (-1)^k in alternating mode (x > 0 branch of the function) or
  s_k = +1 in positive mode (the |x| series of the x <= 0 branch).
* ``sinc_series(n, x, prec, tol, max_terms)`` sums the n-th derivative
  of sin(x)/x at x > 0 from the termwise-differentiated Taylor series.
* ``cos_series_complex`` is the complex-argument variant of the first
  sum (S = sum_k c(n,k) w^k with w = -z); it exists only here.

Results report the raw partial sum, a certified tail bound, the largest
binary exponent seen (for the caller's rounding-error model), and the
number of error-relevant floating operations performed. Callers apply
the overall (-1)^n sign and build ApproxValue instances.

Stopping rules: in alternating mode, stop once the term ratio has
dropped below 1 (it is strictly decreasing, so terms shrink from there
on) and the first omitted term is below tol/2; that omitted term is the
certified tail. Otherwise stop once the ratio bound r is below 1/2 and
the geometric tail term*r/(1-r) is below tol/2. Tail bounds are inflated
by 1 + 2^-20 to absorb their own rounding and the multiplicative drift
of the term recurrence (relative drift is below 2^-150 at the precisions
planned by the backend).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from mpmath import mp, mpc, mpf

INFLATION_BITS = 20


@dataclass(frozen=True)
class RawSum:
    """Raw kernel output, prior to sign fixup and error assembly.

    ``tail`` is signed: when ``directional`` is true the true sum lies
    between ``total`` and ``total + tail``; otherwise ``|true - total|``
    is at most ``|tail|``.
    """

    total: mpf | mpc
    tail: mpf
    max_exp: int
    terms: int
    ops: int
    converged: bool
    directional: bool


def _binexp(v) -> int:
    # Exponent e with 2^(e-1) <= |v| < 2^e, matching mpfr_get_exp.
    _, _, exp, bc = v._mpf_
    return exp + bc


def cos_series(n: int, x: mpf, alt: bool, prec: int, tol: mpf,
               max_terms: int) -> RawSum:
    with mp.workprec(prec):
        infl = 1 + mpf(2) ** -INFLATION_BITS
        tol_half = tol / 2
        term = mpf(factorial(n)) / factorial(2 * n)
        total = term
        ops = 4
        max_exp = _binexp(term)
        k = 0
        while k < max_terms:
            a = k + n + 1
            d = (k + 1) * (2 * k + 2 * n + 1) * (2 * k + 2 * n + 2)
            r_up = (x * a) / d * infl
            if not alt and r_up < 0.5:
                tail = term * r_up / (1 - r_up) * infl
                if tail < tol_half:
                    return RawSum(total, tail, max_exp, k + 1, ops, True, True)
            term = term * x
            term = term * a
            term = term / d
            k += 1
            if alt and r_up < 1 and term < tol_half:
                tail = term * infl
                if k % 2:
                    tail = -tail
                return RawSum(total, tail, max_exp, k, ops, True, True)
            if alt and k % 2:
                total = total - term
            else:
                total = total + term
            ops += 4
            if term:
                max_exp = max(max_exp, _binexp(term))
            if total:
                max_exp = max(max_exp, _binexp(total))
        return RawSum(total, abs(term), max_exp, k, ops, False, True)


def cos_series_complex(n: int, z: mpc, prec: int, tol: mpf,
                       max_terms: int) -> RawSum:
    with mp.workprec(prec):
        infl = 1 + mpf(2) ** -INFLATION_BITS
        tol_half = tol / 2
        w = -z
        w_mag = abs(w) * infl
        term = mpc(mpf(factorial(n)) / factorial(2 * n))
        total = term
        ops = 6
        max_exp = _binexp(abs(term))
        k = 0
        while k < max_terms:
            a = k + n + 1
            d = (k + 1) * (2 * k + 2 * n + 1) * (2 * k + 2 * n + 2)
            r_up = (w_mag * a) / d * infl
            term_mag = abs(term) * infl
            if r_up < 0.5:
                tail = term_mag * r_up / (1 - r_up) * infl
                if tail < tol_half:
                    return RawSum(total, tail, max_exp, k + 1, ops, True, False)
            term = term * w
            term = term * a
            term = term / d
            total = total + term
            k += 1
            ops += 12
            m = abs(term)
            if m:
                max_exp = max(max_exp, _binexp(m))
            m = abs(total)
            if m:
                max_exp = max(max_exp, _binexp(m))
        return RawSum(total, abs(term), max_exp, k, ops, False, False)


def sinc_series(n: int, x: mpf, prec: int, tol: mpf, max_terms: int) -> RawSum:
    k0 = (n + 1) // 2
    with mp.workprec(prec):
        infl = 1 + mpf(2) ** -INFLATION_BITS
        tol_half = tol / 2
        xx = x * x
        term = mpf(factorial(2 * k0) // factorial(2 * k0 - n)) / factorial(2 * k0 + 1)
        if n % 2:
            term = term * x
        negative = bool(k0 % 2)  # sign of term k is (-1)^k
        total = -term if negative else +term
        ops = 6
        max_exp = _binexp(term)
        k = k0
        while k - k0 < max_terms:
            a = 2 * k + 1
            d = (2 * k + 3) * (2 * k + 2 - n) * (2 * k + 1 - n)
            # Monotone envelope of the term ratio; ratio < envelope < 1
            # guarantees the terms shrink from here on.
            env = xx / ((2 * k + 2 - n) * (2 * k + 1 - n)) * infl
            term = term * xx
            term = term * a
            term = term / d
            k += 1
            negative = not negative
            if env < 1 and term < tol_half:
                tail = term * infl
                if negative:
                    tail = -tail
                return RawSum(total, tail, max_exp, k - k0, ops, True, True)
            if negative:
                total = total - term
            else:
                total = total + term
            ops += 4
            if term:
                max_exp = max(max_exp, _binexp(term))
            if total:
                max_exp = max(max_exp, _binexp(total))
        return RawSum(total, abs(term), max_exp, k - k0, ops, False, True)
