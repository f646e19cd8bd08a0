"""Certified series evaluation of the n-th derivative of cos(sqrt(x)).

The central object is the entire function C(z) defined by the power
series sum_k (-1)^k z^k / (2k)!, which equals cos(sqrt(x)) for x > 0 and
cosh(sqrt(|x|)) for x <= 0. Its n-th derivative has the everywhere-
convergent expansion

    C^(n)(z) = (-1)^n * sum_k c(n,k) (-z)^k,
    c(n,k) = (k+n)! / (k! (2k+2n)!),

which this module evaluates with a certified absolute error bound:
truncation is controlled by an alternating-series or geometric tail
bound, rounding by an operation-count * max-magnitude ulp model, and the
working precision is escalated automatically to absorb the interior
cancellation of the series (terms peak near exp(sqrt(|z|)) before
decaying).
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from . import backend
from .approx import ApproxValue, exact_abs, half, ulp
from .config import DEFAULT_CONFIG, EvalConfig
from .errors import DomainError, NonConvergenceError
from .exact import derivative_at_zero, _check_index

_MAX_EXTRA_BITS = 2_000_000
_RETRIES = 4


def as_point(z, cfg: EvalConfig = DEFAULT_CONFIG):
    """Normalize a user-supplied point to mpf (or mpc if truly complex).

    ints and floats convert exactly; strings and Fractions are rounded
    once at cfg.precision_bits.
    """
    if isinstance(z, ApproxValue):
        raise TypeError("expected a plain scalar, not an ApproxValue")
    if isinstance(z, (mpc, complex)):
        with mp.workprec(cfg.precision_bits):
            w = mpc(z)
        if w.imag == 0:
            return w.real
        return w
    if isinstance(z, Fraction):
        with mp.workprec(cfg.precision_bits):
            return mpf(z.numerator) / z.denominator
    with mp.workprec(cfg.precision_bits):
        return mpmath.mpf(z)


def _up(*parts) -> mpf:
    """Sum of nonnegative error parts, rounded safely upward."""
    with mp.workprec(120):
        total = mpf(0)
        for p in parts:
            total += p
        return total * (1 + mpf(2) ** -100)


def _tol_bits(tol: mpf) -> int:
    return max(16, 8 - mpmath.mag(tol))


def _cancellation_bits(point_mag: mpf, n: int, sqrt_scale: bool) -> int:
    """A priori bound on log2 of the largest series term.

    Terms of the derivative series are bounded by exp(sqrt(|z|)); sinc
    derivative terms by roughly 4^n exp(|x|).
    """
    with mp.workprec(60):
        scale = mpmath.sqrt(point_mag) if sqrt_scale else point_mag
        bits = 1.4427 * float(scale) + (0 if sqrt_scale else 2 * n) + 16
    if not bits < _MAX_EXTRA_BITS:
        raise NonConvergenceError(
            f"argument magnitude {mpmath.nstr(point_mag, 8)} is too large for "
            "series evaluation", order=n, point=point_mag)
    return int(bits)


def certified_sum(kernel, n: int, point_mag: mpf, cfg: EvalConfig,
                  *, sqrt_scale: bool = True) -> ApproxValue:
    """Run a series kernel with escalation until abs_error <= tolerance.

    ``kernel(prec)`` must return a RawSum. The returned ApproxValue is
    rounded to cfg.precision_bits and is NOT yet sign-corrected.
    """
    tol = cfg.tolerance
    prec = max(cfg.precision_bits,
               _tol_bits(tol) + _cancellation_bits(point_mag, n, sqrt_scale) + 64)
    last_err = None
    for _ in range(_RETRIES):
        raw = kernel(prec)
        if not raw.converged:
            raise NonConvergenceError(
                f"series did not converge within {raw.terms} terms at the "
                "requested tolerance; raise max_terms or loosen tolerance",
                order=n, point=point_mag, terms_used=raw.terms)
        with mp.workprec(120):
            round_err = (raw.ops + 2) * mpf(2) ** (raw.max_exp + 2 - prec)
        if raw.directional:
            with mp.workprec(prec):
                value = raw.total + half(raw.tail)
            err = _up(half(exact_abs(raw.tail)), round_err)
        else:
            value = raw.total
            err = _up(exact_abs(raw.tail), round_err)
        with mp.workprec(cfg.precision_bits):
            v_out = +value
        out_ulp = ulp(v_out, cfg.precision_bits)
        total_err = _up(err, out_ulp)
        if total_err <= tol:
            return ApproxValue(v_out, total_err)
        if out_ulp > tol / 4:
            raise NonConvergenceError(
                "tolerance is finer than one output ulp at precision_bits "
                f"({cfg.precision_bits}); raise precision_bits",
                order=n, point=point_mag)
        last_err = total_err
        prec += max(64, mpmath.mag(err) - mpmath.mag(tol) + 32)
    raise NonConvergenceError(
        f"could not reach tolerance {mpmath.nstr(tol, 5)} (best abs_error "
        f"{mpmath.nstr(last_err, 5)})", order=n, point=point_mag)


def eval_series(n: int, z, cfg: EvalConfig = DEFAULT_CONFIG) -> ApproxValue:
    """Evaluate the n-th derivative of C at a real or complex point.

    Raises NonConvergenceError if cfg.max_terms is exhausted before the
    certified tail bound drops below cfg.tolerance.
    """
    _check_index(n, "n")
    z = as_point(z, cfg)
    if z == 0:
        return ApproxValue.from_fraction(derivative_at_zero(n), cfg.precision_bits)
    negate = bool(n % 2)
    if isinstance(z, mpc):
        with mp.workprec(cfg.precision_bits):
            z_mag = abs(z)
        out = certified_sum(
            lambda prec: backend.cos_series_complex(n, z, prec, cfg.tolerance,
                                                    cfg.max_terms),
            n, z_mag, cfg)
        return -out if negate else out
    x = exact_abs(z)
    alt = z > 0
    out = certified_sum(
        lambda prec: backend.cos_series(n, x, alt, prec, cfg.tolerance,
                                        cfg.max_terms),
        n, x, cfg)
    return -out if negate else out


def eval_abs_series_negative(n: int, x, cfg: EvalConfig = DEFAULT_CONFIG) -> ApproxValue:
    """|C^(n)(x)| for x <= 0, summed as a series of positive terms."""
    _check_index(n, "n")
    x = as_point(x, cfg)
    if isinstance(x, mpc):
        raise DomainError("argument must be real")
    if x > 0:
        raise DomainError(f"argument must be <= 0, got {mpmath.nstr(x, 8)}")
    if x == 0:
        return ApproxValue.from_fraction(abs(derivative_at_zero(n)),
                                         cfg.precision_bits)
    t = exact_abs(x)
    return certified_sum(
        lambda prec: backend.cos_series(n, t, False, prec, cfg.tolerance,
                                        cfg.max_terms),
        n, t, cfg)


def closed_form(n: int, x, cfg: EvalConfig = DEFAULT_CONFIG) -> ApproxValue:
    """Elementary closed form of orders 0 and 1 on the real axis.

    Order 0 is cos(sqrt(x)) / cosh(sqrt(|x|)); order 1 is
    -sin(sqrt(x))/(2 sqrt(x)) for x > 0, -1/2 at 0, and
    -sinh(sqrt(|x|))/(2 sqrt(|x|)) for x < 0. Evaluated with interval
    arithmetic, so abs_error is sound without ulp assumptions.
    """
    if n not in (0, 1):
        raise DomainError(f"closed forms exist only for orders 0 and 1, got {n}")
    x = as_point(x, cfg)
    if isinstance(x, mpc):
        raise DomainError("closed forms are real-axis only")
    prec = cfg.precision_bits
    if x == 0:
        q = Fraction(1) if n == 0 else Fraction(-1, 2)
        return ApproxValue.from_fraction(q, prec)

    from .enclose import iv_eval

    # the interval context has no cosh/sinh; build them from exp
    def formula(ctx):
        ax = ctx.mpf(exact_abs(x))
        s = ctx.sqrt(ax)
        if x > 0:
            osc = ctx.cos(s) if n == 0 else ctx.sin(s)
        else:
            e = ctx.exp(s)
            osc = (e + 1 / e) / 2 if n == 0 else (e - 1 / e) / 2
        if n == 0:
            return osc
        return -osc / (2 * s)

    mid, rad = iv_eval(formula, prec + 40)
    with mp.workprec(prec):
        v = +mid
    return ApproxValue(v, _up(rad, ulp(v, prec)))
