"""Derivatives of sin(x)/x: classical uniform bound, two evaluation routes.

The n-th derivative of sinc admits both a termwise-differentiated Taylor
series and the integral form

    d^n/dx^n sinc(x) = integral_0^1 t^n cos(t x + n pi/2) dt,

whose integrand is bounded by t^n, giving the uniform bound 1/(n+1).
An equivalent historical identity integrates y^n sin(y + (n+1) pi/2)
over [0, x]; substituting t = y/x maps it onto the same unit interval,
so one quadrature engine serves both forms. This module evaluates by
series and by quadrature, cross-validates the two, and certifies the
uniform bound on symmetric intervals.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from . import backend
from .approx import ApproxValue, exact_abs, ulp
from .config import DEFAULT_CONFIG, EvalConfig
from .enclose import iv_eval
from .errors import DomainError
from .exact import _check_index, sinc_derivative_at_zero
from .quadrature import (DEFAULT_QUADRATURE, QuadratureSpec,
                         gauss_legendre_01, gl_remainder_bound)
from .report import BoundReport, format_number
from .series import as_point, certified_sum
from .bounds import _min_slack_report, _fraction_upper, _slack, uniform_grid


def sinc_derivative_series(n: int, x, cfg: EvalConfig = DEFAULT_CONFIG) -> ApproxValue:
    """n-th derivative of sin(x)/x by termwise-differentiated Taylor series.

    Evaluated at |x| and reflected by parity (sinc is even). At x = 0 the
    value is the exact rational series coefficient times n!.
    """
    _check_index(n, "n")
    x = as_point(x, cfg)
    if isinstance(x, mpc):
        raise DomainError("sinc derivatives are real-axis only")
    if x == 0:
        return ApproxValue.from_fraction(sinc_derivative_at_zero(n),
                                         cfg.precision_bits)
    t = exact_abs(x)
    out = certified_sum(
        lambda prec: backend.sinc_series(n, t, prec, cfg.tolerance,
                                         cfg.max_terms),
        n, t, cfg, sqrt_scale=False)
    if x < 0 and n % 2:
        return -out
    return out


def _quadrature_value(n: int, x: mpf, q: QuadratureSpec, cfg: EvalConfig,
                      trig: str, phase_shift: int) -> ApproxValue:
    """Certified GL evaluation of integral_0^1 t^n trig(tx + shift*pi/2) dt."""
    prec = cfg.precision_bits + 40
    m = q.node_count
    nodes, weights = gauss_legendre_01(m, prec)
    node_slop = mpf(2) ** (-(cfg.precision_bits + 48))

    def formula(ctx):
        fn = ctx.cos if trig == "cos" else ctx.sin
        xs = ctx.mpf(x)
        half_pi_shift = ctx.pi * phase_shift / 2
        total = ctx.mpf(0)
        for node, weight in zip(nodes, weights):
            t = ctx.mpf(node) + ctx.mpf([-1, 1]) * node_slop
            w = ctx.mpf(weight) + ctx.mpf([-1, 1]) * node_slop
            total += w * t ** n * fn(t * xs + half_pi_shift)
        return total

    mid, rad = iv_eval(formula, prec)
    with mp.workprec(120):
        deriv_bound = (1 + n + exact_abs(x)) ** (2 * m)
    remainder = gl_remainder_bound(m, deriv_bound)
    with mp.workprec(cfg.precision_bits):
        v = +mid
    with mp.workprec(120):
        err = (rad + remainder + ulp(v, cfg.precision_bits)) * (1 + mpf(2) ** -100)
    return ApproxValue(v, err)


def sinc_derivative_quadrature(n: int, x, q: QuadratureSpec = DEFAULT_QUADRATURE,
                               cfg: EvalConfig = DEFAULT_CONFIG) -> ApproxValue:
    """n-th sinc derivative from the unit-interval integral representation.

    abs_error combines the interval evaluation radius with the classical
    Gauss-Legendre remainder, using |f^(2m)| <= (1 + n + |x|)^(2m) on the
    unit interval (crude but safe for this entire integrand).
    """
    _check_index(n, "n")
    x = as_point(x, cfg)
    if isinstance(x, mpc):
        raise DomainError("sinc derivatives are real-axis only")
    return _quadrature_value(n, x, q, cfg, trig="cos", phase_shift=n)


def gronwall_identity_residual(n: int, x, q: QuadratureSpec = DEFAULT_QUADRATURE,
                               cfg: EvalConfig = DEFAULT_CONFIG) -> ApproxValue:
    """Series value minus the historical x^-(n+1) integral form; truly 0.

    The integral over [0, x] is mapped onto [0, 1] by t = y/x, which
    turns it into integral_0^1 t^n sin(tx + (n+1) pi/2) dt and makes it
    valid for either sign of x. Raises DomainError at x = 0, where the
    representation has a removable singularity; use the series there.
    """
    _check_index(n, "n")
    x = as_point(x, cfg)
    if isinstance(x, mpc):
        raise DomainError("identity residual is real-axis only")
    if x == 0:
        raise DomainError("the integral form is singular at x = 0")
    series_value = sinc_derivative_series(n, x, cfg)
    quad_value = _quadrature_value(n, x, q, cfg, trig="sin", phase_shift=n + 1)
    return series_value - quad_value


def verify_gronwall0(n: int, X, grid_points: int,
                     cfg: EvalConfig = DEFAULT_CONFIG) -> BoundReport:
    """Certify |sinc^(n)(x)| <= 1/(n+1) on a uniform grid over [-X, X]."""
    _check_index(n, "n")
    X = as_point(X, cfg)
    if X <= 0:
        raise DomainError("X must be positive")
    if grid_points < 2:
        raise DomainError("need grid_points >= 2")
    bound_hi = _fraction_upper(Fraction(1, n + 1))
    pts = uniform_grid(-X, X, grid_points)
    slacks = {}
    for x in pts:
        if x not in slacks:
            slacks[x] = _slack(bound_hi, abs(sinc_derivative_series(n, x, cfg)))
    return _min_slack_report(
        "GRONWALL_0",
        {"n": n, "bound": format_number(bound_hi)},
        {"kind": "uniform", "lo": format_number(-X), "hi": format_number(X),
         "grid_points": grid_points},
        slacks)
