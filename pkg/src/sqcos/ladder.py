"""Derivative ladders via the three-term recurrence, plus identity checks.

Successive derivatives of C satisfy

    C^(n-1)(z) + (4n - 2) C^(n)(z) + 4 z C^(n+1)(z) = 0,   n >= 1,

so a whole ladder C^(0)(x) .. C^(N)(x) costs two base evaluations plus N-1
divisions by 4x. Upward steps divide by 4x, which amplifies error like
1/(4|x|) per step; below ``cfg.switch_radius`` every order therefore
comes from the series instead. The ladder's top order is always
cross-checked against an independent series evaluation.

The identity residuals here (the Pythagorean-style identity and the
second-order differential identity) evaluate all derivatives by series,
never by recurrence, so they remain independent checks of the recurrence
machinery rather than circular ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from .approx import ApproxValue, exact_abs
from .config import DEFAULT_CONFIG, EvalConfig
from .errors import DomainError
from .exact import _check_index
from .series import as_point, closed_form, eval_series

TAG_CLOSED = "closed-form"
TAG_RECURRENCE = "recurrence"
TAG_SERIES = "series"


@dataclass(frozen=True)
class DerivativeLadder:
    """Derivatives of C at one point, orders 0..N, with method provenance."""

    point: mpf
    orders: tuple[ApproxValue, ...]
    method_tags: tuple[str, ...]

    def __post_init__(self):
        if len(self.orders) != len(self.method_tags):
            raise ValueError("orders and method_tags must have equal length")

    def __len__(self):
        return len(self.orders)


def _four_times(z):
    # exact scaling by 4 (exponent shift), mpf or mpc
    if isinstance(z, mpc):
        return mpc(mpmath.ldexp(z.real, 2), mpmath.ldexp(z.imag, 2))
    return mpmath.ldexp(z, 2)


def recurrence_step(n: int, z, lower: ApproxValue, mid: ApproxValue) -> ApproxValue:
    """One upward step: C^(n+1)(z) = -(C^(n-1)(z) + (4n-2) C^(n)(z)) / (4z).

    ``lower`` and ``mid`` are C^(n-1)(z) and C^(n)(z). Error propagates
    through the division, growing like 1/(4|z|).
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"recurrence step needs integer n >= 1, got {n}")
    z = as_point(z)
    if z == 0:
        raise DomainError("recurrence step undefined at z = 0; use the series")
    return -(lower + (4 * n - 2) * mid).div_exact(_four_times(z))


def build_ladder(x, N: int, cfg: EvalConfig = DEFAULT_CONFIG) -> DerivativeLadder:
    """Compute C^(0)(x) .. C^(N)(x) with the stability policy applied.

    For |x| >= cfg.switch_radius: orders 0 and 1 from the closed forms,
    higher orders by upward recurrence. For |x| < cfg.switch_radius
    (including 0): every order from the series. The top order is
    cross-checked against an independent series evaluation; a mismatch
    beyond the combined error bounds raises RuntimeError.
    """
    _check_index(N, "N")
    x = as_point(x, cfg)
    if isinstance(x, mpc):
        raise DomainError("ladders are built on the real axis only")
    use_series = exact_abs(x) < cfg.switch_radius
    orders: list[ApproxValue] = []
    tags: list[str] = []
    for n in range(min(N, 1) + 1):
        if use_series:
            orders.append(eval_series(n, x, cfg))
            tags.append(TAG_SERIES)
        else:
            orders.append(closed_form(n, x, cfg))
            tags.append(TAG_CLOSED)
    for n in range(2, N + 1):
        if use_series:
            orders.append(eval_series(n, x, cfg))
            tags.append(TAG_SERIES)
        else:
            orders.append(recurrence_step(n - 1, x, orders[n - 2], orders[n - 1]))
            tags.append(TAG_RECURRENCE)
    if N >= 1 and tags[-1] != TAG_SERIES:
        reference = eval_series(N, x, cfg)
        if not orders[-1].agrees_with(reference):
            raise RuntimeError(
                f"ladder cross-check failed at order {N}, x={mpmath.nstr(x, 10)}: "
                f"recurrence gave {orders[-1]}, series gave {reference}")
    return DerivativeLadder(point=x, orders=tuple(orders), method_tags=tuple(tags))


def evaluate(n: int, x, cfg: EvalConfig = DEFAULT_CONFIG) -> tuple[ApproxValue, str]:
    """C^(n)(x) by the cheapest certified route, with its method tag."""
    ladder = build_ladder(x, n, cfg)
    return ladder.orders[n], ladder.method_tags[n]


def _doubled(cfg: EvalConfig) -> EvalConfig:
    return cfg.with_(precision_bits=2 * cfg.precision_bits)


def pythagorean_residual(z, cfg: EvalConfig = DEFAULT_CONFIG) -> ApproxValue:
    """Residual of (C z)^2 + 4 z (C' z)^2 - 1, identically 0 on all of C.

    Derivatives are evaluated by series at doubled precision so the check
    is independent of both the closed forms and the recurrence.
    """
    z = as_point(z, cfg)
    inner = _doubled(cfg)
    c0 = eval_series(0, z, inner)
    c1 = eval_series(1, z, inner)
    return c0 * c0 + _four_times(z) * (c1 * c1) - 1


def ode_residual(z, cfg: EvalConfig = DEFAULT_CONFIG) -> ApproxValue:
    """Residual of C z + 2 C' z + 4 z C'' z, identically 0 on all of C."""
    z = as_point(z, cfg)
    inner = _doubled(cfg)
    c0 = eval_series(0, z, inner)
    c1 = eval_series(1, z, inner)
    c2 = eval_series(2, z, inner)
    return c0 + 2 * c1 + _four_times(z) * c2


def decay_profile(n: int, xs, cfg: EvalConfig = DEFAULT_CONFIG) -> list[ApproxValue]:
    """|C^(n)(x)| along an ascending list of positive sample points.

    For n = 1 every value is additionally checked against the hard
    envelope 1/(2 sqrt(x)); a certified violation raises RuntimeError
    (it would disprove the closed form of the first derivative).
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"decay profile needs integer n >= 1, got {n}")
    pts = [as_point(x, cfg) for x in xs]
    if not pts:
        return []
    if any(p <= 0 for p in pts):
        raise DomainError("all sample points must be positive")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise DomainError("sample points must be strictly ascending")
    out = []
    for x in pts:
        value = abs(evaluate(n, x, cfg)[0])
        if n == 1:
            _check_envelope(value, x, cfg)
        out.append(value)
    return out


def _check_envelope(value: ApproxValue, x: mpf, cfg: EvalConfig) -> None:
    from .enclose import iv_eval

    env_mid, env_rad = iv_eval(lambda ctx: 1 / (2 * ctx.sqrt(ctx.mpf(x))),
                               cfg.precision_bits + 20)
    with mp.workprec(cfg.precision_bits + 40):
        env_lo = env_mid - env_rad
        if value.upper() > env_lo:
            raise RuntimeError(
                f"certified envelope violation at x={mpmath.nstr(x, 10)}: "
                f"|C'(x)| = {value} exceeds 1/(2 sqrt(x))")
