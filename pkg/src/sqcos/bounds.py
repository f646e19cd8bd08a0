"""Certification of the derivative inequalities over finite domains.

Each verify_* operation scans a grid (geometric on the positive axis,
where the bounds are approached near 0, uniform on the negative axis),
computes the certified slack at every point, and emits a BoundReport.
The slack convention is documented in sqcos.report: min_slack >= 0 means
no checked point can certify a violation of the inequality.

verify_strictness goes further and produces a certified enclosure of the
supremum of |C^(n)| over a compact interval, using the next-order bound
(n+1)!/(2n+2)! as a Lipschitz constant: branch-and-bound over cells with
golden-ratio splits shrinks the gap between the best evaluated point and
the largest cell upper bound below a requested width.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .approx import ApproxValue, ulp
from .config import DEFAULT_CONFIG, EvalConfig
from .errors import DomainError
from .exact import (_check_index, derivative_bound, general_prefactor,
                    series_coeff)
from .report import BoundReport, SupremumResult, format_number
from .series import as_point, eval_abs_series_negative, eval_series

_SLACK_PREC = 360


def gronwall_bound(n: int) -> Fraction:
    """Exact uniform bound n!/(2n)! on |C^(n)| over the positive axis."""
    return derivative_bound(n)


# ---------------------------------------------------------------------------
# grids

def geometric_grid(lo, hi, count: int) -> list[mpf]:
    """``count`` geometrically spaced points on [lo, hi], 0 < lo < hi."""
    lo, hi = mpf(lo), mpf(hi)
    if not 0 < lo < hi:
        raise DomainError("geometric grid needs 0 < lo < hi")
    if count < 2:
        raise DomainError("need at least 2 grid points")
    with mp.workprec(64):
        llo, lhi = mpmath.log(lo), mpmath.log(hi)
        pts = [mpmath.exp(llo + (lhi - llo) * i / (count - 1))
               for i in range(1, count - 1)]
    return [lo] + pts + [hi]


def uniform_grid(lo, hi, count: int) -> list[mpf]:
    """``count`` evenly spaced points on [lo, hi]."""
    lo, hi = mpf(lo), mpf(hi)
    if not lo < hi:
        raise DomainError("uniform grid needs lo < hi")
    if count < 2:
        raise DomainError("need at least 2 grid points")
    with mp.workprec(64):
        pts = [lo + (hi - lo) * i / (count - 1) for i in range(1, count - 1)]
    return [lo] + pts + [hi]


def _geo_mid(a: mpf, b: mpf) -> mpf:
    with mp.workprec(64):
        return mpmath.sqrt(a * b)


# ---------------------------------------------------------------------------
# slack machinery

def _fraction_upper(q: Fraction, prec: int = 320) -> mpf:
    with mp.workprec(prec):
        v = mpf(q.numerator) / q.denominator
        return v + ulp(v, prec)


def _slack(bound_hi: mpf, value: ApproxValue) -> mpf:
    with mp.workprec(_SLACK_PREC):
        return bound_hi - value.lower()


def _abs_deriv(n: int, x: mpf, cfg: EvalConfig) -> ApproxValue:
    return abs(eval_series(n, x, cfg))


def _min_slack_report(tag: str, params: dict, domain: dict,
                      slacks: dict) -> BoundReport:
    worst = min(slacks, key=lambda x: slacks[x])
    min_slack = slacks[worst]
    return BoundReport(
        inequality_id=tag,
        params=params,
        domain=domain,
        min_slack=min_slack,
        worst_point=worst,
        passed=bool(min_slack >= 0),
    )


# ---------------------------------------------------------------------------
# main inequality

def verify_main(n: int, X, grid_points: int, cfg: EvalConfig = DEFAULT_CONFIG,
                *, x_min=None, refine_rounds: int = 2) -> BoundReport:
    """Certify |C^(n)(x)| <= n!/(2n)! on a geometric grid over (0, X].

    The grid is densest near 0, where the bound is approached; after the
    base scan, cells around the smallest-slack points are refined by
    geometric bisection for ``refine_rounds`` rounds.
    """
    _check_index(n, "n")
    X = as_point(X, cfg)
    if X <= 0:
        raise DomainError("X must be positive")
    if grid_points < 2:
        raise DomainError("need grid_points >= 2")
    if x_min is None:
        x_min = min(mpf("1e-4"), X / 2)
    bound_hi = _fraction_upper(derivative_bound(n))
    pts = geometric_grid(x_min, X, grid_points)
    slacks = {x: _slack(bound_hi, _abs_deriv(n, x, cfg)) for x in pts}
    for _ in range(refine_rounds):
        ordered = sorted(slacks)
        ranked = sorted(range(len(ordered)), key=lambda i: slacks[ordered[i]])
        new_pts = []
        for i in ranked[:4]:
            if i > 0:
                new_pts.append(_geo_mid(ordered[i - 1], ordered[i]))
            if i + 1 < len(ordered):
                new_pts.append(_geo_mid(ordered[i], ordered[i + 1]))
        for x in new_pts:
            if x not in slacks:
                slacks[x] = _slack(bound_hi, _abs_deriv(n, x, cfg))
    return _min_slack_report(
        "MAIN_1",
        {"n": n, "bound": format_number(bound_hi)},
        {"kind": "geometric+refine", "lo": format_number(x_min),
         "hi": format_number(X), "grid_points": grid_points,
         "refine_rounds": refine_rounds},
        slacks)


# ---------------------------------------------------------------------------
# strict supremum enclosure

def verify_strictness(n: int, delta, X, cfg: EvalConfig = DEFAULT_CONFIG,
                      *, width_tol=None, base_points: int = 256,
                      max_nodes: int = 200_000) -> SupremumResult:
    """Certified enclosure of max |C^(n)| over [delta, X], 0 < delta < X.

    Strictness of the derivative bound holds for n >= 1 away from 0;
    the returned enclosure_hi below n!/(2n)! certifies it on [delta, X].
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"strictness applies to n >= 1, got {n}")
    delta, X = as_point(delta, cfg), as_point(X, cfg)
    if not 0 < delta < X:
        raise DomainError("need 0 < delta < X")
    if width_tol is None:
        width_tol = mpf("1e-6")
    width_tol = mpf(width_tol)
    if width_tol < 64 * cfg.tolerance:
        raise DomainError("width_tol must be at least 64 * cfg.tolerance")
    lip_hi = _fraction_upper(derivative_bound(n + 1))

    values: dict[mpf, ApproxValue] = {}

    def probe(x: mpf) -> ApproxValue:
        v = values.get(x)
        if v is None:
            v = _abs_deriv(n, x, cfg)
            values[x] = v
        return v

    with mp.workprec(64):
        golden = (mpmath.sqrt(5) - 1) / 2  # 0.618...

    def cell_entry(xl: mpf, xr: mpf) -> tuple[mpf, mpf, mpf]:
        with mp.workprec(_SLACK_PREC):
            bound = max(probe(xl).upper(), probe(xr).upper()) \
                + lip_hi * (xr - xl) / 2
        return (-bound, xl, xr)

    pts = geometric_grid(delta, X, base_points)
    best_lo = mpf(0)
    best_at = pts[0]
    for x in pts:
        lo = probe(x).lower()
        if lo > best_lo:
            best_lo, best_at = lo, x
    heap = [cell_entry(a, b) for a, b in zip(pts, pts[1:])]
    heapq.heapify(heap)
    nodes = 0
    while heap:
        top = -heap[0][0]
        if top <= best_lo + width_tol:
            break
        _, xl, xr = heapq.heappop(heap)
        nodes += 1
        if nodes > max_nodes:
            raise RuntimeError(
                f"supremum refinement exceeded {max_nodes} subdivisions; "
                "raise width_tol")
        with mp.workprec(64):
            if probe(xl).upper() >= probe(xr).upper():
                xm = xr - golden * (xr - xl)
            else:
                xm = xl + golden * (xr - xl)
        lo = probe(xm).lower()
        if lo > best_lo:
            best_lo, best_at = lo, xm
        heapq.heappush(heap, cell_entry(xl, xm))
        heapq.heappush(heap, cell_entry(xm, xr))
    hi = max(-heap[0][0], best_lo) if heap else best_lo
    return SupremumResult(location=best_at, enclosure_lo=best_lo,
                          enclosure_hi=hi)


# ---------------------------------------------------------------------------
# interval bounds anchored at a <= 0

def _tight_abs_value(m: int, a: mpf, cfg: EvalConfig) -> ApproxValue:
    """|C^(m)(a)| at cfg.precision_bits + 80 bits with sub-ulp error."""
    prec_out = cfg.precision_bits
    coarse = eval_abs_series_negative(m, a, cfg)
    tight_tol = min(cfg.tolerance,
                    mpf(2) ** (mpmath.mag(coarse.value) - prec_out - 3) / 8)
    tight_cfg = cfg.with_(precision_bits=prec_out + 80, tolerance=tight_tol)
    return eval_abs_series_negative(m, a, tight_cfg)


def _cosh_abs_value(a: mpf, cfg: EvalConfig) -> ApproxValue:
    """cosh(sqrt(|a|)) = |C(a)| via interval arithmetic, sub-ulp error."""
    from .approx import exact_abs
    from .enclose import iv_eval

    def formula(ctx):
        e = ctx.exp(ctx.sqrt(ctx.mpf(exact_abs(a))))
        return (e + 1 / e) / 2

    mid, rad = iv_eval(formula, cfg.precision_bits + 80)
    return ApproxValue(mid, rad)


def _anchored_bound(n: int, m: int, a: mpf, cfg: EvalConfig,
                    anchor: ApproxValue | None) -> ApproxValue:
    """Bound value n!(2m)!/((2n)!m!) * |C^(m)(a)| rounded once to output."""
    pf = general_prefactor(n, m)
    if a == 0:
        # |C^(m)(0)| = m!/(2m)! exactly, so the whole bound is rational
        return ApproxValue.from_fraction(pf * series_coeff(m, 0),
                                         cfg.precision_bits)
    if anchor is None:
        anchor = _tight_abs_value(m, a, cfg)
    pf_av = ApproxValue.from_fraction(pf, cfg.precision_bits + 80)
    return (pf_av * anchor).round_to(cfg.precision_bits)


def _certify_interval(tag: str, n: int, bound: ApproxValue, a: mpf, X: mpf,
                      grid_points: int, cfg: EvalConfig,
                      params: dict) -> BoundReport:
    bound_hi = bound.upper()
    g_neg = max(2, grid_points // 2) if a < 0 else 0
    g_pos = max(2, grid_points - g_neg)
    pts: list[mpf] = []
    if a < 0:
        pts.extend(uniform_grid(a, 0, g_neg))
    else:
        pts.append(mpf(0))
    x_min = min(mpf("1e-4"), X / 2)
    pts.extend(geometric_grid(x_min, X, g_pos))
    slacks = {}
    for x in pts:
        if x not in slacks:
            slacks[x] = _slack(bound_hi, _abs_deriv(n, x, cfg))
    params = dict(params, bound=format_number(bound.value))
    domain = {"kind": "uniform[a,0]+geometric(0,X]",
              "lo": format_number(a), "hi": format_number(X),
              "grid_points": grid_points}
    return _min_slack_report(tag, params, domain, slacks)


def verify_general(n: int, m: int, a, X, grid_points: int,
                   cfg: EvalConfig = DEFAULT_CONFIG) -> BoundReport:
    """Certify |C^(n)(x)| <= n!(2m)!/((2n)!m!) |C^(m)(a)| on [a, X].

    The rational prefactor is exact; the anchor value |C^(m)(a)| comes
    from the positive-term series at sub-ulp accuracy.
    """
    _check_index(n, "n")
    _check_index(m, "m")
    if m > n:
        raise DomainError(f"need m <= n, got m={m}, n={n}")
    a, X = as_point(a, cfg), as_point(X, cfg)
    if a > 0:
        raise DomainError("anchor a must be <= 0")
    if X <= 0:
        raise DomainError("X must be positive")
    if grid_points < 2:
        raise DomainError("need grid_points >= 2")
    bound = _anchored_bound(n, m, a, cfg, None)
    return _certify_interval("GENERAL_12", n, bound, a, X, grid_points, cfg,
                             {"n": n, "m": m, "a": format_number(a)})


def verify_cosh(n: int, a, X, grid_points: int,
                cfg: EvalConfig = DEFAULT_CONFIG) -> BoundReport:
    """Certify |C^(n)(x)| <= (n!/(2n)!) cosh(sqrt(|a|)) on [a, X].

    This is the m = 0 case of verify_general with the anchor evaluated
    through the cosh closed form instead of the series; the two routes
    produce bound values within one output ulp of each other.
    """
    _check_index(n, "n")
    a, X = as_point(a, cfg), as_point(X, cfg)
    if a > 0:
        raise DomainError("anchor a must be <= 0")
    if X <= 0:
        raise DomainError("X must be positive")
    if grid_points < 2:
        raise DomainError("need grid_points >= 2")
    anchor = None if a == 0 else _cosh_abs_value(a, cfg)
    bound = _anchored_bound(n, 0, a, cfg, anchor)
    return _certify_interval("COSH_13", n, bound, a, X, grid_points, cfg,
                             {"n": n, "m": 0, "a": format_number(a)})


# ---------------------------------------------------------------------------
# monotonicity on the negative half-axis

def verify_monotone_negative(n: int, a, grid_points: int,
                             cfg: EvalConfig = DEFAULT_CONFIG) -> BoundReport:
    """Certify that |C^(n)| is nonincreasing along a grid from a < 0 to 0."""
    _check_index(n, "n")
    a = as_point(a, cfg)
    if not a < 0:
        raise DomainError("a must be negative")
    if grid_points < 3:
        raise DomainError("need grid_points >= 3")
    pts = uniform_grid(a, 0, grid_points)
    vals = [_abs_deriv(n, x, cfg) for x in pts]
    slacks = {}
    for i in range(len(pts) - 1):
        with mp.workprec(_SLACK_PREC):
            s = vals[i].upper() - vals[i + 1].lower()
        key = pts[i + 1]
        if key not in slacks or s < slacks[key]:
            slacks[key] = s
    return _min_slack_report(
        "MONOTONE_15",
        {"n": n, "a": format_number(a)},
        {"kind": "uniform", "lo": format_number(a), "hi": "0",
         "grid_points": grid_points},
        slacks)


# ---------------------------------------------------------------------------
# identity residual suite

IDENTITY_SEED = 20260810


def sample_points(count: int = 50, radius=50, seed: int = IDENTITY_SEED):
    """Deterministic sample of real and complex points in |z| <= radius.

    Roughly a quarter of the points are real (both signs); the rest are
    drawn uniformly over the disk. float64 draws convert exactly.
    """
    import math
    import random

    rng = random.Random(seed)
    radius = float(radius)
    pts = []
    for i in range(count):
        if i % 4 == 0:
            pts.append(mpf(rng.uniform(-radius, radius)))
        else:
            r = radius * rng.random() ** 0.5
            theta = rng.uniform(0.0, 2.0 * math.pi)
            pts.append(mpmath.mpc(r * math.cos(theta), r * math.sin(theta)))
    return pts


def verify_identities(count: int = 50, radius=50, seed: int = IDENTITY_SEED,
                      cfg: EvalConfig = DEFAULT_CONFIG) -> list[BoundReport]:
    """Check both functional identities at fixed-seed points in the disk.

    For each identity the per-point slack is propagated abs_error minus
    |residual|; a negative slack would mean the identity fails beyond
    what the error model allows.
    """
    from .ladder import ode_residual, pythagorean_residual

    pts = sample_points(count, radius, seed)
    reports = []
    for tag, fn in (("IDENT_PYTH", pythagorean_residual),
                    ("IDENT_ODE", ode_residual)):
        slacks = {}
        for z in pts:
            res = fn(z, cfg)
            with mp.workprec(_SLACK_PREC):
                slacks[z] = res.abs_error - abs(res).value
        reports.append(_min_slack_report(
            tag,
            {"count": count, "radius": format_number(mpf(radius)),
             "seed": seed},
            {"kind": "seeded-disk", "radius": format_number(mpf(radius))},
            slacks))
    return reports


# ---------------------------------------------------------------------------
# exact coefficient inequality

def verify_coeff_inequality(n_max: int, k_max: int) -> BoundReport:
    """Certify c(n,k) <= (n!(2m)!/((2n)!m!)) c(m,k) in exact arithmetic.

    Checked for all 0 <= m <= n <= n_max and 0 <= k <= k_max with zero
    tolerance. Equality holds exactly when n = m or k = 0.
    """
    if not isinstance(n_max, int) or n_max < 1:
        raise DomainError("n_max must be a positive integer")
    if not isinstance(k_max, int) or k_max < 1:
        raise DomainError("k_max must be a positive integer")
    min_slack = None
    worst = (0, 0, 0)
    for nn in range(n_max + 1):
        for mm in range(nn + 1):
            pf = general_prefactor(nn, mm)
            for k in range(k_max + 1):
                slack = pf * series_coeff(mm, k) - series_coeff(nn, k)
                if min_slack is None or slack < min_slack:
                    min_slack = slack
                    worst = (nn, mm, k)
    with mp.workprec(120):
        ms = mpf(min_slack.numerator) / min_slack.denominator
    return BoundReport(
        inequality_id="COEFF",
        params={"n_max": n_max, "k_max": k_max,
                "worst_triple": list(worst)},
        domain={"kind": "integer-lattice",
                "n": f"0..{n_max}", "m": "0..n", "k": f"0..{k_max}"},
        min_slack=ms,
        worst_point=mpf(worst[2]),
        passed=bool(ms >= 0),
    )
