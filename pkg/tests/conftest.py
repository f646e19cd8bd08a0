"""Shared test fixtures and frozen oracle constants.

Expected values marked "oracle" below were computed with mpmath's own
elementary functions (exp, cosh, sinh, pi) at 45 decimal digits, which
are independent of this package's series kernels. Each constant is
re-derived at import time and compared against its frozen literal, so a
corrupted constant fails loudly rather than silently weakening a test.
"""

from __future__ import annotations

import mpmath
import pytest
from mpmath import mp, mpf

from sqcos import EvalConfig

# frozen oracle digits (40 significant digits)
COSH_1 = "1.543080634815243778477905620757061682602"       # cosh(1)
SINH_1_HALF = "0.5876005968219007284411909252978004075779"  # sinh(1)/2
SINH_2_QUARTER = "0.9067151019617546919170534957003154262216"  # sinh(2)/4
SINH_2_24TH = "0.1511191836602924486528422492833859043703"  # sinh(2)/24
COSH_1_HALF = "0.7715403174076218892389528103785308413008"  # cosh(1)/2
COSH_1_120TH = "0.01285900529012703148731588017297551402168"  # cosh(1)/120
EXP_M1_QUARTER = "0.09196986029286058039888094254036521686145"  # exp(-1)/4
INV_PI = "0.3183098861837906715377675267450287240689"       # 1/pi
INV_4PI2 = "0.02533029591058444286096986580243190972609"    # 1/(4 pi^2)
COSH_3_SCALED = "0.005992655949867717763067819068521362998101"  # (4!/8!) cosh(3)


def _recheck():
    with mp.workprec(180):
        pairs = [
            (COSH_1, mpmath.cosh(1)),
            (SINH_1_HALF, mpmath.sinh(1) / 2),
            (SINH_2_QUARTER, mpmath.sinh(2) / 4),
            (SINH_2_24TH, mpmath.sinh(2) / 24),
            (COSH_1_HALF, mpmath.cosh(1) / 2),
            (COSH_1_120TH, mpmath.cosh(1) / 120),
            (EXP_M1_QUARTER, mpmath.exp(-1) / 4),
            (INV_PI, 1 / mpmath.pi),
            (INV_4PI2, 1 / (4 * mpmath.pi ** 2)),
            (COSH_3_SCALED, mpf(24) / 40320 * mpmath.cosh(3)),
        ]
        for frozen, live in pairs:
            assert abs(mpf(frozen) - live) < mpf(10) ** -38, frozen


_recheck()


def oracle(digits: str) -> mpf:
    """Frozen oracle constant as a 180-bit mpf."""
    with mp.workprec(180):
        return mpf(digits)


def within(value_av, reference, extra=0) -> bool:
    """|value - reference| <= abs_error (+ extra slop for the reference)."""
    with mp.workprec(400):
        return bool(abs(value_av.value - reference)
                    <= value_av.abs_error + extra)


@pytest.fixture(scope="session")
def cfg() -> EvalConfig:
    return EvalConfig()


@pytest.fixture(scope="session")
def fast_cfg() -> EvalConfig:
    """Looser tolerance for property tests that sweep many points."""
    return EvalConfig(precision_bits=128, tolerance="1e-25")
