"""Evaluation configuration shared by every numerical routine."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath
from mpmath import mpf


def _as_mpf(value) -> mpf:
    """Convert user input (str, int, float, Fraction, mpf) to an mpf.

    Strings and Fractions are resolved at 80 bits so that tolerances far
    below double precision (e.g. "1e-50") survive the conversion.
    """
    if isinstance(value, Fraction):
        with mpmath.mp.workprec(80):
            return mpmath.mpf(value.numerator) / value.denominator
    with mpmath.mp.workprec(80):
        return mpmath.mpf(value)


@dataclass(frozen=True)
class EvalConfig:
    """Knobs controlling precision, certified tolerance and series length.

    precision_bits: mantissa width of returned values.
    tolerance: target absolute error bound of every evaluation.
    switch_radius: |x| below which ladder construction defers to the
        series instead of the recurrence (which divides by 4x).
    max_terms: hard cap on series length before giving up.
    """

    precision_bits: int = 256
    tolerance: mpf = field(default_factory=lambda: _as_mpf("1e-50"))
    switch_radius: mpf = field(default_factory=lambda: _as_mpf("0.25"))
    max_terms: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "tolerance", _as_mpf(self.tolerance))
        object.__setattr__(self, "switch_radius", _as_mpf(self.switch_radius))
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        if not self.tolerance > 0 or not mpmath.isfinite(self.tolerance):
            raise ValueError("tolerance must be a positive finite number")
        if not self.switch_radius > 0:
            raise ValueError("switch_radius must be positive")
        if self.max_terms < 8:
            raise ValueError("max_terms must be >= 8")

    def with_(self, **changes) -> "EvalConfig":
        """Return a copy with the given fields replaced."""
        return replace(self, **changes)


DEFAULT_CONFIG = EvalConfig()
