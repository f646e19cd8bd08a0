"""Self-validated scalar values: a number plus a rigorous absolute error bound.

An :class:`ApproxValue` pairs an extended-precision real or complex value
with a bound on ``|stored - true|``. Arithmetic propagates the bound by
the triangle inequality and charges one ulp of the result at the working
precision per operation for rounding (mpmath's +,-,*,/ on real values
are correctly rounded, so one ulp is a 2x margin; complex operations are
charged eight ulps). The working precision is the ambient mpmath
precision, floored at the operands' own mantissa widths so that
combining high-precision values under a low ambient context never
destroys precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

_REAL_OP_ULPS = 1
_COMPLEX_OP_ULPS = 8


def exact_neg(v):
    """Negation with no rounding, regardless of the ambient precision."""
    return mpmath.fneg(v, exact=True)


def exact_abs(v: mpf) -> mpf:
    """|v| for real v with no rounding."""
    return mpmath.fneg(v, exact=True) if v < 0 else v


def half(v: mpf) -> mpf:
    """v/2 with no rounding (exponent shift)."""
    return mpmath.ldexp(v, -1)


def ulp(value, prec: int | None = None) -> mpf:
    """One unit in the last place of ``value`` at ``prec`` mantissa bits.

    Returns 0 for an exact zero: a floating add/mul that yields 0 is exact.
    """
    if value == 0:
        return mpf(0)
    if prec is None:
        prec = mp.prec
    return mpf(2) ** (mpmath.mag(value) - prec)


def _bits(v) -> int:
    if isinstance(v, mpc):
        return max(v.real._mpf_[3], v.imag._mpf_[3])
    if isinstance(v, mpf):
        return v._mpf_[3]
    return 0


def _work_prec(*vals) -> int:
    return max(mp.prec, *(_bits(v) for v in vals)) + 8


@dataclass(frozen=True)
class ApproxValue:
    """A value with a certified absolute error bound.

    Invariants: ``abs_error`` is a finite nonnegative real; the true
    mathematical quantity lies within ``abs_error`` of ``value``.
    """

    value: mpf | mpc
    abs_error: mpf

    def __post_init__(self):
        err = self.abs_error
        if not (err >= 0 and mpmath.isfinite(err)):
            raise ValueError(f"abs_error must be finite and >= 0, got {err!r}")
        if not mpmath.isfinite(self.value):
            raise ValueError(f"value must be finite, got {self.value!r}")

    @classmethod
    def exact(cls, value) -> "ApproxValue":
        return cls(value, mpf(0))

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int) -> "ApproxValue":
        """Round an exact rational once; abs_error is 0 if it is dyadic."""
        with mp.workprec(prec):
            v = mpf(q.numerator) / q.denominator
            err = mpf(0) if _roundtrips(v, q) else ulp(v, prec)
        return cls(v, err)

    @property
    def is_complex(self) -> bool:
        return isinstance(self.value, mpc)

    def __add__(self, other) -> "ApproxValue":
        other = _coerce(other)
        prec = _work_prec(self.value, other.value)
        with mp.workprec(prec):
            v = self.value + other.value
            err = self.abs_error + other.abs_error + _op_err(v, prec)
        return ApproxValue(v, err)

    __radd__ = __add__

    def __neg__(self) -> "ApproxValue":
        return ApproxValue(exact_neg(self.value), self.abs_error)

    def __sub__(self, other) -> "ApproxValue":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "ApproxValue":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "ApproxValue":
        other = _coerce(other)
        prec = _work_prec(self.value, other.value)
        with mp.workprec(prec):
            v = self.value * other.value
            err = (abs(self.value) * other.abs_error
                   + abs(other.value) * self.abs_error
                   + self.abs_error * other.abs_error
                   + _op_err(v, prec))
        return ApproxValue(v, err)

    __rmul__ = __mul__

    def div_exact(self, divisor) -> "ApproxValue":
        """Divide by an exactly-known nonzero scalar."""
        prec = _work_prec(self.value, divisor)
        with mp.workprec(prec):
            v = self.value / divisor
            err = self.abs_error / abs(divisor) + _op_err(v, prec)
        return ApproxValue(v, err)

    def __abs__(self) -> "ApproxValue":
        if self.is_complex:
            prec = _work_prec(self.value)
            with mp.workprec(prec):
                v = abs(self.value)
                err = self.abs_error + _op_err(v, prec)
            return ApproxValue(v, err)
        return ApproxValue(exact_abs(self.value), self.abs_error)

    def round_to(self, prec: int) -> "ApproxValue":
        """Re-round the value to ``prec`` bits, charging the rounding ulp."""
        with mp.workprec(prec):
            v = +self.value
            if v == self.value:
                return ApproxValue(v, self.abs_error)
            err = self.abs_error + ulp(v, prec)
        return ApproxValue(v, err)

    def contains_zero(self) -> bool:
        """Whether 0 lies in the certified enclosure."""
        return bool(abs(self).value <= self.abs_error)

    def agrees_with(self, other: "ApproxValue") -> bool:
        """Whether the two enclosures are consistent with one true value."""
        other = _coerce(other)
        diff = self - other
        return bool(abs(diff).value <= self.abs_error + other.abs_error)

    def upper(self) -> mpf:
        """Certified upper bound on |true value|."""
        with mp.workprec(_work_prec(self.value) + 16):
            return abs(self.value) + self.abs_error + ulp(self.value)

    def lower(self) -> mpf:
        """Certified lower bound on |true value| (clamped at 0)."""
        with mp.workprec(_work_prec(self.value) + 16):
            lo = abs(self.value) - self.abs_error - ulp(self.value)
            return lo if lo > 0 else mpf(0)

    def __str__(self):
        return f"{mpmath.nstr(self.value, 17)} ± {mpmath.nstr(self.abs_error, 3)}"


def _op_err(result, prec: int) -> mpf:
    charge = _COMPLEX_OP_ULPS if isinstance(result, mpc) else _REAL_OP_ULPS
    return charge * ulp(result, prec)


def _coerce(other) -> ApproxValue:
    if isinstance(other, ApproxValue):
        return other
    if isinstance(other, (int, mpf, mpc)):
        return ApproxValue.exact(other)
    raise TypeError(f"cannot combine ApproxValue with {type(other).__name__}")


def _roundtrips(v: mpf, q: Fraction) -> bool:
    sign, man, exp, _ = v._mpf_
    num = -int(man) if sign else int(man)
    return Fraction(num, 1) * Fraction(2) ** exp == q
