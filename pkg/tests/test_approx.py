"""Error-carrying scalar type: invariants and conservative propagation."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from sqcos.approx import ApproxValue, exact_abs, exact_neg, half, ulp


def test_invariants_rejected():
    with pytest.raises(ValueError):
        ApproxValue(mpf(1), mpf(-1))
    with pytest.raises(ValueError):
        ApproxValue(mpf(1), mpf("inf"))
    with pytest.raises(ValueError):
        ApproxValue(mpf("nan"), mpf(0))


def test_from_fraction_dyadic_is_exact():
    av = ApproxValue.from_fraction(Fraction(-1, 2), 256)
    assert av.value == mpf(-0.5)
    assert av.abs_error == 0
    av = ApproxValue.from_fraction(Fraction(1, 3), 256)
    assert av.abs_error > 0
    with mp.workprec(300):
        assert abs(av.value - mpf(1) / 3) <= av.abs_error


def test_exact_helpers_do_not_round():
    with mp.workprec(300):
        v = mpf(1) / 3
    # ambient precision is now low; the helpers must not truncate
    assert exact_neg(exact_neg(v)) == v
    assert exact_abs(exact_neg(v)) == v
    with mp.workprec(310):
        assert half(v) * 2 == v
        assert exact_neg(v) + v == 0
    assert exact_neg(v)._mpf_[3] == v._mpf_[3]  # mantissa width preserved
    assert half(v)._mpf_[3] == v._mpf_[3]


def test_ops_keep_operand_precision_under_low_ambient():
    with mp.workprec(300):
        a = ApproxValue(mpf(1) / 3, mpf(0))
        b = ApproxValue(mpf(1) / 7, mpf(0))
    # ambient is 53 bits here; results must still be ~300-bit accurate
    s = a + b
    p = a * b
    with mp.workprec(340):
        assert abs(s.value - (mpf(1) / 3 + mpf(1) / 7)) < mpf(2) ** -290
        assert abs(p.value - mpf(1) / 21) < mpf(2) ** -290
    assert s.abs_error < mpf(2) ** -290
    assert p.abs_error < mpf(2) ** -290


# dyadic rationals: exactly representable, so enclosure premises are exact
_dyadic = st.builds(lambda m, k: Fraction(m, 2 ** k),
                    st.integers(-6400, 6400), st.integers(0, 6))
_dyadic_err = st.builds(lambda m, k: Fraction(m, 2 ** (k + 7)),
                        st.integers(0, 128), st.integers(0, 6))


@settings(max_examples=80, deadline=None)
@given(t1=_dyadic, t2=_dyadic, e1=_dyadic_err, e2=_dyadic_err,
       d1=_dyadic_err, d2=_dyadic_err)
def test_enclosures_survive_arithmetic(t1, t2, e1, e2, d1, d2):
    """If true values lie within the inputs' enclosures, they stay within
    the outputs' enclosures after +, -, *."""
    with mp.workprec(140):
        # stored value = true value + actual offset, |offset| <= claimed err
        a = ApproxValue(_to_mpf(t1 + min(d1, e1)), _to_mpf(e1))
        b = ApproxValue(_to_mpf(t2 - min(d2, e2)), _to_mpf(e2))
    for out, true in [(a + b, t1 + t2), (a - b, t1 - t2), (a * b, t1 * t2)]:
        with mp.workprec(220):
            assert abs(out.value - _to_mpf(true)) <= out.abs_error


def _to_mpf(q: Fraction) -> mpf:
    # exact for dyadic q at sufficient precision
    with mp.workprec(160):
        v = mpf(q.numerator) / q.denominator
    sign, man, exp, _ = v._mpf_
    assert Fraction(-int(man) if sign else int(man), 1) * Fraction(2) ** exp == q
    return v


def test_div_exact_and_abs():
    a = ApproxValue(mpf(3), mpf("1e-20"))
    out = a.div_exact(mpf(-2))
    assert out.value == mpf(-1.5)
    with mp.workprec(120):
        assert out.abs_error >= mpf("0.5e-20")
    assert abs(out).value == mpf(1.5)


def test_complex_ops_and_abs():
    z = ApproxValue(mpc(3, 4), mpf("1e-30"))
    m = abs(z)
    assert not m.is_complex
    with mp.workprec(120):
        assert abs(m.value - 5) <= m.abs_error


def test_round_to_charges_ulp():
    with mp.workprec(300):
        v = mpf(1) / 3
    av = ApproxValue(v, mpf(0)).round_to(64)
    assert av.abs_error > 0
    assert av.abs_error <= mpf(2) ** -62
    # exact values re-round for free
    assert ApproxValue(mpf(1.5), mpf(0)).round_to(64).abs_error == 0


def test_predicates():
    a = ApproxValue(mpf("1e-60"), mpf("1e-59"))
    assert a.contains_zero()
    b = ApproxValue(mpf(1), mpf("1e-10"))
    assert not b.contains_zero()
    c = ApproxValue(mpf(1) + mpf("1e-11"), mpf("1e-10"))
    assert b.agrees_with(c)
    assert not b.agrees_with(ApproxValue(mpf(2), mpf("1e-10")))
    with mp.workprec(120):
        assert b.upper() - 1 >= mpf("1e-10")
        assert 1 - b.lower() >= mpf("1e-10")
    assert ApproxValue(mpf("1e-10"), mpf(1)).lower() == 0


def test_ulp_scales_with_magnitude():
    assert ulp(mpf(0), 100) == 0
    assert ulp(mpf(1), 100) == mpf(2) ** -99
    assert ulp(mpf(2) ** 100, 100) == mpf(2)
