"""Recurrence ladders, functional-identity residuals, decay checks."""

from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from conftest import EXP_M1_QUARTER, INV_4PI2, SINH_1_HALF, COSH_1, oracle, within
from sqcos import DomainError, EvalConfig
from sqcos.approx import ApproxValue, exact_neg
from sqcos.ladder import (build_ladder, decay_profile, evaluate, ode_residual,
                          pythagorean_residual, recurrence_step)
from sqcos.series import eval_series


class TestRecurrenceStep:
    def test_at_pi_squared_with_exact_inputs(self):
        with mp.workprec(256):
            x = mpf(mpmath.pi) ** 2
        out = recurrence_step(1, x, ApproxValue.exact(mpf(-1)),
                              ApproxValue.exact(mpf(0)))
        # exact inputs: the step returns 1/(4x) up to rounding only
        with mp.workprec(400):
            assert abs(out.value - 1 / (4 * x)) <= out.abs_error + mpf(2) ** -280
        assert within(out, oracle(INV_4PI2), extra=mpf(10) ** -38)

    def test_exponential_combination_at_minus_one(self):
        lower = eval_series(0, -1)
        mid = eval_series(1, -1)
        out = recurrence_step(1, mpf(-1), lower, mid)
        assert within(out, oracle(EXP_M1_QUARTER), extra=mpf(10) ** -38)

    def test_linear_homogeneous_step(self):
        zero = ApproxValue.exact(mpf(0))
        for z in (mpf(3), mpf("-0.7"), mpc(1, 2)):
            out = recurrence_step(5, z, zero, zero)
            assert out.value == 0
            assert out.abs_error == 0

    def test_domain_errors(self):
        zero = ApproxValue.exact(mpf(0))
        with pytest.raises(DomainError):
            recurrence_step(1, 0, zero, zero)
        with pytest.raises(DomainError):
            recurrence_step(0, 1, zero, zero)


class TestBuildLadder:
    def test_rational_ladder_at_origin(self):
        ladder = build_ladder(0, 3)
        expected = [Fraction(1), Fraction(-1, 2), Fraction(1, 12),
                    Fraction(-1, 120)]
        assert len(ladder) == 4
        for av, q in zip(ladder.orders, expected):
            with mp.workprec(300):
                ref = mpf(q.numerator) / q.denominator
                assert abs(av.value - ref) <= av.abs_error + mpf(2) ** -250

    def test_trig_zero_at_pi_squared(self):
        with mp.workprec(256):
            x = mpf(mpmath.pi) ** 2
        ladder = build_ladder(x, 1)
        assert within(ladder.orders[0], mpf(-1), extra=mpf(10) ** -70)
        assert within(ladder.orders[1], mpf(0), extra=mpf(10) ** -70)

    def test_exponential_ladder_at_minus_one(self):
        ladder = build_ladder(-1, 2)
        assert within(ladder.orders[0], oracle(COSH_1), extra=mpf(10) ** -38)
        assert within(ladder.orders[1], exact_neg(oracle(SINH_1_HALF)),
                      extra=mpf(10) ** -38)
        assert within(ladder.orders[2], oracle(EXP_M1_QUARTER),
                      extra=mpf(10) ** -38)
        assert ladder.method_tags == ("closed-form", "closed-form",
                                      "recurrence")

    def test_series_tags_inside_switch_radius(self):
        ladder = build_ladder(mpf("0.01"), 4)
        assert set(ladder.method_tags) == {"series"}
        ladder = build_ladder(mpf("-0.2"), 3)
        assert set(ladder.method_tags) == {"series"}

    def test_recurrence_consistency_residual(self):
        # every recurrence triple satisfies its defining relation within
        # the propagated bounds
        for x in (mpf(1), mpf(-1), mpf(10), mpf(-10), mpf(100)):
            ladder = build_ladder(x, 10)
            for n in range(1, 10):
                res = (ladder.orders[n - 1] + (4 * n - 2) * ladder.orders[n]
                       + 4 * x * ladder.orders[n + 1])
                assert abs(res).value <= res.abs_error

    def test_method_agreement_with_series(self):
        for x in (mpf("0.01"), mpf("-0.01"), mpf(1), mpf(-1),
                  mpf(10), mpf(-10), mpf(100)):
            ladder = build_ladder(x, 20)
            for n, av in enumerate(ladder.orders):
                ref = eval_series(n, x)
                assert av.agrees_with(ref), (x, n)

    def test_complex_point_rejected(self):
        with pytest.raises(DomainError):
            build_ladder(mpc(1, 1), 2)


class TestResiduals:
    def test_exact_zero_at_origin(self):
        r = pythagorean_residual(0)
        assert r.value == 0
        r = ode_residual(0)
        assert r.value == 0

    @pytest.mark.parametrize("z", [mpf("17.3"), mpc(-2, 3), mpf(-2),
                                   mpf(100), mpf(-5), mpc(0, 11)])
    def test_residuals_vanish_within_error(self, z):
        r = pythagorean_residual(z)
        assert abs(r).value <= r.abs_error
        r = ode_residual(z)
        assert abs(r).value <= r.abs_error


class TestDecayProfile:
    def test_first_derivative_envelope(self):
        values = decay_profile(1, [mpf(10) ** 4])
        with mp.workprec(120):
            assert values[0].upper() <= mpf(1) / 200

    def test_zero_at_pi_squared(self):
        with mp.workprec(256):
            x = mpf(mpmath.pi) ** 2
        values = decay_profile(1, [x])
        assert within(values[0], mpf(0), extra=mpf(10) ** -70)

    def test_sampled_monotone_decrease(self):
        for n in (2, 3):
            values = decay_profile(n, [mpf(100), mpf(10) ** 4, mpf(10) ** 6])
            assert values[0].value > values[1].value > values[2].value

    def test_validation(self):
        with pytest.raises(DomainError):
            decay_profile(0, [1])
        with pytest.raises(DomainError):
            decay_profile(1, [1, 1])
        with pytest.raises(DomainError):
            decay_profile(1, [-1, 2])


def test_evaluate_helper_tags():
    value, tag = evaluate(0, 5)
    assert tag == "closed-form"
    value, tag = evaluate(3, 5)
    assert tag == "recurrence"
    value, tag = evaluate(3, mpf("0.1"))
    assert tag == "series"
