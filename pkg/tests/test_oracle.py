from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from nlspectra import HypTerm2F0, KernelParams
from nlspectra.oracle import (
    oracle_bessel_series,
    oracle_closed_form_d1_a0,
    oracle_denominator_poly,
    oracle_drummond_bigfloat,
    oracle_lambda_maclaurin,
)

# regression constant: oracle_lambda_maclaurin(KernelParams(3, 2, 1), 6.0)
# computed at 256-bit precision, 40 digits
LAMBDA_D3_A2_K6 = "-13.72593734615848039269290691624857394452"


class TestMaclaurinOracle:
    def test_zero_mode(self):
        assert oracle_lambda_maclaurin(KernelParams(3, 2.0, 1.0), 0) == 0

    def test_agrees_with_closed_form_to_30_digits(self):
        for delta in [0.5, 1.0, 2.0]:
            for kd in [0.1, 1.0, 10.0]:
                k = kd / delta
                a = oracle_lambda_maclaurin(KernelParams(1, 0.0, delta), k)
                b = oracle_closed_form_d1_a0(delta, k)
                with mp.workprec(256):
                    assert abs((a - b) / b) < mp.mpf(10) ** -30

    def test_regression_constant(self):
        with mp.workprec(256):
            val = oracle_lambda_maclaurin(KernelParams(3, 2.0, 1.0), 6.0)
            assert abs((val - mp.mpf(LAMBDA_D3_A2_K6)) / val) < mp.mpf(10) ** -38

    def test_series_length_guard(self):
        with pytest.raises(ValueError):
            oracle_lambda_maclaurin(KernelParams(1, 0.0, 1.0), 300.0)


class TestDrummondOracle:
    def test_terminating_is_exact(self):
        term = HypTerm2F0(-1.0, 1.0, 2.0)
        for k in [1, 3, 10]:
            assert oracle_drummond_bigfloat(term, 0, k) == mp.mpf("1.5")

    def test_matches_working_precision_at_low_order(self):
        from nlspectra import drummond_2f0_at_order

        term = HypTerm2F0(1.0, 1.0, 8.0)
        ref = oracle_drummond_bigfloat(term, 0, 5)
        got = drummond_2f0_at_order(term, 0, 5)
        assert abs((got - float(ref)) / float(ref)) <= 1e-12

    def test_high_order_is_precision_safe(self):
        # order 400 carries ~120 decimal digits of cancellation; the widened
        # working precision must absorb it
        term = HypTerm2F0(1.0, 1.0, 8.0)
        t400 = oracle_drummond_bigfloat(term, 0, 400)
        t399 = oracle_drummond_bigfloat(term, 0, 399)
        with mp.workprec(256):
            assert abs((t400 - t399) / t400) < mp.mpf(10) ** -25


class TestBesselOracle:
    @pytest.mark.parametrize("nu", [-1.5, -0.5, 0.0, 1.0, 2.5, 4.0])
    @pytest.mark.parametrize("x", [0.5, 3.0, 10.0, 40.0])
    def test_cross_agreement_with_mpmath(self, nu, x):
        a = oracle_bessel_series(nu, x)
        with mp.workprec(256):
            b = mpmath.besselj(mp.mpf(nu), mp.mpf(x))
            if b == 0:
                assert abs(a - b) < mp.mpf(10) ** -40
            else:
                assert abs((a - b) / b) < mp.mpf(10) ** -40


class TestDenominatorPolyOracle:
    def test_guard(self):
        with pytest.raises(ValueError):
            oracle_denominator_poly(Fraction(1), Fraction(1), 6, 7)

    def test_degree_structure(self):
        coeffs = oracle_denominator_poly(Fraction(1, 2), Fraction(3), 1, 2)
        assert len(coeffs) == 5  # powers z^0..z^4
        assert coeffs[0] == 0 and coeffs[1] == 0  # lowest power is z^(n+1)
