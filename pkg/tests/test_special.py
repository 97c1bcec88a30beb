"""Scalar special-function tests against closed forms and mpmath."""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracbessel.errors import DomainError, PoleError
from fracbessel.special import (GammaRatio, MittagLefflerParams, WrightParams,
                                _gauss_series, bessel_j, gamma_ratio, hyp2f1,
                                hyp2f1_one_minus, legendre_p, log_gamma,
                                mittag_leffler_multi, wright_j)

mp.mp.dps = 30


class TestLogGamma:
    def test_known_values(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
        assert log_gamma(4.0) == pytest.approx(math.log(6.0), rel=1e-14)
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)

    def test_accuracy_over_range(self):
        for x in np.geomspace(1e-3, 1e3, 40):
            want = float(mp.loggamma(mp.mpf(x)))
            assert log_gamma(float(x)) == pytest.approx(want, rel=1e-14, abs=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            log_gamma(-1.0)
        with pytest.raises(DomainError):
            log_gamma(float("nan"))


class TestGammaRatio:
    def test_identity(self):
        assert gamma_ratio(GammaRatio((1.0,), (1.0,))) == 1.0

    def test_denominator_pole_is_zero(self):
        assert gamma_ratio(GammaRatio((1.0,), (0.0,))) == 0.0
        assert gamma_ratio(GammaRatio((2.5,), (-3.0,))) == 0.0

    def test_numerator_pole_raises(self):
        with pytest.raises(PoleError):
            gamma_ratio(GammaRatio((0.0,), (1.0,)))
        with pytest.raises(PoleError) as info:
            gamma_ratio(GammaRatio((1.0, -2.0), (1.5,)))
        assert info.value.index == 1

    def test_duplication_formula_case(self):
        # 2**(-2a) * G(s/2)G((s+1)/2) / (G(a+(s+1)/2)G(a+s/2)) == G(s)/G(s+2a)
        s, a = 1.0, 0.5
        value = 2.0 ** (-2 * a) * gamma_ratio(GammaRatio(
            (s / 2, (s + 1) / 2), (a + (s + 1) / 2, a + s / 2)))
        assert value == pytest.approx(1.0, rel=1e-13)

    def test_negative_arguments_reflection(self):
        got = gamma_ratio(GammaRatio((-0.5, 2.0), (1.5, -1.5)))
        want = float(mp.gamma(-0.5) * mp.gamma(2) / (mp.gamma(1.5) * mp.gamma(-1.5)))
        assert got == pytest.approx(want, rel=1e-12)

    @given(st.floats(min_value=-30, max_value=30,
                     allow_nan=False, allow_infinity=False))
    @settings(max_examples=80, deadline=None)
    def test_exact_cancellation(self, x):
        assert gamma_ratio(GammaRatio((x, 2.0), (2.0, x))) == 1.0


class TestHyp2f1:
    def test_empty_series(self):
        assert hyp2f1(3.7, -2.1, 5.0, 0.0) == 1.0
        assert hyp2f1(3.7, 0.0, 5.0, 0.83) == 1.0

    def test_closed_form_example(self):
        # 4*(4/-3)*(sqrt(0.5)-1)
        want = 4.0 * (4.0 / -3.0) * (math.sqrt(0.5) - 1.0)
        assert hyp2f1(0.75, 1.0, 2.0, 0.75) == pytest.approx(want, rel=1e-12)
        assert want == pytest.approx(1.5620972, abs=5e-8)

    def test_quadratic_reduction_example(self):
        assert hyp2f1(1.0, 1.5, 3.0, 0.75) == pytest.approx(16.0 / 9.0, rel=1e-12)

    @pytest.mark.parametrize("p", [0.5, 1.0, 1.7])
    @pytest.mark.parametrize("z", [0.1, 0.5, 0.9])
    def test_degenerate_quadratic_form(self, p, z):
        want = 2.0 ** (2 * p) * (1.0 + math.sqrt(1.0 - z)) ** (-2 * p)
        assert hyp2f1(p, p + 0.5, 2 * p + 1.0, z) == pytest.approx(want, rel=1e-10)

    @pytest.mark.parametrize("nu", [0.25, 0.5, 0.75])
    def test_order_one_kernel_closed_form(self, nu):
        rng = np.random.default_rng(17)
        for _ in range(10):
            x = rng.uniform(0.1, 3.0)
            y = x + rng.uniform(0.05, 3.0)
            z = 1.0 - x * x / (y * y)
            want = (2.0 / (1.0 - nu)) * (y * y / (x * x - y * y)) * ((x / y) ** (1 - nu) - 1.0)
            assert hyp2f1((nu + 1) / 2, 1.0, 2.0, z) == pytest.approx(want, rel=1e-10)

    def test_connection_consistency(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            a = rng.uniform(0.1, 3.0)
            b = rng.uniform(0.1, 3.0)
            c = a + b + rng.uniform(0.07, 0.9)   # keeps c - a - b off the integers
            z = rng.uniform(0.6, 0.9)
            direct = float(_gauss_series(a, b, c, np.asarray([z]))[0])
            assert hyp2f1(a, b, c, z) == pytest.approx(direct, rel=1e-9)

    def test_log_case_against_mpmath(self):
        for m, a, b in [(0, 0.7, 1.3), (1, 0.4, 2.2), (2, 1.1, 0.9),
                        (-1, 1.7, 0.8), (-2, 2.4, 1.5)]:
            c = a + b + m
            if c <= 0:
                continue
            for z in (0.6, 0.97, 1 - 1e-8):
                want = float(mp.hyp2f1(a, b, c, z))
                assert hyp2f1(a, b, c, z) == pytest.approx(want, rel=1e-10)

    def test_near_one_complement_entry(self):
        got = hyp2f1_one_minus(0.75, 1.0, 2.0, 1e-40)
        with mp.workdps(60):
            want = float(mp.hyp2f1(0.75, 1.0, 2.0, mp.mpf(1) - mp.mpf(10) ** -40))
        assert got == pytest.approx(want, rel=1e-11)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            hyp2f1(1.0, 1.0, 0.0, 0.5)
        with pytest.raises(DomainError):
            hyp2f1(1.0, 1.0, -3.0, 0.5)
        with pytest.raises(DomainError):
            hyp2f1(1.0, 1.0, 2.0, 1.0)
        with pytest.raises(DomainError):
            hyp2f1(1.0, 1.0, 2.0, -0.1)

    def test_vectorized(self):
        z = np.asarray([0.0, 0.3, 0.8])
        out = hyp2f1(0.75, 1.0, 2.0, z)
        assert out.shape == (3,)
        assert out[0] == 1.0


class TestLegendreP:
    def test_degree_zero(self):
        for z in (1.01, 2.0, 50.0):
            assert legendre_p(0.0, 0.0, z) == pytest.approx(1.0, rel=1e-12)

    def test_degree_one(self):
        assert legendre_p(0.0, 1.0, 2.0) == pytest.approx(2.0, rel=1e-12)

    def test_against_mpmath_type3(self):
        rng = np.random.default_rng(11)
        for _ in range(40):
            mu = rng.uniform(-2.0, 0.45)
            lam = rng.uniform(-2.5, 3.0)
            z = rng.uniform(1.0 + 1e-4, 40.0)
            want = float(mp.re(mp.legenp(lam, mu, mp.mpf(z), type=3)))
            assert legendre_p(mu, lam, z) == pytest.approx(want, rel=1e-10, abs=1e-12)

    def test_kernel_reduction_consistency(self):
        # order 1/2-a, degree n/2-1 at the kernel argument matches the
        # hypergeometric kernel combination
        alpha, nu, x, y = 0.75, 0.5, 1.0, 2.0
        z = 1.0 - x * x / (y * y)
        lhs = hyp2f1(alpha + (nu - 1) / 2, alpha, 2 * alpha, z)
        w = (x / y + y / x) / 2
        pref = (2.0 ** (2 * alpha - 1) * math.gamma(alpha + 0.5)
                * z ** (0.5 - alpha) * (x * x / (y * y)) ** ((alpha - alpha - (nu - 1) / 2 - 0.5) / 2))
        rhs = pref * legendre_p(0.5 - alpha, nu / 2 - 1.0, w)
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            legendre_p(0.0, 1.0, 0.99)
        with pytest.raises(DomainError):
            legendre_p(1.0, 1.0, 2.0)   # order at a parameter pole


def _bessel_series(order: float, x: float, terms: int = 60) -> float:
    total = mp.mpf(0)
    for m in range(terms):
        total += ((-1) ** m / (mp.gamma(order + m + 1) * mp.factorial(m))
                  * (mp.mpf(x) / 2) ** (2 * m + order))
    return float(total)


class TestBesselJ:
    def test_at_zero(self):
        assert bessel_j(0.0, 0.0) == 1.0

    def test_half_order_closed_form(self):
        x = math.pi / 2
        want = math.sqrt(2.0 / (math.pi * x)) * math.sin(x)
        assert bessel_j(0.5, x) == pytest.approx(want, rel=1e-12)
        assert want == pytest.approx(2.0 / math.pi, rel=1e-9)

    def test_first_zero_by_series_bisection(self):
        lo, hi = 2.0, 3.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if _bessel_series(0.0, mid) > 0:
                lo = mid
            else:
                hi = mid
        zero = 0.5 * (lo + hi)
        assert zero == pytest.approx(2.404826, abs=1e-6)
        assert abs(bessel_j(0.0, zero)) < 1e-6

    def test_series_agreement(self):
        for order in (0.0, 0.4, 1.7):
            for x in (0.3, 2.0, 9.0):
                assert bessel_j(order, x) == pytest.approx(
                    _bessel_series(order, x, 80), rel=1e-10, abs=1e-14)


class TestWright:
    def test_reduces_to_bessel(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            gamma = rng.uniform(-0.5, 2.0)
            z = rng.uniform(0.0, 8.0)
            got = wright_j(WrightParams(gamma, 1.0, 0.0), z)
            assert got == pytest.approx(float(bessel_j(gamma, z)), rel=1e-11, abs=1e-13)

    def test_leading_term(self):
        assert wright_j(WrightParams(0.0, 1.0, 0.0), 0.0) == 1.0

    def test_frozen_series_value(self):
        # 30-term reference sum, computed with 30-digit arithmetic
        assert wright_j(WrightParams(0.5, 1.0, 0.25), 1.0) == pytest.approx(
            0.5343307313297162, rel=1e-12)

    def test_mu_must_be_positive(self):
        with pytest.raises(DomainError):
            WrightParams(0.5, 0.0, 0.0)


class TestMittagLeffler:
    def test_at_zero(self):
        p = MittagLefflerParams((1.0, 1.0), (1.0, 1.0))
        assert mittag_leffler_multi(p, 0.0) == 1.0

    def test_bessel_i_series(self):
        p = MittagLefflerParams((1.0, 1.0), (1.0, 1.0))
        want = float(mp.besseli(0, 2))
        assert mittag_leffler_multi(p, 1.0) == pytest.approx(want, rel=1e-12)
        assert want == pytest.approx(2.2795853, abs=5e-8)

    def test_frozen_two_index_value(self):
        # 50-term reference sum at slopes (2,2), shifts (1/2,1/2)
        p = MittagLefflerParams((2.0, 2.0), (0.5, 0.5))
        assert mittag_leffler_multi(p, 0.25) == pytest.approx(
            0.4602430815801188, rel=1e-12)

    def test_validation(self):
        with pytest.raises(DomainError):
            MittagLefflerParams((1.0,), (1.0, 2.0))
        with pytest.raises(DomainError):
            MittagLefflerParams((0.0,), (1.0,))
