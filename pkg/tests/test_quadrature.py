"""Quadrature contract tests: known integrals, hint handling, honesty."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracbessel.errors import DomainError, EvaluationError
from fracbessel.quadrature import (EvalResult, QuadSpec, integrate_finite,
                                   integrate_semi_infinite)

SPEC = QuadSpec(1e-10, 1e-10)


def _assert_contract(res: EvalResult, spec: QuadSpec):
    if res.converged:
        assert res.error_estimate <= max(spec.abs_tol, spec.rel_tol * abs(res.value))


class TestFinite:
    def test_inverse_sqrt(self):
        spec = SPEC.with_hints(-0.5, 0.0)
        res = integrate_finite(lambda x: x ** -0.5, 0.0, 1.0, spec)
        assert res.converged
        assert res.value == pytest.approx(2.0, abs=1e-10)
        _assert_contract(res, spec)

    def test_right_singularity(self):
        spec = SPEC.with_hints(0.0, -0.3)
        res = integrate_finite(lambda x: (1.0 - x) ** -0.3, 0.0, 1.0, spec)
        assert res.converged
        assert res.value == pytest.approx(1.0 / 0.7, abs=1e-9)

    def test_constant(self):
        res = integrate_finite(lambda x: np.ones_like(x), 2.0, 5.0, SPEC)
        assert res.converged
        assert res.value == pytest.approx(3.0, abs=1e-12)

    def test_both_end_singularities(self):
        spec = SPEC.with_hints(-0.25, -0.25)
        res = integrate_finite(lambda t: t ** -0.25 * (1 - t) ** -0.25, 0.0, 1.0, spec)
        want = math.gamma(0.75) ** 2 / math.gamma(1.5)
        assert res.value == pytest.approx(want, rel=1e-9)

    def test_invalid_interval(self):
        with pytest.raises(DomainError):
            integrate_finite(lambda x: x, 1.0, 1.0, SPEC)
        with pytest.raises(DomainError):
            integrate_finite(lambda x: x, 0.0, math.inf, SPEC)

    def test_nan_integrand_raises(self):
        with pytest.raises(EvaluationError):
            integrate_finite(lambda x: np.full_like(x, np.nan), 0.0, 1.0, SPEC)

    def test_spec_validation(self):
        with pytest.raises(DomainError):
            QuadSpec(abs_tol=0.0)
        with pytest.raises(DomainError):
            QuadSpec(left_exponent_hint=-1.0)


class TestSemiInfinite:
    def test_exponential(self):
        res = integrate_semi_infinite(lambda x: np.exp(-x), 0.0, SPEC)
        assert res.converged
        assert res.value == pytest.approx(1.0, abs=1e-11)

    def test_gaussian_moment(self):
        res = integrate_semi_infinite(lambda x: x * np.exp(-x * x), 0.0, SPEC)
        assert res.value == pytest.approx(0.5, abs=1e-11)

    def test_lorentzian(self):
        res = integrate_semi_infinite(lambda x: 1.0 / (1.0 + x * x), 0.0, SPEC)
        assert res.value == pytest.approx(math.pi / 2, rel=1e-10)

    def test_algebraic_tail(self):
        res = integrate_semi_infinite(lambda x: x ** -2.5, 1.0, SPEC)
        assert res.value == pytest.approx(1.0 / 1.5, rel=1e-10)

    def test_divergence_flagged(self):
        res = integrate_semi_infinite(lambda x: 1.0 / (1.0 + x), 0.0, SPEC)
        assert not res.converged

    def test_oscillatory_partition(self):
        from scipy.special import jv
        spec = QuadSpec(1e-9, 1e-9)
        breakpoints = (k * math.pi for k in range(1, 400))
        res = integrate_semi_infinite(lambda x: jv(0, x), 0.0, spec,
                                      breakpoints=breakpoints)
        assert res.converged
        assert res.value == pytest.approx(1.0, abs=1e-8)


class TestAdditivity:
    @given(st.tuples(*[st.floats(-1, 1) for _ in range(4)]),
           st.floats(min_value=0.2, max_value=1.8))
    @settings(max_examples=50, deadline=None)
    def test_split_point(self, coefs, split):
        c0, c1, c2, c3 = coefs

        def f(x):
            return c0 + c1 * np.sin(3 * x) + c2 * x * x + c3 * np.exp(-x)

        whole = integrate_finite(f, 0.0, 2.0, SPEC)
        first = integrate_finite(f, 0.0, split, SPEC)
        second = integrate_finite(f, split, 2.0, SPEC)
        assert whole.value == pytest.approx(
            first.value + second.value,
            abs=10 * (whole.error_estimate + first.error_estimate
                      + second.error_estimate) + 1e-12)


class TestSingularityHints:
    @pytest.mark.parametrize("sigma", [-0.9, -0.6, -0.3, -0.05])
    def test_hint_at_origin(self, sigma):
        spec = QuadSpec(1e-7, 1e-7).with_hints(sigma, 0.0)
        res = integrate_finite(lambda x: x ** sigma * np.cos(x), 0.0, 1.0, spec)
        # exact: sum over the cosine series, (-1)^k / ((2k)! (sigma+2k+1))
        want = sum((-1) ** k / (math.factorial(2 * k) * (sigma + 2 * k + 1))
                   for k in range(30))
        assert res.converged
        assert abs(res.value - want) <= 10 * max(1e-7, 1e-7 * abs(want))

    @pytest.mark.parametrize("sigma", [-0.45, -0.25, -0.05])
    def test_hint_at_shifted_endpoint(self, sigma):
        # mass below float-representable offsets caps accuracy away from 0,
        # so strong singularities at nonzero endpoints are out of scope here
        a = 1.0
        spec = QuadSpec(1e-7, 1e-7).with_hints(sigma, 0.0)
        res = integrate_finite(lambda x: (x - a) ** sigma, a, a + 1.0, spec)
        want = 1.0 / (sigma + 1.0)
        assert abs(res.value - want) <= 10 * 1e-7 * abs(want) + 10 * 1e-7


class TestErrorEstimateHonesty:
    def test_corpus(self):
        rng = np.random.default_rng(42)
        spec = QuadSpec(1e-9, 1e-9)
        honest = 0
        total = 0
        cases = []
        for _ in range(25):
            p = rng.uniform(0.0, 4.0)
            cases.append((lambda x, p=p: x ** p, 0.0, 1.0, 1.0 / (p + 1.0), spec))
        for _ in range(25):
            c = rng.uniform(0.3, 3.0)
            cases.append((lambda x, c=c: np.exp(-c * x), 0.0, 5.0,
                          (1 - math.exp(-5 * c)) / c, spec))
        for _ in range(25):
            w = rng.uniform(0.5, 6.0)
            cases.append((lambda x, w=w: np.cos(w * x), 0.0, 2.0,
                          math.sin(2 * w) / w, spec))
        for _ in range(25):
            s = rng.uniform(-0.8, -0.1)
            sing_spec = spec.with_hints(s, 0.0)
            cases.append((lambda x, s=s: x ** s, 0.0, 1.0, 1.0 / (s + 1.0), sing_spec))
        for f, a, b, truth, case_spec in cases:
            res = integrate_finite(f, a, b, case_spec)
            total += 1
            if abs(res.value - truth) <= 5 * res.error_estimate + 1e-15:
                honest += 1
            _assert_contract(res, case_spec)
        assert honest / total >= 0.95
