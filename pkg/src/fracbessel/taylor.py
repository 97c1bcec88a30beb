"""Generalized Taylor formulas anchored at an endpoint.

One expansion uses iterated images under the singular operator at a
right anchor b, the other iterated images under the companion operator
at a left anchor a; in both, the remainder is a fractional integral of
integer order applied to the k-th iterated image.

The first-sum hypergeometric parameters of the companion expansion are
implemented as printed, with ``mirror_first_param`` switching to the
variant that mirrors the right-anchored formula; a reconstruction probe
decides between the readings (see tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DomainError
from .functions import SampleFunction, from_power_polynomial
from .operators import LeftFinite, OperatorParams, RightFinite, frac_integral
from .powers import PowerPolynomial, bessel_apply_poly, clifford_apply_poly
from .quadrature import EvalResult, QuadSpec
from .special import hyp2f1


@dataclass(frozen=True)
class TaylorData:
    """Boundary data for a k-term expansion at a positive anchor.

    For the right-anchored formula each pair holds the iterated image
    and its plain derivative at b.  For the left-anchored companion
    formula the second entry is a**nu * d/dx[x**-nu * image] at a.
    """

    nu: float
    anchor: float
    k: int
    boundary_values: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.anchor > 0:
            raise DomainError(f"anchor must be positive, got {self.anchor}")
        if self.k < 1 or len(self.boundary_values) != self.k:
            raise DomainError("boundary_values must hold exactly k pairs")


def bessel_data_from_polynomial(nu: float, b: float, k: int,
                                poly: PowerPolynomial) -> TaylorData:
    pairs = []
    img = poly
    for _ in range(k):
        pairs.append((float(img(b)), float(img.derivative()(b))))
        img = bessel_apply_poly(nu, img)
    return TaylorData(nu, b, k, tuple(pairs))


def clifford_data_from_polynomial(nu: float, a: float, k: int,
                                  poly: PowerPolynomial) -> TaylorData:
    pairs = []
    img = poly
    for _ in range(k):
        weighted = img.shifted_exponents(-nu).derivative()
        pairs.append((float(img(a)), a ** nu * float(weighted(a))))
        img = clifford_apply_poly(nu, img)
    return TaylorData(nu, a, k, tuple(pairs))


def taylor_sum_bessel(d: TaylorData, x: float) -> float:
    """Partial sum of the right-anchored expansion at 0 < x < b."""
    b = d.anchor
    if not 0 < x < b:
        raise DomainError(f"x must lie in (0, {b}), got {x}")
    base = (b - x) * ((b + x) / (2.0 * b))
    z = (b - x) * (b + x) / (b * b)
    total = 0.0
    for i in range(1, d.k + 1):
        val, dval = d.boundary_values[i - 1]
        f1 = hyp2f1(i + (d.nu - 1.0) / 2.0, float(i - 1), 2.0 * i - 1.0, z)
        f2 = hyp2f1(i + (d.nu - 1.0) / 2.0, float(i), 2.0 * i, z)
        total += (math.exp(-gammaln(2.0 * i - 1.0)) * base ** (2 * i - 2) * f1 * val
                  - math.exp(-gammaln(2.0 * i)) * base ** (2 * i - 1) * f2 * dval)
    return total


def taylor_remainder_bessel(nu: float, b: float, k: int, bk_f: SampleFunction,
                            x: float, spec: QuadSpec) -> EvalResult:
    """Remainder term: integral operator of order k at the right anchor applied
    to the k-th iterated image."""
    if bk_f.power is not None and bk_f.power.is_zero:
        return EvalResult(0.0, 0.0, 0, True)
    params = OperatorParams(nu, float(k), RightFinite(b))
    return frac_integral(params, bk_f, x, spec)


def taylor_sum_clifford(d: TaylorData, x: float,
                        mirror_first_param: bool = False) -> float:
    """Partial sum of the left-anchored companion expansion at x > a.

    ``mirror_first_param`` replaces the printed first-sum parameter i
    by i - 1.
    """
    a = d.anchor
    if not x > a:
        raise DomainError(f"x must exceed the anchor {a}, got {x}")
    base = (x - a) * ((x + a) / (2.0 * x))
    z = (x - a) * (x + a) / (x * x)
    total = 0.0
    for i in range(1, d.k + 1):
        val, dval = d.boundary_values[i - 1]
        second = float(i - 1) if mirror_first_param else float(i)
        f1 = hyp2f1(i + (d.nu - 1.0) / 2.0, second, 2.0 * i - 1.0, z)
        f2 = hyp2f1(i + (d.nu - 1.0) / 2.0, float(i), 2.0 * i, z)
        total += (math.exp(-gammaln(2.0 * i - 1.0)) * base ** (2 * i - 2)
                  * (a / x) * f1 * val
                  + math.exp(-gammaln(2.0 * i)) * base ** (2 * i - 1) * f2 * dval)
    return total


def taylor_remainder_clifford(nu: float, a: float, k: int, ck_f: SampleFunction,
                              x: float, spec: QuadSpec) -> EvalResult:
    """Remainder term: integral operator of order k at the left anchor applied
    to the k-th companion image."""
    if ck_f.power is not None and ck_f.power.is_zero:
        return EvalResult(0.0, 0.0, 0, True)
    params = OperatorParams(nu, float(k), LeftFinite(a))
    return frac_integral(params, ck_f, x, spec)


def taylor_remainder_clifford_weighted(nu: float, a: float, k: int,
                                       ck_f: SampleFunction, x: float,
                                       spec: QuadSpec) -> EvalResult:
    """Weight-corrected companion remainder: x**nu times the order-k integral
    of y**-nu * (k-th companion image).

    This is the form that closes the expansion exactly; the plain
    remainder only matches when the k-th image vanishes.  It follows
    from the conjugation rule: the companion operator equals
    x**nu B (x**-nu .), so iterated images of x**-nu f drive the
    expansion and the remainder inherits the same weights.
    """
    if ck_f.power is not None and ck_f.power.is_zero:
        return EvalResult(0.0, 0.0, 0, True)
    if ck_f.power is not None:
        shifted = from_power_polynomial(ck_f.power.shifted_exponents(-nu))
    else:
        base = ck_f.evaluator
        shifted = SampleFunction(
            lambda y: np.power(np.asarray(y, dtype=float), -nu) * np.asarray(base(y), dtype=float),
            decay=ck_f.decay, smoothness=ck_f.smoothness,
            origin_power=ck_f.origin_power - nu)
    params = OperatorParams(nu, float(k), LeftFinite(a))
    res = frac_integral(params, shifted, x, spec)
    scale = x ** nu
    return EvalResult(scale * res.value, scale * res.error_estimate,
                      res.evaluations, res.converged)