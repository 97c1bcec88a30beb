"""Exact calculus on finite power sums.

Power polynomials (sums of c * x**m with real exponents) are closed
under both singular differential operators used in this package, which
makes them the reference oracle for every quadrature-based path.  The
closed-form fractional-integral coefficients for power functions live
here as well.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .special import GammaRatio, gamma_ratio


@dataclass(frozen=True)
class PowerPolynomial:
    """Finite sum of terms coefficient * x**exponent with real exponents."""

    terms: tuple[tuple[float, float], ...]

    def __init__(self, terms: Sequence[tuple[float, float]]):
        merged: dict[float, float] = {}
        for coef, expo in terms:
            coef, expo = float(coef), float(expo)
            merged[expo] = merged.get(expo, 0.0) + coef
        cleaned = tuple(sorted((c, e) for e, c in merged.items() if c != 0.0))
        object.__setattr__(self, "terms", tuple((c, e) for c, e in
                                                sorted(cleaned, key=lambda t: t[1])))

    @classmethod
    def monomial(cls, coefficient: float, exponent: float) -> "PowerPolynomial":
        return cls([(coefficient, exponent)])

    def __call__(self, x):
        xv = np.asarray(x, dtype=float)
        out = np.zeros_like(xv)
        for coef, expo in self.terms:
            out = out + coef * np.power(xv, expo)
        return float(out) if np.isscalar(x) or out.ndim == 0 else out

    def derivative(self) -> "PowerPolynomial":
        return PowerPolynomial([(c * e, e - 1.0) for c, e in self.terms if e != 0.0])

    def scaled(self, factor: float) -> "PowerPolynomial":
        return PowerPolynomial([(c * factor, e) for c, e in self.terms])

    def shifted_exponents(self, offset: float) -> "PowerPolynomial":
        return PowerPolynomial([(c, e + offset) for c, e in self.terms])

    def __add__(self, other: "PowerPolynomial") -> "PowerPolynomial":
        return PowerPolynomial(self.terms + other.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exponent(self) -> float:
        return min((e for _, e in self.terms), default=0.0)

    @property
    def max_exponent(self) -> float:
        return max((e for _, e in self.terms), default=0.0)


def bessel_apply_poly(nu: float, p: PowerPolynomial) -> PowerPolynomial:
    """Exact image under x -> f''(x) + (nu/x) f'(x); x**m maps to m(m-1+nu) x**(m-2)."""
    return PowerPolynomial([(c * e * (e - 1.0 + nu), e - 2.0) for c, e in p.terms])


def clifford_apply_poly(nu: float, p: PowerPolynomial) -> PowerPolynomial:
    """Exact image under the companion operator; x**m maps to (m-1)(m-nu) x**(m-2)."""
    return PowerPolynomial([(c * (e - 1.0) * (e - nu), e - 2.0) for c, e in p.terms])


class RLSide(enum.Enum):
    LEFT_FROM_ZERO = "left_from_zero"
    RIGHT_TO_INFINITY = "right_to_infinity"


class FracPowerSide(enum.Enum):
    LEFT_ZERO = "left_zero"
    RIGHT_INFINITE = "right_infinite"


def rl_power_closed_form(side: RLSide, order: float, m: float) -> tuple[float, float]:
    """Classical fractional integral of x**m: returns (coefficient, exponent).

    Left from zero: Gamma(m+1)/Gamma(m+1+order) * x**(m+order), m > -1.
    Right to infinity: Gamma(-m-order)/Gamma(-m) * x**(m+order), m + order < 0.
    """
    order, m = float(order), float(m)
    if not order > 0:
        raise DomainError(f"fractional order must be positive, got {order}")
    if side is RLSide.LEFT_FROM_ZERO:
        if not m > -1:
            raise DomainError(f"left-sided power rule requires m > -1, got {m}")
        return gamma_ratio(GammaRatio((m + 1.0,), (m + 1.0 + order,))), m + order
    if not m + order < 0:
        raise DomainError(f"right-sided power rule requires m + order < 0, got m={m}, order={order}")
    return gamma_ratio(GammaRatio((-m - order,), (-m,))), m + order


def frac_power_coefficient(nu: float, alpha: float, m: float,
                           side: FracPowerSide) -> float:
    """Scalar kappa with fractional-integral image kappa * x**(m + 2*alpha) of x**m."""
    nu, alpha, m = float(nu), float(alpha), float(m)
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if side is FracPowerSide.LEFT_ZERO:
        if not (m > -1 and m + nu > -1):
            raise DomainError(
                f"left-from-zero power image needs m > -1 and m + nu > -1, got m={m}, nu={nu}")
        ratio = gamma_ratio(GammaRatio(
            ((m + nu + 1.0) / 2.0, m / 2.0 + 1.0),
            (alpha + m / 2.0 + 1.0, alpha + (m + nu + 1.0) / 2.0)))
    else:
        if not m + 2.0 * alpha + nu < 1.0:
            raise DomainError(
                f"right-infinite power image needs m + 2*alpha + nu < 1, got {m + 2 * alpha + nu}")
        ratio = gamma_ratio(GammaRatio(
            (-alpha - m / 2.0, -(nu - 1.0) / 2.0 - alpha - m / 2.0),
            ((1.0 - nu - m) / 2.0, -m / 2.0)))
    return math.exp(-2.0 * alpha * math.log(2.0)) * ratio
