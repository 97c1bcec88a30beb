"""Evaluable test functions with decay and smoothness metadata.

The integral operators on infinite intervals only accept functions
whose declared decay justifies convergence, so every function carries a
decay class.  Power-sum-backed functions keep their exact form, which
unlocks closed-form oracles and exact differential images downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import DomainError
from .powers import PowerPolynomial
from .special import bessel_j


@dataclass(frozen=True)
class Compact:
    bound: float


@dataclass(frozen=True)
class Algebraic:
    rate: float


@dataclass(frozen=True)
class Exponential:
    pass


@dataclass(frozen=True)
class NoDecay:
    pass


Decay = Union[Compact, Algebraic, Exponential, NoDecay]

EXPONENTIAL = Exponential()
NO_DECAY = NoDecay()

_SMOOTH = 1_000_000  # stands in for infinitely differentiable


@dataclass(frozen=True)
class SampleFunction:
    """A real function on (0, inf), vectorized over numpy arrays.

    ``origin_power`` is the leading exponent as x -> 0+, used to hint
    quadrature near the origin.  ``power`` holds the exact power-sum
    form when one exists.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    decay: Decay = NO_DECAY
    smoothness: int = _SMOOTH
    power: PowerPolynomial | None = None
    origin_power: float = 0.0

    def __call__(self, x):
        return self.evaluator(x)


def from_power_polynomial(p: PowerPolynomial) -> SampleFunction:
    if p.is_zero:
        return SampleFunction(lambda x: np.zeros_like(np.asarray(x, dtype=float)),
                              decay=Compact(0.0), power=p)
    decay: Decay = Algebraic(-p.max_exponent) if p.max_exponent < 0 else NO_DECAY
    return SampleFunction(p, decay=decay, power=p, origin_power=p.min_exponent)


def constant(c: float = 1.0) -> SampleFunction:
    return from_power_polynomial(PowerPolynomial.monomial(c, 0.0))


def power_function(m: float, coefficient: float = 1.0) -> SampleFunction:
    return from_power_polynomial(PowerPolynomial.monomial(coefficient, m))


def gaussian(c: float = 1.0) -> SampleFunction:
    if not c > 0:
        raise DomainError("gaussian rate must be positive")
    return SampleFunction(lambda x: np.exp(-c * np.asarray(x, dtype=float) ** 2),
                          decay=EXPONENTIAL)


def exponential(c: float = 1.0) -> SampleFunction:
    if not c > 0:
        raise DomainError("exponential rate must be positive")
    return SampleFunction(lambda x: np.exp(-c * np.asarray(x, dtype=float)),
                          decay=EXPONENTIAL)


def indicator(lo: float, hi: float) -> SampleFunction:
    if not 0 <= lo < hi:
        raise DomainError("indicator needs 0 <= lo < hi")

    def f(x):
        xv = np.asarray(x, dtype=float)
        return np.where((xv > lo) & (xv < hi), 1.0, 0.0)

    return SampleFunction(f, decay=Compact(hi), smoothness=0)


def bessel_profile(nu: float, xi: float) -> SampleFunction:
    """y**((1-nu)/2) * J_{(nu-1)/2}(y*xi): the eigenprofile of the transforms."""
    if not xi > 0:
        raise DomainError("bessel_profile needs xi > 0")
    order = (nu - 1.0) / 2.0

    def f(x):
        xv = np.asarray(x, dtype=float)
        return np.power(xv, (1.0 - nu) / 2.0) * bessel_j(order, xv * xi)

    # |J| ~ y**(-1/2) at infinity, so the profile decays like y**(-nu/2)
    return SampleFunction(f, decay=Algebraic(nu / 2.0), origin_power=0.0)


def gaussian_times_power(c: float, m: float, coefficient: float = 1.0) -> SampleFunction:
    if not c > 0:
        raise DomainError("gaussian rate must be positive")

    def f(x):
        xv = np.asarray(x, dtype=float)
        return coefficient * np.power(xv, m) * np.exp(-c * xv ** 2)

    return SampleFunction(f, decay=EXPONENTIAL, origin_power=m)


REGISTRY: dict[str, Callable[..., SampleFunction]] = {
    "constant": constant,
    "power": power_function,
    "gaussian": gaussian,
    "exponential": exponential,
    "indicator": indicator,
    "bessel-profile": bessel_profile,
    "gaussian-power": gaussian_times_power,
}


def make_function(name: str, params: dict | None = None) -> SampleFunction:
    """Build a registered test function from its name and keyword parameters."""
    try:
        factory = REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise DomainError(f"unknown function {name!r}; known: {known}") from None
    return factory(**(params or {}))
