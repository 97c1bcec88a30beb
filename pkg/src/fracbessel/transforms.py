"""Numerical Mellin and Hankel transforms, the Wright-kernel transform,
and the gamma-ratio multiplier that diagonalizes the right-sided
operator under the Mellin transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DomainError
from .functions import Compact, SampleFunction
from .quadrature import EvalResult, QuadSpec, integrate_finite, integrate_semi_infinite
from .special import GammaRatio, WrightParams, bessel_j, gamma_ratio, wright_j


@dataclass(frozen=True)
class MellinPoint:
    s: float


@dataclass(frozen=True)
class HankelPoint:
    xi: float

    def __post_init__(self):
        if not self.xi > 0:
            raise DomainError(f"transform variable must be positive, got {self.xi}")


def _mellin_s(s) -> float:
    return float(s.s) if isinstance(s, MellinPoint) else float(s)


def _hankel_xi(xi) -> float:
    if isinstance(xi, HankelPoint):
        return xi.xi
    xi = float(xi)
    if not xi > 0:
        raise DomainError(f"transform variable must be positive, got {xi}")
    return xi


def mellin_transform(f: SampleFunction, s, spec: QuadSpec) -> EvalResult:
    """Integral of x**(s-1) f(x) over (0, inf), split at x = 1.

    Each half must converge on its own; divergence on either half is
    reported through the convergence flag.
    """
    sv = _mellin_s(s)
    if not math.isfinite(sv):
        raise DomainError("Mellin variable must be finite")

    def integrand(x: np.ndarray) -> np.ndarray:
        fv = np.asarray(f(x), dtype=float)
        out = np.zeros_like(x)
        live = fv != 0.0
        if np.any(live):
            with np.errstate(over="ignore", invalid="ignore"):
                vals = np.power(x[live], sv - 1.0) * fv[live]
            vals[~np.isfinite(vals)] = 0.0
            out[live] = vals
        return out

    origin = sv - 1.0 + f.origin_power
    if origin <= -1.0:
        # non-integrable at the origin: outside the transform strip
        return EvalResult(math.nan, math.inf, 0, False)
    part = spec.tightened(0.5)
    low = integrate_finite(integrand, 0.0, 1.0, part.with_hints(min(origin, 0.0), 0.0))
    if isinstance(f.decay, Compact) and f.decay.bound <= 1.0:
        high = EvalResult(0.0, 0.0, 0, True)
    elif isinstance(f.decay, Compact):
        high = integrate_finite(integrand, 1.0, f.decay.bound, part)
    else:
        high = integrate_semi_infinite(integrand, 1.0, part)
    total = low + high
    ok = total.converged and total.error_estimate <= max(
        spec.abs_tol, spec.rel_tol * abs(total.value))
    return EvalResult(total.value, total.error_estimate, total.evaluations, ok)


def mellin_symbol(nu: float, alpha: float, s: float) -> float:
    """Gamma-ratio multiplier of the right-sided operator under Mellin."""
    nu, alpha, s = float(nu), float(alpha), float(s)
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if not s > nu - 1.0:
        raise DomainError(f"Mellin symbol requires s > nu - 1, got s={s}, nu={nu}")
    half_shift = (nu - 1.0) / 2.0
    ratio = gamma_ratio(GammaRatio(
        (s / 2.0, s / 2.0 - half_shift),
        (alpha + s / 2.0 - half_shift, alpha + s / 2.0)))
    return math.exp(-2.0 * alpha * math.log(2.0)) * ratio


def _bessel_zero_breakpoints(order: float, xi: float, start: float) -> Iterator[float]:
    """Approximate zeros of J_order(x*xi) past ``start`` (McMahon expansion)."""
    k = 1
    emitted = 0
    while True:
        beta = (k + order / 2.0 - 0.25) * math.pi
        if beta > 1.0:
            zero = (beta - (4.0 * order ** 2 - 1.0) / (8.0 * beta)) / xi
            if zero > start:
                yield zero
                emitted += 1
        k += 1
        if emitted == 0 and k > 100_000:
            raise DomainError("could not construct oscillation breakpoints")


def _oscillatory_tail(integrand, upper_hint: float | None, order: float, xi: float,
                      spec: QuadSpec) -> EvalResult:
    if upper_hint is not None:
        # compactly supported profile: no oscillatory tail to chase
        return integrate_finite(integrand, 0.0, upper_hint, spec)
    start = 10.0 / xi
    head = integrate_finite(integrand, 0.0, start, spec.tightened(0.5))
    tail = integrate_semi_infinite(
        integrand, start, spec.tightened(0.5),
        breakpoints=_bessel_zero_breakpoints(order, xi, start))
    return head + tail


def hankel_transform(nu: float, f: SampleFunction, xi, spec: QuadSpec) -> EvalResult:
    """Hankel-type transform with kernel order (nu-1)/2 and weight x**((nu+1)/2)."""
    nu = float(nu)
    if not nu >= 0:
        raise DomainError(f"nu must be non-negative, got {nu}")
    xiv = _hankel_xi(xi)
    order = (nu - 1.0) / 2.0

    def integrand(x: np.ndarray) -> np.ndarray:
        fv = np.asarray(f(x), dtype=float)
        out = np.zeros_like(x)
        live = fv != 0.0
        if np.any(live):
            xl = x[live]
            out[live] = bessel_j(order, xl * xiv) * np.power(xl, (nu + 1.0) / 2.0) * fv[live]
        return out

    upper = f.decay.bound if isinstance(f.decay, Compact) else None
    total = _oscillatory_tail(integrand, upper, order, xiv, spec)
    scale = xiv ** (-nu)
    value = scale * total.value
    err = abs(scale) * total.error_estimate
    ok = total.converged and err <= max(spec.abs_tol, spec.rel_tol * abs(value))
    return EvalResult(value, err, total.evaluations, ok)


def r_transform(nu: float, alpha: float, f: SampleFunction, xi,
                spec: QuadSpec) -> EvalResult:
    """Transform with the Wright-series kernel of index ((nu-1)/2, 1, alpha).

    At alpha = 0 the kernel degenerates to the plain Bessel kernel.
    """
    nu, alpha = float(nu), float(alpha)
    if not nu >= 0:
        raise DomainError(f"nu must be non-negative, got {nu}")
    if alpha < 0:
        raise DomainError(f"alpha must be non-negative, got {alpha}")
    xiv = _hankel_xi(xi)
    order = (nu - 1.0) / 2.0
    if alpha == 0.0:
        kernel = lambda t: bessel_j(order, t)
    else:
        params = WrightParams(order, 1.0, alpha)
        kernel = lambda t: wright_j(params, t)

    def integrand(x: np.ndarray) -> np.ndarray:
        fv = np.asarray(f(x), dtype=float)
        out = np.zeros_like(x)
        live = fv != 0.0
        if np.any(live):
            xl = x[live]
            out[live] = kernel(xl * xiv) * np.power(xl, (nu + 1.0) / 2.0) * fv[live]
        return out

    upper = f.decay.bound if isinstance(f.decay, Compact) else None
    total = _oscillatory_tail(integrand, upper, order, xiv, spec)
    ok = total.converged and total.error_estimate <= max(
        spec.abs_tol, spec.rel_tol * abs(total.value))
    return EvalResult(total.value, total.error_estimate, total.evaluations, ok)