"""Resolvent of the right-sided fractional integral operator.

Two independent routes: the closed double-integral formula with a
multi-index Mittag-Leffler kernel, and a truncated Neumann-series
oracle whose terms collapse to single integrals through the index law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EvaluationError
from .functions import Compact, SampleFunction
from .operators import (OperatorParams, RightInfinite, _check_infinite_admissible,
                        _integrate_right, frac_integral)
from .quadrature import EvalResult, QuadSpec, integrate_finite
from .special import MittagLefflerParams, MittagLefflerSeries


@dataclass(frozen=True)
class ResolventParams:
    """Operator data, spectral parameter, and oracle truncation depth."""

    op: OperatorParams
    lam: float
    series_terms: int = 8

    def __post_init__(self):
        if not isinstance(self.op.variant, RightInfinite):
            raise DomainError("resolvent is defined for the right-sided infinite variant")
        if self.lam == 0 or not math.isfinite(self.lam):
            raise DomainError(f"spectral parameter must be finite and non-zero, got {self.lam}")
        if self.series_terms < 1:
            raise DomainError("series_terms must be at least 1")


def resolvent_apply(p: ResolventParams, f: SampleFunction, x: float,
                    spec: QuadSpec) -> EvalResult:
    """Closed-formula resolvent: -f/lam - (1/lam^2) * nested double integral.

    The inner integral runs over (0, 1) with beta-type endpoints of
    exponent alpha - 1; its Mittag-Leffler argument is computed in the
    algebraically stable form, non-negative for y > x.
    """
    alpha = p.op.alpha
    nu = p.op.nu
    lam = p.lam
    p.op.validate_point(x)
    _check_infinite_admissible(p.op, f)

    ml = MittagLefflerSeries(MittagLefflerParams((alpha, alpha), (alpha, alpha)))
    inner_spec = QuadSpec(spec.abs_tol / 10.0, spec.rel_tol / 10.0, spec.max_depth,
                          min(alpha - 1.0, 0.0), min(alpha - 1.0, 0.0))
    x2 = x * x
    power = -alpha - (nu - 1.0) / 2.0
    inner_flags = [True]
    inner_err = [0.0]
    inner_count = [0]

    def inner(y: float) -> float:
        y2 = y * y
        d = (y - x) * (y + x)
        z_geom = d / y2

        def t_integrand(t: np.ndarray) -> np.ndarray:
            stable = x2 * t + y2 * (1.0 - t)       # y^2 - (y^2-x^2) t
            u = 0.25 * t * (1.0 - t) * d * d / stable
            arg = np.power(u, alpha) / lam
            core = np.power(t, alpha - 1.0) * np.power(1.0 - t, alpha - 1.0)
            return core * np.power(1.0 - z_geom * t, power) * ml(arg)

        res = integrate_finite(t_integrand, 0.0, 1.0, inner_spec)
        inner_flags[0] = inner_flags[0] and res.converged
        inner_err[0] = max(inner_err[0], res.error_estimate)
        inner_count[0] += res.evaluations
        return res.value

    def outer_integrand(y: np.ndarray) -> np.ndarray:
        fv = np.asarray(f(y), dtype=float)
        out = np.zeros_like(y)
        live = fv != 0.0
        if np.any(live):
            yl = y[live]
            weight = np.power((yl - x) * ((yl + x) / (2.0 * yl)), 2.0 * alpha - 1.0)
            inner_vals = np.array([inner(float(t)) for t in yl])
            out[live] = fv[live] * weight * inner_vals
        return out

    try:
        upper = f.decay.bound if isinstance(f.decay, Compact) else None
        outer = _integrate_right(outer_integrand, x, upper, spec,
                                 2.0 * alpha - 1.0)
    except EvaluationError:
        return EvalResult(math.nan, math.inf, inner_count[0], False)

    fx = float(np.asarray(f(np.asarray([x], dtype=float)))[0])
    value = -fx / lam - outer.value / (lam * lam)
    err = outer.error_estimate / (lam * lam) + inner_err[0]
    evals = outer.evaluations + inner_count[0]
    converged = (outer.converged and inner_flags[0]
                 and err <= max(spec.abs_tol, spec.rel_tol * abs(value)))
    return EvalResult(value, err, evals, converged)


def neumann_oracle(p: ResolventParams, f: SampleFunction, x: float,
                   spec: QuadSpec) -> EvalResult:
    """Truncated Neumann series -(1/lam) sum_k lam^{-k} (integral of order alpha*k).

    Each term is a single integral of order alpha*k (the index law
    collapses iterated applications).  Growing terms or a last addend
    above the absolute tolerance flag non-convergence.
    """
    p.op.validate_point(x)
    _check_infinite_admissible(p.op, f)
    lam = p.lam
    fx = float(np.asarray(f(np.asarray([x], dtype=float)))[0])
    addends = [-fx / lam]
    err = 0.0
    evals = 0
    quad_ok = True
    term_spec = spec.tightened(0.1)
    growing = 0
    for k in range(1, p.series_terms + 1):
        term_op = OperatorParams(p.op.nu, p.op.alpha * k, p.op.variant)
        res = frac_integral(term_op, f, x, term_spec)
        addend = -res.value / lam ** (k + 1)
        addends.append(addend)
        err += res.error_estimate / abs(lam) ** (k + 1)
        evals += res.evaluations
        quad_ok = quad_ok and res.converged
        if len(addends) >= 3 and abs(addends[-1]) > abs(addends[-2]) > 0:
            growing += 1
            if growing >= 3:
                return EvalResult(math.fsum(addends), math.inf, evals, False)
        else:
            growing = 0
    value = math.fsum(addends)
    tail_ok = abs(addends[-1]) <= spec.abs_tol
    err = err + abs(addends[-1])
    converged = (quad_ok and tail_ok
                 and err <= max(spec.abs_tol, spec.rel_tol * abs(value)))
    return EvalResult(value, err, evals, converged)