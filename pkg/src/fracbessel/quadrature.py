"""Adaptive quadrature for the operator integrals.

Finite intervals are handled by double-exponential (tanh-sinh)
quadrature with level doubling and node reuse; endpoint exponent hints
regularize algebraic singularities through a power substitution, and a
recursive bisection fallback covers integrands the transformation alone
cannot settle.  Semi-infinite rays are mapped onto (0, 1), with an
optional breakpoint partition (plus alternating-series acceleration)
for oscillatory kernels.

Integrands receive a numpy array of abscissae and must return an array
of the same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import DomainError, EvaluationError

Integrand = Callable[[np.ndarray], np.ndarray]

_T_MAX = 6.1
_MAX_LEVEL = 10
_MIN_DELTA = 1e-290       # nodes closer to an endpoint than this are dropped
_TINY_FACTOR = 1e-280     # |f| below this is treated as exact zero on mapped tails


@dataclass(frozen=True)
class QuadSpec:
    """Tolerances and endpoint metadata for one integration request."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_depth: int = 8
    left_exponent_hint: float = 0.0
    right_exponent_hint: float = 0.0

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.left_exponent_hint <= -1 or self.right_exponent_hint <= -1:
            raise DomainError("exponent hints must exceed -1 (integrable singularity)")
        if self.max_depth < 0:
            raise DomainError("max_depth must be non-negative")

    def with_hints(self, left: float = 0.0, right: float = 0.0) -> "QuadSpec":
        return QuadSpec(self.abs_tol, self.rel_tol, self.max_depth, left, right)

    def tightened(self, factor: float) -> "QuadSpec":
        return QuadSpec(self.abs_tol * factor, self.rel_tol * factor,
                        self.max_depth, self.left_exponent_hint,
                        self.right_exponent_hint)


@dataclass
class EvalResult:
    """Value plus error estimate and convergence diagnostics."""

    value: float
    error_estimate: float
    evaluations: int
    converged: bool

    def __add__(self, other: "EvalResult") -> "EvalResult":
        return EvalResult(self.value + other.value,
                          self.error_estimate + other.error_estimate,
                          self.evaluations + other.evaluations,
                          self.converged and other.converged)


def _seal(value: float, err: float, evals: int, converged: bool,
          spec: QuadSpec) -> EvalResult:
    # the EvalResult contract: converged implies the estimate meets the spec
    ok = converged and err <= max(spec.abs_tol, spec.rel_tol * abs(value))
    return EvalResult(value, err, evals, ok)


def _node_block(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """New tanh-sinh nodes introduced at this refinement level.

    Returns (delta, sign, weight) with delta = 1 - |u| computed without
    cancellation; weights exclude the step factor h.
    """
    if level == 0:
        t = np.arange(-math.floor(_T_MAX), math.floor(_T_MAX) + 1, dtype=float)
    else:
        h = 2.0 ** (-level)
        t = np.arange(-math.floor(_T_MAX / h), math.floor(_T_MAX / h) + 1, dtype=float)
        t = t[t % 2 != 0] * h
    s = 0.5 * math.pi * np.sinh(t)
    sa = np.abs(s)
    e = np.exp(-2.0 * sa)
    delta = 2.0 * e / (1.0 + e)
    weight = 0.5 * math.pi * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2
    keep = (delta > _MIN_DELTA) & (weight > _MIN_DELTA)
    return delta[keep], np.sign(t[keep]), weight[keep]


_NODE_CACHE: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def _nodes(level: int):
    block = _NODE_CACHE.get(level)
    if block is None:
        block = _node_block(level)
        _NODE_CACHE[level] = block
    return block


def _tanh_sinh(f: Integrand, a: float, b: float, abs_tol: float,
               rel_tol: float) -> tuple[float, float, int, bool]:
    half = 0.5 * (b - a)
    running = 0.0
    evals = 0
    prev = None
    err = math.inf
    for level in range(_MAX_LEVEL + 1):
        delta, sign, weight = _nodes(level)
        x = np.where(sign < 0, a + half * delta, b - half * delta)
        # extreme nodes can round onto an endpoint; their weight is negligible
        alive = (x > a) & (x < b)
        x, w = x[alive], weight[alive]
        fx = np.asarray(f(x), dtype=float)
        if fx.shape != x.shape:
            raise EvaluationError("integrand returned wrong shape")
        if not np.all(np.isfinite(fx)):
            bad = x[~np.isfinite(fx)][0]
            raise EvaluationError(f"integrand returned a non-finite value at x={bad!r}")
        evals += x.size
        running += float(np.dot(w, fx))
        estimate = half * 2.0 ** (-level) * running
        if prev is not None and level >= 2:
            err = abs(estimate - prev)
            if err <= max(abs_tol, rel_tol * abs(estimate)):
                return estimate, max(err, abs(estimate) * 1e-16), evals, True
        prev = estimate
    return prev, err, evals, False


def _integrate_core(f: Integrand, a: float, b: float, abs_tol: float,
                    rel_tol: float, depth: int) -> tuple[float, float, int, bool]:
    value, err, evals, ok = _tanh_sinh(f, a, b, abs_tol, rel_tol)
    if ok or depth <= 0:
        return value, err, evals, ok
    mid = 0.5 * (a + b)
    lv, le, ln, lok = _integrate_core(f, a, mid, abs_tol / 2, rel_tol, depth - 1)
    rv, re, rn, rok = _integrate_core(f, mid, b, abs_tol / 2, rel_tol, depth - 1)
    return lv + rv, le + re, evals + ln + rn, lok and rok


def _substituted_left(f: Integrand, a: float, b: float, sigma: float) -> tuple[Integrand, float, float]:
    # y = a + u**p turns (y-a)**sigma * smooth into a regular integrand
    p = 1.0 / (1.0 + sigma)

    def g(u: np.ndarray) -> np.ndarray:
        d = u ** p
        y = a + d
        out = np.zeros_like(u)
        live = (d > 0) & (y > a)
        if np.any(live):
            out[live] = p * u[live] ** (p - 1.0) * f(y[live])
        return out

    return g, p, (b - a) ** (1.0 / p)


def _substituted_right(f: Integrand, a: float, b: float, sigma: float) -> tuple[Integrand, float, float]:
    p = 1.0 / (1.0 + sigma)

    def g(u: np.ndarray) -> np.ndarray:
        d = u ** p
        y = b - d
        out = np.zeros_like(u)
        live = (d > 0) & (y < b)
        if np.any(live):
            out[live] = p * u[live] ** (p - 1.0) * f(y[live])
        return out

    return g, p, (b - a) ** (1.0 / p)


def _representability_wall(g: Integrand, endpoint: float, p: float,
                           upper: float) -> float:
    """Mass of the sliver where offsets from a singular endpoint round away.

    Below u_wall the original abscissa collapses onto the endpoint, so
    that mass cannot be seen by pointwise evaluation; it is charged to
    the error estimate instead of being silently dropped.
    """
    if endpoint == 0.0:
        return 0.0
    u_wall = (2.3e-16 * abs(endpoint)) ** (1.0 / p)
    if u_wall <= 0.0 or u_wall >= upper:
        return 0.0
    probe = np.asarray(g(np.asarray([min(2.0 * u_wall, 0.5 * upper)])))
    amp = float(np.abs(probe[0]))
    return amp * u_wall


def integrate_finite(f: Integrand, a: float, b: float, spec: QuadSpec) -> EvalResult:
    """Integrate f over the finite interval (a, b).

    Endpoint singularities no worse than the exponent hints in ``spec``
    are regularized before the double-exponential pass.
    """
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b) and b > a):
        raise DomainError(f"invalid finite interval ({a}, {b})")
    left = min(spec.left_exponent_hint, 0.0)
    right = min(spec.right_exponent_hint, 0.0)

    if left < 0.0 and right < 0.0:
        mid = 0.5 * (a + b)
        half_spec = spec.tightened(0.5)
        res_l = integrate_finite(f, a, mid, half_spec.with_hints(left, 0.0))
        res_r = integrate_finite(f, mid, b, half_spec.with_hints(0.0, right))
        out = res_l + res_r
        return _seal(out.value, out.error_estimate, out.evaluations, out.converged, spec)

    wall = 0.0
    if left < 0.0:
        g, p, hi = _substituted_left(f, a, b, left)
        wall = _representability_wall(g, a, p, hi)
        lo = 0.0
    elif right < 0.0:
        g, p, hi = _substituted_right(f, a, b, right)
        wall = _representability_wall(g, b, p, hi)
        lo = 0.0
    else:
        g, lo, hi = f, a, b

    value, err, evals, ok = _integrate_core(g, lo, hi, spec.abs_tol,
                                            spec.rel_tol, spec.max_depth)
    return _seal(value, err + wall, evals, ok, spec)


def _mapped_tail(f: Integrand, a: float) -> Integrand:
    # x = a + t/(1-t) pulls (a, inf) onto (0, 1)
    def g(t: np.ndarray) -> np.ndarray:
        out = np.zeros_like(t)
        onem = 1.0 - t
        with np.errstate(all="ignore"):
            x = a + t / onem
        # nodes whose abscissa overflows carry no recoverable mass
        reach = (onem > 0.0) & np.isfinite(x)
        if not np.any(reach):
            return out
        fx = np.asarray(f(x[reach]), dtype=float)
        if np.any(np.isnan(fx)):
            raise EvaluationError("integrand returned NaN on the mapped tail")
        o = onem[reach]
        live = np.abs(fx) > _TINY_FACTOR * o * o
        vals = np.zeros_like(o)
        with np.errstate(all="ignore"):
            vals[live] = fx[live] / (o[live] * o[live])
        out[reach] = vals
        return out

    return g


def integrate_semi_infinite(f: Integrand, a: float, spec: QuadSpec,
                            breakpoints: Iterable[float] | None = None) -> EvalResult:
    """Integrate f over (a, inf).

    Monotone-decay integrands go through the rational map onto (0, 1).
    Oscillatory integrands supply ``breakpoints`` (an increasing sequence,
    typically consecutive kernel zeros); panels are then summed with a
    shrink-stopping rule and alternating-series acceleration.
    """
    a = float(a)
    if not math.isfinite(a):
        raise DomainError("lower limit must be finite")
    if breakpoints is None:
        g = _mapped_tail(f, a)
        return integrate_finite(g, 0.0, 1.0, spec.with_hints(spec.left_exponent_hint, 0.0))
    return _integrate_partitioned(f, a, iter(breakpoints), spec)


def _wynn_epsilon(partials: list[float]) -> tuple[float, float]:
    """Shanks acceleration of a partial-sum sequence via the epsilon table."""
    n = len(partials)
    col_prev = [0.0] * (n + 1)
    col = list(partials)
    best = partials[-1]
    prev_best = partials[-2] if n >= 2 else partials[-1]
    j = 0
    while len(col) >= 2:
        nxt = []
        for i in range(len(col) - 1):
            diff = col[i + 1] - col[i]
            if abs(diff) < 1e-300:
                return col[i + 1], abs(best - prev_best)
            nxt.append(col_prev[i + 1] + 1.0 / diff)
        col_prev, col = col, nxt
        j += 1
        if j % 2 == 0 and col:
            prev_best, best = best, col[-1]
    return best, abs(best - prev_best)


def _alternating(tail: list[float]) -> bool:
    signs = [math.copysign(1.0, c) for c in tail if c != 0.0]
    return len(signs) >= 6 and all(signs[i] != signs[i + 1]
                                   for i in range(len(signs) - 1))


def _integrate_partitioned(f: Integrand, a: float, points: Iterator[float],
                           spec: QuadSpec) -> EvalResult:
    panel_spec = QuadSpec(spec.abs_tol / 10.0, spec.rel_tol / 10.0, spec.max_depth)
    lo = a
    contributions: list[float] = []
    err = 0.0
    evals = 0
    converged_panels = True
    small = 0
    tail_ok = False
    accel_value: float | None = None
    accel_delta = math.inf
    for hi in points:
        if hi <= lo:
            continue
        res = integrate_finite(f, lo, hi, panel_spec)
        contributions.append(res.value)
        err += res.error_estimate
        evals += res.evaluations
        converged_panels = converged_panels and res.converged
        lo = hi
        if abs(res.value) < spec.abs_tol / 10.0:
            small += 1
            if small >= 3:
                tail_ok = True
                break
        else:
            small = 0
        n = len(contributions)
        if n >= 12 and n % 4 == 0 and _alternating(contributions[-6:]):
            partials = list(np.cumsum(contributions)[-14:])
            accel_value, accel_delta = _wynn_epsilon(partials)
            bound = max(spec.abs_tol, spec.rel_tol * abs(accel_value))
            if accel_delta <= bound / 2.0:
                tail_ok = True
                break
        if n >= 500:
            break

    total = math.fsum(contributions)
    if accel_value is not None and _alternating(contributions[-6:]):
        if abs(accel_value - total) < 10.0 * max(abs(contributions[-1]), spec.abs_tol):
            total = accel_value
            err = max(err, accel_delta)
    return _seal(total, err, evals, converged_panels and tail_ok, spec)
