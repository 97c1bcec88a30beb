"""Scalar special functions used by every kernel and transform symbol.

All evaluators accept either a scalar or a numpy array for the main
argument and return matching shape.  Parameters are scalars.  Everything
here is pure and reentrant; the only module state is a read-only digamma
shortcut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln, gammasgn, psi, rgamma, jv

from .errors import DomainError, EvaluationError, PoleError

_SERIES_CAP = 10_000
_SERIES_EPS = 1e-16
# below this distance, c - a - b is snapped to an integer and the
# logarithmic connection expansion is used
_INTEGER_SNAP = 1e-9


@dataclass(frozen=True)
class GammaRatio:
    """Ratio of gamma products: prod Gamma(numerator) / prod Gamma(denominator)."""

    numerator: tuple[float, ...]
    denominator: tuple[float, ...]

    def __init__(self, numerator: Sequence[float], denominator: Sequence[float]):
        object.__setattr__(self, "numerator", tuple(float(v) for v in numerator))
        object.__setattr__(self, "denominator", tuple(float(v) for v in denominator))


@dataclass(frozen=True)
class WrightParams:
    """Indices (gamma, mu, lambda) of the generalized Bessel-type series J^mu_{gamma,lambda}."""

    gamma: float
    mu: float
    lam: float

    def __post_init__(self):
        if not (self.mu > 0):
            raise DomainError(f"wright series requires mu > 0, got {self.mu}")


@dataclass(frozen=True)
class MittagLefflerParams:
    """Multi-index Mittag-Leffler data: exponent slopes rho_i and shifts mu_i."""

    rho: tuple[float, ...]
    mu: tuple[float, ...]

    def __init__(self, rho: Sequence[float], mu: Sequence[float]):
        rho = tuple(float(v) for v in rho)
        mu = tuple(float(v) for v in mu)
        if len(rho) != len(mu) or not rho:
            raise DomainError("rho and mu must be non-empty lists of equal length")
        if any(r <= 0 for r in rho):
            raise DomainError("all exponent slopes must be positive")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "mu", mu)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= _INTEGER_SNAP and abs(x - round(x)) < _INTEGER_SNAP


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"log_gamma requires finite input, got {x}")
    if x <= 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return float(gammaln(x))


def gamma_ratio(r: GammaRatio) -> float:
    """Evaluate a gamma-product ratio with explicit sign and pole bookkeeping.

    Identical numerator/denominator arguments cancel exactly before any
    pole test, so e.g. Gamma[{x};{x}] is 1.0 even at a pole.  A surviving
    pole in a denominator argument alone gives exact 0; a surviving pole
    in a numerator raises PoleError.
    """
    num = list(r.numerator)
    den = list(r.denominator)
    for v in tuple(num):
        if v in den:
            num.remove(v)
            den.remove(v)
    for i, v in enumerate(num):
        if _is_nonpositive_integer(v):
            raise PoleError(v, i)
    if any(_is_nonpositive_integer(v) for v in den):
        return 0.0
    log_total = 0.0
    sign = 1.0
    for v in num:
        log_total += gammaln(v)
        sign *= gammasgn(v)
    for v in den:
        log_total -= gammaln(v)
        sign *= gammasgn(v)
    return float(sign * math.exp(log_total))


def _as_array(z) -> tuple[np.ndarray, bool]:
    scalar = np.isscalar(z) or getattr(z, "ndim", 1) == 0
    return np.atleast_1d(np.asarray(z, dtype=float)), scalar


def _gauss_series(a: float, b: float, c: float, z: np.ndarray,
                  cap: int = _SERIES_CAP) -> np.ndarray:
    """Direct Gauss series; converges for |z| < 1, fast for z <= 0.5."""
    total = np.ones_like(z)
    term = np.ones_like(z)
    quiet = 0
    for k in range(cap):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
        total = total + term
        if np.max(np.abs(term)) <= _SERIES_EPS * max(np.max(np.abs(total)), 1e-300):
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
    raise EvaluationError("hypergeometric series did not converge")


def _terminating_series(a: float, b: float, c: float, z: np.ndarray) -> np.ndarray:
    n = int(-round(min(
        a if _is_nonpositive_integer(a) else 0.0,
        b if _is_nonpositive_integer(b) else 0.0,
    )))
    total = np.ones_like(z)
    term = np.ones_like(z)
    for k in range(n):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
        total = total + term
    return total


def _connection_generic(a: float, b: float, c: float, w: np.ndarray,
                        s: float) -> np.ndarray:
    # two-term expansion around z = 1 for non-integer s = c - a - b
    c1 = gamma_ratio(GammaRatio((c, s), (c - a, c - b)))
    c2 = gamma_ratio(GammaRatio((c, -s), (a, b)))
    out = np.zeros_like(w)
    if c1 != 0.0:
        out = out + c1 * _gauss_series(a, b, 1.0 - s, w)
    if c2 != 0.0:
        out = out + c2 * np.power(w, s) * _gauss_series(c - a, c - b, 1.0 + s, w)
    return out


def _connection_log(a: float, b: float, c: float, w: np.ndarray,
                    m: int, cap: int = _SERIES_CAP) -> np.ndarray:
    """Expansion around z = 1 when c - a - b is the integer m (log-bearing)."""
    lnw = np.log(w)
    if m >= 0:
        # finite part: Gamma(m) Gamma(a+b+m) / (Gamma(a+m) Gamma(b+m)) * sum_{n<m}
        out = np.zeros_like(w)
        if m >= 1:
            c1 = gamma_ratio(GammaRatio((float(m), c), (a + m, b + m)))
            if c1 != 0.0:
                term = np.ones_like(w)
                fin = np.ones_like(w)
                for n in range(m - 1):
                    term = term * ((a + n) * (b + n) / ((n + 1.0) * (n + 1.0 - m))) * w
                    fin = fin + term
                out = out + c1 * fin
        c2 = gamma_ratio(GammaRatio((c,), (a, b))) * (-1.0) ** m
        if c2 != 0.0:
            # u_n = (a+m)_n (b+m)_n / (n! (n+m)!), bracket carries log and digammas
            u = 1.0 / math.factorial(m)
            wpow = np.power(w, m)
            total = np.zeros_like(w)
            quiet = 0
            for n in range(cap):
                bracket = (lnw - psi(n + 1.0) - psi(n + m + 1.0)
                           + psi(a + n + m) + psi(b + n + m))
                add = u * wpow * bracket
                total = total + add
                if np.max(np.abs(add)) <= _SERIES_EPS * max(np.max(np.abs(total)), 1e-300):
                    quiet += 1
                    if quiet >= 3:
                        break
                else:
                    quiet = 0
                u *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0))
                wpow = wpow * w
            out = out - c2 * total
        return out
    # c = a + b - mm with mm >= 1
    mm = -m
    out = np.zeros_like(w)
    c1 = gamma_ratio(GammaRatio((float(mm), c), (a, b)))
    if c1 != 0.0:
        term = np.ones_like(w)
        fin = np.ones_like(w)
        for n in range(mm - 1):
            term = term * ((a - mm + n) * (b - mm + n) / ((n + 1.0) * (n + 1.0 - mm))) * w
            fin = fin + term
        out = out + c1 * np.power(w, -float(mm)) * fin
    c2 = gamma_ratio(GammaRatio((c,), (a - mm, b - mm))) * (-1.0) ** mm
    if c2 != 0.0:
        u = 1.0 / math.factorial(mm)
        wpow = np.ones_like(w)
        total = np.zeros_like(w)
        quiet = 0
        for n in range(_SERIES_CAP):
            bracket = (lnw - psi(n + 1.0) - psi(n + mm + 1.0)
                       + psi(a + n) + psi(b + n))
            add = u * wpow * bracket
            total = total + add
            if np.max(np.abs(add)) <= _SERIES_EPS * max(np.max(np.abs(total)), 1e-300):
                quiet += 1
                if quiet >= 3:
                    break
            else:
                quiet = 0
            u *= (a + n) * (b + n) / ((n + 1.0) * (n + mm + 1.0))
            wpow = wpow * w
        out = out - c2 * total
    return out


def _validate_hyp_params(a: float, b: float, c: float) -> None:
    if not all(math.isfinite(v) for v in (a, b, c)):
        raise DomainError("hypergeometric parameters must be finite")
    if _is_nonpositive_integer(c):
        raise DomainError(f"hypergeometric c parameter at a pole: {c}")


def hyp2f1(a: float, b: float, c: float, z) -> float | np.ndarray:
    """Gauss hypergeometric function for real parameters and z in [0, 1).

    Direct series for z <= 0.5, connection formula in powers of 1 - z
    above, including the logarithmic case when c - a - b is an integer.
    """
    a, b, c = float(a), float(b), float(c)
    _validate_hyp_params(a, b, c)
    zv, scalar = _as_array(z)
    if not np.all(np.isfinite(zv)):
        raise DomainError("hypergeometric argument must be finite")
    if np.any(zv < 0.0) or np.any(zv >= 1.0):
        raise DomainError("hypergeometric argument must lie in [0, 1)")

    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        out = _terminating_series(a, b, c, zv)
        return float(out[0]) if scalar else out

    out = np.empty_like(zv)
    far = zv <= 0.5
    if np.any(far):
        out[far] = _gauss_series(a, b, c, zv[far])
    near = ~far
    if np.any(near):
        out[near] = _near_one(a, b, c, 1.0 - zv[near])
    return float(out[0]) if scalar else out


def _near_one(a: float, b: float, c: float, w: np.ndarray) -> np.ndarray:
    s = c - a - b
    if abs(s - round(s)) < _INTEGER_SNAP:
        return _connection_log(a, b, c, w, int(round(s)))
    return _connection_generic(a, b, c, w, s)


def hyp2f1_one_minus(a: float, b: float, c: float, w) -> float | np.ndarray:
    """Gauss hypergeometric function evaluated at z = 1 - w, for w in (0, 1].

    Passing the complement directly keeps full accuracy when z is so
    close to 1 that 1 - z would round away (operator kernels deep in
    their tails live there).
    """
    a, b, c = float(a), float(b), float(c)
    _validate_hyp_params(a, b, c)
    wv, scalar = _as_array(w)
    if not np.all(np.isfinite(wv)):
        raise DomainError("hypergeometric argument must be finite")
    if np.any(wv <= 0.0) or np.any(wv > 1.0):
        raise DomainError("complement argument must lie in (0, 1]")

    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        out = _terminating_series(a, b, c, 1.0 - wv)
        return float(out[0]) if scalar else out

    out = np.empty_like(wv)
    far = wv >= 0.5
    if np.any(far):
        out[far] = _gauss_series(a, b, c, 1.0 - wv[far])
    near = ~far
    if np.any(near):
        out[near] = _near_one(a, b, c, wv[near])
    return float(out[0]) if scalar else out


def legendre_p(mu: float, lam: float, z) -> float | np.ndarray:
    """Associated Legendre function of the first kind on the ray z > 1.

    Degree lam and order mu are arbitrary reals (excluding the poles of
    the underlying hypergeometric parameters); evaluated through the
    same Gauss series core as the operator kernels.
    """
    mu, lam = float(mu), float(lam)
    zv, scalar = _as_array(z)
    if np.any(zv <= 1.0) or not np.all(np.isfinite(zv)):
        raise DomainError("legendre_p is defined here for z > 1 only")
    with np.errstate(over="ignore"):
        root = np.sqrt((zv - 1.0) * (zv + 1.0))
        s_half = np.where(np.isfinite(root), 1.0 / (zv + root), 0.5 / zv)
    out = _legendre_from_s(mu, lam, s_half)
    return float(out[0]) if scalar else out


def _legendre_from_s(mu: float, lam: float, s_half: np.ndarray) -> np.ndarray:
    """Legendre P of the first kind at argument (s + 1/s)/2 given s in (0, 1)."""
    b = 0.5 - mu
    a = lam + 1.0 - mu
    c = 1.0 - 2.0 * mu
    if _is_nonpositive_integer(c):
        raise DomainError(f"legendre_p parameter pole: order {mu} gives c = {c}")
    w = s_half * s_half
    arg = (1.0 - s_half) * (1.0 + s_half)
    f = hyp2f1_one_minus(a, b, c, w)
    pref = math.exp(gammaln(b + 0.5)) * 2.0 ** (2.0 * b - 1.0)
    return (f / pref) * np.power(arg, b - 0.5) * np.power(s_half, a - b + 0.5)


def bessel_j(order: float, x) -> float | np.ndarray:
    """Bessel function of the first kind J_order(x)."""
    order = float(order)
    xv, scalar = _as_array(x)
    if not math.isfinite(order) or not np.all(np.isfinite(xv)):
        raise DomainError("bessel_j requires finite arguments")
    out = jv(order, xv)
    return float(out[0]) if scalar else out


def wright_j(p: WrightParams, z) -> float | np.ndarray:
    """Generalized Bessel-type series J^mu_{gamma,lambda}(z) for z >= 0.

    Direct summation with term-ratio stopping; a gamma pole in a term's
    denominator contributes a zero term.
    """
    zv, scalar = _as_array(z)
    if np.any(zv < 0.0) or not np.all(np.isfinite(zv)):
        raise DomainError("wright_j implemented for finite z >= 0")
    e0 = p.gamma + 2.0 * p.lam
    if e0 < 0.0 and np.any(zv == 0.0):
        raise DomainError("wright_j diverges at z = 0 when gamma + 2*lambda < 0")
    half = zv / 2.0
    zz = half * half
    wpow = np.power(half, e0)
    total = np.zeros_like(zv)
    quiet = 0
    for m in range(_SERIES_CAP):
        coef = ((-1.0) ** m * rgamma(p.gamma + m * p.mu + p.lam + 1.0)
                * rgamma(p.lam + m + 1.0))
        term = coef * wpow
        total = total + term
        scale = max(np.max(np.abs(total)), 1.0)
        if np.max(np.abs(wpow)) * abs(coef) <= _SERIES_EPS * scale:
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
        wpow = wpow * zz
        if not np.all(np.isfinite(wpow)):
            raise EvaluationError("wright_j series overflow before convergence")
    else:
        raise EvaluationError("wright_j series did not converge")
    return float(total[0]) if scalar else total


def mittag_leffler_multi(p: MittagLefflerParams, z) -> float | np.ndarray:
    """Multi-index Mittag-Leffler series sum_k z^k / prod_i Gamma(mu_i + k*rho_i)."""
    zv, scalar = _as_array(z)
    if not np.all(np.isfinite(zv)):
        raise DomainError("mittag_leffler_multi requires finite z")
    total = np.zeros_like(zv)
    zpow = np.ones_like(zv)
    quiet = 0
    for k in range(_SERIES_CAP):
        coef = 1.0
        for rho_i, mu_i in zip(p.rho, p.mu):
            coef *= rgamma(mu_i + k * rho_i)
        total = total + coef * zpow
        scale = max(np.max(np.abs(total)), 1.0)
        if np.max(np.abs(zpow)) * abs(coef) <= _SERIES_EPS * scale:
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
        zpow = zpow * zv
        if not np.all(np.isfinite(zpow)):
            raise EvaluationError("mittag_leffler_multi series overflow before convergence")
    else:
        raise EvaluationError("mittag_leffler_multi series did not converge")
    return float(total[0]) if scalar else total


class MittagLefflerSeries:
    """Coefficient-cached evaluator for one multi-index Mittag-Leffler function.

    Extends its coefficient table lazily; evaluation is a plain
    polynomial sum, which keeps nested-quadrature inner loops cheap.
    """

    def __init__(self, p: MittagLefflerParams):
        self.params = p
        self._coef: list[float] = []

    def _extend(self, upto: int):
        for k in range(len(self._coef), upto):
            c = 1.0
            for rho_i, mu_i in zip(self.params.rho, self.params.mu):
                c *= rgamma(mu_i + k * rho_i)
            self._coef.append(c)

    def __call__(self, z: np.ndarray) -> np.ndarray:
        zv = np.asarray(z, dtype=float)
        total = np.zeros_like(zv)
        zpow = np.ones_like(zv)
        quiet = 0
        k = 0
        while True:
            if k >= len(self._coef):
                self._extend(k + 64)
            coef = self._coef[k]
            total = total + coef * zpow
            scale = max(np.max(np.abs(total)), 1.0)
            if np.max(np.abs(zpow)) * abs(coef) <= _SERIES_EPS * scale:
                quiet += 1
                if quiet >= 3:
                    return total
            else:
                quiet = 0
            zpow = zpow * zv
            k += 1
            if k >= _SERIES_CAP or not np.all(np.isfinite(zpow)):
                raise EvaluationError("Mittag-Leffler series blow-up: argument too large")
