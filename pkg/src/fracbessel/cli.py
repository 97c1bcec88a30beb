"""Command-line surface: operator evaluation on grids, identity checks,
and machine-readable CSV/JSON reports.

Configuration comes from flags or a single JSON config file; flags
override file values.  Exit codes: 0 success, 1 numeric failure,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any

import numpy as np

from .errors import DomainError, FracBesselError
from .functions import (SampleFunction, constant, from_power_polynomial,
                        gaussian, gaussian_times_power, make_function,
                        power_function)
from .operators import (KernelMethod, LEFT_ZERO, LeftFinite, OperatorParams,
                        RIGHT_INFINITE, RightFinite, Variant, frac_integral,
                        kernel_value)
from .powers import (FracPowerSide, PowerPolynomial, bessel_apply_poly,
                     frac_power_coefficient)
from .quadrature import QuadSpec
from .resolvent import ResolventParams, neumann_oracle, resolvent_apply
from .special import GammaRatio, gamma_ratio
from .taylor import bessel_data_from_polynomial, taylor_remainder_bessel, taylor_sum_bessel
from .transforms import hankel_transform, mellin_symbol, mellin_transform, r_transform

EVAL_COLUMNS = ("x", "value", "error_estimate", "evaluations", "converged")
CHECK_COLUMNS = ("identity", "lhs", "rhs", "abs_diff", "rel_diff", "pass")


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(records: list[dict], columns: tuple[str, ...], output: str, out_path: str | None):
    if output == "json":
        text = json.dumps(records, indent=2)
    else:
        lines = [",".join(columns)]
        for rec in records:
            lines.append(",".join(_fmt(rec[c]) for c in columns))
        text = "\n".join(lines)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _check_record(identity: str, lhs: float, rhs: float, tol: float) -> dict:
    abs_diff = abs(lhs - rhs)
    rel_diff = abs_diff / max(abs(lhs), abs(rhs), 1e-300)
    return {"identity": identity, "lhs": lhs, "rhs": rhs,
            "abs_diff": abs_diff, "rel_diff": rel_diff,
            "pass": bool(abs_diff <= tol or rel_diff <= tol)}


class JobConfig:
    """Merged view over config-file values and command-line flags."""

    def __init__(self, args: argparse.Namespace):
        file_values: dict[str, Any] = {}
        if getattr(args, "config", None):
            with open(args.config) as fh:
                file_values = json.load(fh)
            if not isinstance(file_values, dict):
                raise DomainError("config file must hold a JSON object")
        self._file = file_values
        self._args = args

    def get(self, key: str, default: Any = None) -> Any:
        flag = getattr(self._args, key.replace("-", "_"), None)
        if flag is not None:
            return flag
        return self._file.get(key, default)

    def require(self, key: str) -> Any:
        value = self.get(key)
        if value is None:
            raise DomainError(f"missing required option --{key.replace('_', '-')}")
        return value

    def operator(self) -> OperatorParams:
        nu = float(self.require("nu"))
        alpha = float(self.require("alpha"))
        return OperatorParams(nu, alpha, self.variant())

    def variant(self) -> Variant:
        name = str(self.get("variant", "left-zero"))
        if name == "right-finite":
            return RightFinite(float(self.require("endpoint")))
        if name == "left-finite":
            return LeftFinite(float(self.require("endpoint")))
        if name == "right-infinite":
            return RIGHT_INFINITE
        if name == "left-zero":
            return LEFT_ZERO
        raise DomainError(f"unknown variant {name!r}")

    def function(self) -> SampleFunction:
        name = str(self.get("function", "constant"))
        raw = self.get("function_params")
        params = json.loads(raw) if isinstance(raw, str) else (raw or {})
        return make_function(name, params)

    def quad_spec(self) -> QuadSpec:
        return QuadSpec(abs_tol=float(self.get("abs_tol", 1e-9)),
                        rel_tol=float(self.get("rel_tol", 1e-9)),
                        max_depth=int(self.get("max_depth", 8)))

    def grid(self) -> np.ndarray:
        x_min = float(self.require("x_min"))
        x_max = float(self.require("x_max"))
        n = int(self.get("n_points", 1))
        if n < 1 or not (x_min <= x_max) or not math.isfinite(x_min) or not math.isfinite(x_max):
            raise DomainError(f"malformed grid ({x_min}, {x_max}, {n})")
        return np.linspace(x_min, x_max, n)

    def method(self) -> KernelMethod:
        name = str(self.get("method", "hypergeometric"))
        for m in KernelMethod:
            if m.value.startswith(name):
                return m
        raise DomainError(f"unknown kernel method {name!r}")

    def output(self) -> str:
        out = str(self.get("output", "csv"))
        if out not in ("csv", "json"):
            raise DomainError(f"unknown output format {out!r}")
        return out

    def tolerance(self, default: float) -> float:
        return float(self.get("check_tol", default))


def _validate_grid_domain(p: OperatorParams, grid: np.ndarray) -> None:
    if np.any(grid <= 0):
        raise DomainError("grid points must be positive")
    if isinstance(p.variant, RightFinite) and np.any(grid >= p.variant.b):
        raise DomainError("grid extends past the right endpoint")
    if isinstance(p.variant, LeftFinite) and np.any(grid <= p.variant.a):
        raise DomainError("grid extends below the left endpoint")


def cmd_eval(cfg: JobConfig) -> tuple[list[dict], tuple[str, ...], bool]:
    p = cfg.operator()
    f = cfg.function()
    spec = cfg.quad_spec()
    method = cfg.method()
    grid = cfg.grid()
    _validate_grid_domain(p, grid)
    records = []
    ok = True
    for x in grid:
        res = frac_integral(p, f, float(x), spec, method)
        ok = ok and res.converged
        records.append({"x": float(x), "value": res.value,
                        "error_estimate": res.error_estimate,
                        "evaluations": res.evaluations,
                        "converged": res.converged})
    return records, EVAL_COLUMNS, ok


def cmd_kernel(cfg: JobConfig) -> tuple[list[dict], tuple[str, ...], bool]:
    p = cfg.operator()
    method = cfg.method()
    x = float(cfg.require("x"))
    grid = cfg.grid()
    records = []
    for y in grid:
        value = kernel_value(p, x, float(y), method)
        records.append({"x": float(y), "value": float(value),
                        "error_estimate": 0.0, "evaluations": 1,
                        "converged": True})
    return records, EVAL_COLUMNS, True


def cmd_mellin_check(cfg: JobConfig) -> tuple[list[dict], tuple[str, ...], bool]:
    nu = float(cfg.require("nu"))
    alpha = float(cfg.require("alpha"))
    s = float(cfg.get("s", 1.0))
    f = cfg.function() if cfg.get("function") else gaussian(1.0)
    spec = cfg.quad_spec()
    tol = cfg.tolerance(1e-5)
    p = OperatorParams(nu, alpha, RIGHT_INFINITE)

    def op_eval(x):
        xv = np.atleast_1d(np.asarray(x, dtype=float))
        return np.array([frac_integral(p, f, float(t), spec).value for t in xv])

    opf = SampleFunction(op_eval, decay=f.decay)
    lhs = mellin_transform(opf, s, QuadSpec(tol / 10, tol / 10, spec.max_depth)).value
    rhs = mellin_symbol(nu, alpha, s) * mellin_transform(f, s + 2 * alpha, spec).value
    rec = _check_record("mellin-multiplier", lhs, rhs, tol)
    return [rec], CHECK_COLUMNS, rec["pass"]


def cmd_group_check(cfg: JobConfig) -> tuple[list[dict], tuple[str, ...], bool]:
    nu = float(cfg.require("nu"))
    alpha = float(cfg.require("alpha"))
    beta = float(cfg.get("beta", alpha))
    f = cfg.function() if cfg.get("function") else power_function(1.0)
    spec = cfg.quad_spec()
    tol = cfg.tolerance(1e-6)
    variant = cfg.variant()
    if not isinstance(variant, (type(LEFT_ZERO), type(RIGHT_INFINITE))):
        raise DomainError("group-check runs on the left-zero or right-infinite variants")
    inner = OperatorParams(nu, beta, variant)
    outer = OperatorParams(nu, alpha, variant)
    combined = OperatorParams(nu, alpha + beta, variant)
    grid = cfg.grid()
    records = []
    ok = True
    inner_spec = spec.tightened(0.01)

    def inner_eval(y):
        yv = np.atleast_1d(np.asarray(y, dtype=float))
        return np.array([frac_integral(inner, f, float(t), inner_spec).value for t in yv])

    composed_f = SampleFunction(inner_eval, decay=f.decay,
                                origin_power=f.origin_power + 2 * beta)
    for x in grid:
        lhs = frac_integral(outer, composed_f, float(x), spec).value
        rhs = frac_integral(combined, f, float(x), spec).value
        rec = _check_record(f"index-law-x={x!r}", lhs, rhs, tol)
        ok = ok and rec["pass"]
        records.append(rec)
    return records, CHECK_COLUMNS, ok


def cmd_inverse_check(cfg: JobConfig) -> tuple[list[dict], tuple[str, ...], bool]:
    nu = float(cfg.require("nu"))
    spec = cfg.quad_spec()
    tol = cfg.tolerance(1e-7)
    variant = cfg.variant()
    records = []
    ok = True
    if isinstance(variant, RightFinite):
        b = variant.b
        g = PowerPolynomial([(b ** 4, 0.0), (-2 * b * b, 2.0), (1.0, 4.0)])
        image = from_power_polynomial(bessel_apply_poly(nu, g))
        points = np.linspace(0.2 * b, 0.8 * b, 5)
    elif isinstance(variant, LeftFinite):
        a = variant.a
        g = PowerPolynomial([(a ** 4, 0.0), (-2 * a * a, 2.0), (1.0, 4.0)])
        image = from_power_polynomial(bessel_apply_poly(nu, g))
        points = np.linspace(1.2 * a, 3.0 * a, 5)
    else:
        g = None
        gauss = gaussian(1.0)
        image = SampleFunction(
            lambda y: (4.0 * np.asarray(y) ** 2 - 2.0 - 2.0 * nu) * np.exp(-np.asarray(y) ** 2),
            decay=gauss.decay)
        points = np.linspace(0.5, 2.0, 5)
    p = OperatorParams(nu, 1.0, variant)
    for x in points:
        lhs = frac_integral(p, image, float(x), spec).value
        rhs = float(g(x)) if g is not None else math.exp(-float(x) ** 2)
        rec = _check_record(f"order-one-inverse-x={float(x)!r}", lhs, rhs, tol)
        ok = ok and rec["pass"]
        records.append(rec)
    return records, CHECK_COLUMNS, ok


def cmd_hankel_check(cfg: JobConfig) -> tuple[list[dict], tuple[str, ...], bool]:
    nu = float(cfg.require("nu"))
    alpha = float(cfg.require("alpha"))
    xi = float(cfg.get("xi", 1.0))
    f = cfg.function() if cfg.get("function") else gaussian(1.0)
    spec = cfg.quad_spec()
    tol = cfg.tolerance(1e-4)
    p = OperatorParams(nu, alpha, RIGHT_INFINITE)

    def op_eval(x):
        xv = np.atleast_1d(np.asarray(x, dtype=float))
        return np.array([frac_integral(p, f, float(t), spec).value for t in xv])

    opf = SampleFunction(op_eval, decay=f.decay)
    lhs = hankel_transform(nu, opf, xi, QuadSpec(tol / 10, tol / 10, spec.max_depth)).value
    rhs = xi ** (-2 * alpha) * r_transform(nu, alpha, f, xi, spec).value
    rec = _check_record("hankel-wright", lhs, rhs, tol)
    return [rec], CHECK_COLUMNS, rec["pass"]


def cmd_resolvent(cfg: JobConfig) -> tuple[list[dict], tuple[str, ...], bool]:
    nu = float(cfg.require("nu"))
    alpha = float(cfg.require("alpha"))
    lam = float(cfg.require("lam"))
    terms = int(cfg.get("terms", 8))
    f = cfg.function() if cfg.get("function") else gaussian(1.0)
    spec = cfg.quad_spec()
    grid = cfg.grid()
    p = ResolventParams(OperatorParams(nu, alpha, RIGHT_INFINITE), lam, terms)
    records = []
    ok = True
    for x in grid:
        res = resolvent_apply(p, f, float(x), spec)
        ok = ok and res.converged
        records.append({"x": float(x), "value": res.value,
                        "error_estimate": res.error_estimate,
                        "evaluations": res.evaluations,
                        "converged": res.converged})
    return records, EVAL_COLUMNS, ok


def cmd_taylor(cfg: JobConfig) -> tuple[list[dict], tuple[str, ...], bool]:
    nu = float(cfg.require("nu"))
    anchor = float(cfg.require("anchor"))
    k = int(cfg.get("terms", 2))
    raw = cfg.get("poly", "[[1.0, 4.0]]")
    terms = json.loads(raw) if isinstance(raw, str) else raw
    poly = PowerPolynomial([(float(c), float(e)) for c, e in terms])
    spec = cfg.quad_spec()
    tol = cfg.tolerance(1e-7)
    data = bessel_data_from_polynomial(nu, anchor, k, poly)
    image = poly
    for _ in range(k):
        image = bessel_apply_poly(nu, image)
    grid = cfg.grid()
    if np.any(grid >= anchor) or np.any(grid <= 0):
        raise DomainError("taylor grid must lie strictly inside (0, anchor)")
    records = []
    ok = True
    for x in grid:
        total = taylor_sum_bessel(data, float(x))
        rem = taylor_remainder_bessel(nu, anchor, k, from_power_polynomial(image),
                                      float(x), spec)
        rec = _check_record(f"taylor-reconstruction-x={float(x)!r}",
                            total + rem.value, float(poly(float(x))), tol)
        ok = ok and rec["pass"]
        records.append(rec)
    return records, CHECK_COLUMNS, ok


def cmd_suite(cfg: JobConfig) -> tuple[list[dict], tuple[str, ...], bool]:
    spec = QuadSpec(1e-9, 1e-9)
    records = []

    kappa = frac_power_coefficient(0.0, 0.4, 1.0, FracPowerSide.LEFT_ZERO)
    lhs = frac_integral(OperatorParams(0.0, 0.4, LEFT_ZERO), power_function(1.0), 1.5, spec).value
    records.append(_check_record("nu-zero-reduction", lhs, kappa * 1.5 ** 1.8, 1e-7))

    p = OperatorParams(1.2, 0.6, RightFinite(4.0))
    records.append(_check_record(
        "kernel-methods",
        float(kernel_value(p, 1.0, 2.5, KernelMethod.HYPERGEOMETRIC)),
        float(kernel_value(p, 1.0, 2.5, KernelMethod.LEGENDRE)), 1e-9))

    b = 2.0
    g = PowerPolynomial([(b ** 4, 0.0), (-2 * b * b, 2.0), (1.0, 4.0)])
    lhs = frac_integral(OperatorParams(0.5, 1.0, RightFinite(b)),
                        from_power_polynomial(bessel_apply_poly(0.5, g)), 1.0, spec).value
    records.append(_check_record("order-one-inverse", lhs, float(g(1.0)), 1e-7))

    kappa = frac_power_coefficient(0.7, 0.8, 1.5, FracPowerSide.LEFT_ZERO)
    lhs = frac_integral(OperatorParams(0.7, 0.8, LEFT_ZERO), power_function(1.5), 1.2, spec).value
    records.append(_check_record("power-image", lhs, kappa * 1.2 ** (1.5 + 1.6), 1e-7))

    lhs = mellin_symbol(0.8, 0.4, 1.3) * mellin_symbol(0.8, 0.7, 1.3 + 0.8)
    records.append(_check_record("symbol-index-law", lhs, mellin_symbol(0.8, 1.1, 1.3), 1e-12))

    sub = JobConfig(argparse.Namespace(config=None, nu=0.5, alpha=0.5, s=1.0,
                                       function=None, function_params=None,
                                       abs_tol=1e-8, rel_tol=1e-8, max_depth=8,
                                       check_tol=1e-5))
    rec, _, _ = cmd_mellin_check(sub)
    records.extend(rec)

    rec, _, _ = cmd_hankel_check(JobConfig(argparse.Namespace(
        config=None, nu=0.5, alpha=0.5, xi=1.0, function=None, function_params=None,
        abs_tol=1e-7, rel_tol=1e-7, max_depth=8, check_tol=1e-4)))
    records.extend(rec)

    rp = ResolventParams(OperatorParams(0.5, 1.0, RIGHT_INFINITE), -5.0, 10)
    records.append(_check_record(
        "resolvent-series",
        resolvent_apply(rp, gaussian(1.0), 1.0, QuadSpec(1e-7, 1e-7)).value,
        neumann_oracle(rp, gaussian(1.0), 1.0, QuadSpec(1e-7, 1e-7)).value, 1e-4))

    poly = PowerPolynomial.monomial(1.0, 4.0)
    data = bessel_data_from_polynomial(0.5, 2.0, 3, poly)
    records.append(_check_record("taylor-reconstruction",
                                 taylor_sum_bessel(data, 1.0), float(poly(1.0)), 1e-12))

    ok = all(r["pass"] for r in records)
    return records, CHECK_COLUMNS, ok


_COMMANDS = {
    "eval": cmd_eval,
    "kernel": cmd_kernel,
    "mellin-check": cmd_mellin_check,
    "group-check": cmd_group_check,
    "inverse-check": cmd_inverse_check,
    "hankel-check": cmd_hankel_check,
    "resolvent": cmd_resolvent,
    "taylor": cmd_taylor,
    "suite": cmd_suite,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracbessel",
        description="Fractional Bessel-operator calculator and identity checker")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON config file; flags override its values")
        sp.add_argument("--nu", type=float)
        sp.add_argument("--alpha", type=float)
        sp.add_argument("--beta", type=float)
        sp.add_argument("--variant", choices=["right-finite", "left-finite",
                                              "right-infinite", "left-zero"])
        sp.add_argument("--endpoint", type=float)
        sp.add_argument("--function")
        sp.add_argument("--function-params", dest="function_params",
                        help="JSON object of function parameters")
        sp.add_argument("--x", type=float, help="fixed evaluation point (kernel command)")
        sp.add_argument("--x-min", dest="x_min", type=float)
        sp.add_argument("--x-max", dest="x_max", type=float)
        sp.add_argument("--n-points", dest="n_points", type=int)
        sp.add_argument("--abs-tol", dest="abs_tol", type=float)
        sp.add_argument("--rel-tol", dest="rel_tol", type=float)
        sp.add_argument("--max-depth", dest="max_depth", type=int)
        sp.add_argument("--method", choices=["hypergeometric", "legendre"])
        sp.add_argument("--output", choices=["csv", "json"])
        sp.add_argument("--out", help="write the report to this path instead of stdout")
        sp.add_argument("--s", type=float, help="Mellin variable")
        sp.add_argument("--xi", type=float, help="Hankel variable")
        sp.add_argument("--lam", type=float, help="resolvent spectral parameter")
        sp.add_argument("--terms", type=int, help="series/expansion term count")
        sp.add_argument("--anchor", type=float, help="Taylor anchor point")
        sp.add_argument("--poly", help="JSON [[coef, exponent], ...] for Taylor checks")
        sp.add_argument("--check-tol", dest="check_tol", type=float)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = JobConfig(args)
        records, columns, ok = _COMMANDS[args.command](cfg)
        _emit(records, columns, cfg.output(), cfg.get("out"))
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FracBesselError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
