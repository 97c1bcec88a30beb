"""Explicit fractional powers of the Bessel differential operator.

Four endpoint variants of the fractional integral operator with
hypergeometric and Legendre kernels, exact power-function oracles,
Mellin/Hankel/Wright-kernel transforms, the resolvent, and generalized
Taylor formulas, all backed by adaptive double-exponential quadrature.
"""

from .errors import DomainError, EvaluationError, FracBesselError, PoleError
from .functions import (Algebraic, Compact, EXPONENTIAL, Exponential, NO_DECAY,
                        NoDecay, SampleFunction, bessel_profile, constant,
                        exponential, from_power_polynomial, gaussian,
                        gaussian_times_power, indicator, make_function,
                        power_function)
from .operators import (KernelMethod, LEFT_ZERO, LeftFinite, LeftZero,
                        OperatorParams, RIGHT_INFINITE, RightFinite,
                        RightInfinite, alpha_one_apply, frac_derivative,
                        frac_integral, kernel_value)
from .powers import (FracPowerSide, PowerPolynomial, RLSide, bessel_apply_poly,
                     clifford_apply_poly, frac_power_coefficient,
                     rl_power_closed_form)
from .quadrature import (EvalResult, QuadSpec, integrate_finite,
                         integrate_semi_infinite)
from .resolvent import ResolventParams, neumann_oracle, resolvent_apply
from .special import (GammaRatio, MittagLefflerParams, MittagLefflerSeries,
                      WrightParams, bessel_j, gamma_ratio, hyp2f1,
                      hyp2f1_one_minus, legendre_p, log_gamma,
                      mittag_leffler_multi, wright_j)
from .taylor import (TaylorData, bessel_data_from_polynomial,
                     clifford_data_from_polynomial, taylor_remainder_bessel,
                     taylor_remainder_clifford,
                     taylor_remainder_clifford_weighted, taylor_sum_bessel,
                     taylor_sum_clifford)
from .transforms import (HankelPoint, MellinPoint, hankel_transform,
                         mellin_transform, mellin_symbol, r_transform)

__version__ = "0.1.0"
