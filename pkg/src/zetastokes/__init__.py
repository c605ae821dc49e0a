"""Exponentially improved Hurwitz zeta expansion and Stokes multipliers.

High-precision evaluation of the large-a expansion of
Z(s,a) = Gamma(s)(zeta(s,a) - a^(-s)/2 - a^(1-s)/(s-1)) with terminant
remainders that make the expansion exact, plus extraction of the Stokes
multipliers S_n(theta) of the periodic zeta function near the positive
imaginary a-axis, where two parallel Stokes lines produce a dip-shaped
double transition.
"""

from .errors import (ConvergenceError, DivergenceError, DomainError,
                     IllConditionedError, InsufficientPrecisionError,
                     PoleError, TailBoundError, ZetaError)
from .expansion import (TruncationPlan, GeometryPack, a_r_coefficient,
                        optimal_plan, optimal_truncation, remainder_rk,
                        script_r_k, z_equal_truncation, z_improved)
from .hp import (HPComplex, PrecisionContext, RayComplex, bernoulli_even,
                 hurwitz_zeta_integer, zeta_even)
from .oracle import (ZetaPoint, f_tilde_reference, hurwitz_zeta_direct,
                     periodic_zeta_direct, z_reference)
from .stokes import (MinimumResult, MultiplierSample, erf_approx,
                     find_minimum, stokes_multiplier, sweep)
from .terminant import (TerminantQuery, c_of_phi, reduce_arg, terminant,
                        terminant_asymptotic, upper_gamma)
from .validate import ValidationReport, run_validation

__version__ = "1.0.0"

__all__ = [
    "ConvergenceError", "DivergenceError", "DomainError",
    "IllConditionedError", "InsufficientPrecisionError", "PoleError",
    "TailBoundError", "ZetaError",
    "TruncationPlan", "GeometryPack", "a_r_coefficient", "optimal_plan",
    "optimal_truncation", "remainder_rk", "script_r_k",
    "z_equal_truncation", "z_improved",
    "HPComplex", "PrecisionContext", "RayComplex", "bernoulli_even",
    "hurwitz_zeta_integer", "zeta_even",
    "ZetaPoint", "f_tilde_reference", "hurwitz_zeta_direct",
    "periodic_zeta_direct", "z_reference",
    "MinimumResult", "MultiplierSample", "erf_approx", "find_minimum",
    "stokes_multiplier", "sweep",
    "TerminantQuery", "c_of_phi", "reduce_arg", "terminant",
    "terminant_asymptotic", "upper_gamma",
    "ValidationReport", "run_validation",
]
