"""Steady-state radial profiles of a space-fractional reaction-diffusion system."""

from ._backend import BACKEND
from .dequad import (QuadratureConfig, QuadratureResult, de_finite, de_oscillatory,
                     de_semiinfinite)
from .errors import (CalibrationError, ConvergenceError, DomainError, EvaluationError,
                     FraclapError, PoleError, RangeError, UsageError)
from .hankel import HankelConfig, hankel_partitioned, wynn_epsilon
from .mellin import hfun_point_solution, mellin_kernel_C
from .model import (Method, ModelParams, RadialProfile, asymptotic_tail, calibrate_ring,
                    profile, solve_full, solve_integer, solve_point, solve_ring)
from .specfun import bessel_i, bessel_j, bessel_j_zero, bessel_k, gamma

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "QuadratureConfig", "QuadratureResult", "de_finite", "de_oscillatory",
    "de_semiinfinite", "CalibrationError", "ConvergenceError", "DomainError",
    "EvaluationError", "FraclapError", "PoleError", "RangeError", "UsageError",
    "HankelConfig", "hankel_partitioned", "wynn_epsilon", "hfun_point_solution",
    "mellin_kernel_C", "Method", "ModelParams", "RadialProfile", "asymptotic_tail",
    "calibrate_ring", "profile", "solve_full", "solve_integer", "solve_point",
    "solve_ring", "bessel_i", "bessel_j", "bessel_j_zero", "bessel_k", "gamma",
]
