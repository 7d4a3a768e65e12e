"""Lattice Green functions of the d-dimensional hypercubic lattice.

Computes the local Green function G_d(omega) (nearest-neighbour hopping 1/2,
band [-d, d]) to near machine precision for any real frequency and any
dimension, together with the density of states and a battery of independent
verification oracles.
"""
from .bessel import BesselPair, bessel_i0, bessel_k0, bessel_scaled
from .coefficients import CoefficientTable, PhasedInteger, coefficient_table, staircase_j
from .errors import (
    BesselOverflowError,
    DivergentIntegralError,
    DomainError,
    TruncationTooCoarseError,
)
from .green import GreenResult, dos, green_local, green_sweep
from .integrand import IntegrandSpec, TermSpec, build_integrand, eval_integrand, tail_class
from .oracles import (
    MomentTable,
    bessel_j_fourier,
    bz_bruteforce,
    dos_convolution,
    dos_moment,
    dos_normalization,
    g1_closed_form,
    laurent_green,
    laurent_truncation_bound,
    lorentz_broadened,
    moments,
)
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    integrate_finite,
    integrate_semiinfinite,
)

__all__ = [
    "BesselPair",
    "bessel_i0",
    "bessel_k0",
    "bessel_scaled",
    "CoefficientTable",
    "PhasedInteger",
    "coefficient_table",
    "staircase_j",
    "IntegrandSpec",
    "TermSpec",
    "build_integrand",
    "eval_integrand",
    "tail_class",
    "QuadratureConfig",
    "QuadratureResult",
    "integrate_finite",
    "integrate_semiinfinite",
    "MomentTable",
    "moments",
    "laurent_green",
    "laurent_truncation_bound",
    "g1_closed_form",
    "dos_convolution",
    "dos_normalization",
    "dos_moment",
    "bz_bruteforce",
    "lorentz_broadened",
    "bessel_j_fourier",
    "GreenResult",
    "green_local",
    "green_sweep",
    "dos",
    "DomainError",
    "BesselOverflowError",
    "DivergentIntegralError",
    "TruncationTooCoarseError",
]

__version__ = "0.1.0"
