"""Overflow-safe assembly of the Bessel-product integrand for given (d, omega).

Writing K = kbar e^{-tau} and I = ibar e^{+tau}, each product
K^{d-m} I^m e^{-/+ omega tau} collapses to kbar^{d-m} ibar^m e^{q tau} with a
single analytically-formed net exponent q = 2m - d -/+ omega, which is always
<= 0 (and exactly 0 only at a van Hove frequency).  Exponentials are never
applied to K and I separately, so neither overflow nor underflow can occur
before the final, decaying factor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bessel import i0e, k0e
from .coefficients import PhasedInteger, coefficient_table, staircase_j
from .errors import DomainError

__all__ = [
    "TermSpec",
    "IntegrandSpec",
    "TailKind",
    "TailClass",
    "build_integrand",
    "eval_integrand",
    "tail_class",
    "VAN_HOVE_SNAP_TOL",
    "LOG_SPACE_POWER",
]

# omega is treated as sitting exactly on a van Hove frequency when closer
# than this; an exactly-zero exponent switches the tail handling, and the
# tolerance matches the representation error of the input.
VAN_HOVE_SNAP_TOL = 1e-13

# Bessel powers at or above this order are accumulated in log space.
LOG_SPACE_POWER = 30


@dataclass(frozen=True)
class TermSpec:
    """One kbar^{d-m} ibar^m e^{exponent*tau} term of the assembled integrand."""

    m: int
    coeff: PhasedInteger
    sign: int
    exponent: float


@dataclass(frozen=True)
class IntegrandSpec:
    """Fully assembled integrand for one (d, omega) evaluation."""

    d: int
    omega: float
    j: int
    terms: tuple[TermSpec, ...]


class TailKind(Enum):
    EXPONENTIAL = "exponential"
    POWER_LAW = "power_law"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class TailClass:
    kind: TailKind
    # decay rate for EXPONENTIAL, tail power (-d/2) for POWER_LAW
    parameter: float = 0.0


def _snap_exponent(q: float, d: int) -> float:
    return 0.0 if abs(q) <= VAN_HOVE_SNAP_TOL * max(1.0, d) else q


def build_integrand(d: int, omega: float) -> IntegrandSpec:
    """Assemble all d+1 terms of the piecewise formula for (d, omega)."""
    omega = float(omega)
    if math.isnan(omega) or math.isinf(omega):
        raise DomainError(f"omega must be finite, got {omega!r}")
    j = staircase_j(d, omega)
    table = coefficient_table(d, j)
    terms = []
    for m, coeff in enumerate(table.c):
        terms.append(
            TermSpec(m=m, coeff=coeff, sign=+1,
                     exponent=_snap_exponent(2 * m - d - omega, d))
        )
    for m, coeff in enumerate(table.dcoef):
        terms.append(
            TermSpec(m=m, coeff=coeff, sign=-1,
                     exponent=_snap_exponent(2 * m - d + omega, d))
        )
    return IntegrandSpec(d=d, omega=omega, j=j, terms=tuple(terms))


def eval_integrand(spec: IntegrandSpec, tau):
    """Evaluate the integrand at tau (> 0, scalar or ndarray).

    Returns ``(1/2^d) * sum_terms sign * coeff * kbar^{d-m} ibar^m
    e^{exponent*tau}`` as a complex scalar or complex ndarray.  Underflowed
    terms contribute exactly 0.
    """
    tau_arr = np.asarray(tau, dtype=float)
    scalar = tau_arr.ndim == 0
    tau_arr = np.atleast_1d(tau_arr)

    kbar = (2.0 / math.pi) * k0e(tau_arr)
    ibar = 2.0 * i0e(tau_arr)
    d = spec.d
    log_kbar = log_ibar = None

    re = np.zeros_like(tau_arr)
    im = np.zeros_like(tau_arr)
    for t in spec.terms:
        pk, pi_ = d - t.m, t.m
        if max(pk, pi_) >= LOG_SPACE_POWER:
            if log_kbar is None:
                log_kbar = np.log(kbar)
                log_ibar = np.log(ibar)
            with np.errstate(under="ignore"):
                mag = np.exp(pk * log_kbar + pi_ * log_ibar + t.exponent * tau_arr)
        else:
            with np.errstate(under="ignore"):
                mag = kbar**pk * ibar**pi_ * np.exp(t.exponent * tau_arr)
        w = t.sign * t.coeff.magnitude
        phase = t.coeff.phase
        if phase == 0:
            re += w * mag
        elif phase == 1:
            im += w * mag
        elif phase == 2:
            re -= w * mag
        else:
            im -= w * mag

    scale = 0.5**d
    out = (re + 1j * im) * scale
    return complex(out[0]) if scalar else out


def tail_class(spec: IntegrandSpec) -> TailClass:
    """Classify the large-tau behaviour of the assembled integrand.

    All exponents strictly negative gives exponential decay at the slowest
    rate; a zero exponent leaves the kbar*ibar power-law tau^{-d/2} tail,
    which is integrable only for d >= 3.
    """
    max_exp = max(t.exponent for t in spec.terms)
    if max_exp < 0.0:
        return TailClass(TailKind.EXPONENTIAL, -max_exp)
    if spec.d >= 3:
        return TailClass(TailKind.POWER_LAW, -spec.d / 2.0)
    return TailClass(TailKind.DIVERGENT)
