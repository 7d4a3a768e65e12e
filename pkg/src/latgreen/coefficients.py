"""Staircase index and exact coefficient tables of the piecewise formula.

The two coefficient families weighting the products K^{d-m} I^m are

    C_jm = sum_{n=m}^{j}     binom(d,n) binom(n,m) i^{2n-d-m}
    D_jm = sum_{n=m}^{d-j-1} binom(d,n) binom(n,m) i^{d+m-2n}

Because i^{2n-d-m} = (-1)^n i^{-(d+m)} (and the mirror identity for D), each
coefficient is an exact integer magnitude times a quarter-turn phase; the
tables below store exactly that, in arbitrary-precision integer arithmetic,
so no floating-point cancellation can ever occur.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["PhasedInteger", "CoefficientTable", "staircase_j", "coefficient_table"]


@dataclass(frozen=True)
class PhasedInteger:
    """A signed arbitrary-precision integer times i**phase, phase in {0,..,3}.

    The canonical form keeps the (possibly negative) magnitude as the signed
    alternating sum and reduces the phase mod 4; ``complex_value`` applies the
    quarter turn exactly.
    """

    magnitude: int
    phase: int

    def __post_init__(self):
        if self.phase not in (0, 1, 2, 3):
            raise ValueError(f"phase must be reduced mod 4, got {self.phase}")

    @property
    def complex_value(self) -> complex:
        m = self.magnitude
        return (complex(m, 0), complex(0, m), complex(-m, 0), complex(0, -m))[self.phase]


@dataclass(frozen=True)
class CoefficientTable:
    """Exact C and D coefficients for one (d, j) piece.

    ``c[m]`` for m = 0..j weights the e^{-omega tau} sum, ``dcoef[m]`` for
    m = 0..d-j-1 the e^{+omega tau} sum; either tuple is empty when its sum
    is absent (j = -1 or j = d).
    """

    d: int
    j: int
    c: tuple[PhasedInteger, ...]
    dcoef: tuple[PhasedInteger, ...]


def staircase_j(d: int, omega: float) -> int:
    """Piece selector floor((omega+d)/2), clamped to [-1, d].

    Outside the clamp range one of the two sums would be indexed out of its
    defining range; clamping puts all weight in the surviving sum, which is
    exact because the complementary sum is empty there.
    """
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise DomainError(f"d must be a positive integer, got {d!r}")
    omega = float(omega)
    if math.isnan(omega) or math.isinf(omega):
        raise DomainError(f"omega must be finite, got {omega!r}")
    j = math.floor((omega + d) / 2.0)
    return max(-1, min(d, j))


def _alternating_sum(d: int, m: int, n_lo: int, n_hi: int) -> int:
    # sum_{n=n_lo}^{n_hi} (-1)^n binom(d,n) binom(n,m), exact integers
    total = 0
    for n in range(n_lo, n_hi + 1):
        term = math.comb(d, n) * math.comb(n, m)
        total += -term if n & 1 else term
    return total


_cache: dict[tuple[int, int], CoefficientTable] = {}
_cache_lock = threading.Lock()


def coefficient_table(d: int, j: int) -> CoefficientTable:
    """Exact coefficient table for piece j of dimension d, cached by (d, j)."""
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise DomainError(f"d must be a positive integer, got {d!r}")
    if not isinstance(j, int) or isinstance(j, bool) or not -1 <= j <= d:
        raise DomainError(f"j must lie in [-1, {d}], got {j!r}")
    key = (d, j)
    table = _cache.get(key)
    if table is not None:
        return table

    c = tuple(
        PhasedInteger(_alternating_sum(d, m, m, j), (-(d + m)) % 4)
        for m in range(j + 1)
    )
    dcoef = tuple(
        PhasedInteger(_alternating_sum(d, m, m, d - j - 1), (d + m) % 4)
        for m in range(d - j)
    )
    table = CoefficientTable(d=d, j=j, c=c, dcoef=dcoef)
    with _cache_lock:
        _cache.setdefault(key, table)
    return table
