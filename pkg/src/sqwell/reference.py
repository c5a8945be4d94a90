"""Exact level equations for square wells and Barker's algebraic approximation.

The roots returned here are the reference ("exact") wave vectors against which
every approximate variant is scored.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from scipy.optimize import brentq

from .dimensionless import (
    AsymmetricWell,
    as_strength,
    check_level,
    n_max_asymmetric,
    n_max_symmetric,
)

XTOL = 1e-14
MAXITER = 200
_ASIN_SLACK = 1e-15


class Source(enum.Enum):
    EXACT = "exact"
    GARRETT2 = "g2"
    GARRETT4 = "g4"
    GARRETT0 = "g0"
    BARKER = "barker"
    ASYM_COMPOSITE = "asym"


@dataclass(frozen=True)
class WaveVectorEstimate:
    """A dimensionless wave vector ``K = L k`` and where it came from.

    ``K is None`` marks an unphysical estimate (a Garrett variant whose
    penetration depth is complex).
    """

    K: Optional[float]
    source: Source
    n: int

    @property
    def physical(self) -> bool:
        return self.K is not None


def _asin(x: float) -> float:
    if 1.0 < x <= 1.0 + _ASIN_SLACK:
        x = 1.0
    elif -1.0 - _ASIN_SLACK <= x < -1.0:
        x = -1.0
    return math.asin(x)


def symmetric_residual(K: float, P: float, n: int) -> float:
    """``K/2 + arcsin(K/2P) - n pi/2``; zero at the exact level."""
    return 0.5 * K + _asin(K / (2.0 * P)) - 0.5 * n * math.pi


def asymmetric_residual(K: float, P3: float, P1: float, n: int) -> float:
    """``K + arcsin(K/2P3) + arcsin(K/2P1) - n pi``; zero at the exact level."""
    return K + _asin(K / (2.0 * P3)) + _asin(K / (2.0 * P1)) - n * math.pi


def _bracketed_root(f, hi: float) -> float:
    # f is strictly increasing with f(0) < 0 <= f(hi)
    if f(hi) == 0.0:
        return hi
    return brentq(f, 0.0, hi, xtol=XTOL, maxiter=MAXITER)


def solve_exact_symmetric(P, n: int) -> WaveVectorEstimate:
    P = as_strength(P)
    n = check_level(n, n_max_symmetric(P))
    K = _bracketed_root(lambda K: symmetric_residual(K, P, n), 2.0 * P)
    return WaveVectorEstimate(K, Source.EXACT, n)


def solve_exact_asymmetric(aw: AsymmetricWell, n: int) -> WaveVectorEstimate:
    n = check_level(n, n_max_asymmetric(aw))
    # sorted walls make the result independent of which side is which
    lo, hi = sorted((aw.P3, aw.P1))
    K = _bracketed_root(lambda K: asymmetric_residual(K, lo, hi, n), 2.0 * lo)
    return WaveVectorEstimate(K, Source.EXACT, n)


def barker_K(P, n: int) -> WaveVectorEstimate:
    """Barker's cubic-corrected estimate ``2P/(1+P) (x - x^3 / (6 (1+P)^3))``, ``x = n pi/2``.

    Comes from expanding ``arcsin`` in the level equation to third order and
    substituting the linear solution into the cubic term.
    """
    P = as_strength(P)
    n = check_level(n, n_max_symmetric(P))
    return WaveVectorEstimate(_barker(P, n), Source.BARKER, n)


def _barker(P: float, n: int) -> float:
    x = 0.5 * n * math.pi
    return 2.0 * P / (1.0 + P) * (x - x**3 / (6.0 * (1.0 + P) ** 3))
