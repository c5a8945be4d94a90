"""Garrett's penetration-depth approximation in dimensionless form.

A finite well of width ``L`` is replaced by an infinite well of width
``L + 2 delta``, where ``delta`` is the decay length of the wavefunction in the
wall. With ``y = 2 delta / L`` and ``a = pi n p / 2`` the decay length evaluated
at the infinite-well level of the widened well gives the map::

    G(y) = p / sqrt(1 - (a / (1 + y))**2)

Garrett's two-iteration value is ``G(G(0))``, the consistent value is the fixed
point ``y = G(y)`` (a root of a quartic), and the lowest-order value is the
positive root of the deep-well quadratic ``y**2 - 2 p**2 y - p**2 = 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from scipy.optimize import brentq

from .dimensionless import DomainError, as_strength, check_level, n_max_symmetric
from .reference import Source, WaveVectorEstimate

LOWEST_ORDER_FORMS = ("exact", "truncated")

CONVERGENCE_RTOL = 1e-12
MAX_ITERATIONS = 10_000


class Variant(enum.Enum):
    TWO_ITERATION = "g2"
    CONSISTENT = "g4"
    LOWEST_ORDER = "g0"

    @property
    def source(self) -> Source:
        return _SOURCES[self]


_SOURCES = {
    Variant.TWO_ITERATION: Source.GARRETT2,
    Variant.CONSISTENT: Source.GARRETT4,
    Variant.LOWEST_ORDER: Source.GARRETT0,
}


@dataclass(frozen=True)
class PenetrationResult:
    """Dimensionless penetration depth ``y = 2 delta / L``; ``y is None`` when unphysical."""

    variant: Variant
    y: Optional[float]
    iterations_used: Optional[int] = None

    @property
    def physical(self) -> bool:
        return self.y is not None


class DivergenceDetected(ArithmeticError):
    """The Garrett iteration left the physical domain or failed to settle.

    ``last_valid`` is the last physical iterate (``None`` if the seed itself was
    unphysical) and ``index`` its 1-based position in the sequence (0 for none).
    """

    def __init__(self, message: str, last_valid: Optional[PenetrationResult], index: int):
        super().__init__(message)
        self.last_valid = last_valid
        self.index = index


def _params(P, n: int) -> tuple[float, float, int]:
    P = as_strength(P)
    n = check_level(n, n_max_symmetric(P))
    p = 1.0 / P
    return p, 0.5 * math.pi * n * p, n


def _step(y: float, p: float, a: float) -> Optional[float]:
    radicand = 1.0 - (a / (1.0 + y)) ** 2
    if radicand <= 0.0:
        return None
    return p / math.sqrt(radicand)


def y_first_iteration(P, n: int) -> PenetrationResult:
    """Decay length at the unwidened infinite-well level, ``p / sqrt(1 - (pi n p/2)^2)``.

    Unphysical when that level lies above the wall top.
    """
    p, a, n = _params(P, n)
    return PenetrationResult(Variant.TWO_ITERATION, _step(0.0, p, a), 1)


def y_two_iteration(P, n: int) -> PenetrationResult:
    """Garrett's original two-iteration penetration depth."""
    p, a, n = _params(P, n)
    c = math.pi**2 * n**2 / 4.0
    inner = 1.0 - c * p**2
    if inner <= 0.0:
        return PenetrationResult(Variant.TWO_ITERATION, None, 2)
    outer = 1.0 - c * p**2 / (1.0 + p / math.sqrt(inner)) ** 2
    if outer <= 0.0:
        return PenetrationResult(Variant.TWO_ITERATION, None, 2)
    return PenetrationResult(Variant.TWO_ITERATION, p / math.sqrt(outer), 2)


def y_iterate(P, n: int, l: int) -> list[PenetrationResult]:
    """First ``l`` iterates ``y1, ..., yl`` of ``y -> G(y)`` started from ``y0 = 0``.

    Raises:
        DivergenceDetected: an iterate would be complex.
    """
    if l < 1:
        raise DomainError(f"iteration count must be >= 1, got {l}")
    p, a, n = _params(P, n)
    terms: list[PenetrationResult] = []
    y = 0.0
    for index in range(1, l + 1):
        nxt = _step(y, p, a)
        if nxt is None:
            last = terms[-1] if terms else None
            raise DivergenceDetected(
                f"iterate {index} is unphysical for P={1.0 / p:g}, n={n}", last, index - 1
            )
        y = nxt
        terms.append(PenetrationResult(Variant.CONSISTENT, y, index))
    return terms


def y_iterate_limit(
    P, n: int, rtol: float = CONVERGENCE_RTOL, max_iterations: int = MAX_ITERATIONS
) -> PenetrationResult:
    """Run the Garrett iteration until ``|y(l+1) - y(l)| <= rtol (1 + y(l))``.

    Raises:
        DivergenceDetected: an iterate became complex, or no convergence within
            ``max_iterations``.
    """
    p, a, n = _params(P, n)
    y = 0.0
    last: Optional[PenetrationResult] = None
    for index in range(1, max_iterations + 1):
        nxt = _step(y, p, a)
        if nxt is None:
            raise DivergenceDetected(
                f"iterate {index} is unphysical for P={1.0 / p:g}, n={n}", last, index - 1
            )
        converged = index > 1 and abs(nxt - y) <= rtol * (1.0 + y)
        y = nxt
        last = PenetrationResult(Variant.CONSISTENT, y, index)
        if converged:
            return last
    raise DivergenceDetected(
        f"no convergence after {max_iterations} iterations", last, max_iterations
    )


def quartic_coefficients(P, n: int) -> tuple[float, float, float, float, float]:
    """Coefficients, highest power first, of the fixed-point quartic in ``y``."""
    p, a, _ = _params(P, n)
    p2 = p * p
    return (1.0, 2.0, 1.0 - (a * a + p2), -2.0 * p2, -p2)


def quartic_residual(y: float, P, n: int) -> float:
    c4, c3, c2, c1, c0 = quartic_coefficients(P, n)
    return (((c4 * y + c3) * y + c2) * y + c1) * y + c0


def fixed_point_residual(y: float, P, n: int) -> float:
    """``y - G(y)``; ``-inf`` where ``G`` is complex."""
    p, a, _ = _params(P, n)
    g = _step(y, p, a)
    return -math.inf if g is None else y - g


def y_consistent(P, n: int) -> PenetrationResult:
    """Self-consistent penetration depth, the fixed point of the Garrett map.

    ``y - G(y)`` is strictly increasing on ``(max(0, a - 1), inf)``, so its single
    root is bracketed and found directly. Squaring that relation into the quartic
    adds roots with no physical meaning, which this route never visits.
    """
    p, a, n = _params(P, n)

    def g(y: float) -> float:
        step = _step(y, p, a)
        return -math.inf if step is None else y - step

    lo = max(0.0, a - 1.0) + 1e-12 * (1.0 + a)
    limit = lo + 10.0 * (1.0 + p + 0.5 * math.pi * n)
    span = p + 1e-3
    hi = lo + span
    while g(hi) <= 0.0:
        span *= 2.0
        hi = lo + span
        if hi > limit:
            raise ArithmeticError(f"failed to bracket the consistent root for P={1.0 / p:g}, n={n}")
    if not g(lo) < 0.0:
        raise ArithmeticError(f"consistent root lies below the bracket for P={1.0 / p:g}, n={n}")
    y = brentq(g, lo, hi, xtol=1e-15, rtol=4 * 2.220446049250313e-16, maxiter=200)

    # Newton polish on the quartic, kept only if the fixed-point residual does not grow
    coeffs = quartic_coefficients(1.0 / p, n)
    for _ in range(2):
        q = (((coeffs[0] * y + coeffs[1]) * y + coeffs[2]) * y + coeffs[3]) * y + coeffs[4]
        dq = ((4 * coeffs[0] * y + 3 * coeffs[1]) * y + 2 * coeffs[2]) * y + coeffs[3]
        if dq == 0.0 or q == 0.0:
            break
        trial = y - q / dq
        if trial > lo and abs(g(trial)) <= abs(g(y)):
            y = trial
        else:
            break
    return PenetrationResult(Variant.CONSISTENT, y)


def y_lowest_order(P, form: str = "exact") -> PenetrationResult:
    """n-independent penetration depth from the deep-well quadratic.

    ``form="exact"`` returns its positive root ``p sqrt(p^2 + 1) + p^2``;
    ``form="truncated"`` returns the expansion ``p + p^2``.
    """
    P = as_strength(P)
    p = 1.0 / P
    if form == "exact":
        y = p * math.sqrt(p * p + 1.0) + p * p
    elif form == "truncated":
        y = p + p * p
    else:
        raise DomainError(f"lowest-order form must be one of {LOWEST_ORDER_FORMS}, got {form!r}")
    return PenetrationResult(Variant.LOWEST_ORDER, y)


def lowest_order_residual(y: float, P) -> float:
    p = 1.0 / as_strength(P)
    return y * y - 2.0 * p * p * y - p * p


def penetration(P, n: int, variant: Variant, lowest_order: str = "exact") -> PenetrationResult:
    """Dispatch to the requested Garrett variant."""
    if variant is Variant.TWO_ITERATION:
        return y_two_iteration(P, n)
    if variant is Variant.CONSISTENT:
        return y_consistent(P, n)
    if variant is Variant.LOWEST_ORDER:
        check_level(n, n_max_symmetric(P))
        return y_lowest_order(P, lowest_order)
    raise DomainError(f"unknown variant {variant!r}")


def K_from_y(n: int, y: PenetrationResult) -> WaveVectorEstimate:
    """Wave vector ``pi n / (1 + y)`` of the widened infinite well."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"level index must be a positive integer, got {n!r}")
    n = int(n)
    if not y.physical:
        return WaveVectorEstimate(None, y.variant.source, n)
    return WaveVectorEstimate(math.pi * n / (1.0 + y.y), y.variant.source, n)
