"""Dimensionless parameterization of square wells and bound-state counting.

The numerical core works only with the well strength ``P = sqrt(2 m V) L / (2 hbar)``
and the dimensionless wave vector ``K = L k``. Physical units enter through
:class:`PhysicalWell` and are converted here and nowhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# CODATA 2018 exact/recommended values.
HBAR = 1.054571817e-34  # J s
ELECTRON_MASS = 9.1093837015e-31  # kg
ELECTRON_VOLT = 1.602176634e-19  # J
NANOMETER = 1e-9  # m

UNIT_SYSTEMS = ("si", "natural")


class DomainError(ValueError):
    """An argument is outside the domain of the requested operation."""


@dataclass(frozen=True)
class WellStrength:
    """Dimensionless strength ``P`` of a symmetric well wall, with ``p = 1/P``."""

    P: float
    p: float = field(init=False, repr=False)

    def __post_init__(self):
        P = float(self.P)
        if not (P > 0 and math.isfinite(P)):
            raise DomainError(f"well strength P must be positive and finite, got {self.P!r}")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "p", 1.0 / P)

    def __float__(self) -> float:
        return self.P


@dataclass(frozen=True)
class PhysicalWell:
    """A square well in physical units.

    ``units="si"`` reads mass in kg, depth in J and width in m.
    ``units="natural"`` reads mass in electron masses, depth in eV and width in nm.
    There is no unit inference.
    """

    mass: float
    depth_V: float
    width_L: float
    units: str = "si"

    def __post_init__(self):
        if self.units not in UNIT_SYSTEMS:
            raise DomainError(f"units must be one of {UNIT_SYSTEMS}, got {self.units!r}")
        for name in ("mass", "depth_V", "width_L"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive, got {value!r}")

    def to_si(self) -> tuple[float, float, float]:
        """Return ``(mass_kg, depth_J, width_m)``."""
        if self.units == "si":
            return self.mass, self.depth_V, self.width_L
        return (
            self.mass * ELECTRON_MASS,
            self.depth_V * ELECTRON_VOLT,
            self.width_L * NANOMETER,
        )


@dataclass(frozen=True)
class LevelIndex:
    """Bound-state quantum number ``n`` checked against the owning well's ``n_max``."""

    n: int
    n_max: int

    def __post_init__(self):
        check_level(self.n, self.n_max)


@dataclass(frozen=True)
class AsymmetricWell:
    """Two walls of strengths ``P3`` (left) and ``P1`` (right) around a flat bottom.

    The bottom potential is taken as zero, so each wall strength is computed from
    its own step height with the common width ``L``.
    """

    P3: float
    P1: float

    def __post_init__(self):
        for name in ("P3", "P1"):
            value = float(getattr(self, name))
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def symmetric(self) -> bool:
        return self.P3 == self.P1

    def swapped(self) -> "AsymmetricWell":
        return AsymmetricWell(self.P1, self.P3)


def as_strength(P) -> float:
    """Coerce a float or :class:`WellStrength` to a validated positive float."""
    P = float(P)
    if not (P > 0 and math.isfinite(P)):
        raise DomainError(f"well strength P must be positive and finite, got {P!r}")
    return P


def check_level(n: int, n_max: int) -> int:
    """Validate ``1 <= n <= n_max`` and return ``n``."""
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"level index must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise DomainError(f"level index must be >= 1, got {n}")
    if n > n_max:
        raise DomainError(f"n exceeds n_max={n_max}")
    return n


def well_strength_from_physical(w: PhysicalWell) -> WellStrength:
    mass, depth, width = w.to_si()
    return WellStrength(math.sqrt(2.0 * mass * depth) * width / (2.0 * HBAR))


def asymmetric_well_from_physical(
    mass: float, depth_left: float, depth_right: float, width: float, units: str = "si"
) -> AsymmetricWell:
    """Build an :class:`AsymmetricWell` from two step heights above the well bottom."""
    P3 = well_strength_from_physical(PhysicalWell(mass, depth_left, width, units)).P
    P1 = well_strength_from_physical(PhysicalWell(mass, depth_right, width, units)).P
    return AsymmetricWell(P3, P1)


def energy_from_K(w: PhysicalWell, K: float) -> float:
    """Energy in joules, measured from the well bottom, of the state with ``K = L k``."""
    if not K >= 0:
        raise DomainError(f"K must be non-negative, got {K!r}")
    mass, _, width = w.to_si()
    return HBAR**2 * K**2 / (2.0 * mass * width**2)


def n_max_symmetric(P) -> int:
    """Number of bound states of a symmetric well of strength ``P``.

    The exact level equation ``K/2 + arcsin(K/2P) = n pi/2`` has a root in
    ``(0, 2P]`` iff ``P + pi/2 >= n pi/2``. A state sitting exactly at the lip
    (``2P/pi`` an integer) is counted.
    """
    P = as_strength(P)
    n = math.floor(2.0 * P / math.pi) + 1
    # guard against floor() landing one off through rounding of 2P/pi
    while P + math.pi / 2 < n * math.pi / 2:
        n -= 1
    while P + math.pi / 2 >= (n + 1) * math.pi / 2:
        n += 1
    return n


def n_max_asymmetric(aw: AsymmetricWell) -> int:
    """Number of bound states of an asymmetric well; may be zero.

    ``K + arcsin(K/2P3) + arcsin(K/2P1) = n pi`` is strictly increasing in ``K``
    and equals ``-n pi`` at ``K = 0``, so level ``n`` exists iff the left side at
    ``K = 2 min(P3, P1)`` reaches ``n pi``.
    """
    lo, hi = sorted((aw.P3, aw.P1))
    top = 2.0 * lo + math.pi / 2 + math.asin(lo / hi)
    n = math.floor(top / math.pi)
    while n > 0 and top < n * math.pi:
        n -= 1
    while top >= (n + 1) * math.pi:
        n += 1
    return n
