"""Bound-state spectra of finite rectangular quantum wells.

Exact levels of symmetric and asymmetric wells, three variants of Garrett's
penetration-depth approximation, Barker's algebraic formula, and the error
analysis that compares them.
"""

from .analysis import (
    AsymResult,
    ErrorRow,
    FigureData,
    asym_garrett,
    best_variant,
    build_figure1_data,
    build_table,
    error_row,
    relative_error,
)
from .dimensionless import (
    AsymmetricWell,
    DomainError,
    LevelIndex,
    PhysicalWell,
    WellStrength,
    energy_from_K,
    n_max_asymmetric,
    n_max_symmetric,
    well_strength_from_physical,
)
from .garrett import (
    DivergenceDetected,
    K_from_y,
    PenetrationResult,
    Variant,
    y_consistent,
    y_first_iteration,
    y_iterate,
    y_iterate_limit,
    y_lowest_order,
    y_two_iteration,
)
from .reference import (
    Source,
    WaveVectorEstimate,
    barker_K,
    solve_exact_asymmetric,
    solve_exact_symmetric,
)

__version__ = "0.1.0"
