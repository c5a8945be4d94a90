"""Errors of the approximate levels, variant selection and dataset assembly."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Iterable, Optional

from .dimensionless import (
    AsymmetricWell,
    DomainError,
    as_strength,
    check_level,
    n_max_asymmetric,
    n_max_symmetric,
)
from .garrett import (
    LOWEST_ORDER_FORMS,
    K_from_y,
    Variant,
    penetration,
    y_consistent,
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

# preference order on exact ties
_PREFERENCE = (Variant.CONSISTENT, Variant.TWO_ITERATION, Variant.LOWEST_ORDER)


@dataclass(frozen=True)
class ErrorRow:
    """One (P, n) block of the comparison tables. ``None`` marks unphysical cells."""

    P: float
    n: int
    eps4: float
    eps0: float
    eps2: Optional[float]
    y4: float
    y2: Optional[float]
    epsB: float
    K_ex: float


@dataclass(frozen=True)
class AsymResult:
    well: AsymmetricWell
    n: int
    chosen_variant_left: Variant
    chosen_variant_right: Variant
    y_left: Optional[float]
    y_right: Optional[float]
    K_ap: Optional[float]
    K_ex: float
    eps: Optional[float]


def _check_form(lowest_order: str) -> None:
    if lowest_order not in LOWEST_ORDER_FORMS:
        raise DomainError(
            f"lowest-order form must be one of {LOWEST_ORDER_FORMS}, got {lowest_order!r}"
        )


def relative_error(K_ex: WaveVectorEstimate, K_a: WaveVectorEstimate) -> Optional[float]:
    """Signed relative error ``(K_ex - K_a) / K_ex``; ``None`` if ``K_a`` is unphysical."""
    if K_ex.n != K_a.n:
        raise DomainError(f"level mismatch: exact n={K_ex.n}, approximate n={K_a.n}")
    if K_ex.source is not Source.EXACT:
        raise DomainError(f"reference estimate must be exact, got {K_ex.source.value}")
    if not K_a.physical:
        return None
    return (K_ex.K - K_a.K) / K_ex.K


def error_row(P, n: int, lowest_order: str = "exact") -> ErrorRow:
    _check_form(lowest_order)
    P = as_strength(P)
    exact = solve_exact_symmetric(P, n)
    y4 = y_consistent(P, n)
    y2 = y_two_iteration(P, n)
    y0 = y_lowest_order(P, lowest_order)
    return ErrorRow(
        P=P,
        n=n,
        eps4=relative_error(exact, K_from_y(n, y4)),
        eps0=relative_error(exact, K_from_y(n, y0)),
        eps2=relative_error(exact, K_from_y(n, y2)),
        y4=y4.y,
        y2=y2.y,
        epsB=relative_error(exact, barker_K(P, n)),
        K_ex=exact.K,
    )


def variant_errors(P, n: int, lowest_order: str = "exact") -> dict[Variant, Optional[float]]:
    """Signed error of each Garrett variant at ``(P, n)``."""
    _check_form(lowest_order)
    exact = solve_exact_symmetric(P, n)
    return {
        v: relative_error(exact, K_from_y(n, penetration(P, n, v, lowest_order)))
        for v in _PREFERENCE
    }


def best_variant(P, n: int, lowest_order: str = "exact") -> tuple[Variant, float]:
    """Garrett variant with the smallest absolute error at ``(P, n)`` and its ``y``.

    Unphysical variants are skipped. Ties go to the consistent variant, then the
    two-iteration one.
    """
    errors = variant_errors(P, n, lowest_order)
    best = None
    for v in _PREFERENCE:
        e = errors[v]
        if e is None:
            continue
        if best is None or abs(e) < abs(errors[best]):
            best = v
    return best, penetration(P, n, best, lowest_order).y


def asym_garrett(
    aw: AsymmetricWell,
    n: int,
    lowest_order: str = "exact",
    variant: Optional[Variant] = None,
) -> AsymResult:
    """Garrett estimate for an asymmetric well, one penetration depth per wall.

    Each wall is treated as a symmetric well of its own strength at the same
    level ``n``. By default each wall uses its own best variant; passing
    ``variant`` forces that variant on both walls.
    """
    _check_form(lowest_order)
    n = check_level(n, n_max_asymmetric(aw))
    if variant is None:
        v_left, y_left = best_variant(aw.P3, n, lowest_order)
        v_right, y_right = best_variant(aw.P1, n, lowest_order)
    else:
        v_left = v_right = variant
        y_left = penetration(aw.P3, n, variant, lowest_order).y
        y_right = penetration(aw.P1, n, variant, lowest_order).y

    exact = solve_exact_asymmetric(aw, n)
    if y_left is None or y_right is None:
        K_ap = eps = None
    else:
        K_ap = math.pi * n / (1.0 + 0.5 * (y_left + y_right))
        eps = relative_error(exact, WaveVectorEstimate(K_ap, Source.ASYM_COMPOSITE, n))
    return AsymResult(aw, n, v_left, v_right, y_left, y_right, K_ap, exact.K, eps)


def _row_task(task: tuple[float, int], lowest_order: str) -> ErrorRow:
    return error_row(task[0], task[1], lowest_order)


def build_table(
    P_list: Iterable[float], lowest_order: str = "exact", workers: int = 1
) -> list[ErrorRow]:
    """Error rows for every bound state of every ``P``, ordered by ``(P, n)``.

    ``workers > 1`` spreads rows over a process pool; the result is identical
    to the serial one.
    """
    _check_form(lowest_order)
    strengths = sorted({as_strength(P) for P in P_list})
    tasks = [(P, n) for P in strengths for n in range(1, n_max_symmetric(P) + 1)]
    job = partial(_row_task, lowest_order=lowest_order)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(job, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        rows = [job(t) for t in tasks]
    return sorted(rows, key=lambda r: (r.P, r.n))


@dataclass(frozen=True)
class FigureData:
    """Error curves versus ``n``: absolute symmetric errors and the signed asymmetric error."""

    P: float
    well: AsymmetricWell
    series: dict[str, list[tuple[int, float]]]

    def long_rows(self) -> list[tuple[str, int, float]]:
        return [(name, n, v) for name, points in self.series.items() for n, v in points]


FIGURE_SERIES = ("abs_eps4", "abs_eps0", "abs_eps2", "eps_asym")


def build_figure1_data(
    P=10.0, aw: Optional[AsymmetricWell] = None, lowest_order: str = "exact"
) -> FigureData:
    if aw is None:
        aw = AsymmetricWell(10.0, 8.0)
    P = as_strength(P)
    rows = build_table([P], lowest_order)
    series: dict[str, list[tuple[int, float]]] = {name: [] for name in FIGURE_SERIES}
    for r in rows:
        series["abs_eps4"].append((r.n, abs(r.eps4)))
        series["abs_eps0"].append((r.n, abs(r.eps0)))
        if r.eps2 is not None:
            series["abs_eps2"].append((r.n, abs(r.eps2)))
    for n in range(1, n_max_asymmetric(aw) + 1):
        res = asym_garrett(aw, n, lowest_order)
        series["eps_asym"].append((n, res.eps))
    return FigureData(P, aw, series)
