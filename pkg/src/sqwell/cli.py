"""Command-line front end: ``sqw solve``, ``sqw table``, ``sqw figure``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Optional, Sequence

from .analysis import asym_garrett, build_figure1_data, build_table
from .dimensionless import (
    ELECTRON_VOLT,
    AsymmetricWell,
    DomainError,
    PhysicalWell,
    as_strength,
    asymmetric_well_from_physical,
    check_level,
    energy_from_K,
    n_max_asymmetric,
    n_max_symmetric,
    well_strength_from_physical,
)
from .garrett import LOWEST_ORDER_FORMS, K_from_y, Variant, penetration
from .reference import barker_K, solve_exact_asymmetric, solve_exact_symmetric

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

DEFAULT_DIGITS = 6
UNPHYSICAL = "unphysical"

TABLE_COLUMNS = ("P", "n", "eps4", "eps0", "eps2", "y4", "y2", "epsB")
FIGURE_COLUMNS = ("series", "n", "value")
SYMMETRIC_COLUMNS = ("P", "n", "variant", "y", "K", "eps", "unphysical")
ASYMMETRIC_COLUMNS = (
    "P3", "P1", "n", "variant", "variant_left", "variant_right",
    "y_left", "y_right", "K", "eps", "unphysical",
)

EPILOG = """\
exit status:
  0  success
  2  usage or domain error (bad flag, n above n_max, non-positive input)
  3  output could not be written

Unphysical values are written as "unphysical" in CSV and null in JSON.
SQW_DIGITS sets the default number of significant digits; --digits wins.
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- formatting ---------------------------------------------------------------


def _fmt(value, digits: int) -> str:
    if value is None:
        return UNPHYSICAL
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return str(value)


def _json_value(value, digits: int):
    if isinstance(value, float) and not isinstance(value, bool):
        return float(f"{value:.{digits}g}")
    return value


def render_csv(columns: Sequence[str], records: Sequence[dict], digits: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow(["" if rec.get(c, "") == "" else _fmt(rec[c], digits) for c in columns])
    return buf.getvalue()


def render_json(columns: Sequence[str], records: Sequence[dict], digits: int) -> str:
    out = []
    for rec in records:
        out.append({c: _json_value(rec.get(c) if rec.get(c, "") != "" else None, digits) for c in columns})
    return json.dumps(out, indent=2) + "\n"


def _render(fmt: str, columns, records, digits) -> str:
    if fmt == "json":
        return render_json(columns, records, digits)
    return render_csv(columns, records, digits)


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# -- argument helpers ---------------------------------------------------------


def _digits(args) -> int:
    raw = args.digits if args.digits is not None else os.environ.get("SQW_DIGITS")
    if raw is None:
        return DEFAULT_DIGITS
    try:
        d = int(raw)
    except ValueError:
        raise UsageError(f"digits must be an integer in 1..17, got {raw!r}")
    if not 1 <= d <= 17:
        raise UsageError(f"digits must be an integer in 1..17, got {d}")
    return d


def _parse_P_list(text: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"malformed --P-list {text!r}")
    return [as_strength(v) for v in values]


def _parse_P_range(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"--P-range must be lo:hi or lo:hi:step, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        step = float(parts[2]) if len(parts) == 3 else 1.0
    except ValueError:
        raise UsageError(f"malformed --P-range {text!r}")
    if step <= 0 or hi < lo:
        raise UsageError(f"--P-range needs lo <= hi and step > 0, got {text!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [as_strength(lo + i * step) for i in range(count)]


def _levels(text: str, n_max: int) -> list[int]:
    if text == "all":
        return list(range(1, n_max + 1))
    try:
        n = int(text)
    except ValueError:
        raise UsageError(f"--n must be a positive integer or 'all', got {text!r}")
    return [check_level(n, n_max)]


# -- commands -----------------------------------------------------------------

_G_VARIANTS = {"g2": Variant.TWO_ITERATION, "g4": Variant.CONSISTENT, "g0": Variant.LOWEST_ORDER}


def _symmetric_records(P: float, levels, variants, lowest_order, well) -> list[dict]:
    records = []
    for n in levels:
        exact = solve_exact_symmetric(P, n)
        for name in variants:
            rec = {"P": P, "n": n, "variant": name, "y": "", "unphysical": False}
            if name == "exact":
                K = exact.K
            elif name == "barker":
                K = barker_K(P, n).K
            else:
                res = penetration(P, n, _G_VARIANTS[name], lowest_order)
                rec["y"] = res.y
                K = K_from_y(n, res).K
            rec["K"] = K
            rec["eps"] = None if K is None else (exact.K - K) / exact.K
            if name == "exact":
                rec["eps"] = 0.0
            rec["unphysical"] = K is None
            _attach_energy(rec, well, K)
            records.append(rec)
    return records


def _asymmetric_records(aw: AsymmetricWell, levels, variants, lowest_order, well) -> list[dict]:
    records = []
    for n in levels:
        for name in variants:
            rec = {"P3": aw.P3, "P1": aw.P1, "n": n, "variant": name,
                   "variant_left": "", "variant_right": "", "y_left": "", "y_right": ""}
            if name == "exact":
                K = solve_exact_asymmetric(aw, n).K
                rec["eps"] = 0.0
            else:
                res = asym_garrett(aw, n, lowest_order, None if name == "best" else _G_VARIANTS[name])
                K = res.K_ap
                rec.update(variant_left=res.chosen_variant_left.value,
                           variant_right=res.chosen_variant_right.value,
                           y_left=res.y_left, y_right=res.y_right, eps=res.eps)
            rec["K"] = K
            rec["unphysical"] = K is None
            _attach_energy(rec, well, K)
            records.append(rec)
    return records


def _attach_energy(rec: dict, well: Optional[PhysicalWell], K: Optional[float]) -> None:
    if well is None:
        return
    key = "E_eV" if well.units == "natural" else "E_J"
    if K is None:
        rec[key] = None
        return
    E = energy_from_K(well, K)
    rec[key] = E / ELECTRON_VOLT if well.units == "natural" else E


def cmd_solve(args) -> int:
    digits = _digits(args)
    asym = args.P3 is not None or args.P1 is not None or args.depth3 is not None or args.depth1 is not None
    physical = args.units is not None
    well = None

    if physical:
        if args.P is not None or args.P3 is not None or args.P1 is not None:
            raise UsageError("--units input replaces --P/--P3/--P1")
        if args.mass is None or args.width is None:
            raise UsageError("--units needs --mass and --width")
        if asym:
            if args.depth3 is None or args.depth1 is None:
                raise UsageError("asymmetric physical input needs both --depth3 and --depth1")
            aw = asymmetric_well_from_physical(args.mass, args.depth3, args.depth1, args.width, args.units)
            well = PhysicalWell(args.mass, min(args.depth3, args.depth1), args.width, args.units)
        else:
            if args.depth is None:
                raise UsageError("--units needs --depth (or --depth3/--depth1)")
            well = PhysicalWell(args.mass, args.depth, args.width, args.units)
            P = well_strength_from_physical(well).P
    elif asym:
        if args.P is not None:
            raise UsageError("give either --P or --P3/--P1, not both")
        if args.P3 is None or args.P1 is None:
            raise UsageError("asymmetric wells need both --P3 and --P1")
        aw = AsymmetricWell(args.P3, args.P1)
    else:
        if args.P is None:
            raise UsageError("one of --P, --P3/--P1 or --units is required")
        P = as_strength(args.P)

    if asym:
        if args.variant == "barker":
            raise UsageError("the Barker formula is defined for symmetric wells only")
        variants = ["exact", "g2", "g4", "g0", "best"] if args.variant == "all" else [args.variant]
        n_max = n_max_asymmetric(aw)
        if n_max == 0:
            raise DomainError("the well has no bound states: n exceeds n_max=0")
        records = _asymmetric_records(aw, _levels(args.n, n_max), variants, args.lowest_order, well)
        columns = list(ASYMMETRIC_COLUMNS)
    else:
        if args.variant == "best":
            raise UsageError("variant 'best' applies to asymmetric wells only")
        variants = ["exact", "g2", "g4", "g0", "barker"] if args.variant == "all" else [args.variant]
        records = _symmetric_records(P, _levels(args.n, n_max_symmetric(P)), variants, args.lowest_order, well)
        columns = list(SYMMETRIC_COLUMNS)
    if well is not None:
        columns.append("E_eV" if well.units == "natural" else "E_J")

    _emit(_render(args.format, columns, records, digits), "-")
    return EXIT_OK


def table_records(P_values, lowest_order: str = "exact", workers: int = 1) -> list[dict]:
    rows = build_table(P_values, lowest_order, workers)
    return [{c: getattr(r, c) for c in TABLE_COLUMNS} for r in rows]


def cmd_table(args) -> int:
    digits = _digits(args)
    if (args.P_range is None) == (args.P_list is None):
        raise UsageError("give exactly one of --P-range or --P-list")
    P_values = _parse_P_range(args.P_range) if args.P_range else _parse_P_list(args.P_list)
    if args.jobs < 1:
        raise UsageError(f"--jobs must be >= 1, got {args.jobs}")
    records = table_records(P_values, args.lowest_order, args.jobs)
    _emit(_render(args.format, TABLE_COLUMNS, records, digits), args.out)
    return EXIT_OK


def cmd_figure(args) -> int:
    digits = _digits(args)
    data = build_figure1_data(as_strength(args.P), AsymmetricWell(args.P3, args.P1), args.lowest_order)
    records = [{"series": s, "n": n, "value": v} for s, n, v in data.long_rows()]
    _emit(_render(args.format, FIGURE_COLUMNS, records, digits), args.out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--digits", type=int, default=None,
                   help="significant digits for floats, 1-17 (default 6 or $SQW_DIGITS)")
    p.add_argument("--lowest-order", choices=LOWEST_ORDER_FORMS, default="exact",
                   help="form of the n-independent depth: exact root or p + p^2")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sqw",
        description="Bound states of finite square wells: exact levels, Garrett and Barker approximations.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    solve = sub.add_parser("solve", help="solve single states", epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
    solve.add_argument("--P", type=float, help="symmetric well strength")
    solve.add_argument("--P3", type=float, help="left wall strength (asymmetric)")
    solve.add_argument("--P1", type=float, help="right wall strength (asymmetric)")
    solve.add_argument("--n", default="all", help="level index or 'all' (default)")
    solve.add_argument("--variant", default="all",
                       choices=("exact", "g2", "g4", "g0", "barker", "best", "all"))
    solve.add_argument("--units", choices=("si", "natural"),
                       help="physical input: si = kg/J/m, natural = electron masses/eV/nm")
    solve.add_argument("--mass", type=float)
    solve.add_argument("--depth", type=float, help="well depth (symmetric)")
    solve.add_argument("--depth3", type=float, help="left step height (asymmetric)")
    solve.add_argument("--depth1", type=float, help="right step height (asymmetric)")
    solve.add_argument("--width", type=float)
    _common(solve)
    solve.set_defaults(func=cmd_solve)

    table = sub.add_parser("table", help="error table over a list of well strengths", epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
    table.add_argument("--P-range", dest="P_range", help="lo:hi[:step], inclusive, step 1 by default")
    table.add_argument("--P-list", dest="P_list", help="comma-separated strengths")
    table.add_argument("--out", default="-", help="output path or '-' for stdout (default)")
    table.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    _common(table)
    table.set_defaults(func=cmd_table)

    figure = sub.add_parser("figure", help="error-versus-n curves, long format", epilog=EPILOG,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    figure.add_argument("--P", type=float, default=10.0)
    figure.add_argument("--P3", type=float, default=10.0)
    figure.add_argument("--P1", type=float, default=8.0)
    figure.add_argument("--out", required=True, help="output path or '-' for stdout")
    _common(figure)
    figure.set_defaults(func=cmd_figure)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"sqw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sqw: error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
