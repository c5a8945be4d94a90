import csv
import io
import json
import subprocess
import sys

import pytest

from sqwell.cli import TABLE_COLUMNS, main, render_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_solve_consistent_variant(capsys):
    code, out, _ = run(capsys, "solve", "--P", "10", "--n", "1", "--variant", "g4")
    assert code == 0
    (rec,) = rows(out)
    assert rec["variant"] == "g4"
    assert float(rec["y"]) == pytest.approx(0.10103, abs=5e-6)
    assert float(rec["eps"]) == pytest.approx(6.2730e-4, rel=1e-4)
    assert rec["unphysical"] == "false"


def test_solve_asymmetric_all(capsys):
    code, out, _ = run(capsys, "solve", "--P3", "10", "--P1", "8", "--n", "1", "--variant", "all")
    assert code == 0
    recs = {r["variant"]: r for r in rows(out)}
    assert list(recs) == ["exact", "g2", "g4", "g0", "best"]
    assert float(recs["exact"]["K"]) == pytest.approx(2.82264, abs=1e-5)
    assert float(recs["best"]["K"]) == pytest.approx(2.8201, abs=1e-4)
    assert float(recs["g4"]["K"]) == pytest.approx(2.8201, abs=1e-4)


def test_solve_level_above_n_max(capsys):
    code, out, err = run(capsys, "solve", "--P", "10", "--n", "9")
    assert code == 2
    assert out == ""
    assert err.strip().endswith("n exceeds n_max=7")
    assert len(err.strip().splitlines()) == 1


def test_solve_unknown_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve", "--P", "10", "--bogus"])
    assert info.value.code == 2


def test_solve_all_levels_marks_unphysical(capsys):
    code, out, _ = run(capsys, "solve", "--P", "10", "--variant", "g2")
    recs = rows(out)
    assert [int(r["n"]) for r in recs] == list(range(1, 8))
    assert recs[-1]["y"] == "unphysical" and recs[-1]["K"] == "unphysical"
    assert recs[-1]["unphysical"] == "true"


def test_solve_json_uses_null(capsys):
    code, out, _ = run(capsys, "solve", "--P", "10", "--n", "7", "--format", "json")
    assert code == 0
    recs = json.loads(out)
    assert [r["variant"] for r in recs] == ["exact", "g2", "g4", "g0", "barker"]
    g2 = recs[1]
    assert g2["y"] is None and g2["K"] is None and g2["unphysical"] is True
    assert "NaN" not in out


def test_solve_physical_units(capsys):
    code, out, _ = run(
        capsys, "solve", "--units", "natural", "--mass", "1", "--depth", "1", "--width", "1",
        "--n", "1", "--variant", "exact",
    )
    assert code == 0
    (rec,) = rows(out)
    assert float(rec["P"]) == pytest.approx(2.56158, abs=1e-5)
    K = float(rec["K"])
    assert float(rec["E_eV"]) == pytest.approx((K / (2 * 2.5615836114069967)) ** 2, rel=1e-5)


def test_solve_physical_asymmetric(capsys):
    code, out, _ = run(
        capsys, "solve", "--units", "natural", "--mass", "0.067", "--depth3", "0.3",
        "--depth1", "0.2", "--width", "10", "--variant", "exact",
    )
    assert code == 0
    recs = rows(out)
    assert recs and all(float(r["E_eV"]) < 0.2 for r in recs)


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--P", "10", "--P3", "10", "--P1", "8"],
        ["solve", "--P3", "10"],
        ["solve"],
        ["solve", "--P3", "10", "--P1", "8", "--variant", "barker"],
        ["solve", "--P", "10", "--variant", "best"],
        ["solve", "--P", "-1"],
        ["solve", "--P", "10", "--n", "x"],
        ["solve", "--units", "si", "--mass", "1", "--width", "1"],
        ["solve", "--P3", "10", "--P1", "0.01"],
        ["solve", "--P", "10", "--digits", "0"],
    ],
)
def test_solve_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_table_single_strength(capsys):
    code, out, _ = run(capsys, "table", "--P-list", "10")
    assert code == 0
    assert out.splitlines()[0] == ",".join(TABLE_COLUMNS)
    recs = rows(out)
    assert len(recs) == 7
    assert recs[-1]["eps2"] == "unphysical"


def test_table_range(capsys):
    code, out, _ = run(capsys, "table", "--P-range", "1:5")
    assert code == 0 and len(rows(out)) == 12


def test_table_unwritable_path(capsys):
    code, _, err = run(capsys, "table", "--P-list", "10", "--out", "/nonexistent/x.csv")
    assert code == 3 and "cannot write" in err


def test_table_to_file(tmp_path, capsys):
    path = tmp_path / "t.csv"
    assert main(["table", "--P-range", "1:10", "--out", str(path)]) == 0
    assert len(rows(path.read_text())) == 40


def test_table_needs_exactly_one_source(capsys):
    assert main(["table"]) == 2
    assert main(["table", "--P-list", "1", "--P-range", "1:2"]) == 2
    assert main(["table", "--P-range", "5:1"]) == 2


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--P-list", "2", "--format", "json")
    recs = json.loads(out)
    assert [r["n"] for r in recs] == [1, 2]
    assert recs[1]["eps2"] is None and recs[1]["y2"] is None


def test_digits_flag_and_env(capsys, monkeypatch):
    _, out, _ = run(capsys, "table", "--P-list", "10", "--digits", "17")
    y4 = float(rows(out)[0]["y4"])
    _, out, _ = run(capsys, "table", "--P-list", "10", "--digits", "3")
    assert rows(out)[0]["y4"] == "0.101"
    monkeypatch.setenv("SQW_DIGITS", "9")
    _, out, _ = run(capsys, "table", "--P-list", "10")
    assert rows(out)[0]["y4"] == f"{y4:.9g}"
    _, out, _ = run(capsys, "table", "--P-list", "10", "--digits", "4")
    assert rows(out)[0]["y4"] == f"{y4:.4g}"
    monkeypatch.setenv("SQW_DIGITS", "abc")
    assert main(["table", "--P-list", "10"]) == 2


def test_lowest_order_flag(capsys):
    _, exact, _ = run(capsys, "table", "--P-list", "1")
    _, trunc, _ = run(capsys, "table", "--P-list", "1", "--lowest-order", "truncated")
    assert float(rows(trunc)[0]["eps0"]) == pytest.approx(0.29156, rel=1e-4)
    assert float(rows(exact)[0]["eps0"]) != float(rows(trunc)[0]["eps0"])


def test_csv_round_trip(capsys):
    _, out, _ = run(capsys, "table", "--P-range", "1:10", "--digits", "17")
    parsed = list(csv.reader(io.StringIO(out)))
    header, body = parsed[0], parsed[1:]
    assert render_csv(header, [dict(zip(header, r)) for r in body], 17) == out


def test_figure_defaults(capsys):
    code, out, _ = run(capsys, "figure", "--out", "-")
    assert code == 0
    recs = rows(out)
    assert list(recs[0]) == ["series", "n", "value"]
    counts = {}
    for r in recs:
        counts[r["series"]] = counts.get(r["series"], 0) + 1
    assert counts == {"abs_eps4": 7, "abs_eps0": 7, "abs_eps2": 6, "eps_asym": 5}


def test_figure_other_wells(capsys):
    _, out, _ = run(capsys, "figure", "--P", "5", "--P3", "5", "--P1", "4", "--out", "-")
    counts = {}
    for r in rows(out):
        counts[r["series"]] = counts.get(r["series"], 0) + 1
    assert counts == {"abs_eps4": 4, "abs_eps0": 4, "abs_eps2": 3, "eps_asym": 3}


def test_figure_requires_out(capsys):
    with pytest.raises(SystemExit) as info:
        main(["figure"])
    assert info.value.code == 2


def test_figure_unwritable(capsys):
    assert main(["figure", "--out", "/nonexistent/dir/f.csv"]) == 3


def test_help_documents_exit_codes(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--help"])
    assert info.value.code == 0
    out = capsys.readouterr().out
    assert "exit status" in out and "3  output could not be written" in out


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "sqwell", "solve", "--P", "2", "--n", "1", "--variant", "exact"],
        capture_output=True, text=True, check=True,
    )
    assert rows(res.stdout)[0]["variant"] == "exact"
