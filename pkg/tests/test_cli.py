"""CLI behaviour: record schemas, round-tripping, exit codes."""
import csv
import io
import json
import math

import pytest

from latgreen.cli import main
from latgreen.green import green_local


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_eval_csv_schema_and_roundtrip(capsys):
    code, out = run_cli(capsys, "eval", "--d", "3", "--omega", "0.5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["d", "omega", "re", "im", "abs_error", "piece_j", "flags"]
    rec = rows[0]
    ref = green_local(3, 0.5)
    # 17 significant digits round-trip doubles exactly
    assert float(rec["re"]) == ref.value.real
    assert float(rec["im"]) == ref.value.imag
    assert int(rec["piece_j"]) == ref.piece_j
    assert rec["flags"] == ""


def test_eval_json_mirrors_fields(capsys):
    code, out = run_cli(capsys, "eval", "--d", "2", "--omega", "1.0",
                        "--format", "json")
    assert code == 0
    rec = json.loads(out)[0]
    assert rec["d"] == 2 and rec["omega"] == 1.0
    assert rec["flags"] == []
    assert rec["im"] < 0.0


def test_eval_divergent_exit_code_and_record(capsys):
    code, out = run_cli(capsys, "eval", "--d", "1", "--omega", "1")
    assert code == 2
    rec = next(csv.DictReader(io.StringIO(out)))
    assert float(rec["re"]) == math.inf
    assert float(rec["im"]) == -math.inf
    assert "divergent" in rec["flags"].split(";")
    assert "nonconverged" in rec["flags"].split(";")


def test_dos_subcommand(capsys):
    code, out = run_cli(capsys, "dos", "--d", "3", "--omega", "0")
    assert code == 0
    rec = next(csv.DictReader(io.StringIO(out)))
    assert float(rec["dos"]) == pytest.approx(0.8964407887768 / math.pi, abs=1e-12)


def test_sweep_stdout_order(capsys):
    code, out = run_cli(capsys, "sweep", "--d", "2", "--omega-min", "-1",
                        "--omega-max", "1", "--steps", "5",
                        "--rel-tol", "1e-10")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["omega"]) for r in rows] == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert rows[2]["flags"] != ""  # d=2 centre divergence flagged in-table


def test_sweep_out_file(tmp_path, capsys):
    path = tmp_path / "table.csv"
    code, _ = run_cli(capsys, "sweep", "--d", "1", "--omega-min", "-0.5",
                      "--omega-max", "0.5", "--steps", "3", "--out", str(path))
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 3


def test_sweep_bad_steps(capsys):
    code, _ = run_cli(capsys, "sweep", "--d", "1", "--omega-min", "0",
                      "--omega-max", "1", "--steps", "1")
    assert code == 1


def test_sweep_bad_out_path(capsys):
    code, _ = run_cli(capsys, "sweep", "--d", "1", "--omega-min", "0",
                      "--omega-max", "0.5", "--steps", "2",
                      "--out", "/nonexistent-dir/x.csv")
    assert code == 1


def test_moments_exact_integers(capsys):
    code, out = run_cli(capsys, "moments", "--d", "3", "--kmax", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["numerator"], r["denominator"]) for r in rows] == [
        ("1", "1"), ("3", "2"), ("45", "8")
    ]
    assert float(rows[2]["decimal"]) == 45.0 / 8.0


def test_moments_json(capsys):
    code, out = run_cli(capsys, "moments", "--d", "2", "--kmax", "2",
                        "--format", "json")
    assert code == 0
    recs = json.loads(out)
    assert recs[2]["numerator"] == 9 and recs[2]["denominator"] == 4


def test_malformed_flags_exit_one(capsys):
    assert main(["eval", "--d", "3"]) == 1          # missing --omega
    capsys.readouterr()
    assert main(["eval", "--d", "x", "--omega", "0"]) == 1
    capsys.readouterr()
    assert main(["nosuchcommand"]) == 1
    capsys.readouterr()
    assert main(["eval", "--d", "0", "--omega", "0"]) == 1
    capsys.readouterr()


def test_selftest_quick_passes(capsys):
    code, out = run_cli(capsys, "selftest", "--level", "quick")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == 4
    assert all(l.startswith("PASS") for l in lines)


def test_console_script_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "latgreen.cli", "eval", "--d", "1",
         "--omega", "0", "--format", "json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    rec = json.loads(proc.stdout)[0]
    assert rec["im"] == pytest.approx(-1.0, abs=1e-13)
