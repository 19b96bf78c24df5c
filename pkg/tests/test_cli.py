import json
import subprocess
import sys

import pytest

from carnot.catalog import DEFAULT_INSTANCES
from carnot.cli import main, run_command


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def heis3(tmp_path, capsys):
    path = tmp_path / "heis3.alg"
    assert main(["catalog", "--emit", "heisenberg:3", "-o", str(path)]) == 0
    capsys.readouterr()
    return str(path)


@pytest.mark.parametrize("spec", DEFAULT_INSTANCES)
def test_emit_then_validate(spec, tmp_path, capsys):
    path = tmp_path / "a.alg"
    assert run(["catalog", "--emit", spec, "-o", str(path)], capsys)[0] == 0
    assert run(["validate", str(path)], capsys)[0] == 0


def test_rigidity_witness(heis3, capsys):
    code, out, _ = run(["rigidity", heis3, "--witness"], capsys)
    assert code == 0
    assert "NonrigidRankOne" in out and "witness: X1" in out


def test_prolong_table(heis3, capsys):
    code, out, _ = run(
        ["prolong", heis3, "--g0", "conformal", "--restricted", "--max", "6", "--table", "--change-of-basis", "su12"], capsys
    )
    assert code == 0
    assert "g_0: dim 2" in out and "g_2: dim 1" in out
    assert out.count("terminated at level 3") == 1
    row = next(line for line in out.splitlines() if line.strip().startswith("Xb1 |"))
    assert row.split("|")[1].split() == ["-2X2", "H1", "-3H2", "Xb1", "Xb2", "0", "-2Yb", "0"]


def test_prolong_json_table(heis3, capsys):
    code, out, _ = run(
        ["--json", "prolong", heis3, "--g0", "conformal", "--restricted", "--table", "--change-of-basis", "su12"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["level_dims"] == [2, 2, 1, 0]
    names = doc["result"]["table"]["basis"]
    entries = doc["result"]["table"]["entries"]
    assert entries[names.index("Y")][names.index("Yb")] == {"H1": "2"}


def test_ss_exit_codes(capsys):
    code, out, _ = run(["ss", "--builtin", "co:3", "--max", "4"], capsys)
    assert code == 0 and "FiniteType(2)" in out
    assert "g_0: dim 4" in out and "g_1: dim 3" in out and "g_2: dim 0" in out
    code, out, _ = run(["ss", "--builtin", "co:2", "--max", "4"], capsys)
    assert code == 2 and "UndeterminedUpTo(4)" in out


def test_ss_matrices_file(tmp_path, capsys):
    path = tmp_path / "m.txt"
    path.write_text("0 1\n-1 0\n")
    code, out, _ = run(["ss", "--matrices", str(path), "--max", "3"], capsys)
    assert code == 0 and "FiniteType(1)" in out


def test_grading_violation_exit_1(tmp_path, capsys):
    path = tmp_path / "bad.alg"
    path.write_text("name bad\nstratum 1: X1 X2\nstratum 2: Y\nbracket [X1,X2] = X1\n")
    code, _, err = run(["validate", str(path)], capsys)
    assert code == 1 and "GradingFailure" in err
    code, _, _ = run(["rigidity", str(path)], capsys)
    assert code == 1


def test_missing_file_exit_1(capsys):
    assert run(["derive", "/nonexistent/file.alg"], capsys)[0] == 1


def test_cap_exit_2(heis3, capsys):
    code, out, _ = run(["prolong", heis3, "--max", "2"], capsys)
    assert code == 2 and "cap reached" in out


def test_gb_budget_exit_2(tmp_path, capsys, monkeypatch):
    path = tmp_path / "e.alg"
    main(["catalog", "--emit", "engel", "-o", str(path)])
    capsys.readouterr()
    monkeypatch.setenv("CARNOT_MAX_GB_STEPS", "0")
    assert run(["rigidity", str(path)], capsys)[0] == 2


def test_structured_output_deterministic(heis3, capsys):
    first = run(["--json", "rigidity", heis3, "--witness", "--cross-check"], capsys)[1]
    second = run(["--json", "rigidity", heis3, "--witness", "--cross-check"], capsys)[1]
    assert first == second
    doc = json.loads(first)
    assert {"verdict", "criterion", "witness", "gb_stats"} <= set(doc["result"])
    assert doc["input_digest"].startswith("sha256:")
    assert "timing_seconds" not in doc


def test_derive_variants(heis3, capsys):
    assert "g0(heisenberg3): dim 4" in run(["derive", heis3], capsys)[1]
    assert "h0(heisenberg3): dim 3" in run(["derive", heis3, "--h0"], capsys)[1]
    assert "conformal(heisenberg3): dim 2" in run(["derive", heis3, "--conformal"], capsys)[1]


def test_gaussian_witness_json(tmp_path, capsys):
    path = tmp_path / "c.alg"
    main(["catalog", "--emit", "complex_heisenberg_real", "-o", str(path)])
    capsys.readouterr()
    doc = json.loads(run(["--json", "rigidity", str(path), "--witness"], capsys)[1])
    assert doc["result"]["witness"]["coordinates"][:2] == ["1", ["0", "1"]]


def test_internal_error_exit_3(monkeypatch):
    import carnot.cli as cli

    def boom(args, report):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli.COMMANDS, "catalog", boom)
    code, report, _ = run_command(["catalog", "--list"])
    assert code == 3 and report.status == "internal-error"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "carnot", "catalog", "--list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "heisenberg:3" in proc.stdout
