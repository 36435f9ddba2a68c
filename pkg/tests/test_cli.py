import csv
import io
import subprocess
import sys

import pytest

from cascade_noise.cli import run_cli

from conftest import FIXTURES

E1 = str(FIXTURES / "e1.chain")
E2 = str(FIXTURES / "e2.chain")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_compare_csv():
    code, out, err = run("compare", E1, "--format", "csv")
    assert code == 0 and err == ""
    rows = list(csv.DictReader(io.StringIO(out)))
    assert float(rows[1]["corrected_factor"]) == pytest.approx(31 / 30, rel=1e-12)


def test_compare_default_is_table():
    code, out, _ = run("compare", E1)
    assert code == 0
    assert out.splitlines()[0].split()[0] == "stage"


def test_analyze_table_and_csv():
    assert run("analyze", E2)[0] == 0
    code, out, _ = run("analyze", E2, "--format", "csv")
    assert code == 0
    assert out.startswith("stage,gain,added_noise,input_signal")


def test_analyze_missing_file():
    code, out, err = run("analyze", "missing.chain")
    assert code == 2
    assert out == ""
    assert "missing.chain" in err


@pytest.mark.parametrize("fixture, stage", [
    ("bad_both_gains.chain", 1),
    ("bad_unknown_member.chain", 2),
    ("bad_negative_gain.chain", 3),
])
def test_malformed_fixture_names_stage(fixture, stage):
    code, out, err = run("compare", str(FIXTURES / fixture))
    assert code == 2
    assert out == ""
    assert f"stage {stage}" in err


def test_syntax_error_exit_code():
    code, _, err = run("compare", str(FIXTURES / "bad_syntax.chain"))
    assert code == 2 and "line 4" in err


def test_unknown_subcommand_and_flag(capsys):
    assert run("frobnicate", E1)[0] == 2
    assert run("compare", E1, "--bogus")[0] == 2
    assert run("compare", E1, "--format", "xml")[0] == 2
    assert "usage" in capsys.readouterr().err


def test_sweep():
    code, out, _ = run("sweep", E1, "--target", "stages.2.added_noise", "--from", "0", "--to", "10", "--steps", "3")
    assert code == 0
    rows = [r for r in csv.DictReader(io.StringIO(out)) if r["stage"] == "2"]
    assert [float(r["value"]) for r in rows] == [0.0, 5.0, 10.0]
    assert float(rows[2]["corrected_factor"]) == pytest.approx(16 / 15, rel=1e-12)


def test_sweep_bad_target():
    code, out, err = run("sweep", E1, "--target", "stages.9.gain", "--from", "1", "--to", "2", "--steps", "2")
    assert code == 2 and out == "" and "stages.9.gain" in err
    assert run("sweep", E1, "--target", "source.noise", "--from", "1", "--to", "2", "--steps", "0")[0] == 2
    assert run("sweep", E1, "--target", "source.noise", "--from", "-1", "--to", "2", "--steps", "2")[0] == 2


def test_simulate_reports_band():
    code, out, _ = run("simulate", E2, "--samples", "1000000", "--seed", "42")
    assert code == 0
    assert "PASS" in out
    code, out, _ = run("simulate", E2, "--samples", "1000000", "--seed", "42", "--format", "csv")
    total = list(csv.DictReader(io.StringIO(out)))[-1]
    assert abs(float(total["estimate"]) - 1.555) <= 4 * float(total["standard_error"])


def test_simulate_bad_samples():
    code, _, err = run("simulate", E2, "--samples", "10")
    assert code == 2 and "sample_count" in err


def test_csv_identical_across_runs():
    a = run("simulate", E2, "--samples", "20000", "--seed", "1", "--format", "csv")[1]
    b = run("simulate", E2, "--samples", "20000", "--seed", "1", "--format", "csv")[1]
    assert a == b
    assert run("compare", E1, "--format", "csv")[1] == run("compare", E1, "--format", "csv")[1]


def test_output_file(tmp_path):
    target = tmp_path / "report.csv"
    code, out, _ = run("compare", E1, "--format", "csv", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_bytes() == run("compare", E1, "--format", "csv")[1].encode()


def test_subprocess_stdout_is_pure_csv():
    proc = subprocess.run([sys.executable, "-m", "cascade_noise", "compare", E1, "--format", "csv"],
                          capture_output=True)
    assert proc.returncode == 0
    assert proc.stderr == b""
    rows = list(csv.reader(io.StringIO(proc.stdout.decode())))
    assert rows[0][0] == "stage" and all(len(r) == len(rows[0]) for r in rows)
    proc = subprocess.run([sys.executable, "-m", "cascade_noise", "analyze", "nope.chain"], capture_output=True)
    assert proc.returncode == 2 and proc.stdout == b"" and b"nope.chain" in proc.stderr
