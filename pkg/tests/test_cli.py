import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from shiftbinom import cli


def run_cli(*args: str) -> subprocess.CompletedProcess:
    cmd = [sys.executable, "-m", "shiftbinom", *args]
    return subprocess.run(cmd, capture_output=True, text=True)


def test_help():
    cp = run_cli("--help")
    assert cp.returncode == 0
    for sub in ("verify", "coeffs", "seq", "compositions"):
        assert sub in cp.stdout


def test_verify_identity_passes():
    cp = run_cli("verify", "identity", "--r", "2", "--l", "1,1,1", "--p", "1", "--q", "5")
    assert cp.returncode == 0, cp.stderr
    rec = json.loads(cp.stdout.strip())
    assert rec["check"] == "identity"
    assert rec["pass"] is True
    assert rec["abs_err"] < 1e-10


def test_verify_odd_equality_exact():
    cp = run_cli("verify", "odd-equality", "--r", "2", "--l", "1,1", "--a-max", "9")
    assert cp.returncode == 0, cp.stderr
    lines = [json.loads(line) for line in cp.stdout.strip().splitlines()]
    assert len(lines) == 5  # A = 1, 3, 5, 7, 9
    assert all(rec["abs_err"] == "exact" and rec["pass"] for rec in lines)


def test_verify_cg():
    cp = run_cli("verify", "cg", "--n", "4", "--g", "3")
    assert cp.returncode == 0, cp.stderr
    rec = json.loads(cp.stdout.strip())
    assert rec["pass"] and rec["abs_err"] == "exact"


def test_verify_all_passes():
    cp = run_cli("verify", "all", "--r", "2", "--l", "1,1", "--p", "1", "--q", "3",
                 "--n", "3", "--g", "2", "--a-max", "5")
    assert cp.returncode == 0, cp.stderr
    lines = [json.loads(line) for line in cp.stdout.strip().splitlines()]
    names = {rec["check"] for rec in lines}
    assert {"identity", "odd-integral", "antisym-integral", "sum-rule", "cg"} <= names
    assert all(rec["pass"] for rec in lines)


def test_verify_failure_exits_1(monkeypatch):
    # force a wrong reference value through the library layer
    from shiftbinom import oracle

    def broken(spec, cut=199):
        return [{"check": "even-expansion", "lhs": 1.0, "rhs": 2.0, "abs_err": 1.0}]

    monkeypatch.setattr(oracle, "identity_report", broken)
    code = cli.main(["verify", "identity", "--r", "2", "--l", "1,1"])
    assert code == 1


def test_coeffs_even_support(tmp_path: Path):
    out = tmp_path / "even.csv"
    cp = run_cli("coeffs", "--family", "even", "--r", "2", "--l", "1,1", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "A,num,den,pi_exp,float"
    rows = [line.split(",") for line in lines[1:]]
    assert [(r[0], r[1]) for r in rows] == [("-2", "1"), ("0", "4"), ("2", "1")]
    assert all(r[3] == "0" for r in rows)


def test_coeffs_odd_range():
    cp = run_cli("coeffs", "--family", "odd", "--r", "2", "--l", "1,1",
                 "--a-min", "-5", "--a-max", "5")
    assert cp.returncode == 0, cp.stderr
    lines = cp.stdout.strip().splitlines()
    assert len(lines) == 7  # header + six odd A rows
    assert all(line.split(",")[3] == "2" for line in lines[1:])


def test_coeffs_rows_reparse_to_exact_values():
    from shiftbinom.sums import SumSpec, odd_A_coefficient_direct

    cp = run_cli("coeffs", "--family", "odd", "--r", "2", "--l", "1,1",
                 "--a-min", "1", "--a-max", "7", "--format", "json")
    assert cp.returncode == 0
    spec = SumSpec(r=2, l=(1, 1))
    for row in json.loads(cp.stdout):
        expect = odd_A_coefficient_direct(spec, row["A"])
        assert Fraction(int(row["num"]), int(row["den"])) == expect.coeff
        assert row["pi_exp"] == expect.scale_exp


def test_coeffs_wrong_parity_exits_2():
    cp = run_cli("coeffs", "--family", "odd", "--r", "2", "--l", "1,1",
                 "--a-min", "2", "--a-max", "2")
    assert cp.returncode == 2
    assert "parity" in cp.stderr


def test_coeffs_windowed_family_needs_m():
    cp = run_cli("coeffs", "--family", "shifted", "--r", "2", "--l", "1,1",
                 "--a-max", "4")
    assert cp.returncode == 2
    cp = run_cli("coeffs", "--family", "shifted", "--r", "2", "--l", "1,1",
                 "--a-max", "4", "--m", "3")
    assert cp.returncode == 0


def test_coeffs_empty_support_exits_0():
    # n = 0 walk: support is {0}; an explicit even range away from it still
    # emits rows (zero coefficients), exit 0
    cp = run_cli("coeffs", "--family", "even", "--r", "2", "--l", "0,0",
                 "--a-min", "4", "--a-max", "6")
    assert cp.returncode == 0
    lines = cp.stdout.strip().splitlines()
    assert [line.split(",")[1] for line in lines[1:]] == ["0", "0"]


def test_seq_pi_first_row():
    cp = run_cli("seq", "pi", "--l", "2", "--m", "1:5:1")
    assert cp.returncode == 0, cp.stderr
    lines = cp.stdout.strip().splitlines()
    assert lines[0] == "m,num,den,float,target,abs_error"
    first = lines[1].split(",")
    assert (first[0], first[1], first[2]) == ("1", "44", "15")


def test_seq_ratio_pi_zero_denominator_exits_2():
    cp = run_cli("seq", "ratio-pi", "--r", "2", "--l", "1,1", "--A", "0", "--m", "5")
    assert cp.returncode == 2
    assert "vanishes" in cp.stderr


def test_seq_pis_odd_rejects_half_shift():
    cp = run_cli("seq", "pis-odd", "--l", "1", "--s", "1/2", "--m", "5")
    assert cp.returncode == 2


def test_seq_agg_error_column_decreases():
    cp = run_cli("seq", "agg", "--n", "2", "--g", "2", "--r", "2", "--m", "0:16:4",
                 "--format", "json")
    assert cp.returncode == 0, cp.stderr
    rows = json.loads(cp.stdout)
    errs = [row["abs_error"] for row in rows]
    assert errs[-1] < errs[0]
    for row in rows:
        assert row["target"].startswith("pi^2*C(rn,rn/2)*C(gn,n)=")


def test_compositions_listing_and_check():
    cp = run_cli("compositions", "--n", "2", "--g", "2")
    assert cp.returncode == 0
    lines = cp.stdout.strip().splitlines()
    assert lines[0] == "parts,num,den"
    assert lines[1].split(",") == ["2", "1", "2"]
    assert lines[2] == '"1,1",1,1'
    cp = run_cli("compositions", "--n", "5", "--g", "3", "--check")
    assert cp.returncode == 0
    assert "pass" in cp.stderr


def test_compositions_bad_params_exit_2():
    assert run_cli("compositions", "--n", "0", "--g", "2").returncode == 2
    assert run_cli("compositions", "--n", "2", "--g", "1").returncode == 2


def test_determinism_byte_identical():
    a = run_cli("seq", "pi2", "--l", "2", "--m", "1:20:3")
    b = run_cli("seq", "pi2", "--l", "2", "--m", "1:20:3")
    assert a.stdout == b.stdout and a.stdout
    c = run_cli("coeffs", "--family", "antisym-exact", "--r", "2", "--l", "1,1,1")
    d = run_cli("coeffs", "--family", "antisym-exact", "--r", "2", "--l", "1,1,1")
    assert c.stdout == d.stdout and c.stdout


def test_workers_do_not_change_output():
    base = run_cli("seq", "cum", "--r", "2", "--l", "1,1", "--m", "0:12:1")
    par = run_cli("seq", "cum", "--r", "2", "--l", "1,1", "--m", "0:12:1",
                  "--workers", "3")
    assert base.returncode == par.returncode == 0
    assert base.stdout == par.stdout


def test_config_file_and_flag_override(tmp_path: Path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("r=2\nl=1,1\nm=1:3:1\nformat=json\n", encoding="utf-8")
    cp = run_cli("seq", "pi", "--l", "2", "--config", str(cfg))
    assert cp.returncode == 0, cp.stderr
    rows = json.loads(cp.stdout)  # format came from the file
    assert rows[0]["num"] == "44"  # --l 2 overrode the file's l=1,1
    assert [row["m"] for row in rows] == [1, 2, 3]
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense\n", encoding="utf-8")
    assert run_cli("seq", "pi", "--l", "2", "--m", "1", "--config", str(bad)).returncode == 2


def test_q_infinity_sentinel():
    cp = run_cli("verify", "identity", "--r", "2", "--l", "1,1", "--q", "inf")
    assert cp.returncode == 0
    rec = json.loads(cp.stdout.strip())
    assert rec["rhs"] == pytest.approx(6.0)


def test_json_mirrors_csv_fields():
    csv_run = run_cli("coeffs", "--family", "even", "--r", "2", "--l", "1,1")
    json_run = run_cli("coeffs", "--family", "even", "--r", "2", "--l", "1,1",
                       "--format", "json")
    header = csv_run.stdout.splitlines()[0].split(",")
    rows = json.loads(json_run.stdout)
    assert list(rows[0].keys()) == header
