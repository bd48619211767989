import json
import math
from fractions import Fraction

import pytest

import hydrogrid.coordinate as coordinate
from hydrogrid.cli import RunConfig, main, run
from hydrogrid.coordinate import ZeroPivotError


def _read(path):
    return path.read_text(encoding="utf-8")


def test_spectrum_csv_exact(tmp_path):
    out = tmp_path / "spectrum.csv"
    assert main(["spectrum", "--delta", "1", "--n", "1..2", "--mode", "exact",
                 "--output", "csv", "--out", str(out)]) == 0
    lines = _read(out).splitlines()
    assert lines[0] == "n,mu,E,q"
    assert lines[1] == "1,0+1√2,1-1√2,-1+1√2"
    assert lines[2].startswith("2,0+1√(5/4)")


def test_spectrum_json_exact_schema(tmp_path):
    out = tmp_path / "spectrum.json"
    assert main(["spectrum", "--delta", "1/2", "--n", "1..1",
                 "--output", "json", "--out", str(out)]) == 0
    payload = json.loads(_read(out))
    row = payload["rows"][0]
    assert row["mu"] == {"a": "0", "b": "1", "D": "5/4"}
    assert payload["delta"] == "1/2"


def test_spectrum_float_mode(tmp_path):
    out = tmp_path / "spectrum.csv"
    assert main(["spectrum", "--delta", "1", "--n", "1..1", "--mode", "float",
                 "--out", str(out)]) == 0
    row = _read(out).splitlines()[1].split(",")
    assert float(row[1]) == math.sqrt(2)
    assert float(row[2]) == pytest.approx(1 - math.sqrt(2), abs=1e-15)


def test_wavefunction_table(tmp_path):
    out = tmp_path / "wf.csv"
    assert main(["wavefunction", "--delta", "1", "--n", "1..1",
                 "--kmax", "3", "--out", str(out)]) == 0
    lines = _read(out).splitlines()
    assert lines[0] == "n,k,u"
    assert lines[1] == "1,1,-1+1√2"
    assert lines[2] == "1,2,6-4√2"


def test_pollaczek_table(tmp_path):
    out = tmp_path / "poll.json"
    assert main(["pollaczek", "--delta", "1", "--n", "0..0", "--jmax", "2",
                 "--output", "json", "--out", str(out)]) == 0
    rows = json.loads(_read(out))["rows"]
    assert rows[0]["P"] == {"a": "1", "b": "0", "D": "0"}
    assert rows[2]["P"] == {"a": "9", "b": "-6", "D": "2"}


def test_coeffs_table(tmp_path):
    out = tmp_path / "coeffs.csv"
    assert main(["coeffs", "--delta", "1", "--n", "3..3", "--kmax", "4",
                 "--out", str(out)]) == 0
    text = _read(out)
    lines = text.splitlines()
    assert lines[0].startswith("n,k,m,")
    # assembled alpha_{n-2} at n=3, delta=1 is 31/27
    k2_rows = [ln for ln in lines if ln.startswith("3,2,")]
    assert any(",31/27," in ln for ln in k2_rows)


def test_converge_sweep(tmp_path):
    out = tmp_path / "conv.csv"
    assert main(["converge", "--n", "1..1", "--deltas", "1/10,1/20",
                 "--out", str(out)]) == 0
    lines = _read(out).splitlines()
    assert lines[0] == "n,delta,E,E_plus_continuum,ratio_to_delta_sq"
    first = lines[1].split(",")
    assert first[:2] == ["1", "1/10"]
    assert float(first[2]) == pytest.approx(-0.4987562112089027, abs=1e-15)
    # ratio tends to 1/(8 n^4) = 0.125; next series term is -delta^2/16
    assert float(first[4]) == pytest.approx(0.125, rel=6e-3)


def test_determinism_byte_identical(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    args = ["pollaczek", "--delta", "2/3", "--n", "0..2", "--jmax", "8",
            "--output", "json"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_out_dir_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("HYDROGRID_OUT_DIR", str(tmp_path))
    assert main(["spectrum", "--n", "1..1", "--out", "sub/spec.csv"]) == 0
    assert (tmp_path / "sub" / "spec.csv").exists()


def test_stdout_default(capsys):
    assert main(["spectrum", "--delta", "1", "--n", "1..1"]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("n,mu,E,q")


def test_float_literal_rejected_in_exact_mode(capsys):
    assert main(["spectrum", "--delta", "1e-2", "--n", "1..1"]) == 2
    err = capsys.readouterr().err
    assert "usage" in err
    assert "rational" in err


def test_float_literal_allowed_in_float_mode(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["spectrum", "--delta", "1e-1", "--mode", "float",
                 "--n", "1..1", "--out", str(out)]) == 0


def test_decimal_string_is_exact():
    cfg_half = RunConfig(command="spectrum", delta=Fraction(1, 2))
    assert cfg_half.delta == Fraction("0.5")


def test_invalid_flags_exit_nonzero():
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--mode", "fancy"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["no-such-command"])


def test_bad_range_rejected(capsys):
    assert main(["spectrum", "--n", "5..2"]) == 2


def test_domain_error_exit_code(capsys):
    assert main(["spectrum", "--delta", "0", "--n", "1..1"]) == 2
    assert "error" in capsys.readouterr().err


def test_zero_pivot_diagnostic_exit(monkeypatch, capsys):
    def broken_alpha_inner(n, kmax):
        raise ZeroPivotError(n, 2, 1)

    monkeypatch.setattr("hydrogrid.cli.alpha_inner", broken_alpha_inner)
    code = run(RunConfig(command="coeffs", delta=Fraction(1), n_lo=5, n_hi=5,
                         k_max=4))
    assert code == 3
    err = capsys.readouterr().err
    assert "n=5" in err and "k=2" in err and "m=1" in err


def test_verify_report_small(tmp_path, capsys):
    out = tmp_path / "verify.json"
    code = main(["verify", "--delta", "1/2", "--n", "1..4", "--kmax", "10",
                 "--output", "json", "--out", str(out)])
    assert code == 0
    report = json.loads(_read(out))
    assert report["all_passed"] is True
    assert all(report["checks"].values())
    diag = report["diagnostics"]
    assert "p1_initial_condition" in diag
    assert "trig_per_degree_ratios" in diag
    # the literal-sum ratio has no theta-independent per-degree constant
    spreads = diag["trig_per_degree_ratios"]["literal_ratio_spread_per_degree"]
    assert any(s > 1e-3 for s in spreads.values())
    err = capsys.readouterr().err
    assert "overall: PASS" in err


def test_verify_csv_output(tmp_path):
    out = tmp_path / "verify.csv"
    code = main(["verify", "--delta", "1", "--n", "1..3", "--kmax", "8",
                 "--output", "csv", "--out", str(out)])
    assert code == 0
    lines = _read(out).splitlines()
    assert lines[0] == "check,passed"
    assert all(ln.endswith(",true") for ln in lines[1:])
