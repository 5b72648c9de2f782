import json
import math

import pytest

from hilmod.cli import main


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_field_info_q5(capsys):
    rc, out, _ = run_cli(capsys, "field-info", "--field-d", "5")
    assert rc == 0
    data = json.loads(out)
    assert data["D"] == 5 and data["h"] == 1
    assert abs(data["regulator"] - 0.481212) < 1e-6


def test_field_info_rational_and_d6(capsys):
    rc, out, _ = run_cli(capsys, "field-info", "--field-d", "0")
    assert rc == 0 and json.loads(out)["D"] == 1
    rc, out, _ = run_cli(capsys, "field-info", "--field-d", "6")
    assert rc == 0 and json.loads(out)["D"] == 24


def test_field_info_unsupported(capsys):
    rc, _, err = run_cli(capsys, "field-info", "--field-d", "10")
    assert rc == 2 and "UnsupportedField" in err


def test_eval_zeta(capsys):
    rc, out, _ = run_cli(capsys, "eval", "zeta", "--field-d", "0", "--s", "2")
    assert rc == 0
    row = json.loads(out)
    assert abs(row["value_re"] - 1.6449340668) < 1e-9


def test_eval_phi_pole_row(capsys):
    rc, out, _ = run_cli(capsys, "eval", "phi", "--field-d", "0", "--s", "1")
    assert rc == 1
    assert json.loads(out)["error"] == "ScatteringPole"


def test_eval_eisenstein_two_methods(capsys):
    rc1, out1, _ = run_cli(capsys, "eval", "eisenstein-fourier", "--field-d", "0",
                           "--s", "1.5", "--z", "0.28,1.3")
    rc2, out2, _ = run_cli(capsys, "eval", "eisenstein-direct", "--field-d", "0",
                           "--s", "1.5", "--z", "0.28,1.3", "--norm-bound", "1e6")
    assert rc1 == rc2 == 0
    a = json.loads(out1)["value_re"]
    b = json.loads(out2)["value_re"]
    assert abs(a - b) <= 1e-6 * abs(a)


def test_check_pass_and_exit_codes(capsys):
    rc, out, _ = run_cli(capsys, "check", "bessel")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("check,")
    assert all(line.endswith("pass") for line in lines[1:])
    # absurd tolerance forces failure exit
    rc, out, _ = run_cli(capsys, "check", "bessel", "--tolerance", "1e-30")
    assert rc == 1


def test_check_functional_equation(capsys):
    rc, out, _ = run_cli(capsys, "check", "functional-equation", "--field-d", "-1")
    assert rc == 0


def test_equidist_deterministic_csv(tmp_path, capsys):
    cfg = {"schema": 1, "field_d": 0, "k_min": 3, "k_max": 6, "seed": 7}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    svg = tmp_path / "a.svg"
    rc, _, err1 = run_cli(capsys, "equidist", "--config", str(cfg_path),
                          "--out", str(out1), "--svg", str(svg))
    assert rc == 0
    rc, _, err2 = run_cli(capsys, "equidist", "--config", str(cfg_path),
                          "--out", str(out2))
    assert rc == 0
    assert out1.read_bytes() == out2.read_bytes()
    header = out1.read_text().splitlines()[0]
    assert header == "k,q,m_q,m,e,nodes"
    meta = json.loads(err1.strip().splitlines()[-1])
    assert meta["markers"] == {"unconditional": 0.5, "riemann_hypothesis": 0.75}
    svg_text = svg.read_text()
    assert svg_text.startswith("<svg") and "slope 0.75" in svg_text


def test_equidist_degenerate_flag(tmp_path, capsys):
    cfg = {"schema": 1, "field_d": 0, "k_min": 3, "k_max": 6,
           "amplitude": 0.0}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    rc, out, err = run_cli(capsys, "equidist", "--config", str(cfg_path))
    assert rc == 0
    meta = json.loads(err.strip().splitlines()[-1])
    assert meta["degenerate"] is True


def test_equidist_schema_guard(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"schema": 99}))
    rc, _, err = run_cli(capsys, "equidist", "--config", str(cfg_path))
    assert rc == 2
