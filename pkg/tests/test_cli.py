import io
import json
import sys

from jmult.cli import main

M2 = "ring char=32003 vars=x,y\nideal x^2,x*y,y^2\n"
FAMILY = "ring char=32003 vars=x,y\nmod x^3-x^2*y\nideal x*y\n"


def run_cli(capsys, monkeypatch, cmd, text, *extra):
    monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    code = main([cmd, "-", *extra])
    out = capsys.readouterr().out
    return code, out


def test_coeffs_json_schema(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, "coeffs", M2)
    rep = json.loads(out)
    assert list(rep.keys()) == ["input", "seed", "char", "hypotheses",
                                "results", "diagnostics"]
    assert rep["char"] == 32003
    assert rep["results"]["j"] == [4, 1, 0]
    assert rep["results"]["routes"]["fit"] == [4, 1, 0]
    assert rep["diagnostics"] == []
    assert code == 0


def test_family_coeffs_exit_code_and_flags(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, "coeffs", FAMILY)
    rep = json.loads(out)
    assert rep["results"]["j"] == [2, 1]
    assert rep["hypotheses"]["residual_surrogate"]["passed"] is False
    assert rep["hypotheses"]["analytic_spread"] == 1
    assert code == 3


def test_parse_error_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("ideal x\n"))
    code = main(["coeffs", "-"])
    err = capsys.readouterr().err
    assert code == 2
    assert "line 1" in err


def test_reduction_command(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, "reduction",
                        "ring char=32003 vars=x,y\nideal x,y\n")
    rep = json.loads(out)
    assert rep["results"]["r"] == 0
    assert code == 0


def test_determinism_byte_identical(capsys, monkeypatch):
    _, out1 = run_cli(capsys, monkeypatch, "coeffs", M2, "--seed", "5")
    _, out2 = run_cli(capsys, monkeypatch, "coeffs", M2, "--seed", "5")
    assert out1 == out2
    _, out3 = run_cli(capsys, monkeypatch, "coeffs", M2, "--seed", "6")
    assert json.loads(out3)["results"]["j"] == [4, 1, 0]


def test_table_format(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, "hilbert", M2,
                        "--format", "table")
    assert "values" in out and ":" in out
    assert code == 0
    # aligned key column
    lines = [l for l in out.splitlines() if l.strip().startswith("seed")]
    assert lines


def test_oracle_command(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, "oracle", M2)
    rep = json.loads(out)
    assert rep["results"]["classical_coefficients"] == [4, 1, 0]
    assert rep["results"]["colength"] == 3
    assert code == 0
    code, out = run_cli(capsys, monkeypatch, "oracle",
                        "ring char=32003 vars=x,y\nideal x+y^2\n")
    assert code == 2


def test_oracle_flag_cross_check(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, "coeffs", M2, "--oracle")
    rep = json.loads(out)
    assert rep["results"]["oracle"]["agrees"] is True
    assert code == 0


def test_seed_flag_controls_elements(capsys, monkeypatch):
    _, out1 = run_cli(capsys, monkeypatch, "reduction", M2, "--seed", "1")
    _, out2 = run_cli(capsys, monkeypatch, "reduction", M2, "--seed", "2")
    e1 = json.loads(out1)["results"]["elements"]
    e2 = json.loads(out2)["results"]["elements"]
    assert e1 != e2


def test_file_input(tmp_path, capsys):
    f = tmp_path / "prob.txt"
    f.write_text(M2)
    code = main(["jmult", str(f)])
    out = capsys.readouterr().out
    rep = json.loads(out)
    assert rep["results"]["j0"] == 4
    assert code == 0


def test_missing_file(capsys):
    code = main(["coeffs", "/nonexistent/file.txt"])
    assert code == 2


def test_assert_flags_echoed(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, "depthcheck", M2, "--assert-an")
    rep = json.loads(out)
    assert rep["hypotheses"]["flags"]["an_asserted"] is True
    assert "holds" in rep["results"]["depth_verdict"]
