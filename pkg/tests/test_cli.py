"""CLI surface: deterministic JSON reports, error payloads, exit codes."""

import json

import pytest

from syzkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_resolve_reports_are_byte_identical(capsys):
    args = ("resolve", "--builtin", "one-point", "--d", "1", "--m", "1")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first == second
    assert json.loads(first)["stages"][0]["chern"] == [1, -1, 0]


def test_resolve_three_points_golden(capsys, monkeypatch):
    monkeypatch.delenv("SYZKIT_PRIME", raising=False)
    code, out = run(capsys, "resolve", "--builtin", "three-points")
    assert code == 0
    rep = json.loads(out)
    assert rep["ambient"] == 2
    assert rep["identity_holds"] is True
    s0 = rep["stages"][0]
    assert (s0["m"], s0["dimV"], s0["rank"]) == (2, 18, 17)
    assert s0["chern"] == [1, -6, 33]
    assert s0["slope"] == "-2/17"
    assert rep["config"] == {"command": "resolve", "builtin": "three-points",
                             "mode": "numeric", "policy": "auto", "p": 32003,
                             "seed": "0", "format": "json"}


def test_resolve_chain_on_p3(capsys):
    code, out = run(capsys, "resolve", "--builtin", "line-p3")
    assert code == 0
    rep = json.loads(out)
    assert len(rep["stages"]) == 2
    assert rep["terminal"]["chern"] == [1, -1728, 1485953, -847837886]
    assert rep["residual"] == ["0", "0", "0", "0"]


def test_resolve_module_mode(capsys):
    code, out = run(capsys, "resolve", "--builtin", "one-point", "--d", "1",
                    "--m", "1", "--mode", "module")
    assert code == 0
    rep = json.loads(out)
    assert rep["stages"][0]["flags"]["locally_free"] == "locally-free"


def test_resolve_from_file(capsys, tmp_path):
    path = tmp_path / "z.txt"
    path.write_text("# three reduced points\nambient: 2\nd: 3\npoints:\n"
                    "1 0 0\n0 1 0\n0 0 1\n")
    code, out = run(capsys, "resolve", "--input", str(path))
    assert code == 0
    rep = json.loads(out)
    assert rep["subscheme"] == "custom"
    assert rep["stages"][0]["dimV"] == 18


def test_threshold_exit_and_hint(capsys):
    code, out = run(capsys, "resolve", "--builtin", "three-points", "--m", "1")
    assert code == 1
    payload = json.loads(out)
    assert payload["code"] == "threshold"
    assert payload["hint"] == ("raise --m (or drop it to let the twist "
                               "scan pick one)")
    assert payload["details"]["minimal_m"] == "2"


def test_verify_whitney(capsys):
    code, out = run(capsys, "verify", "whitney", "--trials", "25")
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] is True
    assert rep["failures"] == 0
    assert rep["trials"] == 25


def test_verify_genericity_pass_and_fail(capsys):
    code, out = run(capsys, "verify", "genericity", "--r", "1", "--n", "2",
                    "--v", "3", "--trials", "10")
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] is True
    assert rep["failure_probability_bound"] == "10/32003"
    code, out = run(capsys, "verify", "genericity", "--r", "1", "--n", "2",
                    "--v", "2", "--trials", "10")
    assert code == 1
    assert json.loads(out)["failures"] == 10


def test_verify_genericity_missing_args(capsys):
    code, out = run(capsys, "verify", "genericity")
    assert code == 1
    assert json.loads(out)["code"] == "input"


def test_verify_bezout(capsys):
    code, out = run(capsys, "verify", "bezout", "--m1", "2", "--m2", "6")
    assert code == 0
    rep = json.loads(out)
    assert rep["coefficients"] == [12, -1]
    assert rep["identity"] == "12*(2^2-1) + -1*(6^2-1) = 1"
    assert rep["pass"] is True


def test_verify_bezout_gcd_failure(capsys):
    code, out = run(capsys, "verify", "bezout", "--m1", "2", "--m2", "4")
    assert code == 1
    payload = json.loads(out)
    assert payload["code"] == "coprimality"
    assert payload["details"]["gcd"] == "3"


def test_verify_uniformity(capsys):
    code, out = run(capsys, "verify", "uniformity", "--d", "3", "--m", "1",
                    "--points", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["dimV"] == 9
    assert rep["chern"] == [1, -3, 8]
    assert rep["pass"] is True


def test_butler_table(capsys):
    code, out = run(capsys, "butler", "--g", "1", "--r", "1", "--deg", "9")
    assert code == 0
    rep = json.loads(out)
    assert rep["input"]["h0"] == 9
    assert rep["kernel"] == {"rank": 8, "degree": -9, "slope": "-9/8",
                             "stable_by_butler": True}
    assert rep["config"]["command"] == "butler"


def test_butler_boundary_exit(capsys):
    code, out = run(capsys, "butler", "--g", "1", "--r", "1", "--deg", "2")
    assert code == 1
    payload = json.loads(out)
    assert payload["code"] == "hypothesis-violation"
    assert payload["details"]["margin"] == "0"
    assert "hint" not in payload


def test_env_prime_is_honored(capsys, monkeypatch):
    monkeypatch.setenv("SYZKIT_PRIME", "101")
    code, out = run(capsys, "verify", "genericity", "--r", "1", "--n", "1",
                    "--v", "2", "--trials", "5")
    assert code == 0
    rep = json.loads(out)
    assert rep["p"] == 101
    assert rep["failure_probability_bound"] == "5/101"


def test_text_format(capsys):
    code, out = run(capsys, "butler", "--g", "2", "--r", "3", "--deg", "15",
                    "--format", "text")
    assert code == 0
    assert "kernel:" in out
    assert "slope: -5/3" in out


def test_unknown_suite_rejected_by_parser():
    with pytest.raises(SystemExit):
        main(["verify", "nonsense"])
    with pytest.raises(SystemExit):
        main(["resolve", "--builtin", "dodecahedron"])
