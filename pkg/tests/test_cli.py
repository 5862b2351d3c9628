import json
import subprocess
import sys

import pytest

from padic_dynamo.cli import main


def run_json(capsys, *argv):
    code = main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    assert code == 0
    return json.loads(out)


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


def test_gleason_eight(capsys):
    rep = run_json(capsys, "gleason", "--p", "2", "--n", "8", "--center", "0",
                   "--radius-exp", "0", "--open")
    assert rep["roots_in_disk"] == 128 and rep["mod2_monomial"] is True
    assert rep["degree"] == 128


def test_gleason_one(capsys):
    rep = run_json(capsys, "gleason", "--p", "2", "--n", "1")
    assert rep["degree"] == 1 and rep["rational_roots"] == ["0"]


def test_gleason_five(capsys):
    rep = run_json(capsys, "gleason", "--p", "5", "--n", "2", "--open")
    assert rep["roots_in_disk"] == 1
    assert "mod2_monomial" not in rep or rep["mod2_monomial"] is None


def test_misiurewicz(capsys):
    rep = run_json(capsys, "misiurewicz", "--p", "2", "--m", "2", "--n", "3")
    # f^3(0) - f^2(0) = c^4 + 2c^3
    assert rep["coefficients"] == ["0", "0", "0", "2", "1"]
    assert rep["zero_root_multiplicity"] == 3 and rep["roots_in_disk"] == 4


def test_newton_json_and_csv(capsys):
    rep = run_json(capsys, "newton", "--p", "2", "--poly", "2,2,1")
    assert rep["segments"] == [{"length": 2, "slope": "-1/2"}]
    assert main(["newton", "--p", "2", "--poly", "8,0,4,1", "--csv"]) == 0
    assert capsys.readouterr().out.splitlines() == ["i,valuation,on_hull", "0,3,1", "2,2,0",
                                                    "3,0,1"]


def test_ex72(capsys):
    rep = run_json(capsys, "ex72", "--n", "1")
    assert rep["degree"] == 8 and rep["squarefree"] is True
    # the reduction vanishes to order 2 only; see the decisions ledger
    assert rep["ord_at_0_mod3"] == 2 and rep["claimed_lower_bound"] == 3


def test_ex72_cap(capsys):
    assert main(["ex72", "--n", "3"]) == 3


def test_ex73(capsys):
    rep = run_json(capsys, "ex73", "--p", "2")
    assert rep["multiplier"] == "27/4" and rep["multiplier_valuation"] == "-2"
    assert all(rep["identities"].values())


def test_lattes(capsys):
    rep = run_json(capsys, "lattes", "--lam", "2")
    assert rep["milnor"]["passes"] is True
    assert rep["milnor"]["strictly_postcritical_points"] == "{0, 1, 2, oo}"
    rep = run_json(capsys, "lattes", "--lam", "2", "--shift", "1")
    assert rep["milnor"]["strictly_postcritical_points"] == "{1, 2, 3, oo}"


@pytest.mark.parametrize("c, verdict", [("1/2", "Escapes"), ("-1", "PossiblyZero"),
                                        ("1", "NonzeroCertified")])
def test_verdict(capsys, c, verdict):
    p = "2" if c == "1/2" else "3"
    rep = run_json(capsys, "verdict", "--p", p, "--d", "2", "--c", c)
    assert rep["verdict"] == verdict
    if verdict == "Escapes":
        assert rep["escape_certificate"]["valuations"][:3] == ["-1", "-2", "-4"]


def test_stability(capsys):
    rep = run_json(capsys, "stability", "--p", "3", "--d", "2", "--center", "1")
    chains = {ch["critical_point"]: ch for ch in rep["chains"]}
    assert (chains["0"]["M"], chains["0"]["N"]) == (2, 3)


@pytest.mark.parametrize("argv", [
    ["gleason", "--p", "4", "--n", "2"],
    ["gleason", "--p", "2", "--n", "13"],
    ["lattes", "--lam", "1"],
    ["lattes", "--lam", "2", "--m", "4"],
    ["verdict", "--p", "3", "--c", "x/y"],
    ["nonsense"],
])
def test_config_errors_exit_two(argv, capsys):
    assert main(argv) == 2


def test_table_and_output_file(tmp_path, capsys):
    assert main(["ex73", "--p", "3", "--table"]) == 0
    assert "multiplier_valuation" in capsys.readouterr().out
    target = tmp_path / "out.json"
    assert main(["gleason", "--p", "2", "--n", "3", "--json", "-o", str(target)]) == 0
    assert json.loads(target.read_text())["degree"] == 4


def test_reports_are_deterministic_and_exact(capsys):
    argv = ["verdict", "--p", "3", "--c", "4", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    assert _no_floats(json.loads(first))


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "padic_dynamo.cli", "gleason", "--p", "2",
                          "--n", "2"], capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["roots_in_disk"] == 2
