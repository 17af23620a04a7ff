import json

import pytest

from batteries import three_zeros_dfa
from starfree import __version__
from starfree import automata as fa
from starfree import cli


def run(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def report(capsys, *argv):
    status, out, err = run(capsys, *argv)
    return status, json.loads(out)


def test_repr_prints_digits(capsys):
    status, out, _ = run(capsys, "repr", "--system", "base:2", "--n", "74", "0")
    assert status == 0
    assert out.splitlines() == ["1001010", ""]
    status, out, _ = run(capsys, "repr", "--system", "bijective:2", "--word", "121")
    assert out.strip() == "9"


def test_repr_writes_report(capsys, tmp_path):
    cli.main(["repr", "--n", "74", "--out", str(tmp_path)])
    capsys.readouterr()
    saved = json.loads((tmp_path / "report.json").read_text())
    assert saved["result"]["lines"] == ["1001010"]
    assert saved["version"] == __version__ and saved["status"] == 0


def test_analyze_base_three_even_set(capsys):
    status, rep = report(capsys, "analyze", "--spec", "up:2N", "--system", "base:3")
    assert status == 0
    target = rep["result"]["targets"][0]
    assert target["aperiodicity"]["aperiodic"] is False
    assert target["aperiodicity"]["witness"]["word"] == [1]
    assert target["definiteness"]["definite"] is False


def test_analyze_inline_dfa_and_random(capsys):
    text = fa.dumps(fa.universal((0, 1)))
    status, rep = report(capsys, "analyze", "--dfa", text, "--random", "3", "--seed", "4")
    targets = rep["result"]["targets"]
    assert status == 0 and len(targets) == 4
    assert targets[0]["aperiodicity"]["aperiodic"] and targets[0]["definiteness"]["definite"]


def test_classify_six_n(capsys):
    status, rep = report(capsys, "classify", "--spec", "up:6N", "--probes", "2,3,6,12")
    category = rep["result"]["category"]
    assert status == 0
    assert category["tag"] == 2 and category["period"] == 6 and category["radical"] == 6


def test_build_and_group(capsys, tmp_path):
    status, rep = report(capsys, "build", "--spec", "up:2N", "--out", str(tmp_path))
    assert status == 0 and (tmp_path / "recognizer.json").exists()
    status, rep = report(capsys, "group", "--dfa", str(tmp_path / "recognizer.json"),
                         "--k", "2", "--horizon", "500")
    result = rep["result"]
    assert status == 0 and result["preserved"] and result["agreement"] == 501
    assert result["grouped"]["aperiodic"] and result["set_language"]


def test_expand_flags_discrepancy(capsys):
    status, rep = report(capsys, "expand", "--dfa", fa.dumps(three_zeros_dfa()), "--p", "2")
    result = rep["result"]
    assert status == 0
    assert result["source"]["aperiodic"] and not result["expanded"]["aperiodic"]
    assert result["expanded"]["witness"]["word"] == [0]
    assert result["discrepancy"]


def test_logic_verbs(capsys):
    status, rep = report(capsys, "logic", "eval", "--formula", "(E x (P 1 x))",
                         "--word", "000", "010")
    assert [r["value"] for r in rep["result"]["results"]] == [False, True]
    status, rep = report(capsys, "logic", "compile", "--formula", "(E x (P 1 x))")
    assert status == 0 and rep["result"]["aperiodicity"]["aperiodic"]
    status, rep = report(capsys, "logic", "translate", "--formula", "(E x (P 1 x))")
    assert rep["result"]["direction"] == "word-to-number"
    status, rep = report(capsys, "logic", "define-set", "--formula", "(A x (P 0 x))",
                         "--horizon", "20")
    assert status == 0 and rep["result"]["members"] == [0]


def test_padic_verbs(capsys, tmp_path):
    status, rep = report(capsys, "padic", "check", "--spec", "up:2N", "--p", "2")
    result = rep["result"]
    assert status == 0 and result["ary"]["aperiodic"] and result["adic"]["aperiodic"]
    even = fa.dumps(fa.explore((1, 2), 0, lambda q, a: a % 2, lambda q: q == 0))
    status, rep = report(capsys, "padic", "to-ary", "--dfa", even, "--p", "2",
                         "--out", str(tmp_path), "--emit", "json,dot")
    assert status == 0 and rep["result"]["aperiodicity"]["aperiodic"]
    assert (tmp_path / "ary.dot").read_text().startswith("digraph")
    status, rep = report(capsys, "padic", "to-adic", "--dfa", str(tmp_path / "ary.json"),
                         "--p", "2")
    assert status == 0 and rep["result"]["automaton"]["alphabet"] == [1, 2]


@pytest.mark.parametrize("argv", [
    ["repr", "--system", "base:1", "--n", "3"],
    ["classify", "--spec", "up:6N", "--probes", "1,2"],
    ["classify", "--spec", "nonsense"],
    ["group", "--dfa", "{not json", "--k", "2"],
    ["logic", "eval", "--formula", "(E x", "--word", "1"],
    ["analyze"],
    ["analyze", "--random", "2", "--emit", "svg"],
    ["classify", "--spec", "up:2N", "--horizon", "0"],
    ["padic", "check", "--spec", "up:2N"],
])
def test_input_errors_exit_one(capsys, argv):
    status, _, err = run(capsys, *argv)
    assert status == 1 and err


def test_mismatch_exits_two(capsys, monkeypatch):
    from starfree import padic as pa
    monkeypatch.setattr(pa, "to_adic", lambda dfa, p: fa.explore(
        tuple(range(1, p + 1)), 0, lambda q, a: 1 - q, lambda q: q == 0))
    status, out, err = run(capsys, "padic", "check", "--spec", "up:2N", "--p", "2")
    assert status == 2 and "check failed" in err
    assert json.loads(out)["result"]["kind"] == "VerdictMismatch"


def test_reports_are_deterministic(capsys):
    argv = ["analyze", "--spec", "up:6N", "--random", "5", "--seed", "9"]
    first, second = report(capsys, *argv)[1], report(capsys, *argv)[1]
    first.pop("elapsed_seconds"), second.pop("elapsed_seconds")
    assert cli.dumps(first) == cli.dumps(second)


def test_verify_saved_report(capsys, tmp_path):
    cli.main(["analyze", "--spec", "up:2N", "--system", "base:3", "--out", str(tmp_path)])
    capsys.readouterr()
    path = tmp_path / "report.json"
    status, rep = report(capsys, "verify", "--report", str(path))
    assert status == 0 and rep["result"]["witnesses_checked"] == 1
    saved = json.loads(path.read_text())
    saved["result"]["targets"][0]["aperiodicity"]["witness"]["word"] = [0]
    path.write_text(json.dumps(saved))
    status, _, err = run(capsys, "verify", "--report", str(path))
    assert status == 2 and "does not permute" in err


def test_out_directory_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "env"))
    assert cli.main(["build", "--spec", "finite:1,5"]) == 0
    capsys.readouterr()
    assert (tmp_path / "env" / "report.json").exists()
