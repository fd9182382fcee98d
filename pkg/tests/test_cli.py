"""
Testes da linha de comando (códigos de saída e formatos).
"""

import json
from fractions import Fraction

import pytest

from src.cli import EXIT_FAIL, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, main


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_gen_json(capsys):
    code, out = _run(capsys, "--no-timestamp", "gen", "--family", "xi", "--n", "1")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["coefficients"] == [{"t": 0, "num": "1", "den": "4"}]
    assert data["degree"] == 0
    assert data["value_at_1"] == "1/4"


def test_gen_json_metadata(capsys):
    code, out = _run(capsys, "--no-timestamp", "gen", "--family", "Xi", "--n", "2")
    data = json.loads(out)
    assert data["family"] == "Xi"
    assert data["degree"] == 2
    assert data["leading"] == "-1/16"
    assert data["value_at_0"] == "5/96"
    assert data["value_at_1"] == "-1/96"
    assert "timestamp" not in data["meta"]


def test_gen_csv(capsys):
    code, out = _run(capsys, "gen", "--family", "lambda", "--n", "1", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines()[1] == "0,1,7"


@pytest.mark.parametrize("n", ["0", "65"])
def test_gen_out_of_range(capsys, n):
    code, _ = _run(capsys, "gen", "--family", "xi", "--n", n)
    assert code == EXIT_USAGE


def test_bad_arguments_are_usage_errors(capsys):
    assert _run(capsys, "gen", "--family", "gamma", "--n", "1")[0] == EXIT_USAGE
    assert _run(capsys, "frobnicate")[0] == EXIT_USAGE


def test_gen_is_deterministic(capsys):
    first = _run(capsys, "--no-timestamp", "gen", "--family", "lambda", "--n", "6")[1]
    second = _run(capsys, "--no-timestamp", "gen", "--family", "lambda", "--n", "6")[1]
    assert first == second


def test_gen_to_file(tmp_path, capsys):
    path = tmp_path / "xi3.json"
    code, out = _run(capsys, "--out", str(path), "gen", "--family", "xi", "--n", "3")
    assert code == EXIT_OK
    assert out == ""
    assert len(json.loads(path.read_text(encoding="utf-8"))["coefficients"]) == 3


def test_roots_constant_polynomial(capsys):
    code, out = _run(capsys, "--no-timestamp", "roots", "--family", "xi", "--n", "1")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["roots"]["intervals"] == []
    assert data["suites"][0]["checks"][0]["status"] == "info"


def test_roots_lambda(capsys):
    code, out = _run(capsys, "--no-timestamp", "roots", "--family", "lambda", "--n", "2")
    assert code == EXIT_OK
    interval = json.loads(out)["roots"]["intervals"][0]
    assert 0 < Fraction(interval["lo"]) < Fraction(interval["hi"]) < 1


def test_roots_sorted(capsys):
    code, out = _run(capsys, "--no-timestamp", "roots", "--family", "lambda", "--n", "10", "--width-bits", "40")
    assert code == EXIT_OK
    intervals = json.loads(out)["roots"]["intervals"]
    assert len(intervals) == 9
    los = [Fraction(iv["lo"]) for iv in intervals]
    assert los == sorted(los)


def test_roots_cap(capsys):
    assert _run(capsys, "roots", "--family", "xi", "--n", "11")[0] == EXIT_USAGE


def test_verify_cap_without_force(capsys):
    assert _run(capsys, "verify", "--suite", "integral", "--n-max", "7")[0] == EXIT_USAGE
    assert _run(capsys, "verify", "--suite", "all", "--n-max", "11")[0] == EXIT_USAGE


def test_verify_exit_codes_follow_report(capsys, monkeypatch):
    from src import pipeline
    from src.reports import make_check, new_report

    def fake_flow(**kwargs):
        doc = new_report(with_timestamp=False)
        doc.add_suite("structural", [make_check("structural", "x", False)])
        return doc

    monkeypatch.setattr(pipeline, "verification_flow", fake_flow)
    code, out = _run(capsys, "verify", "--suite", "structural", "--n-max", "2")
    assert code == EXIT_FAIL
    assert json.loads(out)["meta"]["summary"]["fail"] == 1


def test_internal_errors_exit_three(capsys, monkeypatch):
    from src import cli

    def broken(*args, **kwargs):
        raise RuntimeError("quebrado")

    monkeypatch.setattr(cli, "build", broken)
    assert _run(capsys, "gen", "--family", "xi", "--n", "2")[0] == EXIT_INTERNAL


@pytest.mark.usefixtures("prefect_harness")
def test_verify_all_small(capsys):
    code, out = _run(capsys, "--no-timestamp", "--workers", "1", "verify", "--suite", "all", "--n-max", "2")
    assert code == EXIT_OK
    data = json.loads(out)
    names = [s["name"] for s in data["suites"]]
    assert names == ["eulerian", "structural", "pi_ratio", "properties", "roots", "integral"]
    assert data["meta"]["summary"]["fail"] == 0


def test_value_error_during_run_is_internal(capsys, monkeypatch):
    from src import cli

    def on_root(*args, **kwargs):
        raise ValueError("endpoint-on-root: extremo 1/2 continua raiz após deslocamentos")

    monkeypatch.setattr(cli, "root_report", on_root)
    assert _run(capsys, "roots", "--family", "lambda", "--n", "3")[0] == EXIT_INTERNAL
