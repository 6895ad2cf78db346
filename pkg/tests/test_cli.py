"""End-to-end CLI behaviour via subprocesses, plus exit-code mapping."""

import subprocess
import sys

import pytest

import sdnavail.cli as cli
from sdnavail import scenarios
from sdnavail.dynamics import NumericalError
from sdnavail.scenarios import CSV_HEADER
from sdnavail.topology import serialize

from _topologies import reduced_case


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "sdnavail.cli", *args], capture_output=True
    )


def test_eval_default_case():
    r = run_cli("eval")
    assert r.returncode == 0
    assert r.stderr == b""
    lines = r.stdout.decode().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2
    assert lines[1].startswith("3,1,1,1,1,")


def test_eval_case_and_alpha_flags():
    base = run_cli("eval", "--case", "3")
    bumped = run_cli("eval", "--case", "3", "--alpha-O", "10")
    assert base.returncode == bumped.returncode == 0
    u = lambda r: float(r.stdout.decode().splitlines()[1].split(",")[5])
    assert u(bumped) > u(base)


def test_eval_invalid_case():
    r = run_cli("eval", "--case", "9")
    assert r.returncode == 1
    assert r.stdout == b""
    assert "valid range 1..8" in r.stderr.decode()


def test_eval_modes_differ():
    sdn = run_cli("eval", "--case", "3", "--mode", "sdn")
    trad = run_cli("eval", "--case", "3", "--mode", "traditional")
    u = lambda r: float(r.stdout.decode().splitlines()[1].split(",")[5])
    assert u(sdn) > u(trad)


def test_eval_topology_file(tmp_path):
    path = tmp_path / "net.topo"
    path.write_text(serialize(reduced_case(3)), encoding="utf-8")
    r = run_cli("eval", "--topology", str(path))
    assert r.returncode == 0
    assert r.stdout.decode().splitlines()[1].startswith("0,")
    # the built-in case table only applies to the built-in topology
    r = run_cli("eval", "--topology", str(path), "--case", "3")
    assert r.returncode == 1
    assert r.stdout == b""


def test_eval_missing_topology_file():
    r = run_cli("eval", "--topology", "/nonexistent/net.topo")
    assert r.returncode == 1
    assert r.stdout == b""


def test_eval_monte_carlo_flags():
    r = run_cli("eval", "--case", "3", "--samples", "5000", "--seed", "7")
    assert r.returncode == 0
    row = r.stdout.decode().splitlines()[1].split(",")
    assert row[6] == "monte-carlo"
    assert row[7] != "" and row[8] != ""
    # seed without samples is a contradiction
    r = run_cli("eval", "--case", "3", "--seed", "7")
    assert r.returncode == 1
    assert "--samples" in r.stderr.decode()


def test_help_screens_render():
    assert run_cli("--help").returncode == 0
    for sub in ("eval", "sweep", "cases", "locations", "cutsets", "mc-check"):
        r = run_cli(sub, "--help")
        assert r.returncode == 0, sub
        assert b"usage" in r.stdout


def test_unknown_flag_rejected():
    r = run_cli("eval", "--frobnicate")
    assert r.returncode == 1
    assert r.stdout == b""
    assert "usage" in r.stderr.decode()


def test_out_file_keeps_stdout_clean(tmp_path):
    out = tmp_path / "table.csv"
    r = run_cli("eval", "--case", "3", "--out", str(out))
    assert r.returncode == 0
    assert r.stdout == b""
    text = out.read_bytes()
    assert text.startswith(CSV_HEADER.encode())
    assert b"\r" not in text


def test_sweep_flags():
    r = run_cli("sweep", "--case", "3", "--axis", "alpha_O", "--grid", "0.1,1,10")
    assert r.returncode == 0
    lines = r.stdout.decode().splitlines()
    assert len(lines) == 4
    assert [float(l.split(",")[3]) for l in lines[1:]] == [0.1, 1.0, 10.0]


def test_sweep_spec_file(tmp_path):
    spec = tmp_path / "study.spec"
    spec.write_text(
        "sweep case=3 axis=alpha_O grid=0.5,1 method=exact\n"
        "location pairs=BRG:TRD alpha_O=0.2\n",
        encoding="utf-8",
    )
    r = run_cli("sweep", "--spec", str(spec))
    assert r.returncode == 0
    assert len(r.stdout.decode().splitlines()) == 4
    # spec excludes inline flags
    r = run_cli("sweep", "--spec", str(spec), "--case", "3")
    assert r.returncode == 1
    r = run_cli("sweep", "--spec", str(spec), "--samples", "10")
    assert r.returncode == 1


def test_sweep_needs_case_or_spec():
    r = run_cli("sweep")
    assert r.returncode == 1
    r = run_cli("sweep", "--case", "3", "--axis", "alpha_O", "--grid", "fast")
    assert r.returncode == 1


def test_cases_table():
    r = run_cli("cases")
    assert r.returncode == 0
    lines = r.stdout.decode().splitlines()
    assert len(lines) == 10
    assert [l.split(",")[0] for l in lines[1:]] == ["1", "2", "3", "4", "5", "6", "7", "8", "0"]


def test_locations_table():
    r = run_cli("locations")
    assert r.returncode == 0
    lines = r.stdout.decode().splitlines()
    assert len(lines) == 5
    assert all(float(l.split(",")[3]) == 0.2 for l in lines[1:])
    r = run_cli("locations", "--pairs", "BRG:TRD")
    assert len(r.stdout.decode().splitlines()) == 2
    r = run_cli("locations", "--pairs", "BRG")
    assert r.returncode == 1


def test_cutsets_output():
    r = run_cli("cutsets", "--case", "8", "--max-order", "1")
    assert r.returncode == 0
    lines = r.stdout.decode().splitlines()
    assert lines[0] == "order,components"
    assert "1,SC1" in lines[1:]
    r = run_cli("cutsets", "--case", "3", "--max-order", "1")
    assert r.stdout.decode().splitlines() == ["order,components"]


def test_mc_check_verdict_and_determinism():
    args = ("mc-check", "--case", "3", "--samples", "200000", "--seed", "42")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    lines = first.stdout.decode().splitlines()
    assert lines[0] == "exact,estimate,std_error,ci99_low,ci99_high,verdict"
    assert lines[1].endswith(",PASS")


def test_exit_code_two_on_numeric_failure(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise NumericalError("residual blew up")

    monkeypatch.setattr(scenarios, "evaluate_topology", boom)
    assert cli.main(["eval", "--case", "3"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "numeric failure" in captured.err


def test_main_returns_zero_in_process(capsys):
    assert cli.main(["cutsets", "--case", "8", "--max-order", "1"]) == 0
    captured = capsys.readouterr()
    assert "1,SC1" in captured.out
    assert captured.err == ""
