import json
import subprocess
import sys

import pytest

from kfloer import cli
from kfloer.cli import EXIT_CONVENTION, EXIT_INPUT, EXIT_OK, RunConfig, main, run
from kfloer.errors import ConventionError
from kfloer.parallel import pmap, thread_cap
from kfloer.pdfile import parse_pd_text, read_pd_file, write_pd_file

from conftest import TREFOIL, fixture_path


def kf(*args):
    return main([str(a) for a in args])


def test_invariants_trefoil(capsys):
    assert kf("invariants", fixture_path("trefoil")) == EXIT_OK
    out = capsys.readouterr().out
    assert "det 3" in out and "signature -2" in out and "H1 (3)" in out


def test_dinv_definite_trefoil(capsys):
    assert kf("dinv", "--definite", fixture_path("trefoil")) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1/6 · (−3 + x + x²)"


def test_states_count_fig4(capsys):
    assert kf("states", fixture_path("fig4-unknot"), "--count") == EXIT_OK
    assert capsys.readouterr().out.strip() == "5"


def test_try_markings_fig4(capsys):
    assert kf("dinv", "--try-markings", fixture_path("fig4-unknot"), "--format", "json") == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["text"] == "0" and doc["result"]["markings"]


def test_inline_code_and_coloring_alias(capsys):
    assert kf("invariants", "--code", TREFOIL, "--coloring", "black", "--format", "json") == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["determinant"] == 3
    assert doc["config"]["coloring"] == "black"


@pytest.mark.parametrize("sub", [["gradings"], ["e1"], ["arrows"], ["check-delta"], ["domains", "--pair", "0", "1"],
                                 ["states", "--solitary-only"], ["dinv", "--hint-lspace", "--ascii"]])
def test_subcommands_run(sub, capsys):
    assert kf(*sub, fixture_path("switched-trefoil")) == EXIT_OK
    assert capsys.readouterr().out.strip()


def test_json_round_trip_is_byte_identical(tmp_path, capsys):
    assert kf("dinv", "--hint-lspace", "--try-markings", fixture_path("9_47"), "--format", "json") == EXIT_OK
    first = capsys.readouterr().out
    report = tmp_path / "report.json"
    report.write_text(first)
    assert kf("replay", report) == EXIT_OK
    assert capsys.readouterr().out == first
    cfg = RunConfig.from_dict(json.loads(first)["config"])
    assert run(cfg) == (EXIT_OK, first.rstrip("\n"))


@pytest.mark.parametrize("args", [
    ["invariants", "--code", "X(1,1,1,2)"],
    ["invariants", "/nonexistent/file.pd"],
    ["invariants"],
    ["domains", "--pair", "0", "99", "--code", TREFOIL],
    ["dinv", "--definite", "fixtures/fig4-unknot.pd"],
    ["invariants", "--code", TREFOIL, "--mark-label", "42"],
])
def test_input_errors_exit_2(args, capsys, monkeypatch):
    monkeypatch.chdir(fixture_path("trefoil").parent.parent)
    assert kf(*args) == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error:")


def test_input_error_json(capsys):
    assert kf("invariants", "--code", "X(1,2,3,4)", "--format", "json") == EXIT_INPUT
    doc = json.loads(capsys.readouterr().err)
    assert doc["kind"] == "input" and doc["error"] == "MalformedCode"


def test_convention_errors_exit_3(monkeypatch, capsys):
    def broken(model, opts):
        raise ConventionError("forced")

    monkeypatch.setitem(cli.COMMANDS, "gradings", broken)
    assert kf("gradings", fixture_path("trefoil"), "--format", "json") == EXIT_CONVENTION
    assert json.loads(capsys.readouterr().err)["kind"] == "convention"


def test_replay_of_unreadable_report(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert kf("replay", bad) == EXIT_INPUT


def test_console_script_module_entry():
    res = subprocess.run([sys.executable, "-m", "kfloer.cli", "states", str(fixture_path("trefoil")), "--count"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "3"


def test_pd_file_directives(tmp_path):
    path = tmp_path / "k.pd"
    write_pd_file(path, TREFOIL, name="trefoil", mark_label=3, coloring="unbounded_black")
    pf = read_pd_file(path)
    assert pf.meta["mark-label"] == "3"
    d = pf.diagram()
    assert d.marked_label == 3 and d.convention == "unbounded_black"
    assert pf.diagram(mark_label=5).marked_label == 5
    assert parse_pd_text("# a: b\n" + TREFOIL).meta == {"a": "b"}


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("KF_THREADS", "3")
    assert thread_cap() == 3
    monkeypatch.setenv("KF_THREADS", "0")
    assert thread_cap() == 1
    monkeypatch.setenv("KF_THREADS", "x")
    assert thread_cap() == 1


def test_results_do_not_depend_on_thread_count(monkeypatch, capsys):
    outs = set()
    for threads in ("1", "4"):
        monkeypatch.setenv("KF_THREADS", threads)
        assert pmap(lambda v: v * v, range(50)) == [v * v for v in range(50)]
        assert kf("arrows", fixture_path("t35-e8"), "--format", "json") == EXIT_OK
        outs.add(capsys.readouterr().out)
    assert len(outs) == 1
    assert json.loads(outs.pop())["result"]["linear_chains"]
