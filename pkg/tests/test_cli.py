import json

import pytest
from click.testing import CliRunner

from icefold.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(main, list(args))


class TestFoldMatrix:
    def test_text_output(self, runner):
        r = run(runner, "fold-matrix", "--fixture", "a3")
        assert r.exit_code == 0
        assert "[1]" in r.output and "[4]" in r.output

    def test_json_output(self, runner):
        r = run(runner, "fold-matrix", "--fixture", "a3", "--format", "json")
        assert r.exit_code == 0
        data = json.loads(r.output)
        assert data["folded"]["rows"] == ["[1]", "[2]", "[4]", "[5]"]
        assert data["folded"]["entries"] == [[0, 2], [-1, 0], [1, 0], [0, 1]]
        assert data["symmetrizer"] == [2, 1]

    def test_figures_written(self, runner, tmp_path):
        d = tmp_path / "figs"
        r = run(runner, "fold-matrix", "--fixture", "a3", "--figure-dir", str(d))
        assert r.exit_code == 0
        assert (d / "quiver.png").exists()

    def test_needs_exactly_one_input(self, runner):
        assert run(runner, "fold-matrix").exit_code == 2
        assert run(runner, "fold-matrix", "--fixture", "a3", "x.iq").exit_code == 2


class TestFileInput:
    def test_reads_file(self, runner, tmp_path):
        p = tmp_path / "q.iq"
        p.write_text("VERTICES\n1 2\nARROWS\na: 1 -> 2\n")
        r = run(runner, "mutate", str(p), "-k", "1")
        assert r.exit_code == 0

    def test_parse_error_exits_two(self, runner, tmp_path):
        p = tmp_path / "bad.iq"
        p.write_text("VERTICES\n1 2\nARROWS\na: 1 2\n")
        r = run(runner, "mutate", str(p), "-k", "1")
        assert r.exit_code == 2
        assert "parse error" in r.stderr

    def test_domain_error_exits_one(self, runner, tmp_path):
        # a 2-cycle through unfrozen vertices has no exchange matrix
        p = tmp_path / "cyc.iq"
        p.write_text("VERTICES\n1 2\nARROWS\na: 1 -> 2\nb: 2 -> 1\n")
        r = run(runner, "mutate", str(p), "-k", "1")
        assert r.exit_code == 1
        assert "error" in r.stderr


class TestOtherCommands:
    def test_fold_potential(self, runner):
        r = run(runner, "fold-potential", "--fixture", "zl2-potential", "--format", "json")
        assert r.exit_code == 0
        data = json.loads(r.output)
        assert len(data["potential"]) == 4
        supports = {frozenset(t["cycle"]) for t in data["potential"]}
        assert frozenset({"x24+", "x45+", "x52"}) in supports

    def test_fold_quiver(self, runner):
        r = run(runner, "fold-quiver", "--fixture", "zl2-potential", "--format", "json")
        assert r.exit_code == 0

    def test_orbit_mutate(self, runner):
        r = run(runner, "orbit-mutate", "--fixture", "a3", "-k", "[1]", "-k", "[2]")
        assert r.exit_code == 0
        assert "folded:" in r.output

    def test_enumerate_folded(self, runner):
        r = run(runner, "enumerate", "--fixture", "a3", "--folded", "--format", "json")
        assert r.exit_code == 0
        data = json.loads(r.output)
        assert data["clusters"] == 6

    def test_enumerate_budget_exceeded(self, runner, tmp_path):
        p = tmp_path / "inf.iq"
        p.write_text("VERTICES\n1 2 3\nARROWS\na: 1 -> 2\nb: 2 -> 3\nc: 3 -> 1\n")
        r = run(runner, "enumerate", str(p), "--budget", "5")
        assert r.exit_code == 1

    def test_ginzburg(self, runner):
        r = run(runner, "ginzburg", "--fixture", "zl2-potential", "--format", "json")
        assert r.exit_code == 0
        data = json.loads(r.output)
        degrees = [g["degree"] for g in data["generators"]]
        assert degrees.count(0) == 9
        assert degrees.count(-1) == 7
        assert degrees.count(-2) == 3
        assert data["differential"]

    def test_character(self, runner):
        r = run(
            runner, "character", "--fixture", "a3", "--dims", "1:1", "--format", "json"
        )
        assert r.exit_code == 0
        data = json.loads(r.output)
        assert "character" in data

    def test_check_fixture_passes(self, runner):
        r = run(runner, "check", "--fixture", "a3", "--budget", "5")
        assert r.exit_code == 0
        assert "PASS" in r.output
