import pytest

import braidbu.fundgroup as fundgroup
import braidbu.morse as morse
from braidbu.cli import main
from braidbu.oracle import run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestGraphCommands:
    def test_build_lollipop(self, capsys):
        code, out = run(capsys, "graph", "build", "--kind", "lollipop", "--m", "2")
        assert code == 0
        assert "E a 1 3 loop" in out

    def test_build_star(self, capsys):
        code, out = run(capsys, "graph", "build", "--kind", "star", "--legs", "3", "--leg-length", "2")
        assert code == 0
        assert out.startswith("V 7")

    def test_check(self, capsys, tmp_path):
        code, out = run(capsys, "graph", "build", "--kind", "lollipop", "--m", "3")
        path = tmp_path / "g.txt"
        path.write_text(out)
        code, out = run(capsys, "graph", "check", "--graph", str(path), "--m", "3")
        assert code == 0
        assert "sufficiently_subdivided = true" in out
        assert "chi = 0" in out

    def test_invalid_parameter_is_usage_error(self, capsys):
        code, _ = run(capsys, "graph", "build", "--kind", "lollipop", "--m", "1")
        assert code == 2


class TestDconf:
    def test_stats_records(self, capsys, tmp_path):
        _, text = run(capsys, "graph", "build", "--kind", "lollipop", "--m", "2")
        path = tmp_path / "g.txt"
        path.write_text(text)
        code, out = run(
            capsys, "--format", "records", "dconf", "stats", "--graph", str(path), "--m", "2"
        )
        assert code == 0
        lines = dict(line.split("\t") for line in out.strip().splitlines())
        assert lines["cells.dim0"] == "12"
        assert lines["cells.dim1"] == "16"
        assert lines["cells.dim2"] == "2"
        assert lines["chi"] == "-2"
        assert lines["components"] == "1"

    def test_quotient_stats(self, capsys, tmp_path):
        _, text = run(capsys, "graph", "build", "--kind", "lollipop", "--m", "2")
        path = tmp_path / "g.txt"
        path.write_text(text)
        code, out = run(
            capsys,
            "--format",
            "records",
            "dconf",
            "stats",
            "--graph",
            str(path),
            "--m",
            "2",
            "--quotient",
        )
        assert code == 0
        lines = dict(line.split("\t") for line in out.strip().splitlines())
        assert lines["chi"] == "-1"
        assert lines["orbits"] == "15"


class TestMorseAndPi1:
    def test_critical_counts(self, capsys):
        code, out = run(capsys, "--format", "records", "morse", "critical", "--m", "3", "--by-type")
        assert code == 0
        lines = dict(line.split("\t") for line in out.strip().splitlines())
        assert lines["critical.dim0"] == "6"
        assert lines["critical.dim1"] == "18"
        assert lines["critical.dim2plus"] == "0"
        assert lines["critical.type2"] == "6"

    def test_verify_shift_rule(self, capsys):
        code, out = run(capsys, "morse", "verify-lemma47", "--m", "2")
        assert code == 0
        assert "2/2 checks passed" in out

    def test_basis(self, capsys):
        code, out = run(capsys, "pi1", "basis", "--space", "fm", "--m", "2")
        assert code == 0
        assert "rank = 3" in out

    def test_map_with_oracle(self, capsys):
        code, out = run(capsys, "pi1", "map", "--which", "theta", "--m", "3", "--oracle-check")
        assert code == 0
        assert "5/5 checks passed" in out


class TestDecide:
    def test_interval(self, capsys):
        code, out = run(capsys, "decide", "--target", "interval")
        assert code == 0
        assert "borsuk_ulam = holds" in out

    def test_wedge_witness(self, capsys):
        code, out = run(
            capsys, "decide", "--target", "wedge", "--k", "1", "--m", "2", "--emit-witness"
        )
        assert code == 0
        assert "borsuk_ulam = fails" in out
        assert "witness.psi.x1 = [O1]" in out

    def test_circle(self, capsys):
        code, out = run(capsys, "decide", "--target", "circle", "--n", "2", "--class", "2,5,5")
        assert code == 0
        assert "borsuk_ulam = holds" in out

    def test_circle_needs_class(self, capsys):
        code, _ = run(capsys, "decide", "--target", "circle", "--n", "2")
        assert code == 2

    def test_tree_default_star(self, capsys):
        code, out = run(capsys, "decide", "--target", "tree", "--n", "2")
        assert code == 0
        assert "borsuk_ulam = fails" in out

    def test_unknown_target_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["decide", "--target", "plane"])
        assert exc.value.code == 2


class TestSuite:
    def test_quick_suite_passes(self, capsys):
        code, out = run(capsys, "suite", "--level", "quick")
        assert code == 0
        assert "FAIL" not in out

    def test_records_are_deterministic(self, capsys):
        _, first = run(capsys, "--format", "records", "suite", "--level", "quick")
        _, second = run(capsys, "--format", "records", "suite", "--level", "quick")
        assert first == second

    def test_env_overrides_level(self, capsys, monkeypatch):
        monkeypatch.setenv("BU_SUITE_LEVEL", "quick")
        code, out = run(capsys, "--format", "records", "suite", "--level", "full")
        assert code == 0
        assert "level\tquick" in out

    def test_broken_blocked_rule_fails_shift_checks(self, monkeypatch):
        real = morse.is_blocked

        def broken(cell, r, graph):
            v = cell[r]
            if v == graph.num_vertices - 1:
                return True  # wrongly blocks the top vertex
            return real(cell, r, graph)

        monkeypatch.setattr(morse, "is_blocked", broken)
        fundgroup.get_system.cache_clear()
        try:
            report = run_suite("quick")
        finally:
            fundgroup.get_system.cache_clear()
        assert not report.all_pass
        assert any(
            check_id.startswith("lemma47") and not ok for check_id, ok, _ in report.checks
        )
