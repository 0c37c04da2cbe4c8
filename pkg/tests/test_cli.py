"""Command-line tests: exit codes, reports, and the learn pipeline."""

import json

import pytest

from qualisem.cli import main


def run_cli(*argv):
    return main(list(argv))


class TestValidate:
    def test_valid_scenario(self, fixtures_dir, capsys):
        code = run_cli("validate", str(fixtures_dir / "thermostat.scn"))
        out = capsys.readouterr().out
        assert code == 0
        assert "partition ok" in out

    def test_broken_alphabet_exits_one_and_lists_pairs(self, fixtures_dir, capsys):
        code = run_cli("validate", str(fixtures_dir / "broken_alphabet.scn"))
        out = capsys.readouterr().out
        assert code == 1
        # all four diagonal pairs are reported as uncovered
        for value in ("cold", "cool", "warm", "hot"):
            assert f"('{value}', '{value}') uncovered" in out

    def test_malformed_token_exits_two_with_position(self, fixtures_dir, capsys):
        code = run_cli("validate", str(fixtures_dir / "bad_token.scn"))
        err = capsys.readouterr().err
        assert code == 2
        assert "5:" in err  # line of the bad character

    def test_builtin_name_accepted(self, capsys):
        assert run_cli("validate", "thermostat") == 0


class TestRun:
    def test_thermostat_reaches_goal(self, tmp_path, capsys):
        trace_path = tmp_path / "t.jsonl"
        code = run_cli("run", "thermostat", "--trace", str(trace_path))
        assert code == 0
        lines = trace_path.read_text().splitlines()
        # a header plus three tick records: two decisions and the satisfied tick
        assert len(lines) == 4
        records = [json.loads(line) for line in lines[1:]]
        assert [r["decision"]["chosen"] if r["decision"] else None
                for r in records] == ["heat", "heat", None]

    def test_inverted_exits_three(self, capsys):
        assert run_cli("run", "thermostat-inverted") == 3

    def test_trace_bytes_deterministic(self, tmp_path, capsys):
        a = tmp_path / "a.jsonl"
        b = tmp_path / "b.jsonl"
        assert run_cli("run", "nav-dynamic", "--seed", "7", "--trace", str(a)) == 0
        assert run_cli("run", "nav-dynamic", "--seed", "7", "--trace", str(b)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_seed_batch_writes_one_trace_per_seed(self, tmp_path, capsys):
        trace_path = tmp_path / "batch.jsonl"
        code = run_cli("run", "nav-dynamic", "--seeds", "3", "--seed", "20",
                       "--trace", str(trace_path))
        assert code == 0
        for seed in (20, 21, 22):
            assert (tmp_path / f"batch-{seed}.jsonl").exists()

    def test_invalid_scenario_exits_one(self, fixtures_dir, capsys):
        assert run_cli("run", str(fixtures_dir / "broken_alphabet.scn")) == 1


class TestLearn:
    def test_fixture_log_relabels_heat(self, fixtures_dir, tmp_path, capsys):
        out_path = tmp_path / "repaired.scn"
        code = run_cli("learn", str(fixtures_dir / "thermostat.scn"),
                       "--log", str(fixtures_dir / "heat_steps.log"),
                       "--out", str(out_path))
        assert code == 0
        assert "relabelled INC -> DEC" in capsys.readouterr().out
        assert "label temp DEC" in out_path.read_text()

    def test_empty_log_warns_and_copies(self, fixtures_dir, tmp_path, capsys):
        log_path = tmp_path / "empty.log"
        log_path.write_text("log { }\n")
        out_path = tmp_path / "unchanged.scn"
        code = run_cli("learn", str(fixtures_dir / "thermostat.scn"),
                       "--log", str(log_path), "--out", str(out_path))
        out = capsys.readouterr().out
        assert code == 0
        assert "warning" in out
        assert "label temp INC" in out_path.read_text()

    def test_inverted_pipeline_repairs_and_reaches(self, tmp_path, capsys):
        log_path = tmp_path / "run.log"
        out_path = tmp_path / "repaired.scn"
        assert run_cli("run", "thermostat-inverted", "--log", str(log_path)) == 3
        assert run_cli("learn", "thermostat-inverted", "--log", str(log_path),
                       "--out", str(out_path)) == 0
        assert run_cli("run", str(out_path)) == 0

    def test_log_must_be_log_mode(self, fixtures_dir, tmp_path, capsys):
        log_path = tmp_path / "notalog.log"
        log_path.write_text("goal { holds(e1, temp, warm) }\n")
        code = run_cli("learn", str(fixtures_dir / "thermostat.scn"),
                       "--log", str(log_path), "--out", str(tmp_path / "x.scn"))
        assert code == 2


class TestNormalize:
    def test_beta_identity(self, tmp_path, capsys):
        term_path = tmp_path / "t1.term"
        term_path.write_text(r"(\x:Iu. x) heat")
        code = run_cli("normalize", "--term", str(term_path))
        assert code == 0
        assert capsys.readouterr().out.strip() == "heat"

    def test_projection(self, tmp_path, capsys):
        term_path = tmp_path / "t2.term"
        term_path.write_text("proj1 (heat, chill)")
        code = run_cli("normalize", "--term", str(term_path))
        assert code == 0
        assert capsys.readouterr().out.strip() == "heat"

    def test_ill_typed_application_exits_one(self, tmp_path, capsys):
        term_path = tmp_path / "t3.term"
        term_path.write_text(r"(\x:Iu. x) (heat, chill)")
        code = run_cli("normalize", "--term", str(term_path))
        assert code == 1
        assert "type error" in capsys.readouterr().err

    def test_scenario_constants(self, tmp_path, capsys):
        term_path = tmp_path / "t4.term"
        term_path.write_text("[heat, chill]")
        code = run_cli("normalize", "--term", str(term_path),
                       "--scenario", "thermostat")
        assert code == 0
        assert capsys.readouterr().out.strip() == "[heat, chill]"

    def test_unknown_constant_with_scenario_exits_one(self, tmp_path, capsys):
        term_path = tmp_path / "t5.term"
        term_path.write_text("teleport")
        code = run_cli("normalize", "--term", str(term_path),
                       "--scenario", "thermostat")
        assert code == 1
