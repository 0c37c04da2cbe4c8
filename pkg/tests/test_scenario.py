"""Scenario format tests: parsing, validation, serialization, builtins."""

import pytest

from qualisem.errors import ParseError, ScenarioError, SemanticError
from qualisem.scenario import (BUILTIN_NAMES, builtin_scenario, load_scenario,
                               parse_scenario, scenario_to_text,
                               validate_scenario)


@pytest.fixture
def thermostat_text(fixtures_dir):
    return (fixtures_dir / "thermostat.scn").read_text()


class TestParseScenario:
    def test_fixture_parses(self, thermostat_text):
        sc = parse_scenario(thermostat_text)
        assert sc.name == "thermostat"
        assert list(sc.actions) == ["heat", "chill"]
        assert sc.horizon == 10
        assert sc.seed == 42
        assert sc.environment.kind == "additive"
        assert sc.environment.dynamics["heat"]["temp"] == 12.0

    def test_fixture_matches_builtin(self, thermostat_text):
        assert parse_scenario(thermostat_text) == builtin_scenario("thermostat")

    def test_duplicate_property_rejected(self, thermostat_text):
        text = thermostat_text.replace(
            "entity e1 temp",
            "property temp { values a b thresholds 1 }\nentity e1 temp")
        with pytest.raises(SemanticError, match="declared twice"):
            parse_scenario(text)

    def test_missing_goal_rejected(self, thermostat_text):
        text = thermostat_text.replace("goal { holds(e1, temp, warm) }", "")
        with pytest.raises(SemanticError, match="no goal"):
            parse_scenario(text)

    def test_bad_token_is_a_parse_error(self, fixtures_dir):
        with pytest.raises(ParseError) as err:
            parse_scenario((fixtures_dir / "bad_token.scn").read_text())
        assert err.value.line == 5

    def test_guard_clause(self):
        sc = builtin_scenario("nav-static")
        guard = sc.actions["east"].applicability
        assert guard is not None
        atom = next(iter(guard.atoms))
        assert (atom.entity, atom.prop, atom.value) == ("agent", "blockE", "free")


class TestValidation:
    def test_valid_fixture(self, thermostat_text):
        report = validate_scenario(parse_scenario(thermostat_text))
        assert report.ok
        assert all(j.ok for j in report.jepd)

    def test_broken_alphabet_reported(self, fixtures_dir):
        sc = parse_scenario((fixtures_dir / "broken_alphabet.scn").read_text())
        report = validate_scenario(sc)
        assert not report.ok
        jepd = report.jepd[0]
        assert len(jepd.uncovered) == 4  # one per diagonal pair
        with pytest.raises(ScenarioError):
            load_scenario((fixtures_dir / "broken_alphabet.scn").read_text())

    def test_unknown_references_reported(self, thermostat_text):
        text = thermostat_text.replace("init e1 temp 5",
                                       "init e1 temp 5\ninit ghost temp 1")
        report = validate_scenario(parse_scenario(text))
        assert any("ghost" in p for p in report.problems)

    def test_label_containment_violation_reported(self, thermostat_text):
        text = thermostat_text.replace("action heat { label temp INC effect temp 1 }",
                                       "action heat { label temp INC effect temp -1 }")
        report = validate_scenario(parse_scenario(text))
        assert any("escapes label" in p for p in report.problems)

    def test_missing_init_reported(self, thermostat_text):
        text = thermostat_text.replace("init e1 temp 5\n", "")
        report = validate_scenario(parse_scenario(text))
        assert any("init is missing" in p for p in report.problems)

    def test_undeclared_noop_reported(self, thermostat_text):
        report = validate_scenario(parse_scenario(thermostat_text + "noop rest\n"))
        assert any("noop" in p for p in report.problems)


class TestSerialization:
    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_round_trip_for_all_builtins(self, name):
        sc = builtin_scenario(name)
        assert parse_scenario(scenario_to_text(sc)) == sc

    def test_serialized_text_is_a_fixpoint(self):
        text = scenario_to_text(builtin_scenario("thermostat"))
        assert scenario_to_text(parse_scenario(text)) == text

    def test_fixture_two_props_round_trips(self, fixtures_dir):
        sc = parse_scenario((fixtures_dir / "two_props.scn").read_text())
        assert parse_scenario(scenario_to_text(sc)) == sc
        report = validate_scenario(sc)
        assert report.ok


class TestBuiltins:
    def test_all_builtins_validate(self):
        for name in BUILTIN_NAMES:
            report = validate_scenario(builtin_scenario(name))
            assert report.ok, (name, report.problems)

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            builtin_scenario("teapot")

    def test_nav_dynamic_shape(self):
        sc = builtin_scenario("nav-dynamic")
        assert sc.environment.kind == "grid"
        assert sc.environment.period == 2
        assert sc.noop == "wait"
        assert len(sc.environment.obstacles) == 16
        assert len(sc.properties["xband"].values) == 20
