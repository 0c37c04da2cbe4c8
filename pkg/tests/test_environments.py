"""Environment tests: interpretation, episodes, the search oracle, nav worlds."""

from dataclasses import replace

import pytest

from qualisem.environments import interpret, oracle_search, run_episode
from qualisem.errors import UnknownAction
from qualisem.scenario import build_agent, build_environment, builtin_scenario
from qualisem.syntax import parse
from qualisem.worldmodel import QualValue, Reality, quantize


@pytest.fixture(scope="module")
def thermostat():
    sc = builtin_scenario("thermostat")
    return sc, build_environment(sc), build_agent(sc)


@pytest.fixture(scope="module")
def inverted():
    sc = builtin_scenario("thermostat-inverted")
    return sc, build_environment(sc), build_agent(sc)


class TestInterpret:
    def test_thermostat_heat_crosses_band(self, thermostat):
        sc, env, _ = thermostat
        reality = env.initial_reality()
        assert reality.assignments[("e1", "temp")].value == "cold"
        assert reality.raw[("e1", "temp")] == 5.0
        nxt = interpret(env, reality, "heat")
        assert nxt.raw[("e1", "temp")] == 17.0
        assert nxt.assignments[("e1", "temp")].value == "cool"
        assert nxt.time == reality.time + 1

    def test_inverted_heat_cools(self, inverted):
        sc, env, _ = inverted
        prop = sc.properties["temp"]
        reality = Reality(time=0,
                          assignments={("e1", "temp"): QualValue(prop, "warm")},
                          raw={("e1", "temp"): 25.0})
        nxt = interpret(env, reality, "heat")
        assert nxt.raw[("e1", "temp")] == 13.0
        assert nxt.assignments[("e1", "temp")].value == "cool"

    def test_unknown_action(self, thermostat):
        _, env, _ = thermostat
        with pytest.raises(UnknownAction):
            interpret(env, env.initial_reality(), "teleport")

    def test_bounds_clamp(self, thermostat):
        _, env, _ = thermostat
        reality = env.initial_reality()
        for _ in range(6):
            reality = interpret(env, reality, "chill")
        assert reality.raw[("e1", "temp")] == 0.0

    def test_nav_blocked_move_is_noop(self):
        sc = builtin_scenario("nav-static")
        env = build_environment(sc)
        raw = dict(sc.initial_raw)
        raw[("agent", "xband")] = 4.0
        raw[("agent", "yband")] = 9.0  # obstacle ob0 sits at (5, 9)
        env2 = replace(env, initial_raw=raw)
        reality = env2.initial_reality()
        assert reality.assignments[("agent", "blockE")].value == "blocked"
        nxt = interpret(env2, reality, "east")
        assert nxt.raw[("agent", "xband")] == 4.0
        assert nxt.raw[("agent", "yband")] == 9.0
        free = interpret(env2, reality, "north")
        assert free.raw[("agent", "yband")] == 10.0

    def test_emitted_realities_stay_consistent(self, thermostat):
        _, env, _ = thermostat
        reality = env.initial_reality()
        for action in ("heat", "heat", "chill", "heat"):
            reality = interpret(env, reality, action)
            for (entity, prop_name), value in reality.assignments.items():
                raw = reality.raw[(entity, prop_name)]
                assert quantize(value.property, raw) == value


class TestRunEpisode:
    def test_thermostat_reaches_goal_in_two_ticks(self, thermostat):
        sc, env, agent = thermostat
        episode, trace = run_episode(env, agent, sc.goal, sc.horizon)
        assert episode.outcome.kind == "reached"
        assert episode.outcome.tick == 2
        assert [r.decision.chosen for r in trace.records if r.decision] == [
            "heat", "heat"]
        assert trace.records[-1].decision is None  # the satisfied tick

    def test_inverted_exhausts_horizon_without_progress(self, inverted):
        sc, env, agent = inverted
        episode, trace = run_episode(env, agent, sc.goal, sc.horizon)
        assert episode.outcome.kind == "horizon"
        totals = [r.distances["total"] for r in trace.records]
        assert all(b >= a for a, b in zip(totals, totals[1:]))

    def test_nav_static_matches_oracle_length(self):
        sc = builtin_scenario("nav-static")
        env = build_environment(sc)
        agent = build_agent(sc)
        episode, _ = run_episode(env, agent, sc.goal, sc.horizon)
        plan = oracle_search(env, env.initial_reality(), sc.goal, 100)
        assert episode.outcome.kind == "reached"
        assert episode.outcome.tick == len(plan) == 30

    def test_trace_bytes_reproducible(self):
        sc = builtin_scenario("nav-dynamic")
        runs = []
        for _ in range(2):
            env = build_environment(sc)
            agent = build_agent(sc)
            _, trace = run_episode(env, agent, sc.goal, sc.horizon)
            runs.append(trace.text({"scenario": sc.name, "seed": sc.seed}))
        assert runs[0] == runs[1]

    def test_different_seeds_diverge(self):
        sc = builtin_scenario("nav-dynamic")
        texts = []
        for seed in (7, 8):
            s = replace(sc, seed=seed)
            env = build_environment(s)
            _, trace = run_episode(env, build_agent(s), s.goal, s.horizon)
            texts.append(trace.text())
        assert texts[0] != texts[1]

    def test_stuck_when_no_action_and_no_noop(self, temp_prop):
        sc = builtin_scenario("thermostat")
        # strip the chill action so DEC goals cannot be served
        actions = {"heat": sc.actions["heat"]}
        sc2 = replace(sc, actions=actions,
                      goal=parse("goal { holds(e1, temp, cold) }",
                                 sc.properties),
                      initial_raw={("e1", "temp"): 25.0})
        env = build_environment(sc2)
        agent = build_agent(sc2)
        episode, trace = run_episode(env, agent, sc2.goal, sc2.horizon)
        assert episode.outcome.kind == "stuck"
        assert "NoApplicableAction" in episode.outcome.error


class TestOracleSearch:
    def test_thermostat_two_heats(self, thermostat):
        sc, env, _ = thermostat
        plan = oracle_search(env, env.initial_reality(), sc.goal, 20)
        assert plan == ["heat", "heat"]

    def test_satisfied_goal_needs_empty_plan(self, thermostat):
        sc, env, _ = thermostat
        goal = parse("goal { holds(e1, temp, cold) }", sc.properties)
        assert oracle_search(env, env.initial_reality(), goal, 20) == []

    def test_unreachable_goal(self):
        sc = builtin_scenario("thermostat")
        sc2 = replace(sc, actions={"heat": sc.actions["heat"]},
                      initial_raw={("e1", "temp"): 25.0})
        env = build_environment(sc2)
        goal = parse("goal { holds(e1, temp, cold) }", sc.properties)
        assert oracle_search(env, env.initial_reality(), goal, 40) is None

    def test_dynamic_environment_rejected(self):
        sc = builtin_scenario("nav-dynamic")
        env = build_environment(sc)
        with pytest.raises(ValueError):
            oracle_search(env, env.initial_reality(), sc.goal, 10)


class TestNavSafety:
    def test_agent_never_shares_a_cell_with_an_obstacle(self):
        sc = builtin_scenario("nav-dynamic")
        obstacle_names = [e for e in sc.entities if e.startswith("ob")]
        for seed in (7, 11, 23):
            s = replace(sc, seed=seed)
            env = build_environment(s)
            _, trace = run_episode(env, build_agent(s), s.goal, s.horizon)
            for record in trace.records:
                a = record.reality.assignments
                agent_cell = (a[("agent", "xband")].value,
                              a[("agent", "yband")].value)
                for name in obstacle_names:
                    assert agent_cell != (a[(name, "xband")].value,
                                          a[(name, "yband")].value)
