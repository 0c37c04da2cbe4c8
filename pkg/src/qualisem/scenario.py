"""Scenario files: a sectioned text format tying the whole engine together.

A scenario declares properties, entities, alphabets, actions, one
environment, the initial raw state, and the goal. Declarations reference
earlier declarations, so the natural order is properties, entities,
alphabets, actions, environment, init, goal, then the scalar settings.

    scenario thermostat
    property temp { unit celsius values cold cool warm hot thresholds 10 20 30 }
    entity e1 temp
    alphabet D_temp over temp { INC: lt; DEC: gt; SAME: eq }
    action heat { label temp INC effect temp 1 }
    environment additive { bound temp 0 40 dynamic heat temp 12 }
    init e1 temp 5
    goal { holds(e1, temp, warm) }
    horizon 10
    seed 42

Optional sections: `noop <action>`, `min_evidence <n>`,
`distance <prop> { <x> <y> <cost> ... }`, `meta <key> <value>`, and for
actions a `guard { ... }` clause. Grid environments use
`environment grid { axes .. agent .. obstacles .. period .. sensor .. dynamic .. }`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .decision import (ActionModel, AgentState, build_connection_table,
                       label_violations)
from .environments import AdditiveEnvironment, Environment, GridEnvironment
from .errors import ParseError, ScenarioError, SemanticError
from .formulas import Formula, MetaAlphabet, Mode, validate_jepd, JepdReport
from .syntax import (TokenStream, to_text, tokenize, _parse_alphabet,
                     _parse_atom, _parse_formula)
from .worldmodel import Cell, DistanceTable, Property, quantize

_TOP_KEYWORDS = {"property", "entity", "alphabet", "action", "environment",
                 "init", "goal", "horizon", "seed", "noop", "min_evidence",
                 "distance", "meta"}


@dataclass(frozen=True)
class AdditiveSpec:
    bounds: Mapping[str, tuple[float, float]] = field(default_factory=dict)
    dynamics: Mapping[str, Mapping[str, float]] = field(default_factory=dict)

    kind = "additive"


@dataclass(frozen=True)
class GridSpec:
    axes: tuple[str, str]
    agent: str
    obstacles: tuple[str, ...] = ()
    period: int = 0
    sensors: Mapping[str, tuple[int, int]] = field(default_factory=dict)
    dynamics: Mapping[str, Mapping[str, float]] = field(default_factory=dict)

    kind = "grid"


@dataclass(frozen=True)
class Scenario:
    name: str
    properties: Mapping[str, Property]
    entities: Mapping[str, tuple[str, ...]]
    alphabets: Mapping[str, MetaAlphabet]  # keyed by property name
    actions: Mapping[str, ActionModel]
    environment: AdditiveSpec | GridSpec
    initial_raw: Mapping[Cell, float]
    goal: Formula
    horizon: int = 100
    seed: int = 0
    noop: str | None = None
    min_evidence: int = 3
    distance_overrides: Mapping[str, Mapping[tuple[str, str], int]] = field(
        default_factory=dict)
    meta: Mapping[str, str] = field(default_factory=dict)


def parse_scenario(text: str) -> Scenario:
    """Parse a scenario document.

    Property references inside alphabets, formulas, and distance tables
    are resolved immediately; references to entities and actions are
    stored by name and checked by validate_scenario.
    """
    stream = TokenStream(tokenize(text))
    stream.expect_keyword("scenario")
    name = stream.expect("ident", what="a scenario name").text

    properties: dict[str, Property] = {}
    entities: dict[str, tuple[str, ...]] = {}
    alphabets: dict[str, MetaAlphabet] = {}
    actions: dict[str, ActionModel] = {}
    environment: AdditiveSpec | GridSpec | None = None
    initial_raw: dict[Cell, float] = {}
    goal: Formula | None = None
    scalars: dict[str, object] = {}
    overrides: dict[str, dict[tuple[str, str], int]] = {}
    meta: dict[str, str] = {}

    while stream.peek().kind != "eof":
        tok = stream.peek()
        if tok.kind != "ident" or tok.text not in _TOP_KEYWORDS:
            raise ParseError(
                f"expected a scenario section, found {tok.text or 'end of input'!r}",
                tok.line, tok.column, expected=tuple(sorted(_TOP_KEYWORDS)),
                found=tok.text)
        section = tok.text
        if section == "property":
            prop = _parse_property(stream)
            if prop.name in properties:
                raise SemanticError(f"property {prop.name} declared twice")
            properties[prop.name] = prop
        elif section == "entity":
            stream.next()
            entity = stream.expect("ident", what="an entity name").text
            props = []
            while stream.peek().kind == "ident" and stream.peek().text not in _TOP_KEYWORDS:
                props.append(stream.expect("ident").text)
            if entity in entities:
                raise SemanticError(f"entity {entity} declared twice")
            entities[entity] = tuple(props)
        elif section == "alphabet":
            alphabet = _parse_alphabet(stream, properties, require_jepd=False)
            if alphabet.property.name in alphabets:
                raise SemanticError(
                    f"property {alphabet.property.name} has two alphabets")
            alphabets[alphabet.property.name] = alphabet
        elif section == "action":
            action = _parse_action(stream, properties)
            if action.name in actions:
                raise SemanticError(f"action {action.name} declared twice")
            actions[action.name] = action
        elif section == "environment":
            if environment is not None:
                raise SemanticError("environment declared twice")
            environment = _parse_environment(stream)
        elif section == "init":
            stream.next()
            entity = stream.expect("ident", what="an entity name").text
            prop = stream.expect("ident", what="a property name").text
            value = float(stream.expect("number", what="a raw magnitude").text)
            initial_raw[(entity, prop)] = value
        elif section == "goal":
            if goal is not None:
                raise SemanticError("goal declared twice")
            goal = _parse_formula(stream, properties)
            if goal.mode is not Mode.GOAL:
                raise SemanticError("the scenario goal must be a goal-mode formula")
        elif section in ("horizon", "seed", "min_evidence"):
            stream.next()
            scalars[section] = stream.expect_int()
        elif section == "noop":
            stream.next()
            scalars["noop"] = stream.expect("ident", what="an action name").text
        elif section == "distance":
            stream.next()
            prop_tok = stream.expect("ident", what="a property name")
            prop = properties.get(prop_tok.text)
            if prop is None:
                raise SemanticError(
                    f"{prop_tok.line}:{prop_tok.column}: unknown property "
                    f"{prop_tok.text!r}")
            stream.expect("{")
            table: dict[tuple[str, str], int] = {}
            while stream.peek().kind == "ident":
                x = stream.expect("ident").text
                y = stream.expect("ident").text
                cost = stream.expect_int()
                for v in (x, y):
                    if v not in prop.values:
                        raise SemanticError(
                            f"distance table for {prop.name}: unknown value {v!r}")
                table[(x, y)] = cost
            stream.expect("}")
            overrides[prop.name] = table
        else:  # meta
            stream.next()
            key = stream.expect("ident", what="a meta key").text
            value_tok = stream.expect("ident", "number", what="a meta value")
            meta[key] = value_tok.text

    if environment is None:
        raise SemanticError("scenario has no environment section")
    if goal is None:
        raise SemanticError("scenario has no goal")
    return Scenario(name=name, properties=properties, entities=entities,
                    alphabets=alphabets, actions=actions,
                    environment=environment, initial_raw=initial_raw,
                    goal=goal,
                    horizon=int(scalars.get("horizon", 100)),
                    seed=int(scalars.get("seed", 0)),
                    noop=scalars.get("noop"),
                    min_evidence=int(scalars.get("min_evidence", 3)),
                    distance_overrides=overrides, meta=meta)


def _parse_property(stream: TokenStream) -> Property:
    stream.expect_keyword("property")
    name = stream.expect("ident", what="a property name").text
    stream.expect("{")
    unit = None
    if stream.at_keyword("unit"):
        stream.next()
        unit = stream.expect("ident", what="a unit name").text
    stream.expect_keyword("values")
    values = []
    while stream.peek().kind == "ident" and not stream.at_keyword("thresholds"):
        values.append(stream.expect("ident").text)
    stream.expect_keyword("thresholds")
    thresholds = []
    while stream.peek().kind == "number":
        thresholds.append(float(stream.next().text))
    brace = stream.expect("}")
    try:
        return Property(name, tuple(values), tuple(thresholds), unit)
    except ValueError as exc:
        raise SemanticError(f"{brace.line}:{brace.column}: {exc}") from None


def _parse_action(stream: TokenStream, properties: Mapping[str, Property]) -> ActionModel:
    stream.expect_keyword("action")
    name = stream.expect("ident", what="an action name").text
    stream.expect("{")
    labels: dict[str, str] = {}
    effects: dict[str, int] = {}
    guard: Formula | None = None
    while stream.peek().kind != "}":
        if stream.at_keyword("label"):
            stream.next()
            prop = stream.expect("ident", what="a property name").text
            rel = stream.expect("ident", what="a relation name").text
            labels[prop] = rel
        elif stream.at_keyword("effect"):
            stream.next()
            prop = stream.expect("ident", what="a property name").text
            effects[prop] = stream.expect_int()
        elif stream.at_keyword("guard"):
            guard_tok = stream.next()
            stream.expect("{")
            atoms = []
            while stream.at_keyword("holds"):
                atoms.append(_parse_atom(stream, properties))
            stream.expect("}")
            try:
                guard = Formula(Mode.GOAL, frozenset(atoms))
            except ValueError as exc:
                raise SemanticError(
                    f"{guard_tok.line}:{guard_tok.column}: {exc}") from None
        else:
            tok = stream.peek()
            raise ParseError(
                f"expected 'label', 'effect', 'guard' or '}}', found {tok.text!r}",
                tok.line, tok.column, expected=("label", "effect", "guard", "}"),
                found=tok.text)
    brace = stream.expect("}")
    try:
        return ActionModel(name, labels, effects, guard)
    except ValueError as exc:
        raise SemanticError(f"{brace.line}:{brace.column}: {exc}") from None


def _parse_environment(stream: TokenStream) -> AdditiveSpec | GridSpec:
    stream.expect_keyword("environment")
    kind = stream.expect("ident", what="'additive' or 'grid'")
    if kind.text == "additive":
        stream.expect("{")
        bounds: dict[str, tuple[float, float]] = {}
        dynamics: dict[str, dict[str, float]] = {}
        while stream.peek().kind != "}":
            if stream.at_keyword("bound"):
                stream.next()
                prop = stream.expect("ident", what="a property name").text
                lo = float(stream.expect("number").text)
                hi = float(stream.expect("number").text)
                bounds[prop] = (lo, hi)
            elif stream.at_keyword("dynamic"):
                stream.next()
                action = stream.expect("ident", what="an action name").text
                prop = stream.expect("ident", what="a property name").text
                delta = float(stream.expect("number").text)
                dynamics.setdefault(action, {})[prop] = delta
            else:
                tok = stream.peek()
                raise ParseError(
                    f"expected 'bound', 'dynamic' or '}}', found {tok.text!r}",
                    tok.line, tok.column, expected=("bound", "dynamic", "}"),
                    found=tok.text)
        stream.expect("}")
        return AdditiveSpec(bounds, dynamics)
    if kind.text == "grid":
        stream.expect("{")
        axes = None
        agent = None
        obstacles: list[str] = []
        period = 0
        sensors: dict[str, tuple[int, int]] = {}
        dynamics = {}
        grid_keywords = {"axes", "agent", "obstacles", "period", "sensor", "dynamic"}
        while stream.peek().kind != "}":
            if stream.at_keyword("axes"):
                stream.next()
                x = stream.expect("ident", what="a property name").text
                y = stream.expect("ident", what="a property name").text
                axes = (x, y)
            elif stream.at_keyword("agent"):
                stream.next()
                agent = stream.expect("ident", what="an entity name").text
            elif stream.at_keyword("obstacles"):
                stream.next()
                while (stream.peek().kind == "ident"
                       and stream.peek().text not in grid_keywords):
                    obstacles.append(stream.expect("ident").text)
            elif stream.at_keyword("period"):
                stream.next()
                period = stream.expect_int()
            elif stream.at_keyword("sensor"):
                stream.next()
                prop = stream.expect("ident", what="a property name").text
                dx = stream.expect_int()
                dy = stream.expect_int()
                sensors[prop] = (dx, dy)
            elif stream.at_keyword("dynamic"):
                stream.next()
                action = stream.expect("ident", what="an action name").text
                prop = stream.expect("ident", what="a property name").text
                delta = float(stream.expect("number").text)
                dynamics.setdefault(action, {})[prop] = delta
            else:
                tok = stream.peek()
                raise ParseError(
                    f"expected a grid clause or '}}', found {tok.text!r}",
                    tok.line, tok.column,
                    expected=tuple(sorted(grid_keywords)) + ("}",), found=tok.text)
        brace = stream.expect("}")
        if axes is None or agent is None:
            raise SemanticError(
                f"{brace.line}:{brace.column}: grid environment needs axes and agent")
        return GridSpec(axes, agent, tuple(obstacles), period, sensors, dynamics)
    raise ParseError(f"unknown environment kind {kind.text!r}", kind.line,
                     kind.column, expected=("additive", "grid"), found=kind.text)


# Validation.

@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...]
    jepd: tuple[JepdReport, ...]
    label_checks: tuple[str, ...]  # human-readable per-action confirmations

    @property
    def ok(self) -> bool:
        return not self.problems


def validate_scenario(sc: Scenario) -> ValidationReport:
    """Cross-reference and consistency checks; failures are data."""
    problems: list[str] = []
    jepd_reports: list[JepdReport] = []
    confirmations: list[str] = []

    for prop_name, alphabet in sc.alphabets.items():
        report = validate_jepd(alphabet)
        jepd_reports.append(report)
        if not report.ok:
            problems.append(
                f"alphabet {alphabet.name} over {prop_name}: "
                f"{len(report.uncovered)} uncovered and "
                f"{len(report.overcovered)} overcovered pairs")

    for entity, props in sc.entities.items():
        for prop_name in props:
            if prop_name not in sc.properties:
                problems.append(f"entity {entity}: unknown property {prop_name}")

    for action in sc.actions.values():
        for prop_name in action.labels:
            if prop_name not in sc.properties:
                problems.append(f"action {action.name}: unknown property {prop_name}")
        violations = label_violations(action, sc.alphabets, sc.properties)
        if violations:
            problems.extend(violations)
        elif action.labels:
            confirmations.append(
                f"action {action.name}: declared effects stay inside labels")
        if action.applicability is not None:
            for atom in action.applicability.atoms:
                if atom.entity not in sc.entities:
                    problems.append(
                        f"action {action.name}: guard references unknown "
                        f"entity {atom.entity}")

    env = sc.environment
    for action_name in env.dynamics:
        if action_name not in sc.actions:
            problems.append(f"environment: dynamics for unknown action {action_name}")
    for action_name in sc.actions:
        if action_name not in env.dynamics:
            confirmations.append(
                f"action {action_name}: no environment dynamics (treated as no-op)")
    if isinstance(env, AdditiveSpec):
        for prop_name in env.bounds:
            if prop_name not in sc.properties:
                problems.append(f"environment bound on unknown property {prop_name}")
    else:
        for prop_name in env.axes:
            if prop_name not in sc.properties:
                problems.append(f"grid axis {prop_name} is not a declared property")
        if env.agent not in sc.entities:
            problems.append(f"grid agent {env.agent} is not a declared entity")
        for name in env.obstacles:
            if name not in sc.entities:
                problems.append(f"grid obstacle {name} is not a declared entity")
        for prop_name in env.sensors:
            if prop_name not in sc.properties:
                problems.append(f"grid sensor on unknown property {prop_name}")
        if env.period < 0:
            problems.append("grid period must be non-negative")

    sensor_props = set(env.sensors) if isinstance(env, GridSpec) else set()
    for entity, props in sc.entities.items():
        for prop_name in props:
            if prop_name in sensor_props:
                continue
            if (entity, prop_name) not in sc.initial_raw:
                problems.append(f"init is missing a magnitude for {entity}.{prop_name}")
    for (entity, prop_name), magnitude in sc.initial_raw.items():
        if entity not in sc.entities or prop_name not in sc.entities.get(entity, ()):
            problems.append(f"init covers undeclared cell {entity}.{prop_name}")
        elif not math.isfinite(magnitude):
            problems.append(f"init magnitude for {entity}.{prop_name} is not finite")

    for atom in sc.goal.atoms:
        if atom.entity not in sc.entities:
            problems.append(f"goal references unknown entity {atom.entity}")
        elif atom.prop not in sc.entities[atom.entity]:
            problems.append(
                f"goal references {atom.entity}.{atom.prop}, which the entity "
                f"does not carry")
        if atom.prop not in sc.alphabets:
            problems.append(f"goal property {atom.prop} has no alphabet")

    if sc.noop is not None and sc.noop not in sc.actions:
        problems.append(f"noop {sc.noop} is not a declared action")
    if sc.horizon < 1:
        problems.append("horizon must be at least 1")
    if sc.min_evidence < 1:
        problems.append("min_evidence must be at least 1")

    return ValidationReport(tuple(problems), tuple(jepd_reports),
                            tuple(confirmations))


# Builders.

def build_environment(sc: Scenario) -> Environment:
    env = sc.environment
    dynamics = {name: dict(env.dynamics.get(name, {})) for name in sc.actions}
    if isinstance(env, AdditiveSpec):
        return AdditiveEnvironment(
            properties=dict(sc.properties), grid=dict(sc.entities),
            dynamics=dynamics, bounds=dict(env.bounds),
            initial_raw=dict(sc.initial_raw), seed=sc.seed)
    return GridEnvironment(
        properties=dict(sc.properties), grid=dict(sc.entities),
        dynamics=dynamics, axes=env.axes, agent=env.agent,
        obstacles=env.obstacles, sensors=dict(env.sensors),
        period=env.period, initial_raw=dict(sc.initial_raw), seed=sc.seed)


def build_agent(sc: Scenario) -> AgentState:
    return AgentState(
        properties=dict(sc.properties), actions=dict(sc.actions),
        table=build_connection_table(sc.actions),
        alphabets=dict(sc.alphabets),
        distances=DistanceTable(dict(sc.distance_overrides)),
        noop=sc.noop, min_evidence=sc.min_evidence)


def load_scenario(text: str, *, validate: bool = True) -> Scenario:
    sc = parse_scenario(text)
    if validate:
        report = validate_scenario(sc)
        if not report.ok:
            raise ScenarioError("; ".join(report.problems))
    return sc


# Canonical serialization (used when writing repaired scenarios).

def _num(x: float) -> str:
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def scenario_to_text(sc: Scenario) -> str:
    lines = [f"scenario {sc.name}", ""]
    for prop in sc.properties.values():
        unit = f"unit {prop.unit} " if prop.unit else ""
        thresholds = " ".join(_num(t) for t in prop.thresholds)
        lines.append(f"property {prop.name} {{ {unit}values "
                     f"{' '.join(prop.values)} thresholds {thresholds} }}")
    for entity, props in sc.entities.items():
        lines.append(f"entity {entity} {' '.join(props)}".rstrip())
    for alphabet in sc.alphabets.values():
        lines.append(to_text(alphabet))
    for action in sc.actions.values():
        clauses = []
        for prop_name, rel in action.labels.items():
            clauses.append(f"label {prop_name} {rel}")
        for prop_name, delta in action.declared_effect.items():
            clauses.append(f"effect {prop_name} {delta}")
        if action.applicability is not None:
            atoms = sorted(action.applicability.atoms, key=lambda a: a.key())
            body = " ".join(f"holds({a.entity}, {a.prop}, {a.value})" for a in atoms)
            clauses.append(f"guard {{ {body} }}")
        inner = f" {' '.join(clauses)} " if clauses else " "
        lines.append(f"action {action.name} {{{inner}}}")
    env = sc.environment
    if isinstance(env, AdditiveSpec):
        clauses = [f"bound {p} {_num(lo)} {_num(hi)}"
                   for p, (lo, hi) in env.bounds.items()]
        clauses += [f"dynamic {a} {p} {_num(d)}"
                    for a, per in env.dynamics.items() for p, d in per.items()]
        inner = f" {' '.join(clauses)} " if clauses else " "
        lines.append(f"environment additive {{{inner}}}")
    else:
        clauses = [f"axes {env.axes[0]} {env.axes[1]}", f"agent {env.agent}"]
        if env.obstacles:
            clauses.append(f"obstacles {' '.join(env.obstacles)}")
        if env.period:
            clauses.append(f"period {env.period}")
        clauses += [f"sensor {p} {dx} {dy}" for p, (dx, dy) in env.sensors.items()]
        clauses += [f"dynamic {a} {p} {_num(d)}"
                    for a, per in env.dynamics.items() for p, d in per.items()]
        lines.append(f"environment grid {{ {' '.join(clauses)} }}")
    for (entity, prop_name), magnitude in sc.initial_raw.items():
        lines.append(f"init {entity} {prop_name} {_num(magnitude)}")
    lines.append(to_text(sc.goal))
    lines.append(f"horizon {sc.horizon}")
    lines.append(f"seed {sc.seed}")
    if sc.noop is not None:
        lines.append(f"noop {sc.noop}")
    lines.append(f"min_evidence {sc.min_evidence}")
    for prop_name, table in sc.distance_overrides.items():
        entries = " ".join(f"{x} {y} {cost}" for (x, y), cost in table.items())
        lines.append(f"distance {prop_name} {{ {entries} }}")
    for key, value in sc.meta.items():
        lines.append(f"meta {key} {value}")
    return "\n".join(lines) + "\n"


# Built-in scenarios.

def _nav_text(name: str, *, start: tuple[int, int], goal: tuple[int, int],
              obstacles: tuple[tuple[int, int], ...], period: int,
              horizon: int, seed: int) -> str:
    size = 20
    xs = " ".join(f"x{i}" for i in range(size))
    ys = " ".join(f"y{i}" for i in range(size))
    cuts = " ".join(_num(i + 0.5) for i in range(size - 1))
    lines = [
        f"scenario {name}",
        "",
        f"property xband {{ unit cell values {xs} thresholds {cuts} }}",
        f"property yband {{ unit cell values {ys} thresholds {cuts} }}",
        "property blockE { values free blocked thresholds 0.5 }",
        "property blockW { values free blocked thresholds 0.5 }",
        "property blockN { values free blocked thresholds 0.5 }",
        "property blockS { values free blocked thresholds 0.5 }",
        "entity agent xband yband blockE blockW blockN blockS",
    ]
    names = [f"ob{i}" for i in range(len(obstacles))]
    lines += [f"entity {n} xband yband" for n in names]
    lines += [
        "alphabet DX over xband { INC: lt; DEC: gt; SAME: eq }",
        "alphabet DY over yband { INC: lt; DEC: gt; SAME: eq }",
        "action east { label xband INC effect xband 1 "
        "guard { holds(agent, blockE, free) } }",
        "action west { label xband DEC effect xband -1 "
        "guard { holds(agent, blockW, free) } }",
        "action north { label yband INC effect yband 1 "
        "guard { holds(agent, blockN, free) } }",
        "action south { label yband DEC effect yband -1 "
        "guard { holds(agent, blockS, free) } }",
        "action wait { }",
        "environment grid { axes xband yband agent agent "
        f"obstacles {' '.join(names)}"
        + (f" period {period}" if period else "")
        + " sensor blockE 1 0 sensor blockW -1 0"
          " sensor blockN 0 1 sensor blockS 0 -1"
          " dynamic east xband 1 dynamic west xband -1"
          " dynamic north yband 1 dynamic south yband -1 }",
        f"init agent xband {start[0]}",
        f"init agent yband {start[1]}",
    ]
    for n, (ox, oy) in zip(names, obstacles):
        lines.append(f"init {n} xband {ox}")
        lines.append(f"init {n} yband {oy}")
    lines += [
        f"goal {{ holds(agent, xband, x{goal[0]}) holds(agent, yband, y{goal[1]}) }}",
        f"horizon {horizon}",
        f"seed {seed}",
        "noop wait",
    ]
    return "\n".join(lines) + "\n"


_THERMOSTAT = """\
scenario thermostat

property temp { unit celsius values cold cool warm hot thresholds 10 20 30 }
entity e1 temp
alphabet D_temp over temp { INC: lt; DEC: gt; SAME: eq }
action heat { label temp INC effect temp 1 }
action chill { label temp DEC effect temp -1 }
environment additive { bound temp 0 40 dynamic heat temp 12 dynamic chill temp -12 }
init e1 temp 5
goal { holds(e1, temp, warm) }
horizon 10
seed 42
"""

# The inverted world: `heat` is wired backwards (its raw effect is a drop)
# while its label still promises an increase. `boost` is a correctly wired
# heater that loses the selection tie to `heat` until learning demotes the
# broken label.
_THERMOSTAT_INVERTED = """\
scenario thermostat-inverted

property temp { unit celsius values arctic freezing cold cool warm hot thresholds -10 0 10 20 30 }
entity e1 temp
alphabet D_temp over temp { INC: lt; DEC: gt; SAME: eq }
action heat { label temp INC effect temp 1 }
action boost { label temp INC effect temp 1 }
action chill { label temp DEC effect temp -1 }
environment additive { bound temp -40 45 dynamic heat temp -12 dynamic boost temp 12 dynamic chill temp -12 }
init e1 temp 5
goal { holds(e1, temp, warm) }
horizon 10
seed 42
"""

_NAV_STATIC_OBSTACLES = ((5, 9), (9, 5), (12, 3), (3, 12), (8, 14), (14, 8),
                         (6, 17), (17, 6))
_NAV_DYNAMIC_OBSTACLES = ((4, 3), (7, 9), (3, 14), (11, 5), (9, 12), (15, 7),
                          (6, 6), (13, 13), (17, 4), (2, 10), (10, 2),
                          (16, 16), (5, 18), (18, 5), (12, 17), (8, 15))


def builtin_scenario(name: str) -> Scenario:
    """One of: thermostat, thermostat-inverted, nav-static, nav-dynamic."""
    if name == "thermostat":
        return load_scenario(_THERMOSTAT)
    if name == "thermostat-inverted":
        return load_scenario(_THERMOSTAT_INVERTED)
    if name == "nav-static":
        return load_scenario(_nav_text(
            "nav-static", start=(2, 2), goal=(17, 17),
            obstacles=_NAV_STATIC_OBSTACLES, period=0, horizon=100, seed=1))
    if name == "nav-dynamic":
        return load_scenario(_nav_text(
            "nav-dynamic", start=(1, 1), goal=(18, 18),
            obstacles=_NAV_DYNAMIC_OBSTACLES, period=2, horizon=400, seed=7))
    raise KeyError(f"unknown built-in scenario {name!r}")


BUILTIN_NAMES = ("thermostat", "thermostat-inverted", "nav-static", "nav-dynamic")
