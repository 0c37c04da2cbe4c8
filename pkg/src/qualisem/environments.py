"""Deterministic simulated environments and the closed agent loop.

Environments own the true dynamics over raw magnitudes; the agent only
ever sees the quantized present description the environment emits each
tick. Two families are provided: an additive world (per-action raw deltas
with clamping bounds, e.g. a thermostat) and a grid world (two position
axes, blocking obstacles on a seeded walk, adjacency sensors).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .decision import AgentState, Decision, agent_step
from .errors import EngineError, StateSpaceTooLarge, UnknownAction
from .formulas import Atom, Formula, Mode
from .rng import derive
from .trace import Trace, TraceRecord
from .worldmodel import Cell, Property, QualValue, Reality, quantize

DIRECTIONS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _quantized(grid: Mapping[str, tuple[str, ...]],
               properties: Mapping[str, Property],
               raw: Mapping[Cell, float], time: int) -> Reality:
    assignments = {}
    for entity, props in grid.items():
        for prop_name in props:
            cell = (entity, prop_name)
            assignments[cell] = quantize(properties[prop_name], raw[cell])
    return Reality(time=time, assignments=assignments, raw=dict(raw))


@dataclass(frozen=True)
class AdditiveEnvironment:
    """Raw-delta dynamics with clamping bounds and no exogenous change."""

    properties: Mapping[str, Property]
    grid: Mapping[str, tuple[str, ...]]
    dynamics: Mapping[str, Mapping[str, float]]  # action -> prop -> delta
    bounds: Mapping[str, tuple[float, float]]
    initial_raw: Mapping[Cell, float]
    seed: int = 0

    @property
    def static(self) -> bool:
        return True

    def initial_reality(self) -> Reality:
        return _quantized(self.grid, self.properties, self.initial_raw, 0)

    def interpret(self, reality: Reality, action: str) -> Reality:
        deltas = self.dynamics.get(action)
        if deltas is None:
            raise UnknownAction(f"no dynamics for action {action!r}")
        raw = dict(reality.raw)
        for (entity, prop_name), magnitude in raw.items():
            delta = deltas.get(prop_name)
            if delta is None:
                continue
            lo, hi = self.bounds.get(prop_name, (float("-inf"), float("inf")))
            raw[(entity, prop_name)] = min(hi, max(lo, magnitude + delta))
        return _quantized(self.grid, self.properties, raw, reality.time + 1)

    def percept(self, reality: Reality) -> Formula:
        return _percept(reality)


@dataclass(frozen=True)
class GridEnvironment:
    """Two-axis grid with blocking obstacles and adjacency sensors.

    Moving into an obstacle cell or off the grid is a no-op. When period
    is positive, every obstacle attempts one seeded random step whenever
    the new time is a multiple of the period; a step onto the agent,
    another obstacle, or off the grid is skipped. Sensor properties read
    1.0 when the adjacent cell at their offset is blocked.
    """

    properties: Mapping[str, Property]
    grid: Mapping[str, tuple[str, ...]]
    dynamics: Mapping[str, Mapping[str, float]]
    axes: tuple[str, str]
    agent: str
    obstacles: tuple[str, ...]
    sensors: Mapping[str, tuple[int, int]] = field(default_factory=dict)
    period: int = 0
    initial_raw: Mapping[Cell, float] = field(default_factory=dict)
    seed: int = 0

    @property
    def static(self) -> bool:
        return self.period == 0

    @property
    def size(self) -> tuple[int, int]:
        x_prop, y_prop = self.axes
        return (len(self.properties[x_prop].values),
                len(self.properties[y_prop].values))

    def _positions(self, raw: Mapping[Cell, float]) -> dict[str, tuple[int, int]]:
        x_prop, y_prop = self.axes
        return {e: (int(raw[(e, x_prop)]), int(raw[(e, y_prop)]))
                for e in (self.agent, *self.obstacles)}

    def _with_sensors(self, raw: dict[Cell, float]) -> dict[Cell, float]:
        width, height = self.size
        positions = self._positions(raw)
        ax, ay = positions[self.agent]
        occupied = {positions[o] for o in self.obstacles}
        for prop_name, (dx, dy) in self.sensors.items():
            cell = (ax + dx, ay + dy)
            blocked = (not (0 <= cell[0] < width and 0 <= cell[1] < height)
                       or cell in occupied)
            raw[(self.agent, prop_name)] = 1.0 if blocked else 0.0
        return raw

    def initial_reality(self) -> Reality:
        raw = self._with_sensors(dict(self.initial_raw))
        return _quantized(self.grid, self.properties, raw, 0)

    def interpret(self, reality: Reality, action: str) -> Reality:
        deltas = self.dynamics.get(action)
        if deltas is None:
            raise UnknownAction(f"no dynamics for action {action!r}")
        width, height = self.size
        x_prop, y_prop = self.axes
        raw = dict(reality.raw)
        positions = self._positions(raw)
        ax, ay = positions[self.agent]
        occupied = {positions[o] for o in self.obstacles}

        tx = ax + int(deltas.get(x_prop, 0))
        ty = ay + int(deltas.get(y_prop, 0))
        if (0 <= tx < width and 0 <= ty < height and (tx, ty) not in occupied):
            ax, ay = tx, ty
            raw[(self.agent, x_prop)] = float(ax)
            raw[(self.agent, y_prop)] = float(ay)

        new_time = reality.time + 1
        if self.period > 0 and new_time % self.period == 0:
            spots = {o: positions[o] for o in self.obstacles}
            for index, name in enumerate(self.obstacles):
                dx, dy = DIRECTIONS[derive(self.seed, new_time, index) % 4]
                ox, oy = spots[name]
                target = (ox + dx, oy + dy)
                taken = {p for o, p in spots.items() if o != name}
                if (0 <= target[0] < width and 0 <= target[1] < height
                        and target != (ax, ay) and target not in taken):
                    spots[name] = target
                    raw[(name, x_prop)] = float(target[0])
                    raw[(name, y_prop)] = float(target[1])

        raw = self._with_sensors(raw)
        return _quantized(self.grid, self.properties, raw, new_time)

    def percept(self, reality: Reality) -> Formula:
        return _percept(reality)


Environment = AdditiveEnvironment | GridEnvironment


def _percept(reality: Reality) -> Formula:
    atoms = frozenset(Atom(entity, prop, qv.value)
                      for (entity, prop), qv in reality.assignments.items())
    return Formula(Mode.PRESENT, atoms)


def interpret(env: Environment, reality: Reality, action: str) -> Reality:
    return env.interpret(reality, action)


@dataclass(frozen=True)
class Outcome:
    kind: str  # 'reached' | 'horizon' | 'stuck'
    tick: int | None = None
    error: str | None = None

    @property
    def reached(self) -> bool:
        return self.kind == "reached"


@dataclass(frozen=True)
class Episode:
    environment: Environment
    initial: Reality
    goal: Formula
    horizon: int
    outcome: Outcome


def goal_distances(state: AgentState, reality: Reality, goal: Formula) -> dict[str, int]:
    """Remaining per-cell distances to the goal, plus their total."""
    out: dict[str, int] = {}
    total = 0
    for atom in sorted(goal.atoms, key=lambda a: a.key()):
        have = reality.assignments[(atom.entity, atom.prop)]
        want = QualValue(state.properties[atom.prop], atom.value)
        d = state.distances.distance(have, want)
        out[f"{atom.entity}.{atom.prop}"] = d
        total += d
    out["total"] = total
    return out


def run_episode(env: Environment, agent: AgentState, goal: Formula,
                horizon: int) -> tuple[Episode, Trace]:
    """Alternate agent decisions with environment transitions.

    Each tick records the percept, the decision (None on satisfied or
    blocked-wait ticks), the reality, the remaining distances, and the
    emitted formula tuple. The returned trace also carries the final log
    formula and agent state.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    initial = env.initial_reality()
    reality = initial
    state = agent
    records: list[TraceRecord] = []
    outcome: Outcome | None = None
    for tick in range(horizon):
        percept = env.percept(reality)
        distances = goal_distances(state, reality, goal)
        try:
            result = agent_step(state, [percept, goal], tick)
        except EngineError as exc:
            records.append(TraceRecord(tick, percept, None, reality,
                                       distances, state.generated))
            outcome = Outcome("stuck", tick, f"{type(exc).__name__}: {exc}")
            break
        state = result.state
        records.append(TraceRecord(tick, percept, result.decision, reality,
                                   distances, result.generated))
        if result.satisfied:
            outcome = Outcome("reached", tick)
            break
        reality = env.interpret(reality, result.actions[0])
    if outcome is None:
        outcome = Outcome("horizon", horizon)
    episode = Episode(env, initial, goal, horizon, outcome)
    return episode, Trace(records=tuple(records), log=state.log, final_state=state)


def oracle_search(env: Environment, initial: Reality, goal: Formula,
                  bound: int, state_limit: int = 10 ** 6) -> list[str] | None:
    """Breadth-first search over the true dynamics (ground truth for tests).

    Requires a static environment. Returns the shortest action sequence
    reaching the goal within `bound` steps, or None when unreachable.
    """
    if not env.static:
        raise ValueError("the search oracle needs a static environment")
    wanted = {(a.entity, a.prop): a.value for a in goal.atoms}

    def satisfied(reality: Reality) -> bool:
        return all(reality.assignments[cell].value == value
                   for cell, value in wanted.items())

    def key(reality: Reality):
        return tuple(sorted(reality.raw.items()))

    if satisfied(initial):
        return []
    actions = list(env.dynamics)
    frontier = [(initial, [])]
    seen = {key(initial)}
    for _ in range(bound):
        next_frontier = []
        for reality, plan in frontier:
            for action in actions:
                successor = env.interpret(reality, action)
                k = key(successor)
                if k in seen:
                    continue
                seen.add(k)
                if len(seen) > state_limit:
                    raise StateSpaceTooLarge(f"more than {state_limit} states")
                if satisfied(successor):
                    return plan + [action]
                next_frontier.append((successor, plan + [action]))
        if not next_frontier:
            return None
        frontier = next_frontier
    return None


__all__ = [
    "AdditiveEnvironment", "GridEnvironment", "Environment", "Episode",
    "Outcome", "Decision", "interpret", "run_episode", "oracle_search",
    "goal_distances",
]
