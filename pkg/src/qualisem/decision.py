"""Action selection, the agent loop step, agreement checking, and label repair.

Selection follows the means-ends recipe: diff the present description
against the goal, order the differing cells hardest-first, classify the
first workable goal pair into its unique relation, and pick the action
filed under that relation whose declared effect best closes the gap. The
table of connections maps (property, relation name) rows to action names.

Learning reads the agent's own step log: for each action it classifies the
observed before/after value pairs, and when the empirical majority relation
contradicts the action's label strongly enough, the label (and the declared
effect) is repaired and the table rebuilt.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .calculus import IU, LP, Const, Pair, Proj, SeqLit, extract_actions
from .errors import (EmptyObservations, GoalSatisfied, MalformedPercepts,
                     NoApplicableAction, SemanticError)
from .formulas import (Atom, Formula, MetaAlphabet, Mode, StepRecord,
                       classify_pair, formula_to_reality, log_formula)
from .syntax import to_text
from .worldmodel import DistanceTable, Property, QualValue, reality_diff

log = logging.getLogger("qualisem")


@dataclass(frozen=True)
class ActionModel:
    """An interaction constant with its qualitative labels and designed effect.

    labels maps a property name to the relation name of the change kind the
    action is believed to produce there; declared_effect maps the same
    properties to a signed rank step used for prediction. An optional guard
    (goal-mode formula) restricts when the action applies.
    """

    name: str
    labels: Mapping[str, str] = field(default_factory=dict)
    declared_effect: Mapping[str, int] = field(default_factory=dict)
    applicability: Formula | None = None

    def __post_init__(self):
        missing = set(self.labels) - set(self.declared_effect)
        if missing:
            raise ValueError(
                f"action {self.name}: labelled properties {sorted(missing)} "
                f"have no declared effect")
        if self.applicability is not None and self.applicability.mode is not Mode.GOAL:
            raise ValueError(f"action {self.name}: guard must be a goal-mode formula")


def effect_successor(prop: Property, value: str, delta: int, *,
                     clamp: bool) -> str | None:
    """The value `delta` rank steps away; None (or the boundary value when
    clamping) outside the value space."""
    target = prop.rank(value) + delta
    if clamp:
        target = max(0, min(len(prop.values) - 1, target))
    elif not 0 <= target < len(prop.values):
        return None
    return prop.values[target]


def label_violations(action: ActionModel, alphabets: Mapping[str, MetaAlphabet],
                     properties: Mapping[str, Property]) -> list[str]:
    """Exhaustive check that each declared effect stays inside its label.

    For every labelled property and every value with an in-range successor,
    (value, successor) must lie in the labelled relation.
    """
    problems = []
    for prop_name, rel_name in action.labels.items():
        prop = properties.get(prop_name)
        alphabet = alphabets.get(prop_name)
        if prop is None or alphabet is None:
            problems.append(f"{action.name}: no alphabet for property {prop_name}")
            continue
        try:
            rel = alphabet.relation(rel_name)
        except KeyError:
            problems.append(
                f"{action.name}: label {rel_name!r} is not a relation of "
                f"alphabet {alphabet.name}")
            continue
        delta = action.declared_effect[prop_name]
        for value in prop.values:
            succ = effect_successor(prop, value, delta, clamp=False)
            if succ is not None and not rel.contains_names(value, succ):
                problems.append(
                    f"{action.name}: effect pair ({value},{succ}) on {prop_name} "
                    f"escapes label {rel_name}")
    return problems


@dataclass(frozen=True)
class ConnectionTable:
    """Rows of action names keyed by (property name, relation name)."""

    rows: Mapping[tuple[str, str], tuple[str, ...]]

    def row(self, prop: str, relation: str) -> tuple[str, ...]:
        return self.rows.get((prop, relation), ())


def build_connection_table(actions: Mapping[str, ActionModel]) -> ConnectionTable:
    rows: dict[tuple[str, str], list[str]] = {}
    for action in actions.values():
        for prop_name, rel_name in action.labels.items():
            rows.setdefault((prop_name, rel_name), []).append(action.name)
    return ConnectionTable({k: tuple(v) for k, v in rows.items()})


@dataclass(frozen=True)
class Decision:
    """One selection outcome, with the audit trail of rejected candidates."""

    chosen: str
    entity: str
    prop: str
    pair: tuple[str, str]  # (current value, target value)
    relation: str
    rejected: tuple[tuple[str, str], ...] = ()

    def render(self, tick: int) -> str:
        return (f"decision tick={tick} chosen={self.chosen} "
                f"relation={self.relation} cell={self.entity}.{self.prop} "
                f"pair=({self.pair[0]},{self.pair[1]})")


@dataclass(frozen=True)
class AgentState:
    """Everything the selector carries between ticks.

    `generated` is the tuple of formulas emitted at the previous tick and
    consumed at this one; `log` accumulates one step record per executed
    interaction.
    """

    properties: Mapping[str, Property]
    actions: Mapping[str, ActionModel]
    table: ConnectionTable
    alphabets: Mapping[str, MetaAlphabet]
    distances: DistanceTable
    generated: tuple[Formula, ...] = ()
    log: Formula = field(default_factory=log_formula)
    noop: str | None = None
    min_evidence: int = 3


def guard_holds(guard: Formula | None, current: Formula) -> bool:
    if guard is None:
        return True
    return guard.atoms <= current.atoms


def select_action(state: AgentState, current: Formula, goal: Formula) -> Decision:
    """Pick one action for the hardest workable goal pair.

    Goal pairs are ordered by descending distance (ties by property then
    entity name). Pairs whose candidate row is empty or fully guarded out
    are skipped in favour of the next pair, means-ends style;
    NoApplicableAction is raised only when every pair fails.
    """
    if current.mode is not Mode.PRESENT or goal.mode is not Mode.GOAL:
        raise MalformedPercepts("selection needs one present and one goal formula")
    cur = formula_to_reality(current, state.properties)
    tgt = formula_to_reality(goal, state.properties)
    diff = reality_diff(cur, tgt)
    if not diff:
        raise GoalSatisfied("the goal description already holds")

    def hardness(entry):
        (entity, prop), (have, want) = entry
        return (-state.distances.distance(have, want), prop, entity)

    rejected: list[tuple[str, str]] = []
    for (entity, prop_name), (have, want) in sorted(diff, key=hardness):
        alphabet = state.alphabets.get(prop_name)
        if alphabet is None:
            raise SemanticError(f"goal property {prop_name!r} has no alphabet")
        relation = classify_pair(alphabet, have, want)
        row = state.table.row(prop_name, relation.name)
        candidates = []
        for index, name in enumerate(row):
            action = state.actions[name]
            if not guard_holds(action.applicability, current):
                rejected.append((name, f"guard failed for {entity}.{prop_name}"))
                continue
            predicted = effect_successor(
                have.property, have.value, action.declared_effect[prop_name],
                clamp=True)
            score = state.distances.distance(
                QualValue(have.property, predicted), want)
            candidates.append((score, index, name))
        if not candidates:
            if not row:
                log.debug("no actions filed under (%s, %s)", prop_name, relation.name)
            continue
        candidates.sort()
        best_score, _, chosen = candidates[0]
        for score, _, name in candidates[1:]:
            reason = ("lost the tie on table order" if score == best_score
                      else f"predicted distance {score} > {best_score}")
            rejected.append((name, reason))
        return Decision(chosen=chosen, entity=entity, prop=prop_name,
                        pair=(have.value, want.value), relation=relation.name,
                        rejected=tuple(rejected))
    raise NoApplicableAction(
        "every goal pair has an empty or fully guarded candidate row")


@dataclass(frozen=True)
class StepResult:
    """Output of one agent tick: actions, the emitted formula tuple, and
    the threaded state."""

    actions: tuple[str, ...]
    generated: tuple[Formula, ...]
    state: AgentState
    decision: Decision | None
    satisfied: bool


def _split_percepts(percepts: Sequence[Formula]) -> tuple[Formula, Formula, tuple[Formula, ...]]:
    presents = [f for f in percepts if f.mode is Mode.PRESENT]
    goals = [f for f in percepts if f.mode is Mode.GOAL]
    if len(presents) != 1 or not goals or len(presents) + len(goals) != len(percepts):
        raise MalformedPercepts(
            "percepts must be exactly one present formula plus goal formulas")
    merged: dict[tuple[str, str], Atom] = {}
    for g in goals:
        for atom in g.atoms:
            other = merged.get(atom.key())
            if other is not None and other.value != atom.value:
                raise MalformedPercepts(
                    f"conflicting goal values for {atom.entity}.{atom.prop}")
            merged[atom.key()] = atom
    return presents[0], Formula(Mode.GOAL, frozenset(merged.values())), tuple(goals)


def _predicted_after(current: Formula, decision: Decision, state: AgentState) -> Formula:
    """The agent's own expectation of the next present description."""
    atoms = set()
    for atom in current.atoms:
        if (atom.entity, atom.prop) == (decision.entity, decision.prop):
            prop = state.properties[atom.prop]
            delta = state.actions[decision.chosen].declared_effect[decision.prop]
            atoms.add(Atom(atom.entity, atom.prop,
                           effect_successor(prop, atom.value, delta, clamp=True)))
        else:
            atoms.add(atom)
    return Formula(Mode.PRESENT, frozenset(atoms))


def agent_step(state: AgentState, percepts: Sequence[Formula], tick: int) -> StepResult:
    """One tick of the decision loop.

    The chosen constant is routed through the action calculus: the step
    builds the (actions, formulas) pair as a term, projects its first
    component, and normalizes it back to a one-element action sequence.
    The emitted tuple carries the present description annotated with the
    decision, plus the goals as given; the log gains one step record whose
    after-state is the agent's prediction.
    """
    current, merged_goal, goals = _split_percepts(percepts)
    try:
        decision = select_action(state, current, merged_goal)
    except GoalSatisfied:
        actions = (state.noop,) if state.noop else ()
        note = f"satisfied tick={tick}" + (f" chosen={state.noop}" if state.noop else "")
        generated = (current.with_note(note),) + goals
        return StepResult(actions, generated,
                          replace(state, generated=generated), None, True)
    except NoApplicableAction:
        if state.noop is None:
            raise
        note = f"blocked tick={tick} chosen={state.noop}"
        generated = (current.with_note(note),) + goals
        new_log = log_formula(state.log.steps
                              + (StepRecord(tick, current, state.noop, current),))
        return StepResult((state.noop,), generated,
                          replace(state, generated=generated, log=new_log),
                          None, False)

    generated = (current.with_note(decision.render(tick)),) + goals
    output = Pair(SeqLit((Const(decision.chosen, IU),)),
                  SeqLit(tuple(Const(to_text(f), LP) for f in generated)))
    actions = extract_actions(Proj(1, output))
    predicted = _predicted_after(current, decision, state)
    new_log = log_formula(state.log.steps
                          + (StepRecord(tick, current, decision.chosen, predicted),))
    new_state = replace(state, generated=generated, log=new_log)
    return StepResult(actions, generated, new_state, decision, False)


@dataclass(frozen=True)
class AgreementReport:
    """How an action's observed behaviour compares with its label."""

    action: str
    prop: str
    label: str
    total: int
    counts: Mapping[str, int]
    agreement: float
    majority: str
    disagree: bool


def check_agreement(action: ActionModel, alphabet: MetaAlphabet,
                    observed: Sequence[tuple[QualValue, QualValue]]) -> AgreementReport:
    """Fraction of observed (pre, post) pairs inside the labelled relation,
    plus the empirical majority relation."""
    prop_name = alphabet.property.name
    label = action.labels.get(prop_name)
    if label is None:
        raise ValueError(f"action {action.name} carries no label for {prop_name}")
    if not observed:
        raise EmptyObservations(f"no observations for {action.name} on {prop_name}")
    counts: Counter[str] = Counter()
    for pre, post in observed:
        counts[classify_pair(alphabet, pre, post).name] += 1
    order = {r.name: i for i, r in enumerate(alphabet.relations)}
    majority = max(counts, key=lambda name: (counts[name], -order[name]))
    agreement = counts.get(label, 0) / len(observed)
    return AgreementReport(action=action.name, prop=prop_name, label=label,
                           total=len(observed), counts=dict(counts),
                           agreement=agreement, majority=majority,
                           disagree=majority != label)


@dataclass(frozen=True)
class LearnEvent:
    """One (action, property) analysis outcome."""

    action: str
    prop: str
    outcome: str  # 'relabelled' | 'confirmed' | 'insufficient' | 'unrepairable'
    label: str
    majority: str | None = None
    support: int = 0
    total: int = 0
    new_effect: int | None = None


def _observed_pairs(log_f: Formula, properties: Mapping[str, Property]
                    ) -> dict[tuple[str, str], list[tuple[QualValue, QualValue]]]:
    """Evidence per (action, property) from consecutive reality descriptions.

    Step i's action is credited with the change between step i's and step
    i+1's before-states; the recorded after-states are the agent's own
    predictions and are not treated as observations.
    """
    out: dict[tuple[str, str], list[tuple[QualValue, QualValue]]] = {}
    steps = log_f.steps
    for i in range(len(steps) - 1):
        before = steps[i].before.cell_values()
        after = steps[i + 1].before.cell_values()
        for (entity, prop_name), pre in before.items():
            post = after.get((entity, prop_name))
            prop = properties.get(prop_name)
            if post is None or prop is None:
                continue
            out.setdefault((steps[i].action, prop_name), []).append(
                (QualValue(prop, pre), QualValue(prop, post)))
    return out


def analyze_log(state: AgentState, log_f: Formula,
                min_evidence: int | None = None) -> tuple[LearnEvent, ...]:
    """Pure analysis: what would learning change, and on what evidence."""
    if log_f.mode is not Mode.LOG:
        raise ValueError("learning consumes a log-mode formula")
    threshold = state.min_evidence if min_evidence is None else min_evidence
    evidence = _observed_pairs(log_f, state.properties)
    events = []
    for name, action in state.actions.items():
        for prop_name, label in action.labels.items():
            alphabet = state.alphabets.get(prop_name)
            if alphabet is None:
                continue
            observed = evidence.get((name, prop_name), [])
            if not observed:
                events.append(LearnEvent(name, prop_name, "insufficient", label))
                continue
            report = check_agreement(action, alphabet, observed)
            support = report.counts[report.majority]
            if (report.majority == label or support < threshold
                    or support / report.total < 2 / 3):
                outcome = "confirmed" if report.majority == label else "insufficient"
                events.append(LearnEvent(name, prop_name, outcome, label,
                                         report.majority, support, report.total))
                continue
            new_rel = alphabet.relation(report.majority)
            prop = state.properties[prop_name]
            majority_deltas = Counter(
                post.rank - pre.rank for pre, post in observed
                if new_rel.contains_names(pre.value, post.value))
            new_effect = min(majority_deltas,
                             key=lambda d: (-majority_deltas[d], abs(d), d))
            repaired = _relabelled(action, prop_name, report.majority, new_effect)
            if label_violations(repaired, state.alphabets, state.properties):
                events.append(LearnEvent(name, prop_name, "unrepairable", label,
                                         report.majority, support, report.total))
                continue
            events.append(LearnEvent(name, prop_name, "relabelled", label,
                                     report.majority, support, report.total,
                                     new_effect=new_effect))
    return tuple(events)


def _relabelled(action: ActionModel, prop: str, relation: str, effect: int) -> ActionModel:
    labels = dict(action.labels)
    effects = dict(action.declared_effect)
    labels[prop] = relation
    effects[prop] = effect
    return replace(action, labels=labels, declared_effect=effects)


def learn(state: AgentState, log_f: Formula,
          min_evidence: int | None = None) -> AgentState:
    """Repair action labels from the log and rebuild the connection table.

    Actions with too little or too mixed evidence keep their labels; the
    returned state shares everything except the repaired actions and table.
    """
    actions = dict(state.actions)
    changed = False
    for event in analyze_log(state, log_f, min_evidence):
        if event.outcome != "relabelled":
            continue
        actions[event.action] = _relabelled(
            actions[event.action], event.prop, event.majority, event.new_effect)
        changed = True
    if not changed:
        return state
    return replace(state, actions=actions, table=build_connection_table(actions))
