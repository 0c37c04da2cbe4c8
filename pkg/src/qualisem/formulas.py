"""Formula objects: relation alphabets and state descriptions.

An alphabet partitions V_p x V_p for one property into named binary
relations (the change kinds an agent can talk about). Formulas describe a
present reality, a goal, or a log of executed steps; present/goal bodies
are sets of holds(entity, property, value) atoms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterable, Mapping

from .errors import PartitionViolation
from .worldmodel import Property, QualValue, Reality


class RelationKind(enum.Enum):
    LT = "lt"
    GT = "gt"
    EQ = "eq"
    PAIRS = "pairs"


@dataclass(frozen=True)
class Relation:
    """A named binary relation over one property's value space."""

    name: str
    property: Property
    kind: RelationKind
    pairs: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        if self.kind is RelationKind.PAIRS:
            values = set(self.property.values)
            for x, y in self.pairs:
                if x not in values or y not in values:
                    raise ValueError(
                        f"relation {self.name}: pair ({x},{y}) outside "
                        f"{self.property.name}'s value space")
        elif self.pairs:
            raise ValueError(f"relation {self.name}: {self.kind.value} takes no pair set")

    def contains_names(self, x: str, y: str) -> bool:
        rx, ry = self.property.rank(x), self.property.rank(y)
        if self.kind is RelationKind.LT:
            return rx < ry
        if self.kind is RelationKind.GT:
            return rx > ry
        if self.kind is RelationKind.EQ:
            return rx == ry
        return (x, y) in self.pairs

    def contains(self, x: QualValue, y: QualValue) -> bool:
        if x.property != self.property or y.property != self.property:
            raise ValueError(f"relation {self.name}: values from a foreign property")
        return self.contains_names(x.value, y.value)


@dataclass(frozen=True)
class MetaAlphabet:
    """A named family of relations intended to partition V_p x V_p.

    Whether it actually is jointly exhaustive and pairwise disjoint is
    checked by validate_jepd; construction does not enforce it so that
    broken alphabets can be loaded and reported.
    """

    name: str
    property: Property
    relations: tuple[Relation, ...]

    def __post_init__(self):
        if not self.relations:
            raise ValueError(f"alphabet {self.name}: no relations")
        names = [r.name for r in self.relations]
        if len(set(names)) != len(names):
            raise ValueError(f"alphabet {self.name}: duplicate relation names")
        for r in self.relations:
            if r.property != self.property:
                raise ValueError(
                    f"alphabet {self.name}: relation {r.name} is over another property")

    def relation(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(f"alphabet {self.name} has no relation {name!r}")


@dataclass(frozen=True)
class JepdReport:
    """Pairs covered zero times and pairs covered more than once."""

    alphabet: str
    uncovered: tuple[tuple[str, str], ...]
    overcovered: tuple[tuple[tuple[str, str], tuple[str, ...]], ...]

    @property
    def ok(self) -> bool:
        return not self.uncovered and not self.overcovered


def validate_jepd(alphabet: MetaAlphabet) -> JepdReport:
    """Exhaustively check the partition over all of V_p x V_p."""
    uncovered = []
    overcovered = []
    for x, y in product(alphabet.property.values, repeat=2):
        holders = tuple(r.name for r in alphabet.relations if r.contains_names(x, y))
        if not holders:
            uncovered.append((x, y))
        elif len(holders) > 1:
            overcovered.append(((x, y), holders))
    return JepdReport(alphabet.name, tuple(uncovered), tuple(overcovered))


def classify_pair(alphabet: MetaAlphabet, x: QualValue, y: QualValue) -> Relation:
    """The unique relation containing (x, y); the partition must be sound."""
    if x.property != alphabet.property or y.property != alphabet.property:
        raise ValueError(
            f"alphabet {alphabet.name} is over {alphabet.property.name}, "
            f"not {x.property.name}/{y.property.name}")
    matches = [r for r in alphabet.relations if r.contains_names(x.value, y.value)]
    if len(matches) != 1:
        raise PartitionViolation(
            f"alphabet {alphabet.name}: pair ({x.value},{y.value}) matches "
            f"{[r.name for r in matches] or 'nothing'}")
    return matches[0]


class Mode(enum.Enum):
    PRESENT = "present"
    GOAL = "goal"
    LOG = "log"


@dataclass(frozen=True)
class Atom:
    entity: str
    prop: str
    value: str

    def key(self) -> tuple[str, str]:
        return (self.entity, self.prop)


@dataclass(frozen=True)
class StepRecord:
    """One executed interaction: time, state before, action, state after."""

    time: int
    before: "Formula"
    action: str
    after: "Formula"

    def __post_init__(self):
        if self.before.mode is not Mode.PRESENT or self.after.mode is not Mode.PRESENT:
            raise ValueError("step records hold present-mode descriptions")


@dataclass(frozen=True)
class Formula:
    """A present description, a goal description, or a step log.

    The optional note is presentation metadata (rendered as a trailing
    comment, dropped by the parser) and is excluded from equality.
    """

    mode: Mode
    atoms: frozenset[Atom] = frozenset()
    steps: tuple[StepRecord, ...] = ()
    note: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.mode is Mode.LOG:
            if self.atoms:
                raise ValueError("log formulas carry steps, not atoms")
            times = [s.time for s in self.steps]
            if any(b != a + 1 for a, b in zip(times, times[1:])):
                raise ValueError("log step times must be strictly increasing and contiguous")
        elif self.steps:
            raise ValueError(f"{self.mode.value} formulas carry atoms, not steps")
        else:
            cells = [a.key() for a in self.atoms]
            if len(set(cells)) != len(cells):
                raise ValueError("a formula assigns at most one value per cell")

    def with_note(self, note: str | None) -> "Formula":
        return replace(self, note=note)

    def cell_values(self) -> dict[tuple[str, str], str]:
        return {a.key(): a.value for a in self.atoms}


def present(atoms: Iterable[Atom], note: str | None = None) -> Formula:
    return Formula(Mode.PRESENT, frozenset(atoms), note=note)


def goal(atoms: Iterable[Atom], note: str | None = None) -> Formula:
    return Formula(Mode.GOAL, frozenset(atoms), note=note)


def log_formula(steps: Iterable[StepRecord] = ()) -> Formula:
    return Formula(Mode.LOG, steps=tuple(steps))


def formula_to_reality(formula: Formula, properties: Mapping[str, Property],
                       time: int = 0) -> Reality:
    """Read a present/goal body as a (possibly partial) reality."""
    if formula.mode is Mode.LOG:
        raise ValueError("log formulas do not describe a single reality")
    assignments = {}
    for atom in sorted(formula.atoms, key=lambda a: a.key()):
        prop = properties.get(atom.prop)
        if prop is None:
            raise KeyError(f"unknown property {atom.prop!r}")
        assignments[atom.key()] = QualValue(prop, atom.value)
    return Reality(time=time, assignments=assignments)
