"""Qualitative world model: properties, threshold quantization, realities.

A property carries a finite ordered value space; raw magnitudes map into it
through ascending cut points. A reality is a time-stamped total assignment
of qualitative values to (entity, property) cells, optionally backed by the
raw magnitudes it was quantized from.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InvalidMagnitude, PropertyMismatch

Cell = tuple[str, str]  # (entity, property name)


@dataclass(frozen=True)
class Property:
    """A named finite ordered value space with quantization cut points."""

    name: str
    values: tuple[str, ...]
    thresholds: tuple[float, ...]
    unit: str | None = None

    def __post_init__(self):
        if not self.values:
            raise ValueError(f"property {self.name}: empty value space")
        if len(set(self.values)) != len(self.values):
            raise ValueError(f"property {self.name}: duplicate values")
        if len(self.thresholds) != len(self.values) - 1:
            raise ValueError(
                f"property {self.name}: need {len(self.values) - 1} "
                f"thresholds, got {len(self.thresholds)}")
        if any(b <= a for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise ValueError(f"property {self.name}: thresholds not strictly ascending")

    def rank(self, value: str) -> int:
        try:
            return self.values.index(value)
        except ValueError:
            raise ValueError(f"{value!r} is not a value of property {self.name}") from None


@dataclass(frozen=True)
class QualValue:
    """One value drawn from a property's value space."""

    property: Property
    value: str

    def __post_init__(self):
        if self.value not in self.property.values:
            raise ValueError(
                f"{self.value!r} is not a value of property {self.property.name}")

    @property
    def rank(self) -> int:
        return self.property.values.index(self.value)


def quantize(prop: Property, magnitude: float) -> QualValue:
    """Band a raw magnitude.

    The band index is the number of cut points at or below the magnitude,
    so a magnitude sitting exactly on a cut point lands in the higher band.
    """
    if not isinstance(magnitude, (int, float)) or not math.isfinite(magnitude):
        raise InvalidMagnitude(f"cannot quantize {magnitude!r} for {prop.name}")
    k = bisect_right(prop.thresholds, magnitude)
    return QualValue(prop, prop.values[k])


@dataclass(frozen=True)
class DistanceTable:
    """Per-property distance between qualitative values.

    Defaults to rank difference in the declared order; a property may carry
    an explicit override table (kept symmetric with a zero diagonal).
    """

    overrides: Mapping[str, Mapping[tuple[str, str], int]] = field(default_factory=dict)

    def __post_init__(self):
        for prop_name, table in self.overrides.items():
            for (x, y), d in table.items():
                if x == y and d != 0:
                    raise ValueError(f"distance {prop_name}({x},{x}) must be 0")
                if x != y and d <= 0:
                    raise ValueError(f"distance {prop_name}({x},{y}) must be positive")
                if table.get((y, x), d) != d:
                    raise ValueError(f"distance {prop_name}({x},{y}) is asymmetric")

    def distance(self, x: QualValue, y: QualValue) -> int:
        if x.property != y.property:
            raise PropertyMismatch(
                f"cannot compare {x.property.name} with {y.property.name}")
        table = self.overrides.get(x.property.name)
        if table is not None and x.value != y.value:
            got = table.get((x.value, y.value))
            if got is not None:
                return got
        return abs(x.rank - y.rank)


def distance(table: DistanceTable, x: QualValue, y: QualValue) -> int:
    return table.distance(x, y)


@dataclass(frozen=True)
class Reality:
    """Time-stamped qualitative state, optionally with raw magnitudes.

    When raw magnitudes are present every covered cell must quantize to the
    stored qualitative value; nothing else interprets the raw layer.
    """

    time: int
    assignments: Mapping[Cell, QualValue]
    raw: Mapping[Cell, float] | None = None

    def __post_init__(self):
        if self.time < 0:
            raise ValueError("reality time must be non-negative")
        if self.raw is not None:
            for cell, magnitude in self.raw.items():
                qv = self.assignments.get(cell)
                if qv is not None and quantize(qv.property, magnitude) != qv:
                    raise ValueError(
                        f"cell {cell}: raw {magnitude!r} does not quantize "
                        f"to {qv.value!r}")


def reality_diff(current: Reality, target: Reality
                 ) -> list[tuple[Cell, tuple[QualValue, QualValue]]]:
    """Cells where the target disagrees with the current reality.

    The target may be partial; only its cells are compared. Each entry is
    the goal pair (current value, target value). Output is sorted by cell
    for determinism.
    """
    out = []
    for cell in sorted(target.assignments):
        want = target.assignments[cell]
        have = current.assignments.get(cell)
        if have is None:
            raise PropertyMismatch(f"target cell {cell} missing from current reality")
        if have.value != want.value:
            out.append((cell, (have, want)))
    return out
