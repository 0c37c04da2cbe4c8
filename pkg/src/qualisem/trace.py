"""Line-delimited trace records.

One JSON object per line. The first line is a header; every following
line is a tick record with exactly the fields {tick, percept,
decision{chosen, relation, goal, rejected}, reality, distances,
generated}. Formulas are embedded as their canonical text, so every line
parses back given the scenario's property declarations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .decision import AgentState, Decision
from .formulas import Formula
from .syntax import parse_noted, to_text
from .worldmodel import Property, QualValue, Reality


@dataclass(frozen=True)
class TraceRecord:
    tick: int
    percept: Formula
    decision: Decision | None
    reality: Reality
    distances: Mapping[str, int]
    generated: tuple[Formula, ...]


@dataclass(frozen=True)
class Trace:
    records: tuple[TraceRecord, ...]
    log: Formula
    final_state: AgentState | None = None

    def lines(self, header: Mapping | None = None) -> list[str]:
        out = []
        if header is not None:
            out.append(json.dumps({"header": dict(header)},
                                  separators=(",", ":"), allow_nan=False))
        out.extend(record_to_line(r) for r in self.records)
        return out

    def text(self, header: Mapping | None = None) -> str:
        return "".join(line + "\n" for line in self.lines(header))


def _decision_obj(decision: Decision | None):
    if decision is None:
        return None
    return {
        "chosen": decision.chosen,
        "relation": decision.relation,
        "goal": {"entity": decision.entity, "property": decision.prop,
                 "from": decision.pair[0], "to": decision.pair[1]},
        "rejected": [[name, reason] for name, reason in decision.rejected],
    }


def _reality_obj(reality: Reality):
    cells = sorted(reality.assignments)
    obj = {"time": reality.time,
           "assignments": {f"{e}.{p}": reality.assignments[(e, p)].value
                           for e, p in cells}}
    if reality.raw is not None:
        obj["raw"] = {f"{e}.{p}": reality.raw[(e, p)]
                      for e, p in cells if (e, p) in reality.raw}
    return obj


def record_to_line(record: TraceRecord) -> str:
    obj = {
        "tick": record.tick,
        "percept": to_text(record.percept),
        "decision": _decision_obj(record.decision),
        "reality": _reality_obj(record.reality),
        "distances": dict(record.distances),
        "generated": [to_text(f) for f in record.generated],
    }
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


def parse_line(line: str, properties: Mapping[str, Property]
               ) -> TraceRecord | dict:
    """Parse one trace line back into a record (or the header dict)."""
    obj = json.loads(line)
    if "header" in obj:
        return obj["header"]
    decision = None
    if obj["decision"] is not None:
        d = obj["decision"]
        decision = Decision(
            chosen=d["chosen"], entity=d["goal"]["entity"],
            prop=d["goal"]["property"],
            pair=(d["goal"]["from"], d["goal"]["to"]),
            relation=d["relation"],
            rejected=tuple((name, reason) for name, reason in d["rejected"]))
    assignments = {}
    for cell_text, value in obj["reality"]["assignments"].items():
        entity, prop_name = cell_text.split(".", 1)
        assignments[(entity, prop_name)] = QualValue(properties[prop_name], value)
    raw = None
    if "raw" in obj["reality"]:
        raw = {}
        for cell_text, magnitude in obj["reality"]["raw"].items():
            entity, prop_name = cell_text.split(".", 1)
            raw[(entity, prop_name)] = magnitude
    reality = Reality(time=obj["reality"]["time"], assignments=assignments, raw=raw)
    percept = parse_noted(obj["percept"], properties)
    generated = tuple(parse_noted(text, properties) for text in obj["generated"])
    return TraceRecord(tick=obj["tick"], percept=percept, decision=decision,
                       reality=reality, distances=obj["distances"],
                       generated=generated)
