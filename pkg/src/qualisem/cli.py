"""Command-line surface: validate, run, learn, normalize.

Exit codes: 0 success / goal reached, 1 validation or type failure,
2 parse error, 3 horizon exhausted, 4 stuck. Set QUALISEM_LOG=debug (or
any logging level name) for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from .calculus import IU, extract_actions, normalize, parse_term, term_to_text
from .decision import analyze_log, learn
from .environments import run_episode
from .errors import (EngineError, NotAnActionSequence, ParseError,
                     SemanticError)
from .formulas import Formula, Mode
from .scenario import (BUILTIN_NAMES, Scenario, build_agent, build_environment,
                       builtin_scenario, parse_scenario, scenario_to_text,
                       validate_scenario)
from .syntax import parse, to_text
from .trace import Trace

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_HORIZON = 3
EXIT_STUCK = 4

log = logging.getLogger("qualisem")


def _setup_logging() -> None:
    level_name = os.environ.get("QUALISEM_LOG", "warning").upper()
    level = getattr(logging, level_name, logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _load(source: str) -> Scenario:
    """A built-in scenario name or a path to a scenario file."""
    if source in BUILTIN_NAMES:
        return builtin_scenario(source)
    return parse_scenario(Path(source).read_text())


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        sc = _load(args.scenario)
    except (ParseError, SemanticError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = validate_scenario(sc)
    for jepd in report.jepd:
        if jepd.ok:
            print(f"alphabet {jepd.alphabet}: partition ok")
        else:
            for pair in jepd.uncovered:
                print(f"alphabet {jepd.alphabet}: pair {pair} uncovered")
            for pair, holders in jepd.overcovered:
                print(f"alphabet {jepd.alphabet}: pair {pair} covered by "
                      f"{', '.join(holders)}")
    for line in report.label_checks:
        print(line)
    for problem in report.problems:
        print(f"problem: {problem}")
    print(f"scenario {sc.name}: {'valid' if report.ok else 'INVALID'}")
    return EXIT_OK if report.ok else EXIT_INVALID


def _run_once(sc: Scenario, seed: int, horizon: int,
              trace_path: Path | None, log_path: Path | None) -> int:
    sc = replace(sc, seed=seed, horizon=horizon)
    env = build_environment(sc)
    agent = build_agent(sc)
    episode, trace = run_episode(env, agent, sc.goal, sc.horizon)
    header = {"scenario": sc.name, "seed": sc.seed, "horizon": sc.horizon}
    if trace_path is not None:
        trace_path.write_text(trace.text(header))
    if log_path is not None:
        log_path.write_text(to_text(trace.log) + "\n")
    outcome = episode.outcome
    where = f" at tick {outcome.tick}" if outcome.tick is not None else ""
    detail = f" ({outcome.error})" if outcome.error else ""
    print(f"seed {sc.seed}: {outcome.kind}{where}{detail}")
    if outcome.kind == "reached":
        return EXIT_OK
    if outcome.kind == "horizon":
        return EXIT_HORIZON
    return EXIT_STUCK


def cmd_run(args: argparse.Namespace) -> int:
    try:
        sc = _load(args.scenario)
    except (ParseError, SemanticError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = validate_scenario(sc)
    if not report.ok:
        for problem in report.problems:
            print(f"problem: {problem}", file=sys.stderr)
        return EXIT_INVALID
    seed = sc.seed if args.seed is None else args.seed
    horizon = sc.horizon if args.horizon is None else args.horizon
    trace_path = Path(args.trace) if args.trace else None
    log_path = Path(args.log) if args.log else None
    if args.seeds is None:
        return _run_once(sc, seed, horizon, trace_path, log_path)
    codes = []
    for offset in range(args.seeds):
        batch_seed = seed + offset
        batch_trace = None
        if trace_path is not None:
            batch_trace = trace_path.with_name(
                f"{trace_path.stem}-{batch_seed}{trace_path.suffix}")
        codes.append(_run_once(sc, batch_seed, horizon, batch_trace, None))
    if all(code == EXIT_OK for code in codes):
        return EXIT_OK
    return EXIT_STUCK if EXIT_STUCK in codes else EXIT_HORIZON


def cmd_learn(args: argparse.Namespace) -> int:
    try:
        sc = _load(args.scenario)
        log_text = Path(args.log).read_text()
        log_f = parse(log_text, sc.properties)
    except (ParseError, SemanticError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if not isinstance(log_f, Formula) or log_f.mode is not Mode.LOG:
        print("parse error: the --log file must hold a log-mode formula",
              file=sys.stderr)
        return EXIT_PARSE
    agent = build_agent(sc)
    events = analyze_log(agent, log_f)
    repaired = learn(agent, log_f)
    if not events:
        print("warning: no labelled actions produced analysable evidence")
    for event in events:
        if event.outcome == "relabelled":
            print(f"action {event.action}: {event.prop} relabelled "
                  f"{event.label} -> {event.majority} "
                  f"(support {event.support}/{event.total}, "
                  f"new effect {event.new_effect:+d})")
        elif event.outcome == "insufficient":
            print(f"warning: action {event.action}: insufficient evidence on "
                  f"{event.prop} ({event.support}/{event.total}), label kept")
        elif event.outcome == "unrepairable":
            print(f"warning: action {event.action}: majority {event.majority} on "
                  f"{event.prop} cannot replace {event.label} without breaking "
                  f"the effect containment, label kept")
        else:
            print(f"action {event.action}: label {event.label} on {event.prop} "
                  f"confirmed ({event.support}/{event.total})")
    out = replace(sc, actions=dict(repaired.actions))
    Path(args.out).write_text(scenario_to_text(out))
    print(f"wrote repaired scenario to {args.out}")
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace) -> int:
    try:
        text = Path(args.term).read_text()
    except OSError as exc:
        print(f"cannot read term: {exc}", file=sys.stderr)
        return EXIT_PARSE
    constants = None
    if args.scenario:
        try:
            sc = _load(args.scenario)
        except (ParseError, SemanticError, OSError) as exc:
            print(f"parse error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        constants = {name: IU for name in sc.actions}
    try:
        term = parse_term(text, constants)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        nf = normalize(term)
    except EngineError as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(term_to_text(nf))
    try:
        actions = extract_actions(nf)
        log.info("action sequence: %s", ", ".join(actions))
    except NotAnActionSequence:
        pass
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qualisem",
        description="Qualitative-semantics agent engine. Scenarios are file "
                    "paths or built-in names: " + ", ".join(BUILTIN_NAMES))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario's partitions and labels")
    p.add_argument("scenario")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("run", help="run one episode (or a seed batch)")
    p.add_argument("scenario")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--trace", default=None, help="write the trace file here")
    p.add_argument("--log", default=None, help="write the step-log formula here")
    p.add_argument("--seeds", type=int, default=None,
                   help="run N consecutive seeds, one trace file per seed")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("learn", help="repair action labels from a step log")
    p.add_argument("scenario")
    p.add_argument("--log", required=True, help="log formula file")
    p.add_argument("--out", required=True, help="where to write the repaired scenario")
    p.set_defaults(fn=cmd_learn)

    p = sub.add_parser("normalize", help="typecheck and normalize a decision term")
    p.add_argument("--term", required=True, help="file holding the term")
    p.add_argument("--scenario", default=None,
                   help="scenario supplying the interaction constants")
    p.set_defaults(fn=cmd_normalize)
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
