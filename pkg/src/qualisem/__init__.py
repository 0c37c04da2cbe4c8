"""Qualitative-semantics agent engine.

A threshold world model quantizes raw magnitudes into finite ordered value
spaces; JEPD relation alphabets name the kinds of change; a means-ends
selector picks actions from a table of connections; a label-repair
operator learns from the agent's own step log; deterministic simulated
environments close the loop.
"""

from .calculus import (Abs, App, Arrow, Const, Ground, GroundType, Pair,
                       Product, Proj, SeqLit, SeqType, Term, Var, alpha_equal,
                       extract_actions, normalize, parse_term, term_to_text,
                       typecheck, type_to_text)
from .decision import (ActionModel, AgentState, AgreementReport,
                       ConnectionTable, Decision, LearnEvent, StepResult,
                       agent_step, analyze_log, build_connection_table,
                       check_agreement, learn, select_action)
from .environments import (AdditiveEnvironment, Environment, Episode,
                           GridEnvironment, Outcome, goal_distances,
                           interpret, oracle_search, run_episode)
from .formulas import (Atom, Formula, JepdReport, MetaAlphabet, Mode,
                       Relation, RelationKind, StepRecord, classify_pair,
                       formula_to_reality, goal, log_formula, present,
                       validate_jepd)
from .scenario import (BUILTIN_NAMES, AdditiveSpec, GridSpec, Scenario,
                       ValidationReport, build_agent, build_environment,
                       builtin_scenario, load_scenario, parse_scenario,
                       scenario_to_text, validate_scenario)
from .syntax import parse, parse_noted, to_text
from .trace import Trace, TraceRecord, parse_line, record_to_line
from .worldmodel import (DistanceTable, Property, QualValue, Reality,
                         distance, quantize, reality_diff)
from . import errors

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
