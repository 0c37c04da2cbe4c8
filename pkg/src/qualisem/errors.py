"""Exception types shared across the engine.

Operations raise the specific class named in their contract; construction
of ill-formed domain objects raises plain ValueError.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for every error raised by this package."""


class InvalidMagnitude(EngineError):
    """Quantization was asked to band a non-finite magnitude."""


class PropertyMismatch(EngineError):
    """Two qualitative values from different properties were combined."""


class ParseError(EngineError):
    """Syntax error with a 1-based source position and the expected tokens."""

    def __init__(self, message: str, line: int, column: int,
                 expected: tuple[str, ...] = (), found: str | None = None):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found


class SemanticError(EngineError):
    """Well-formed syntax that references unknown properties, values, or
    otherwise violates a declaration-level constraint."""


class PartitionViolation(EngineError):
    """A value pair matched zero or several relations of an alphabet that
    was assumed to be jointly exhaustive and pairwise disjoint."""


class TypeCheckError(EngineError):
    """An ill-typed subterm, located by a path of constructor steps."""

    def __init__(self, message: str, path: tuple[str, ...] = (),
                 expected=None, actual=None):
        at = " at " + "/".join(path) if path else ""
        super().__init__(f"{message}{at}")
        self.path = path
        self.expected = expected
        self.actual = actual


class UnboundVariable(TypeCheckError):
    """A variable occurs free where no binder or context supplies it."""


class NotWellTyped(EngineError):
    """Normalization was handed a term that fails the defensive typecheck."""


class NotAnActionSequence(EngineError):
    """A normal form contains leaves other than interaction constants."""


class ReductionLimitExceeded(EngineError):
    """The reduction step budget ran out (defends against bad input)."""


class GoalSatisfied(EngineError):
    """Not a failure: the goal diff is empty, so there is nothing to do."""


class NoApplicableAction(EngineError):
    """Every goal pair's candidate row is empty or guarded out."""


class MalformedPercepts(EngineError):
    """The percept tuple is not one total present description plus at
    least one consistent goal description."""


class EmptyObservations(EngineError):
    """An agreement check was given no observed value pairs."""


class InsufficientEvidence(EngineError):
    """Too few observations to relabel an action."""


class UnknownAction(EngineError):
    """The environment has no dynamics for the requested action."""


class StateSpaceTooLarge(EngineError):
    """Exhaustive search gave up after visiting too many states."""


class ScenarioError(EngineError):
    """A scenario's cross-references do not resolve."""
