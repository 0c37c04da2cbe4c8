"""Simply typed lambda calculus over the engine's four ground types.

Decision terms are built from interaction constants and formula constants,
typechecked, and reduced to a normal form; a term denoting behaviour ends
up as a sequence literal of interaction constants, from which the action
names are extracted.

Ground types: LP (descriptions), LP* (extended descriptions), CL (control
language), Iu (interaction constants). Products and sequences are included
so that a decision function can return an (actions, formulas) pair.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Union

from .errors import (NotAnActionSequence, NotWellTyped, ParseError,
                     ReductionLimitExceeded, TypeCheckError, UnboundVariable)
from .syntax import Token

DEFAULT_STEP_BUDGET = 10 ** 6


class GroundType(enum.Enum):
    LP = "LP"
    LPSTAR = "LP*"
    CL = "CL"
    IU = "Iu"


@dataclass(frozen=True)
class Ground:
    ground: GroundType


@dataclass(frozen=True)
class Arrow:
    param: "LambdaType"
    result: "LambdaType"


@dataclass(frozen=True)
class Product:
    first: "LambdaType"
    second: "LambdaType"


@dataclass(frozen=True)
class SeqType:
    item: "LambdaType"


LambdaType = Union[Ground, Arrow, Product, SeqType]

LP = Ground(GroundType.LP)
LPSTAR = Ground(GroundType.LPSTAR)
CL = Ground(GroundType.CL)
IU = Ground(GroundType.IU)


def type_to_text(t: LambdaType) -> str:
    if isinstance(t, Ground):
        return t.ground.value
    if isinstance(t, Arrow):
        left = type_to_text(t.param)
        if isinstance(t.param, Arrow):
            left = f"({left})"
        return f"{left} -> {type_to_text(t.result)}"
    if isinstance(t, Product):
        return f"({type_to_text(t.first)}, {type_to_text(t.second)})"
    return f"[{type_to_text(t.item)}]"


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str
    type: LambdaType


@dataclass(frozen=True)
class Abs:
    param: str
    param_type: LambdaType
    body: "Term"


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Pair:
    first: "Term"
    second: "Term"


@dataclass(frozen=True)
class Proj:
    index: int  # 1 or 2
    body: "Term"

    def __post_init__(self):
        if self.index not in (1, 2):
            raise ValueError("projection index must be 1 or 2")


@dataclass(frozen=True)
class SeqLit:
    items: tuple["Term", ...]


Term = Union[Var, Const, Abs, App, Pair, Proj, SeqLit]


# Typechecking.

def typecheck(term: Term, context: Mapping[str, LambdaType] | None = None) -> LambdaType:
    """Infer the unique type, raising TypeCheckError with the subterm path."""
    return _typecheck(term, dict(context or {}), ())


def _typecheck(term: Term, env: dict[str, LambdaType], path: tuple[str, ...]) -> LambdaType:
    if isinstance(term, Var):
        t = env.get(term.name)
        if t is None:
            raise UnboundVariable(f"unbound variable {term.name!r}", path)
        return t
    if isinstance(term, Const):
        return term.type
    if isinstance(term, Abs):
        inner = dict(env)
        inner[term.param] = term.param_type
        body = _typecheck(term.body, inner, path + ("body",))
        return Arrow(term.param_type, body)
    if isinstance(term, App):
        fn = _typecheck(term.fn, env, path + ("fn",))
        arg = _typecheck(term.arg, env, path + ("arg",))
        if not isinstance(fn, Arrow):
            raise TypeCheckError(
                f"applied a non-function of type {type_to_text(fn)}",
                path + ("fn",), expected="an arrow type", actual=fn)
        if fn.param != arg:
            raise TypeCheckError(
                f"argument has type {type_to_text(arg)}, function wants "
                f"{type_to_text(fn.param)}",
                path + ("arg",), expected=fn.param, actual=arg)
        return fn.result
    if isinstance(term, Pair):
        return Product(_typecheck(term.first, env, path + ("first",)),
                       _typecheck(term.second, env, path + ("second",)))
    if isinstance(term, Proj):
        body = _typecheck(term.body, env, path + ("proj",))
        if not isinstance(body, Product):
            raise TypeCheckError(
                f"projected from a non-pair of type {type_to_text(body)}",
                path + ("proj",), expected="a product type", actual=body)
        return body.first if term.index == 1 else body.second
    if isinstance(term, SeqLit):
        if not term.items:
            raise TypeCheckError("cannot type an empty sequence literal", path)
        types = [_typecheck(item, env, path + (f"items[{i}]",))
                 for i, item in enumerate(term.items)]
        for i, t in enumerate(types[1:], start=1):
            if t != types[0]:
                raise TypeCheckError(
                    f"sequence mixes {type_to_text(types[0])} with {type_to_text(t)}",
                    path + (f"items[{i}]",), expected=types[0], actual=t)
        return SeqType(types[0])
    raise TypeCheckError(f"not a term: {term!r}", path)


# Reduction to normal form.

def _free_vars(term: Term) -> set[str]:
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, Const):
        return set()
    if isinstance(term, Abs):
        return _free_vars(term.body) - {term.param}
    if isinstance(term, App):
        return _free_vars(term.fn) | _free_vars(term.arg)
    if isinstance(term, Pair):
        return _free_vars(term.first) | _free_vars(term.second)
    if isinstance(term, Proj):
        return _free_vars(term.body)
    return set().union(*(_free_vars(i) for i in term.items)) if term.items else set()


class _Fresh:
    def __init__(self):
        self.counter = 0

    def rename(self, base: str) -> str:
        self.counter += 1
        return f"{base}_{self.counter}"


def _subst(term: Term, name: str, value: Term, fresh: _Fresh) -> Term:
    if isinstance(term, Var):
        return value if term.name == name else term
    if isinstance(term, Const):
        return term
    if isinstance(term, Abs):
        if term.param == name:
            return term
        if term.param in _free_vars(value):
            renamed = fresh.rename(term.param)
            body = _subst(term.body, term.param, Var(renamed), fresh)
            return Abs(renamed, term.param_type,
                       _subst(body, name, value, fresh))
        return Abs(term.param, term.param_type, _subst(term.body, name, value, fresh))
    if isinstance(term, App):
        return App(_subst(term.fn, name, value, fresh),
                   _subst(term.arg, name, value, fresh))
    if isinstance(term, Pair):
        return Pair(_subst(term.first, name, value, fresh),
                    _subst(term.second, name, value, fresh))
    if isinstance(term, Proj):
        return Proj(term.index, _subst(term.body, name, value, fresh))
    return SeqLit(tuple(_subst(i, name, value, fresh) for i in term.items))


def _step(term: Term, fresh: _Fresh) -> Term | None:
    """One leftmost-outermost reduction step, or None at normal form."""
    if isinstance(term, App):
        if isinstance(term.fn, Abs):
            return _subst(term.fn.body, term.fn.param, term.arg, fresh)
        fn = _step(term.fn, fresh)
        if fn is not None:
            return App(fn, term.arg)
        arg = _step(term.arg, fresh)
        if arg is not None:
            return App(term.fn, arg)
        return None
    if isinstance(term, Proj):
        if isinstance(term.body, Pair):
            return term.body.first if term.index == 1 else term.body.second
        body = _step(term.body, fresh)
        return Proj(term.index, body) if body is not None else None
    if isinstance(term, Abs):
        body = _step(term.body, fresh)
        return Abs(term.param, term.param_type, body) if body is not None else None
    if isinstance(term, Pair):
        first = _step(term.first, fresh)
        if first is not None:
            return Pair(first, term.second)
        second = _step(term.second, fresh)
        return Pair(term.first, second) if second is not None else None
    if isinstance(term, SeqLit):
        for i, item in enumerate(term.items):
            reduced = _step(item, fresh)
            if reduced is not None:
                items = list(term.items)
                items[i] = reduced
                return SeqLit(tuple(items))
        return None
    return None  # Var / Const


def normalize(term: Term, budget: int = DEFAULT_STEP_BUDGET) -> Term:
    """Reduce a closed well-typed term to its beta normal form.

    Typechecking is re-run defensively; the step budget guards release
    builds against accidental ill-typed input.
    """
    try:
        typecheck(term)
    except TypeCheckError as exc:
        raise NotWellTyped(str(exc)) from exc
    fresh = _Fresh()
    current = term
    for _ in range(budget):
        reduced = _step(current, fresh)
        if reduced is None:
            return current
        current = reduced
    raise ReductionLimitExceeded(f"no normal form within {budget} steps")


def extract_actions(term: Term) -> tuple[str, ...]:
    """Action names from a term whose normal form is interaction constants."""
    nf = normalize(term)
    if isinstance(nf, Const) and nf.type == IU:
        return (nf.name,)
    if isinstance(nf, SeqLit) and nf.items and all(
            isinstance(i, Const) and i.type == IU for i in nf.items):
        return tuple(i.name for i in nf.items)  # type: ignore[union-attr]
    raise NotAnActionSequence(
        f"normal form {term_to_text(nf)} is not a sequence of interaction constants")


def alpha_equal(a: Term, b: Term) -> bool:
    """Structural equality up to renaming of bound variables."""
    return _alpha(a, b, {}, {}, [0])


def _alpha(a: Term, b: Term, ea: dict[str, int], eb: dict[str, int], depth: list[int]) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        return ea.get(a.name, a.name) == eb.get(b.name, b.name)
    if isinstance(a, Const):
        return a == b
    if isinstance(a, Abs):
        if a.param_type != b.param_type:
            return False
        depth[0] += 1
        mark = depth[0]
        return _alpha(a.body, b.body, {**ea, a.param: mark}, {**eb, b.param: mark}, depth)
    if isinstance(a, App):
        return _alpha(a.fn, b.fn, ea, eb, depth) and _alpha(a.arg, b.arg, ea, eb, depth)
    if isinstance(a, Pair):
        return (_alpha(a.first, b.first, ea, eb, depth)
                and _alpha(a.second, b.second, ea, eb, depth))
    if isinstance(a, Proj):
        return a.index == b.index and _alpha(a.body, b.body, ea, eb, depth)
    if len(a.items) != len(b.items):
        return False
    return all(_alpha(x, y, ea, eb, depth) for x, y in zip(a.items, b.items))


# Surface syntax for the CLI:  \x:Iu. x   t1 t2   (t1, t2)   proj1 t   [a, b, c]

def term_to_text(term: Term, level: int = 0) -> str:
    # level 0: top / lambda body; 1: lhs of application; 2: rhs of application.
    if isinstance(term, (Var, Const)):
        return term.name
    if isinstance(term, Abs):
        text = f"\\{term.param}:{type_to_text(term.param_type)}. {term_to_text(term.body)}"
        return f"({text})" if level > 0 else text
    if isinstance(term, App):
        text = f"{term_to_text(term.fn, 1)} {term_to_text(term.arg, 2)}"
        return f"({text})" if level > 1 else text
    if isinstance(term, Pair):
        return f"({term_to_text(term.first)}, {term_to_text(term.second)})"
    if isinstance(term, Proj):
        text = f"proj{term.index} {term_to_text(term.body, 2)}"
        return f"({text})" if level > 1 else text
    return "[" + ", ".join(term_to_text(i) for i in term.items) + "]"


_TERM_PUNCT = {"\\", ".", ":", "(", ")", "[", "]", ",", "*"}


def _term_tokens(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            col += 1
            i += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("->", i):
            tokens.append(Token("->", "->", line, col))
            i += 2
            col += 2
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c in _TERM_PUNCT:
            tokens.append(Token(c, c, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col, found=c)
    tokens.append(Token("eof", "", line, col))
    return tokens


class _TermParser:
    def __init__(self, tokens: list[Token], constants: Mapping[str, LambdaType] | None):
        self.tokens = tokens
        self.pos = 0
        # Without declarations, free identifiers default to interaction
        # constants; with declarations, unknown names stay variables so the
        # typechecker can point at them.
        self.loose = constants is None
        self.constants = dict(constants or {})
        self.bound: list[str] = []

    def peek(self) -> Token:
        return self.tokens[min(self.pos, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.column, expected=(kind,), found=tok.text)
        return self.next()

    def parse(self) -> Term:
        term = self.term()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected trailing {tok.text!r}", tok.line, tok.column,
                             found=tok.text)
        return term

    def term(self) -> Term:
        if self.peek().kind == "\\":
            self.next()
            param = self.expect("ident").text
            self.expect(":")
            param_type = self.type()
            self.expect(".")
            self.bound.append(param)
            body = self.term()
            self.bound.pop()
            return Abs(param, param_type, body)
        term = self.atom()
        while self.peek().kind in ("ident", "(", "["):
            term = App(term, self.atom())
        return term

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "ident" and tok.text in ("proj1", "proj2"):
            self.next()
            return Proj(int(tok.text[-1]), self.atom())
        if tok.kind == "ident":
            self.next()
            if tok.text in self.bound:
                return Var(tok.text)
            const_type = self.constants.get(tok.text)
            if const_type is not None:
                return Const(tok.text, const_type)
            return Const(tok.text, IU) if self.loose else Var(tok.text)
        if tok.kind == "(":
            self.next()
            first = self.term()
            if self.peek().kind == ",":
                self.next()
                second = self.term()
                self.expect(")")
                return Pair(first, second)
            self.expect(")")
            return first
        if tok.kind == "[":
            self.next()
            items = [self.term()]
            while self.peek().kind == ",":
                self.next()
                items.append(self.term())
            self.expect("]")
            return SeqLit(tuple(items))
        raise ParseError(f"expected a term, found {tok.text or 'end of input'!r}",
                         tok.line, tok.column, found=tok.text)

    def type(self) -> LambdaType:
        left = self.type_atom()
        if self.peek().kind == "->":
            self.next()
            return Arrow(left, self.type())
        return left

    def type_atom(self) -> LambdaType:
        tok = self.peek()
        if tok.kind == "ident":
            self.next()
            if tok.text == "LP" and self.peek().kind == "*":
                self.next()
                return LPSTAR
            for ground in GroundType:
                if ground.value == tok.text:
                    return Ground(ground)
            raise ParseError(f"unknown ground type {tok.text!r}", tok.line, tok.column,
                             expected=tuple(g.value for g in GroundType), found=tok.text)
        if tok.kind == "(":
            self.next()
            first = self.type()
            if self.peek().kind == ",":
                self.next()
                second = self.type()
                self.expect(")")
                return Product(first, second)
            self.expect(")")
            return first
        if tok.kind == "[":
            self.next()
            item = self.type()
            self.expect("]")
            return SeqType(item)
        raise ParseError(f"expected a type, found {tok.text or 'end of input'!r}",
                         tok.line, tok.column, found=tok.text)


def parse_term(text: str, constants: Mapping[str, LambdaType] | None = None) -> Term:
    """Parse the CLI term surface syntax.

    Bare identifiers resolve to bound variables first, then to declared
    constants. When no declarations are given at all, remaining names are
    read as interaction constants; otherwise they stay variables for the
    typechecker to report.
    """
    return _TermParser(_term_tokens(text), constants).parse()
