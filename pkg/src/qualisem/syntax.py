"""Concrete syntax for formulas and alphabets: lexer, parser, printer.

Grammar (whitespace-insensitive, "#" starts a line comment):

    formula    := ("present" | "goal") "{" atom* "}" | "log" "{" stepRec* "}"
    atom       := "holds" "(" ident "," ident "," ident ")"
    stepRec    := "step" "(" int "," formula "," ident "," formula ")"
    alphabet   := "alphabet" ident "over" ident "{" relDecl (";" relDecl)* "}"
    relDecl    := ident ":" ("lt" | "gt" | "eq" | pairSet)
    pairSet    := "{" "(" ident "," ident ")" ("," "(" ident "," ident ")")* "}"

Printing is canonical: atoms sorted by (entity, property), single spaces,
one line. parse(print(x)) is structurally equal to x.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .errors import ParseError, SemanticError
from .formulas import (Atom, Formula, MetaAlphabet, Mode, Relation,
                       RelationKind, StepRecord, validate_jepd)
from .worldmodel import Property

PUNCT = set("{}(),;:")


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident' | 'number' | punct char | 'eof'
    text: str
    line: int
    column: int

    @property
    def value(self) -> float:
        return float(self.text)


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_part(c: str) -> bool:
    return c.isalnum() or c == "_"


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if _is_ident_start(c):
            j = i + 1
            # A '-' continues an identifier only when glued to more ident
            # characters (names like thermostat-inverted).
            while j < n and (_is_ident_part(text[j])
                             or (text[j] == "-" and j + 1 < n and _is_ident_part(text[j + 1]))):
                j += 1
            tokens.append(Token("ident", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if c.isdigit() or (c in "+-" and i + 1 < n and (text[i + 1].isdigit() or text[i + 1] == ".")):
            j = i + 1
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                seen_dot = seen_dot or text[j] == "."
                j += 1
            tokens.append(Token("number", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if c in PUNCT:
            tokens.append(Token(c, c, start_line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col, found=c)
    tokens.append(Token("eof", "", line, col))
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self._tokens[min(self._pos + ahead, len(self._tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self._pos += 1
        return tok

    def expect(self, *kinds: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind in kinds:
            return self.next()
        wanted = what or " or ".join(repr(k) for k in kinds)
        raise ParseError(f"expected {wanted}, found {tok.text or 'end of input'!r}",
                         tok.line, tok.column, expected=kinds, found=tok.text)

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == word:
            return self.next()
        raise ParseError(f"expected {word!r}, found {tok.text or 'end of input'!r}",
                         tok.line, tok.column, expected=(word,), found=tok.text)

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text == word

    def expect_int(self) -> int:
        tok = self.expect("number", what="an integer")
        if "." in tok.text:
            raise ParseError(f"expected an integer, found {tok.text!r}",
                             tok.line, tok.column, expected=("int",), found=tok.text)
        return int(tok.text)


Parsed = Union[Formula, MetaAlphabet]


def parse(text: str, properties: Mapping[str, Property], *,
          require_jepd: bool = False) -> Parsed:
    """Parse one formula or one alphabet document.

    Atoms and relations are resolved against the given property
    declarations; unknown properties or values raise SemanticError. With
    require_jepd, a non-partition alphabet is also a SemanticError
    (otherwise broken alphabets parse and validate_jepd reports them).
    """
    stream = TokenStream(tokenize(text))
    head = stream.peek()
    if head.kind == "ident" and head.text == "alphabet":
        result: Parsed = _parse_alphabet(stream, properties, require_jepd)
    else:
        result = _parse_formula(stream, properties)
    stream.expect("eof", what="end of input")
    return result


def _resolve_property(tok: Token, properties: Mapping[str, Property]) -> Property:
    prop = properties.get(tok.text)
    if prop is None:
        raise SemanticError(f"{tok.line}:{tok.column}: unknown property {tok.text!r}")
    return prop


def _check_value(tok: Token, prop: Property) -> str:
    if tok.text not in prop.values:
        raise SemanticError(
            f"{tok.line}:{tok.column}: {tok.text!r} is not a value of "
            f"property {prop.name}")
    return tok.text


def _parse_formula(stream: TokenStream, properties: Mapping[str, Property]) -> Formula:
    head = stream.expect("ident", what="'present', 'goal' or 'log'")
    if head.text not in ("present", "goal", "log"):
        raise ParseError(f"expected a formula mode, found {head.text!r}",
                         head.line, head.column,
                         expected=("present", "goal", "log"), found=head.text)
    stream.expect("{")
    if head.text == "log":
        steps = []
        while stream.at_keyword("step"):
            steps.append(_parse_step(stream, properties))
        stream.expect("}")
        try:
            return Formula(Mode.LOG, steps=tuple(steps))
        except ValueError as exc:
            raise SemanticError(f"{head.line}:{head.column}: {exc}") from None
    atoms = []
    while stream.at_keyword("holds"):
        atoms.append(_parse_atom(stream, properties))
    stream.expect("}")
    mode = Mode.PRESENT if head.text == "present" else Mode.GOAL
    try:
        return Formula(mode, frozenset(atoms))
    except ValueError as exc:
        raise SemanticError(f"{head.line}:{head.column}: {exc}") from None


def _parse_atom(stream: TokenStream, properties: Mapping[str, Property]) -> Atom:
    stream.expect_keyword("holds")
    stream.expect("(")
    entity = stream.expect("ident", what="an entity name").text
    stream.expect(",")
    prop_tok = stream.expect("ident", what="a property name")
    prop = _resolve_property(prop_tok, properties)
    stream.expect(",")
    value = _check_value(stream.expect("ident", what="a value name"), prop)
    stream.expect(")")
    return Atom(entity, prop.name, value)


def _parse_step(stream: TokenStream, properties: Mapping[str, Property]) -> StepRecord:
    stream.expect_keyword("step")
    stream.expect("(")
    time = stream.expect_int()
    stream.expect(",")
    before = _parse_formula(stream, properties)
    stream.expect(",")
    action = stream.expect("ident", what="an action name").text
    stream.expect(",")
    after = _parse_formula(stream, properties)
    stream.expect(")")
    try:
        return StepRecord(time, before, action, after)
    except ValueError as exc:
        raise SemanticError(str(exc)) from None


def _parse_alphabet(stream: TokenStream, properties: Mapping[str, Property],
                    require_jepd: bool) -> MetaAlphabet:
    stream.expect_keyword("alphabet")
    name = stream.expect("ident", what="an alphabet name").text
    stream.expect_keyword("over")
    prop = _resolve_property(stream.expect("ident", what="a property name"), properties)
    stream.expect("{")
    relations = [_parse_relation(stream, prop)]
    while stream.peek().kind == ";":
        stream.next()
        relations.append(_parse_relation(stream, prop))
    stream.expect("}")
    try:
        alphabet = MetaAlphabet(name, prop, tuple(relations))
    except ValueError as exc:
        raise SemanticError(str(exc)) from None
    if require_jepd:
        report = validate_jepd(alphabet)
        if not report.ok:
            raise SemanticError(
                f"alphabet {name} is not a partition: "
                f"{len(report.uncovered)} uncovered, "
                f"{len(report.overcovered)} overcovered pairs")
    return alphabet


def _parse_relation(stream: TokenStream, prop: Property) -> Relation:
    name = stream.expect("ident", what="a relation name").text
    stream.expect(":")
    tok = stream.peek()
    if tok.kind == "ident" and tok.text in ("lt", "gt", "eq"):
        stream.next()
        return Relation(name, prop, RelationKind(tok.text))
    if tok.kind == "{":
        stream.next()
        pairs = [_parse_value_pair(stream, prop)]
        while stream.peek().kind == ",":
            stream.next()
            pairs.append(_parse_value_pair(stream, prop))
        stream.expect("}")
        return Relation(name, prop, RelationKind.PAIRS, frozenset(pairs))
    raise ParseError(f"expected 'lt', 'gt', 'eq' or a pair set, found {tok.text!r}",
                     tok.line, tok.column, expected=("lt", "gt", "eq", "{"),
                     found=tok.text)


def _parse_value_pair(stream: TokenStream, prop: Property) -> tuple[str, str]:
    stream.expect("(")
    x = _check_value(stream.expect("ident", what="a value name"), prop)
    stream.expect(",")
    y = _check_value(stream.expect("ident", what="a value name"), prop)
    stream.expect(")")
    return (x, y)


def parse_noted(text: str, properties: Mapping[str, Property]) -> Parsed:
    """Like parse, but re-attaches a trailing comment as the formula note,
    so that printing a parsed line reproduces it byte for byte."""
    obj = parse(text, properties)
    if isinstance(obj, Formula):
        tail = text[text.rfind("}") + 1:].strip()
        if tail.startswith("#"):
            note = tail[1:].strip()
            if note:
                obj = obj.with_note(note)
    return obj


# Canonical printing.

def to_text(obj: Parsed) -> str:
    if isinstance(obj, MetaAlphabet):
        return _alphabet_text(obj)
    return _formula_text(obj)


def _formula_text(formula: Formula, nested: bool = False) -> str:
    if formula.mode is Mode.LOG:
        body = " ".join(_step_text(s) for s in formula.steps)
    else:
        atoms = sorted(formula.atoms, key=lambda a: (a.entity, a.prop))
        body = " ".join(f"holds({a.entity}, {a.prop}, {a.value})" for a in atoms)
    inner = f" {body} " if body else " "
    text = f"{formula.mode.value} {{{inner}}}"
    # A note is a trailing line comment, so it may only appear at top level.
    if formula.note and not nested:
        text += f" # {formula.note}"
    return text


def _step_text(step: StepRecord) -> str:
    return (f"step({step.time}, {_formula_text(step.before, nested=True)}, "
            f"{step.action}, {_formula_text(step.after, nested=True)})")


def _alphabet_text(alphabet: MetaAlphabet) -> str:
    decls = "; ".join(_relation_text(r) for r in alphabet.relations)
    return (f"alphabet {alphabet.name} over {alphabet.property.name} "
            f"{{ {decls} }}")


def _relation_text(relation: Relation) -> str:
    if relation.kind is RelationKind.PAIRS:
        pairs = ", ".join(f"({x}, {y})" for x, y in sorted(relation.pairs))
        return f"{relation.name}: {{ {pairs} }}"
    return f"{relation.name}: {relation.kind.value}"
