"""Specification files: placeholders, input and output symbols, assumptions,
specs, axioms and lemmas written in a small first-order language.

Variables starting with I, J, K, L, M or N are integer variables, those
starting with U, V, W, X, Y or Z are object variables; any other initial is
rejected.  Free variables of a statement are closed universally.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from . import logic as L
from .ioprogram import IOProgram
from .syntax import (
    INFIMUM,
    SUPREMUM,
    Numeral,
    ParseError,
    PredicateSymbol,
    Program,
    SymbolicConstant,
    Token,
    _Cursor,
    tokenize,
)

INTEGER_INITIALS = frozenset("IJKLMN")
OBJECT_INITIALS = frozenset("UVWXYZ")
DIRECTIONS = ("forward", "backward", "both")

_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"%[^\n]*"),
    ("IFF", r"<->"),
    ("ARROW", r"->"),
    ("DOT", r"\."),
    ("CMP", r"!=|<=|>=|==|=|<|>"),
    ("HASH", r"#[a-z]+"),
    ("NUMBER", r"[0-9]+"),
    ("CONST", r"_*[a-z][A-Za-z0-9_']*"),
    ("VAR", r"_*[A-Z][A-Za-z0-9_']*"),
    ("OP", r"[-+*]"),
    ("SLASH", r"/"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("COMMA", r","),
    ("COLON", r":"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{n}>{p})" for n, p in _TOKEN_SPEC))

_KEYWORDS = {"not", "and", "or", "exists", "forall"}


@dataclass(frozen=True)
class Lemma:
    direction: str
    formula: L.Formula

    def __post_init__(self) -> None:
        if self.direction not in DIRECTIONS:
            raise ValueError(f"lemma direction must be one of {DIRECTIONS}")

    def applies_to(self, direction: str) -> bool:
        return self.direction in ("both", direction)


@dataclass(frozen=True)
class Specification:
    placeholders: Mapping[str, L.Sort] = field(default_factory=dict)
    inputs: tuple[PredicateSymbol, ...] = ()
    outputs: tuple[PredicateSymbol, ...] = ()
    assumptions: tuple[L.Formula, ...] = ()
    specs: tuple[L.Formula, ...] = ()
    axioms: tuple[L.Formula, ...] = ()
    lemmas: tuple[Lemma, ...] = ()

    def lemmas_for(self, direction: str) -> list[L.Formula]:
        return [lem.formula for lem in self.lemmas if lem.applies_to(direction)]

    def io_program(self, program: Program) -> IOProgram:
        return IOProgram(program, dict(self.placeholders), frozenset(self.inputs), frozenset(self.outputs))


def to_assumption_formulas(spec: Specification) -> list[L.Formula]:
    return list(spec.assumptions)


# --- parsing -----------------------------------------------------------------

def _statements(tokens: list[Token]) -> list[list[Token]]:
    out, current = [], []
    for tok in tokens:
        if tok.kind == "EOF":
            break
        current.append(tok)
        if tok.kind == "DOT":
            out.append(current)
            current = []
    if current:
        raise ParseError("statement not terminated by '.'", current[-1].line, current[-1].column)
    return out


class _FormulaParser:
    def __init__(self, tokens: list[Token], placeholders: Mapping[str, L.Sort], source: str):
        self.c = _Cursor(tokens, source)
        self.placeholders = placeholders
        self.source = source

    # formulas
    def formula(self) -> L.Formula:
        left = self.implication()
        while self.c.at("IFF"):
            self.c.advance()
            left = L.iff(left, self.implication())
        return left

    def implication(self) -> L.Formula:
        left = self.disjunction()
        if self.c.at("ARROW"):
            self.c.advance()
            return L.Implies(left, self.implication())
        return left

    def disjunction(self) -> L.Formula:
        left = self.conjunction()
        while self.c.at("CONST", "or"):
            self.c.advance()
            left = L.Or(left, self.conjunction())
        return left

    def conjunction(self) -> L.Formula:
        left = self.unary()
        while self.c.at("CONST", "and"):
            self.c.advance()
            left = L.And(left, self.unary())
        return left

    def unary(self) -> L.Formula:
        if self.c.at("CONST", "not"):
            self.c.advance()
            return L.neg(self.unary())
        if self.c.at("CONST", "forall") or self.c.at("CONST", "exists"):
            word = self.c.advance().text
            variables = [self.variable(self.c.expect("VAR", what="a variable"))]
            while self.c.at("COMMA"):
                self.c.advance()
                variables.append(self.variable(self.c.expect("VAR", what="a variable")))
            body = self.unary()
            return L.forall(variables, body) if word == "forall" else L.exists(variables, body)
        return self.primary()

    def primary(self) -> L.Formula:
        tok = self.c.tok
        if tok.kind == "HASH" and tok.text in ("#true", "#false"):
            self.c.advance()
            return L.TOP if tok.text == "#true" else L.BOTTOM
        start = self.c.pos
        try:
            comparison, failure = self._try_comparison(), None
        except ParseError as exc:
            comparison, failure = None, exc
        if comparison is not None:
            return comparison
        self.c.pos = start
        if self.c.at("LPAREN"):
            self.c.advance()
            inner = self.formula()
            self.c.expect("RPAREN", what="')'")
            return inner
        if self.c.at("CONST") and tok.text not in _KEYWORDS:
            return self.atom()
        if failure is not None:
            raise failure
        self.c.error(f"expected a formula, found {self.c.describe(tok)}")

    def _try_comparison(self) -> L.Formula | None:
        """A comparison starting here, or None when no term starts here.
        Errors inside a complete term followed by a comparison propagate."""
        left = self.term()
        if not self.c.at("CMP"):
            return None
        rel = self.c.advance().text
        rel = "=" if rel == "==" else rel
        return L.Compare(rel, left, self.term())

    def atom(self) -> L.Formula:
        name = self.c.advance().text
        args: list[L.FOTerm] = []
        if self.c.at("LPAREN"):
            self.c.advance()
            args.append(self.term())
            while self.c.at("COMMA"):
                self.c.advance()
                args.append(self.term())
            self.c.expect("RPAREN", what="')'")
        return L.Atom(PredicateSymbol(name, len(args)), tuple(args))

    # terms
    def term(self) -> L.FOTerm:
        left = self.product()
        while self.c.at("OP", "+") or self.c.at("OP", "-"):
            op = self.c.advance()
            left = self._arith(op, left, self.product())
        return left

    def product(self) -> L.FOTerm:
        left = self.factor()
        while self.c.at("OP", "*"):
            op = self.c.advance()
            left = self._arith(op, left, self.factor())
        return left

    def factor(self) -> L.FOTerm:
        tok = self.c.tok
        if tok.kind == "OP" and tok.text == "-":
            self.c.advance()
            if self.c.at("NUMBER"):
                return L.num(-int(self.c.advance().text))
            return self._arith(tok, L.num(0), self.factor())
        if tok.kind == "NUMBER":
            self.c.advance()
            return L.num(int(tok.text))
        if tok.kind == "VAR":
            self.c.advance()
            return self.variable(tok)
        if tok.kind == "HASH" and tok.text in ("#inf", "#sup"):
            self.c.advance()
            return L.Const(INFIMUM if tok.text == "#inf" else SUPREMUM)
        if tok.kind == "CONST" and tok.text not in _KEYWORDS:
            self.c.advance()
            if self.c.at("LPAREN"):
                self.c.error("function symbols are not supported", tok)
            sort = self.placeholders.get(tok.text)
            return L.Const(SymbolicConstant(tok.text), sort)
        if tok.kind == "LPAREN":
            self.c.advance()
            inner = self.term()
            self.c.expect("RPAREN", what="')'")
            return inner
        self.c.error(f"expected a term, found {self.c.describe(tok)}")

    def _arith(self, tok: Token, left: L.FOTerm, right: L.FOTerm) -> L.FOTerm:
        try:
            return L.Arith(tok.text, left, right)
        except L.SortError as exc:
            raise ParseError(str(exc), tok.line, tok.column, self.source) from None

    def variable(self, tok: Token) -> L.Var:
        initial = tok.text.lstrip("_")[:1]
        if initial in INTEGER_INITIALS:
            return L.Var(tok.text, L.Sort.INTEGER)
        if initial in OBJECT_INITIALS:
            return L.Var(tok.text, L.Sort.OBJECT)
        self.c.error(f"variable {tok.text} must start with one of I-N (integer) or U-Z (object)", tok)


def _closed(f: L.Formula) -> L.Formula:
    return L.universal_closure(f)


def parse_formula(text: str, placeholders: Mapping[str, L.Sort] | None = None, source: str = "") -> L.Formula:
    """Parse one formula (no trailing period); free variables stay free."""
    p = _FormulaParser(tokenize(text, _TOKEN_RE, source), placeholders or {}, source)
    f = p.formula()
    p.c.expect("EOF", what="end of formula")
    return f


def parse_spec(text: str, source: str = "", *, base: Specification | None = None) -> Specification:
    """Parse a specification file.  With ``base`` the file extends an
    earlier one: its declarations are in scope and its statements come first."""
    statements = _statements(tokenize(text, _TOKEN_RE, source))
    base = base or Specification()
    placeholders: dict[str, L.Sort] = dict(base.placeholders)
    inputs: dict[PredicateSymbol, None] = dict.fromkeys(base.inputs)
    outputs: dict[PredicateSymbol, None] = dict.fromkeys(base.outputs)
    pending: list[tuple[str, str, list[Token]]] = []

    for stmt in statements:
        c = _Cursor(stmt + [Token("EOF", "", stmt[-1].line, stmt[-1].column)], source)
        head = c.expect("CONST", what="a statement keyword")
        direction = None
        if head.text == "lemma" and c.at("LPAREN"):
            c.advance()
            direction = c.expect("CONST", what="forward or backward").text
            if direction not in ("forward", "backward"):
                c.error("lemma direction must be forward or backward")
            c.expect("RPAREN", what="')'")
        c.expect("COLON", what="':'")
        body = stmt[c.pos:-1]
        if head.text in ("input", "output"):
            _declarations(head.text, body, stmt[-1], source, placeholders, inputs, outputs)
        elif head.text in ("assume", "spec", "axiom", "lemma"):
            if not body:
                c.error("empty statement")
            pending.append((head.text, direction or "both", body + [Token("EOF", "", stmt[-1].line, stmt[-1].column)]))
        else:
            c.error(f"unknown statement {head.text!r}", head)

    clash = set(inputs) & set(outputs)
    if clash:
        first = sorted(clash)[0]
        raise ParseError(f"{first} declared both input and output", 1, 1, source)

    groups: dict[str, list] = {"assume": list(base.assumptions), "spec": list(base.specs),
                               "axiom": list(base.axioms), "lemma": list(base.lemmas)}
    for kind, direction, toks in pending:
        p = _FormulaParser(toks, placeholders, source)
        f = p.formula()
        p.c.expect("EOF", what="'.'")
        f = _closed(f)
        if kind == "assume":
            bad = [s for s in L.predicate_symbols(f) if s in outputs]
            if bad:
                raise ParseError(f"assumption mentions output symbol {bad[0]}", toks[0].line, toks[0].column, source)
        groups[kind].append(Lemma(direction, f) if kind == "lemma" else f)
    return Specification(
        placeholders=placeholders,
        inputs=tuple(inputs),
        outputs=tuple(outputs),
        assumptions=tuple(groups["assume"]),
        specs=tuple(groups["spec"]),
        axioms=tuple(groups["axiom"]),
        lemmas=tuple(groups["lemma"]),
    )


def _declarations(kind, body, end, source, placeholders, inputs, outputs) -> None:
    c = _Cursor(body + [Token("EOF", "", end.line, end.column)], source)
    while True:
        name = c.expect("CONST", what="a symbol")
        if c.at("SLASH"):
            c.advance()
            arity = int(c.expect("NUMBER", what="an arity").text)
            target = inputs if kind == "input" else outputs
            target.setdefault(PredicateSymbol(name.text, arity))
        elif kind == "output":
            c.error("output declarations need an arity, as in p/1")
        else:
            sort = L.Sort.OBJECT
            if c.at("ARROW"):
                c.advance()
                word = c.expect("CONST", what="integer or object").text
                if word not in ("integer", "object"):
                    c.error("placeholder sort must be integer or object")
                sort = L.Sort(word)
            if name.text in placeholders:
                c.error(f"placeholder {name.text} declared twice", name)
            placeholders[name.text] = sort
        if c.at("COMMA"):
            c.advance()
            continue
        c.expect("EOF", what="',' or '.'")
        return


# --- printing ----------------------------------------------------------------

def print_spec(spec: Specification) -> str:
    lines = []
    for name, sort in spec.placeholders.items():
        lines.append(f"input: {name} -> {sort.value}.")
    for p in spec.inputs:
        lines.append(f"input: {p}.")
    for p in spec.outputs:
        lines.append(f"output: {p}.")
    for f in spec.assumptions:
        lines.append(f"assume: {L.format_formula(f)}.")
    for f in spec.specs:
        lines.append(f"spec: {L.format_formula(f)}.")
    for f in spec.axioms:
        lines.append(f"axiom: {L.format_formula(f)}.")
    for lem in spec.lemmas:
        head = "lemma" if lem.direction == "both" else f"lemma({lem.direction})"
        lines.append(f"{head}: {L.format_formula(lem.formula)}.")
    return "\n".join(lines) + ("\n" if lines else "")
