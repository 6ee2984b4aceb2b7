"""Abstract syntax for the mini-gringo language: terms, atoms, rules, programs.

Also provides the parser, a canonical printer, and the total order on
precomputed terms.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Union


class ParseError(ValueError):
    """Malformed input, with a 1-based source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


# --- terms ---------------------------------------------------------------

@dataclass(frozen=True)
class Numeral:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class SymbolicConstant:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Infimum:
    def __str__(self) -> str:
        return "#inf"


@dataclass(frozen=True)
class Supremum:
    def __str__(self) -> str:
        return "#sup"


BINARY_OPS = ("+", "-", "*", "/", "\\", "..")


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Term"
    right: "Term"

    def __post_init__(self) -> None:
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown operation {self.op!r}")

    def __str__(self) -> str:
        return format_term(self)


Term = Union[Numeral, SymbolicConstant, Variable, Infimum, Supremum, BinOp]
INFIMUM = Infimum()
SUPREMUM = Supremum()


def negate(term: Term) -> BinOp:
    """Unary minus, stored as ``0 - term``."""
    return BinOp("-", Numeral(0), term)


def term_variables(term: Term) -> Iterator[Variable]:
    if isinstance(term, Variable):
        yield term
    elif isinstance(term, BinOp):
        yield from term_variables(term.left)
        yield from term_variables(term.right)


def is_ground(term: Term) -> bool:
    return next(term_variables(term), None) is None


def is_precomputed(term: Term) -> bool:
    return isinstance(term, (Numeral, SymbolicConstant, Infimum, Supremum))


def substitute_term(term: Term, mapping: dict) -> Term:
    """Replace variables (keyed by Variable) and symbolic constants (keyed by
    SymbolicConstant) according to ``mapping``."""
    if isinstance(term, BinOp):
        return BinOp(term.op, substitute_term(term.left, mapping), substitute_term(term.right, mapping))
    return mapping.get(term, term)


# --- order on precomputed terms -------------------------------------------

class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def precomputed_key(term: Term) -> tuple:
    """Sort key realising the total order on precomputed terms."""
    if isinstance(term, Infimum):
        return (0,)
    if isinstance(term, Numeral):
        return (1, term.value)
    if isinstance(term, SymbolicConstant):
        return (2, term.name)
    if isinstance(term, Supremum):
        return (3,)
    raise ValueError(f"not a precomputed term: {format_term(term)}")


def compare_precomputed(a: Term, b: Term) -> Ordering:
    ka, kb = precomputed_key(a), precomputed_key(b)
    if ka < kb:
        return Ordering.LESS
    if ka > kb:
        return Ordering.GREATER
    return Ordering.EQUAL


# --- atoms, literals, rules ------------------------------------------------

@dataclass(frozen=True, order=True)
class PredicateSymbol:
    name: str
    arity: int

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def symbol(self) -> PredicateSymbol:
        return PredicateSymbol(self.predicate, len(self.args))

    def __str__(self) -> str:
        return format_atom(self)


COMPARISON_RELS = ("=", "!=", "<", ">", "<=", ">=")


@dataclass(frozen=True)
class Literal:
    atom: Atom
    negations: int = 0

    def __post_init__(self) -> None:
        if self.negations not in (0, 1, 2):
            raise ValueError("a literal carries at most two negations")

    def __str__(self) -> str:
        return "not " * self.negations + format_atom(self.atom)


@dataclass(frozen=True)
class Comparison:
    left: Term
    rel: str
    right: Term

    def __post_init__(self) -> None:
        if self.rel not in COMPARISON_RELS:
            raise ValueError(f"unknown comparison {self.rel!r}")

    def __str__(self) -> str:
        return f"{format_term(self.left)} {self.rel} {format_term(self.right)}"


BodyItem = Union[Literal, Comparison]


@dataclass(frozen=True)
class BasicHead:
    atom: Atom


@dataclass(frozen=True)
class ChoiceHead:
    atom: Atom


Head = Union[BasicHead, ChoiceHead, None]


@dataclass(frozen=True)
class Rule:
    head: Head
    body: tuple[BodyItem, ...] = ()

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    @property
    def head_atom(self) -> Atom | None:
        return None if self.head is None else self.head.atom

    def variables(self) -> list[Variable]:
        """Variables of the rule in order of first occurrence."""
        seen: dict[Variable, None] = {}
        terms: list[Term] = []
        if self.head is not None:
            terms.extend(self.head.atom.args)
        for item in self.body:
            if isinstance(item, Literal):
                terms.extend(item.atom.args)
            else:
                terms.extend((item.left, item.right))
        for t in terms:
            for v in term_variables(t):
                seen.setdefault(v)
        return list(seen)

    def __str__(self) -> str:
        return format_rule(self)


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...] = ()

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __str__(self) -> str:
        return format_program(self)


def rule_atoms(rule: Rule) -> Iterator[Atom]:
    if rule.head is not None:
        yield rule.head.atom
    for item in rule.body:
        if isinstance(item, Literal):
            yield item.atom


def predicate_symbols(program: Program) -> list[PredicateSymbol]:
    """Predicate symbols occurring in the program, in first-occurrence order."""
    seen: dict[PredicateSymbol, None] = {}
    for rule in program:
        for atom in rule_atoms(rule):
            seen.setdefault(atom.symbol)
    return list(seen)


def program_constants(program: Program) -> list[SymbolicConstant]:
    seen: dict[SymbolicConstant, None] = {}

    def visit(t: Term) -> None:
        if isinstance(t, SymbolicConstant):
            seen.setdefault(t)
        elif isinstance(t, BinOp):
            visit(t.left)
            visit(t.right)

    for rule in program:
        for atom in rule_atoms(rule):
            for t in atom.args:
                visit(t)
        for item in rule.body:
            if isinstance(item, Comparison):
                visit(item.left)
                visit(item.right)
    return list(seen)


def program_numerals(program: Program) -> list[int]:
    out: list[int] = []

    def visit(t: Term) -> None:
        if isinstance(t, Numeral):
            out.append(t.value)
        elif isinstance(t, BinOp):
            visit(t.left)
            visit(t.right)

    for rule in program:
        for atom in rule_atoms(rule):
            for t in atom.args:
                visit(t)
        for item in rule.body:
            if isinstance(item, Comparison):
                visit(item.left)
                visit(item.right)
    return out


# --- printing ----------------------------------------------------------------

_PRECEDENCE = {"..": 0, "+": 1, "-": 1, "*": 2, "/": 2, "\\": 2}


def format_term(term: Term) -> str:
    return _fmt(term, -1)


def _fmt(term: Term, context: int) -> str:
    if not isinstance(term, BinOp):
        if isinstance(term, Numeral) and term.value < 0 and context >= 0:
            return f"({term.value})"
        return str(term)
    if (term.op == "-" and term.left == Numeral(0)
            and not isinstance(term.right, Numeral)):
        return "-" + _fmt(term.right, 3)
    level = _PRECEDENCE[term.op]
    if term.op == "..":
        left, right = _fmt(term.left, 0), _fmt(term.right, 0)
    else:
        left, right = _fmt(term.left, level - 1), _fmt(term.right, level)
    text = f"{left}{term.op}{right}"
    return f"({text})" if level <= context else text


def format_atom(atom: Atom) -> str:
    if not atom.args:
        return atom.predicate
    return f"{atom.predicate}({','.join(format_term(t) for t in atom.args)})"


def format_body_item(item: BodyItem) -> str:
    return str(item)


def format_rule(rule: Rule) -> str:
    if rule.head is None:
        head = ""
    elif isinstance(rule.head, ChoiceHead):
        head = "{" + format_atom(rule.head.atom) + "}"
    else:
        head = format_atom(rule.head.atom)
    if not rule.body:
        return f"{head}." if head else ":- ."
    body = ", ".join(format_body_item(b) for b in rule.body)
    return f"{head} :- {body}." if head else f":- {body}."


def format_program(program: Program) -> str:
    return "".join(format_rule(r) + "\n" for r in program)


def print_program(program: Program) -> str:
    return format_program(program)


# --- lexing ------------------------------------------------------------------

_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"%[^\n]*"),
    ("IF", r":-"),
    ("DOTS", r"\.\."),
    ("DOT", r"\."),
    ("CMP", r"!=|<=|>=|==|=|<|>"),
    ("HASH", r"#[a-z]+"),
    ("NUMBER", r"[0-9]+"),
    ("CONST", r"_*[a-z][A-Za-z0-9_']*"),
    ("VAR", r"_*[A-Z][A-Za-z0-9_']*"),
    ("ANON", r"_"),
    ("OP", r"[-+*/\\]"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("LBRACE", r"\{"),
    ("RBRACE", r"\}"),
    ("COMMA", r","),
    ("SEMI", r";"),
    ("COLON", r":"),
    ("BAR", r"\|"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{n}>{p})" for n, p in _TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str, spec=_TOKEN_RE, source: str = "") -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = spec.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("WS", "COMMENT"):
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token], source: str = ""):
        self.tokens = tokens
        self.pos = 0
        self.source = source

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        if not self.at(kind, text):
            self.error(f"expected {what or text or kind}, found {self.describe(self.tok)}")
        return self.advance()

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column, self.source)

    @staticmethod
    def describe(tok: Token) -> str:
        return "end of input" if tok.kind == "EOF" else repr(tok.text)


# --- parsing -----------------------------------------------------------------

class _ProgramParser:
    def __init__(self, text: str, source: str = ""):
        self.c = _Cursor(tokenize(text, source=source), source)

    def program(self) -> Program:
        rules = []
        while not self.c.at("EOF"):
            rules.append(self.rule())
        return Program(tuple(rules))

    def rule(self) -> Rule:
        c = self.c
        if c.at("HASH"):
            c.error(f"directive {c.tok.text} is not supported")
        head: Head = None
        if c.at("IF"):
            pass
        elif c.at("LBRACE"):
            c.advance()
            atom = self.atom()
            if c.at("SEMI") or c.at("COLON"):
                c.error("choice rules with several elements or conditions are not supported")
            c.expect("RBRACE", what="'}'")
            head = ChoiceHead(atom)
        elif c.at("NUMBER") and c.peek().kind == "LBRACE":
            c.error("cardinality bounds on choice rules are not supported")
        else:
            head = BasicHead(self.atom())
            if c.at("SEMI") or c.at("BAR"):
                c.error("disjunctive heads are not supported")
        body: list[BodyItem] = []
        if c.at("IF"):
            c.advance()
            if not c.at("DOT"):
                body.append(self.body_item())
                while c.at("COMMA"):
                    c.advance()
                    body.append(self.body_item())
            if c.at("SEMI"):
                c.error("';' is not supported in rule bodies; separate body elements by ','")
        elif head is None:
            c.error("expected a rule")
        c.expect("DOT", what="'.'")
        return Rule(head, tuple(body))

    def body_item(self) -> BodyItem:
        c = self.c
        if c.at("HASH") and c.tok.text in ("#count", "#sum", "#min", "#max", "#sum+"):
            c.error("aggregates are not supported")
        if c.at("LBRACE") or (c.at("NUMBER") and c.peek().kind == "LBRACE"):
            c.error("aggregates are not supported")
        negations = 0
        while c.at("CONST", "not"):
            c.advance()
            negations += 1
        if negations > 2:
            c.error("at most two negations may precede an atom")
        if c.at("CONST") and c.tok.text != "not" and c.peek().kind != "CMP" and c.peek().kind != "OP" \
                and c.peek().kind != "DOTS":
            return Literal(self.atom(), negations)
        if negations:
            c.error("negation may only precede an atom")
        start = c.tok
        left = self.term()
        if not c.at("CMP"):
            c.error(f"expected a comparison operator, found {c.describe(c.tok)}", start)
        rel = c.advance().text
        if rel == "==":
            rel = "="
        right = self.term()
        return Comparison(left, rel, right)

    def atom(self) -> Atom:
        c = self.c
        if c.at("OP", "-"):
            c.error("classical negation is not supported")
        name = c.expect("CONST", what="a predicate name").text
        if name == "not":
            c.error("unexpected 'not'")
        args: list[Term] = []
        if c.at("LPAREN"):
            c.advance()
            args.append(self.term())
            while c.at("COMMA"):
                c.advance()
                args.append(self.term())
            if c.at("SEMI"):
                c.error("term pooling is not supported")
            c.expect("RPAREN", what="')'")
        return Atom(name, tuple(args))

    # term := additive ['..' additive]
    def term(self) -> Term:
        c = self.c
        left = self.additive()
        if c.at("DOTS"):
            c.advance()
            right = self.additive()
            if c.at("DOTS"):
                c.error("'..' is not associative; use parentheses")
            return BinOp("..", left, right)
        return left

    def additive(self) -> Term:
        c = self.c
        left = self.multiplicative()
        while c.at("OP", "+") or c.at("OP", "-"):
            op = c.advance().text
            left = BinOp(op, left, self.multiplicative())
        return left

    def multiplicative(self) -> Term:
        c = self.c
        left = self.unary()
        while c.at("OP", "*") or c.at("OP", "/") or c.at("OP", "\\"):
            op = c.advance().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Term:
        c = self.c
        if c.at("OP", "-"):
            c.advance()
            if c.at("NUMBER"):
                return Numeral(-int(c.advance().text))
            return negate(self.unary())
        return self.primary()

    def primary(self) -> Term:
        c = self.c
        tok = c.tok
        if tok.kind == "NUMBER":
            c.advance()
            return Numeral(int(tok.text))
        if tok.kind == "VAR":
            c.advance()
            return Variable(tok.text)
        if tok.kind == "ANON":
            c.error("anonymous variables are not supported")
        if tok.kind == "HASH":
            c.advance()
            if tok.text in ("#inf", "#infimum"):
                return INFIMUM
            if tok.text in ("#sup", "#supremum"):
                return SUPREMUM
            c.error(f"unexpected {tok.text}", tok)
        if tok.kind == "CONST":
            c.advance()
            if c.at("LPAREN"):
                c.error("function symbols are not supported in program terms")
            return SymbolicConstant(tok.text)
        if tok.kind == "LPAREN":
            c.advance()
            inner = self.term()
            if c.at("COMMA"):
                c.error("tuples are not supported")
            c.expect("RPAREN", what="')'")
            return inner
        c.error(f"expected a term, found {c.describe(tok)}")


def parse_program(text: str, source: str = "") -> Program:
    return _ProgramParser(text, source).program()


def parse_rule(text: str) -> Rule:
    program = parse_program(text)
    if len(program) != 1:
        raise ParseError("expected exactly one rule", 1, 1)
    return program.rules[0]


def parse_term(text: str) -> Term:
    p = _ProgramParser(text)
    t = p.term()
    p.c.expect("EOF", what="end of input")
    return t
