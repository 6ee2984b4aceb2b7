"""Two-sorted first-order formulas over program signatures.

Object variables range over precomputed terms, integer variables over
numerals; the integer sort is a subsort of the object sort.  Formulas are
kept in primitive form (bottom, and, or, implies, quantifiers); truth,
negation and equivalence are abbreviations recognised by the printer.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Union

from .syntax import (
    COMPARISON_RELS,
    INFIMUM,
    SUPREMUM,
    Infimum,
    Numeral,
    PredicateSymbol,
    Supremum,
    SymbolicConstant,
)
from .syntax import Term as ProgramTerm


class SortError(TypeError):
    """An integer position received an object-sorted term."""


class Sort(enum.Enum):
    OBJECT = "object"
    INTEGER = "integer"

    def admits(self, other: "Sort") -> bool:
        """True if a term of sort ``other`` may stand where ``self`` is expected."""
        return self is Sort.OBJECT or other is Sort.INTEGER


# --- terms -------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str
    sort: Sort = Sort.OBJECT

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    value: ProgramTerm
    sort: Sort = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not isinstance(self.value, (Numeral, SymbolicConstant, Infimum, Supremum)):
            raise ValueError(f"constants must be precomputed terms, got {self.value}")
        natural = Sort.INTEGER if isinstance(self.value, Numeral) else Sort.OBJECT
        if self.sort is None:
            object.__setattr__(self, "sort", natural)
        elif self.sort is Sort.INTEGER and not isinstance(self.value, (Numeral, SymbolicConstant)):
            raise SortError(f"{self.value} cannot be integer-sorted")
        elif self.sort is Sort.OBJECT and natural is Sort.INTEGER:
            raise SortError("numerals are integer-sorted")

    def __str__(self) -> str:
        return str(self.value)


ARITH_OPS = ("+", "-", "*")


@dataclass(frozen=True)
class Arith:
    op: str
    left: "FOTerm"
    right: "FOTerm"

    def __post_init__(self) -> None:
        if self.op not in ARITH_OPS:
            raise ValueError(f"unknown arithmetic operation {self.op!r}")
        for arg in (self.left, self.right):
            if term_sort(arg) is not Sort.INTEGER:
                raise SortError(f"arithmetic argument {format_term(arg)} is not integer-sorted")

    @property
    def sort(self) -> Sort:
        return Sort.INTEGER

    def __str__(self) -> str:
        return format_term(self)


FOTerm = Union[Const, Var, Arith]


def term_sort(t: FOTerm) -> Sort:
    return t.sort


def num(n: int) -> Const:
    return Const(Numeral(n))


def sym(name: str, sort: Sort | None = None) -> Const:
    return Const(SymbolicConstant(name), sort)


INF = Const(INFIMUM)
SUP = Const(SUPREMUM)


def term_vars(t: FOTerm) -> Iterator[Var]:
    if isinstance(t, Var):
        yield t
    elif isinstance(t, Arith):
        yield from term_vars(t.left)
        yield from term_vars(t.right)


# --- predicates --------------------------------------------------------------

@dataclass(frozen=True, order=True)
class PredicateVariable:
    name: str
    arity: int

    def __str__(self) -> str:
        return self.name


Predicate = Union[PredicateSymbol, PredicateVariable]


# --- formulas ----------------------------------------------------------------

@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return format_formula(self)


BOTTOM = Bottom()


@dataclass(frozen=True)
class Atom:
    pred: Predicate
    args: tuple[FOTerm, ...] = ()

    def __post_init__(self) -> None:
        if len(self.args) != self.pred.arity:
            raise ValueError(f"{self.pred} applied to {len(self.args)} arguments")

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Compare:
    rel: str
    left: FOTerm
    right: FOTerm

    def __post_init__(self) -> None:
        if self.rel not in COMPARISON_RELS:
            raise ValueError(f"unknown comparison {self.rel!r}")

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class ForAll:
    var: Var
    body: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


Formula = Union[Bottom, Atom, Compare, And, Or, Implies, ForAll, Exists]
Quantifier = (ForAll, Exists)

TOP = Implies(BOTTOM, BOTTOM)


@dataclass(frozen=True)
class SecondOrderSentence:
    quantifier: str  # "exists" | "forall"
    predicate_vars: tuple[PredicateVariable, ...]
    matrix: Formula

    def __post_init__(self) -> None:
        if self.quantifier not in ("exists", "forall"):
            raise ValueError(self.quantifier)
        stray = predicate_variables(self.matrix) - set(self.predicate_vars)
        if stray:
            raise ValueError(f"unbound predicate variables {sorted(map(str, stray))}")

    def __str__(self) -> str:
        if not self.predicate_vars:
            return format_formula(self.matrix)
        names = ", ".join(p.name for p in self.predicate_vars)
        return f"{self.quantifier} {names} {_ff(self.matrix, 5)}"


# --- constructors and recognisers ---------------------------------------------

def neg(f: Formula) -> Formula:
    return Implies(f, BOTTOM)


def iff(f: Formula, g: Formula) -> Formula:
    return And(Implies(f, g), Implies(g, f))


def conj(formulas: Iterable[Formula]) -> Formula:
    items = list(formulas)
    if not items:
        return TOP
    out = items[0]
    for f in items[1:]:
        out = And(out, f)
    return out


def disj(formulas: Iterable[Formula]) -> Formula:
    items = list(formulas)
    if not items:
        return BOTTOM
    out = items[0]
    for f in items[1:]:
        out = Or(out, f)
    return out


def forall(variables: Iterable[Var], body: Formula) -> Formula:
    for v in reversed(list(variables)):
        body = ForAll(v, body)
    return body


def exists(variables: Iterable[Var], body: Formula) -> Formula:
    for v in reversed(list(variables)):
        body = Exists(v, body)
    return body


def is_top(f: Formula) -> bool:
    return f == TOP


def negated(f: Formula) -> Formula | None:
    """The F of a negation ``F -> bottom``, else None (truth is not a negation)."""
    if isinstance(f, Implies) and f.right == BOTTOM and f.left != BOTTOM:
        return f.left
    return None


def as_iff(f: Formula) -> tuple[Formula, Formula] | None:
    if (isinstance(f, And) and isinstance(f.left, Implies) and isinstance(f.right, Implies)
            and f.left.left == f.right.right and f.left.right == f.right.left):
        return f.left.left, f.left.right
    return None


def conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And) and as_iff(f) is None:
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def disjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, Or):
        return disjuncts(f.left) + disjuncts(f.right)
    return [f]


def quantifier_prefix(f: Formula, kind: type) -> tuple[list[Var], Formula]:
    vs: list[Var] = []
    while isinstance(f, kind):
        vs.append(f.var)
        f = f.body
    return vs, f


# --- traversal ---------------------------------------------------------------

def free_variables_ordered(f: Formula) -> list[Var]:
    seen: dict[Var, None] = {}

    def walk(g: Formula, bound: frozenset) -> None:
        if isinstance(g, Atom):
            for t in g.args:
                for v in term_vars(t):
                    if v not in bound:
                        seen.setdefault(v)
        elif isinstance(g, Compare):
            for t in (g.left, g.right):
                for v in term_vars(t):
                    if v not in bound:
                        seen.setdefault(v)
        elif isinstance(g, (And, Or, Implies)):
            walk(g.left, bound)
            walk(g.right, bound)
        elif isinstance(g, (ForAll, Exists)):
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return list(seen)


def free_variables(f: Formula) -> set[Var]:
    return set(free_variables_ordered(f))


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, (And, Or, Implies)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (ForAll, Exists)):
        yield from subformulas(f.body)


def formula_terms(f: Formula) -> Iterator[FOTerm]:
    for g in subformulas(f):
        if isinstance(g, Atom):
            yield from g.args
        elif isinstance(g, Compare):
            yield g.left
            yield g.right


def variable_names(f: Formula) -> set[str]:
    """Names of all variables occurring in ``f``, free or bound."""
    names: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, (ForAll, Exists)):
            names.add(g.var.name)
    for t in formula_terms(f):
        names.update(v.name for v in term_vars(t))
    return names


def constants(f: Formula) -> list[Const]:
    seen: dict[Const, None] = {}

    def visit(t: FOTerm) -> None:
        if isinstance(t, Const):
            seen.setdefault(t)
        elif isinstance(t, Arith):
            visit(t.left)
            visit(t.right)

    for t in formula_terms(f):
        visit(t)
    return list(seen)


def predicates(f: Formula) -> list[Predicate]:
    seen: dict[Predicate, None] = {}
    for g in subformulas(f):
        if isinstance(g, Atom):
            seen.setdefault(g.pred)
    return list(seen)


def predicate_symbols(f: Formula) -> list[PredicateSymbol]:
    return [p for p in predicates(f) if isinstance(p, PredicateSymbol)]


def predicate_variables(f: Formula) -> set[PredicateVariable]:
    return {p for p in predicates(f) if isinstance(p, PredicateVariable)}


def universal_closure(f: Formula) -> Formula:
    return forall(free_variables_ordered(f), f)


def map_terms(f: Formula, fn: Callable[[FOTerm], FOTerm]) -> Formula:
    """Rebuild ``f`` with every top-level term replaced by ``fn(term)``.

    Bound variables are not renamed; ``fn`` must not capture.
    """
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(fn(t) for t in f.args))
    if isinstance(f, Compare):
        return Compare(f.rel, fn(f.left), fn(f.right))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(map_terms(f.left, fn), map_terms(f.right, fn))
    if isinstance(f, (ForAll, Exists)):
        return type(f)(f.var, map_terms(f.body, fn))
    return f


def retype_constants(f: Formula, sorts: dict[str, Sort]) -> Formula:
    """Give the named symbolic constants (placeholders) the given sorts."""
    if not sorts:
        return f

    def fix(t: FOTerm) -> FOTerm:
        if isinstance(t, Const) and isinstance(t.value, SymbolicConstant) and t.value.name in sorts:
            return Const(t.value, sorts[t.value.name])
        if isinstance(t, Arith):
            return Arith(t.op, fix(t.left), fix(t.right))
        return t

    return map_terms(f, fix)


# --- substitution ------------------------------------------------------------

_SUFFIX = re.compile(r"[0-9']+$")


def fresh_name(base: str, avoid: set[str]) -> str:
    stem = _SUFFIX.sub("", base) or base
    for k in itertools.count(1):
        candidate = f"{stem}{k}"
        if candidate not in avoid:
            return candidate
    raise AssertionError("unreachable")


def substitute_term(t: FOTerm, mapping: dict[Var, FOTerm]) -> FOTerm:
    if isinstance(t, Var):
        return mapping.get(t, t)
    if isinstance(t, Arith):
        return Arith(t.op, substitute_term(t.left, mapping), substitute_term(t.right, mapping))
    return t


def substitute(f: Formula, mapping: dict[Var, FOTerm]) -> Formula:
    """Capture-avoiding, sort-checked substitution of terms for free variables."""
    for v, t in mapping.items():
        if not v.sort.admits(term_sort(t)):
            raise SortError(f"cannot substitute object-sorted {format_term(t)} for integer variable {v}")
    mapping = {v: t for v, t in mapping.items() if v != t}
    if not mapping:
        return f
    return _subst(f, mapping)


def _subst(f: Formula, mapping: dict[Var, FOTerm]) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(substitute_term(t, mapping) for t in f.args))
    if isinstance(f, Compare):
        return Compare(f.rel, substitute_term(f.left, mapping), substitute_term(f.right, mapping))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(_subst(f.left, mapping), _subst(f.right, mapping))
    if isinstance(f, (ForAll, Exists)):
        inner = {v: t for v, t in mapping.items() if v != f.var}
        if not inner:
            return f
        relevant = free_variables(f.body)
        inner = {v: t for v, t in inner.items() if v in relevant}
        if not inner:
            return f
        incoming = {w.name for t in inner.values() for w in term_vars(t)}
        var = f.var
        if var.name in incoming:
            avoid = incoming | variable_names(f.body) | {v.name for v in inner}
            renamed = Var(fresh_name(var.name, avoid), var.sort)
            inner = dict(inner)
            inner[var] = renamed
            var = renamed
        return type(f)(var, _subst(f.body, inner))
    return f


def substitute_predicates(f: Formula, mapping: dict[Predicate, Predicate]) -> Formula:
    for src, dst in mapping.items():
        if src.arity != dst.arity:
            raise ValueError(f"arity mismatch substituting {dst} for {src}")
    if isinstance(f, Atom):
        target = mapping.get(f.pred)
        return Atom(target, f.args) if target is not None else f
    if isinstance(f, (And, Or, Implies)):
        return type(f)(substitute_predicates(f.left, mapping), substitute_predicates(f.right, mapping))
    if isinstance(f, (ForAll, Exists)):
        return type(f)(f.var, substitute_predicates(f.body, mapping))
    return f


# --- alpha equivalence ---------------------------------------------------------

def alpha_equivalent(f, g, *, match_sorts: bool = True) -> bool:
    """Equality up to renaming of bound variables (and bound predicate
    variables of second-order sentences) and up to the association of
    conjunctions and disjunctions."""
    return _canon(f, {}, match_sorts) == _canon(g, {}, match_sorts)


def _canon_term(t: FOTerm, env: dict, match_sorts: bool):
    if isinstance(t, Var):
        if t in env:
            return ("bound", env[t], t.sort if match_sorts else None)
        return ("free", t.name, t.sort if match_sorts else None)
    if isinstance(t, Const):
        return ("const", t.value, t.sort if match_sorts else None)
    return ("arith", t.op, _canon_term(t.left, env, match_sorts), _canon_term(t.right, env, match_sorts))


def _canon(f, env: dict, match_sorts: bool):
    if isinstance(f, SecondOrderSentence):
        inner = dict(env)
        for k, p in enumerate(f.predicate_vars):
            inner[p] = ("pvar", k, p.arity)
        return ("so", f.quantifier, len(f.predicate_vars), _canon(f.matrix, inner, match_sorts))
    if isinstance(f, Bottom):
        return ("bot",)
    if isinstance(f, Atom):
        pred = env.get(f.pred, ("pred", f.pred))
        return ("atom", pred, tuple(_canon_term(t, env, match_sorts) for t in f.args))
    if isinstance(f, Compare):
        return ("cmp", f.rel, _canon_term(f.left, env, match_sorts), _canon_term(f.right, env, match_sorts))
    if isinstance(f, And):
        return ("and", tuple(_canon(c, env, match_sorts) for c in _flatten(f, And)))
    if isinstance(f, Or):
        return ("or", tuple(_canon(c, env, match_sorts) for c in _flatten(f, Or)))
    if isinstance(f, Implies):
        return ("imp", _canon(f.left, env, match_sorts), _canon(f.right, env, match_sorts))
    if isinstance(f, (ForAll, Exists)):
        inner = dict(env)
        depth = inner.get("#depth", 0)
        inner["#depth"] = depth + 1
        inner[f.var] = depth
        kind = "all" if isinstance(f, ForAll) else "ex"
        return (kind, f.var.sort if match_sorts else None, _canon(f.body, inner, match_sorts))
    raise TypeError(f"not a formula: {f!r}")


def _flatten(f: Formula, kind: type) -> list[Formula]:
    if isinstance(f, kind):
        return _flatten(f.left, kind) + _flatten(f.right, kind)
    return [f]


# --- printing ----------------------------------------------------------------

_TERM_LEVEL = {"+": 1, "-": 1, "*": 2}


def format_term(t: FOTerm) -> str:
    return _ft(t, -1)


def _ft(t: FOTerm, context: int) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        if isinstance(t.value, Numeral) and t.value.value < 0 and context >= 0:
            return f"({t.value.value})"
        return str(t.value)
    if t.op == "-" and t.left == num(0) and not (isinstance(t.right, Const) and isinstance(t.right.value, Numeral)):
        return "-" + _ft(t.right, 3)
    level = _TERM_LEVEL[t.op]
    text = f"{_ft(t.left, level - 1)} {t.op} {_ft(t.right, level)}"
    return f"({text})" if level <= context else text


def format_formula(f: Formula) -> str:
    return _ff(f, 0)


def _level(f: Formula) -> int:
    if as_iff(f) is not None:
        return 1
    if isinstance(f, Implies) and not is_top(f) and negated(f) is None:
        return 2
    if isinstance(f, Or):
        return 3
    if isinstance(f, And):
        return 4
    return 5


def _ff(f: Formula, min_level: int) -> str:
    text = _ff_raw(f)
    return f"({text})" if _level(f) < min_level else text


def _ff_raw(f: Formula) -> str:
    if isinstance(f, Bottom):
        return "#false"
    if is_top(f):
        return "#true"
    pair = as_iff(f)
    if pair is not None:
        return f"{_ff(pair[0], 2)} <-> {_ff(pair[1], 2)}"
    inner = negated(f)
    if inner is not None:
        return "not " + _ff(inner, 5)
    if isinstance(f, Implies):
        return f"{_ff(f.left, 3)} -> {_ff(f.right, 2)}"
    if isinstance(f, Or):
        return f"{_ff(f.left, 3)} or {_ff(f.right, 4)}"
    if isinstance(f, And):
        return f"{_ff(f.left, 4)} and {_ff(f.right, 5)}"
    if isinstance(f, (ForAll, Exists)):
        kind = type(f)
        vs, body = quantifier_prefix(f, kind)
        word = "forall" if kind is ForAll else "exists"
        return f"{word} {', '.join(v.name for v in vs)} {_ff(body, 5)}"
    if isinstance(f, Atom):
        if not f.args:
            return str(f.pred.name)
        return f"{f.pred.name}({', '.join(format_term(t) for t in f.args)})"
    if isinstance(f, Compare):
        return f"{format_term(f.left)} {f.rel} {format_term(f.right)}"
    raise TypeError(f"not a formula: {f!r}")
