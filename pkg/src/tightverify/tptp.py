"""Proof tasks in the typed first-order TPTP format (TFF).

Objects live in the sort ``object``; integers use the built-in ``$int`` and
reach ``object`` through the injective, order-preserving function
``integer_object``.  The order on objects is the declared predicate
``object_less``; equality is native.  User predicates are renamed
``p_<name>_<arity>`` and symbolic constants ``c_<name>`` so they never
clash with the built-in vocabulary.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import logic as L
from .syntax import Infimum, Numeral, PredicateSymbol, Supremum, SymbolicConstant

OBJECT_SORT = "object"
EMBEDDING = "integer_object"
OBJECT_LESS = "object_less"
INFIMUM_NAME = "c_inf"
SUPREMUM_NAME = "c_sup"

_LOWER_WORD = re.compile(r"[a-z][A-Za-z0-9_]*")
_INT_RELS = {"=": "=", "!=": "!=", "<": "$less", "<=": "$lesseq", ">": "$greater", ">=": "$greatereq"}
_ARITH = {"+": "$sum", "-": "$difference", "*": "$product"}


class TptpError(ValueError):
    """A formula cannot be turned into a proof task."""


@dataclass(frozen=True)
class ProofTask:
    name: str
    axioms: tuple[tuple[str, L.Formula], ...]
    conjecture: tuple[str, L.Formula]


# --- signatures --------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Symbolic constants (by name), predicate symbols and whether the
    extreme terms occur, collected from a set of formulas."""
    constants: tuple[str, ...] = ()
    predicates: tuple[PredicateSymbol, ...] = ()
    infimum: bool = False
    supremum: bool = False


def signature_of(formulas: Iterable[L.Formula]) -> Signature:
    constants: dict[str, None] = {}
    preds: dict[PredicateSymbol, None] = {}
    inf = sup = False
    for f in formulas:
        for c in L.constants(f):
            if isinstance(c.value, SymbolicConstant):
                constants.setdefault(c.value.name)
            inf |= isinstance(c.value, Infimum)
            sup |= isinstance(c.value, Supremum)
        preds.update(dict.fromkeys(L.predicate_symbols(f)))
    return Signature(tuple(sorted(constants)), tuple(sorted(preds)), inf, sup)


# --- standard axioms ---------------------------------------------------------

def _ovar(name: str) -> L.Var:
    return L.Var(name, L.Sort.OBJECT)


def _ivar(name: str) -> L.Var:
    return L.Var(name, L.Sort.INTEGER)


def standard_axiom_groups(sig: Signature, placeholders: Mapping[str, L.Sort] = {},
                          user_axioms: Sequence[L.Formula] = ()) -> list[tuple[str, L.Formula]]:
    """Axioms true in every standard interpretation, tagged by group."""
    X, Y, Z = _ovar("X"), _ovar("Y"), _ovar("Z")
    N1, N2 = _ivar("N1"), _ivar("N2")
    lt = lambda a, b: L.Compare("<", a, b)  # noqa: E731
    eq = lambda a, b: L.Compare("=", a, b)  # noqa: E731
    out: list[tuple[str, L.Formula]] = [
        ("embedding", L.forall([N1, N2, X], L.Implies(L.conj([eq(X, N1), eq(X, N2)]), eq(N1, N2)))),
        ("embedding", L.forall([N1, N2], L.Implies(lt(N1, N2), L.forall([X, Y], L.Implies(
            L.conj([eq(X, N1), eq(Y, N2)]), lt(X, Y)))))),
        ("order", L.forall([X], L.neg(lt(X, X)))),
        ("order", L.forall([X, Y, Z], L.Implies(L.conj([lt(X, Y), lt(Y, Z)]), lt(X, Z)))),
        ("order", L.forall([X, Y], L.disj([lt(X, Y), eq(X, Y), lt(Y, X)]))),
    ]
    fixed = [L.sym(c) for c in sig.constants if c not in placeholders]
    for c in fixed:
        out.append(("layer", L.forall([N1, X], L.Implies(eq(X, N1), lt(X, c)))))
    for a, b in zip(fixed, fixed[1:]):
        out.append(("layer", lt(a, b)))
    if sig.infimum:
        out.append(("layer", L.forall([X], L.Implies(L.neg(eq(X, L.INF)), lt(L.INF, X)))))
    if sig.supremum:
        out.append(("layer", L.forall([X], L.Implies(L.neg(eq(X, L.SUP)), lt(X, L.SUP)))))
    for i, a in enumerate(fixed):
        for b in fixed[i + 1:]:
            out.append(("distinct", L.Compare("!=", a, b)))
    out.extend(("user", f) for f in user_axioms)
    return out


def standard_axioms(sig: Signature, placeholders: Mapping[str, L.Sort] = {},
                    user_axioms: Sequence[L.Formula] = ()) -> list[L.Formula]:
    return [f for _, f in standard_axiom_groups(sig, placeholders, user_axioms)]


def label_groups(groups: Iterable[tuple[str, L.Formula]]) -> list[tuple[str, L.Formula]]:
    """Label formulas ``axiom_<group>_<n>``, numbering within each group."""
    counts: dict[str, int] = {}
    out = []
    for group, f in groups:
        counts[group] = counts.get(group, 0) + 1
        out.append((f"axiom_{group}_{counts[group]}", f))
    return out


# --- emission ----------------------------------------------------------------

def _word(text: str) -> str:
    if _LOWER_WORD.fullmatch(text):
        return text
    return "'" + text.replace("\\", "\\\\").replace("'", "\\'") + "'"


def predicate_name(p: PredicateSymbol) -> str:
    return _word(f"p_{p.name}_{p.arity}")


def constant_name(name: str) -> str:
    return _word(f"c_{name}")


class _Emitter:
    def __init__(self) -> None:
        self.constants: dict[str, str] = {}  # tptp name -> type
        self.predicates: dict[str, int] = {}

    def declare_constant(self, c: L.Const) -> str:
        if isinstance(c.value, Infimum):
            name, ty = INFIMUM_NAME, OBJECT_SORT
        elif isinstance(c.value, Supremum):
            name, ty = SUPREMUM_NAME, OBJECT_SORT
        else:
            name = constant_name(c.value.name)
            ty = "$int" if c.sort is L.Sort.INTEGER else OBJECT_SORT
        known = self.constants.setdefault(name, ty)
        if known != ty:
            raise TptpError(f"constant {c.value} is used with two sorts")
        return name

    def term(self, t: L.FOTerm, env: Mapping[L.Var, str]) -> str:
        if isinstance(t, L.Var):
            return env[t]
        if isinstance(t, L.Arith):
            return f"{_ARITH[t.op]}({self.term(t.left, env)}, {self.term(t.right, env)})"
        if isinstance(t.value, Numeral):
            return str(t.value.value)
        return self.declare_constant(t)

    def object_term(self, t: L.FOTerm, env) -> str:
        text = self.term(t, env)
        return f"{EMBEDDING}({text})" if L.term_sort(t) is L.Sort.INTEGER else text

    def compare(self, f: L.Compare, env) -> str:
        if L.term_sort(f.left) is L.Sort.INTEGER and L.term_sort(f.right) is L.Sort.INTEGER:
            a, b = self.term(f.left, env), self.term(f.right, env)
            rel = _INT_RELS[f.rel]
            return f"{a} {rel} {b}" if rel in ("=", "!=") else f"{rel}({a}, {b})"
        a, b = self.object_term(f.left, env), self.object_term(f.right, env)
        if f.rel in ("=", "!="):
            return f"{a} {f.rel} {b}"
        if f.rel == "<":
            return f"{OBJECT_LESS}({a}, {b})"
        if f.rel == ">":
            return f"{OBJECT_LESS}({b}, {a})"
        if f.rel == "<=":
            return f"({OBJECT_LESS}({a}, {b}) | {a} = {b})"
        return f"({OBJECT_LESS}({b}, {a}) | {a} = {b})"

    def formula(self, f: L.Formula, env: dict, used: set) -> str:
        if f == L.BOTTOM:
            return "$false"
        if L.is_top(f):
            return "$true"
        pair = L.as_iff(f)
        if pair is not None:
            return f"({self.formula(pair[0], env, used)} <=> {self.formula(pair[1], env, used)})"
        inner = L.negated(f)
        if inner is not None:
            return f"~ ({self.formula(inner, env, used)})"
        if isinstance(f, L.Atom):
            if isinstance(f.pred, L.PredicateVariable):
                raise TptpError(f"predicate variable {f.pred} cannot be emitted")
            name = predicate_name(f.pred)
            self.predicates[name] = f.pred.arity
            if not f.args:
                return name
            return f"{name}({', '.join(self.object_term(t, env) for t in f.args)})"
        if isinstance(f, L.Compare):
            return self.compare(f, env)
        if isinstance(f, (L.And, L.Or, L.Implies)):
            op = {L.And: "&", L.Or: "|", L.Implies: "=>"}[type(f)]
            return f"({self.formula(f.left, env, used)} {op} {self.formula(f.right, env, used)})"
        kind = type(f)
        variables, body = L.quantifier_prefix(f, kind)
        env = dict(env)
        bound = []
        for v in variables:
            name = _variable_name(v.name, used)
            env[v] = name
            bound.append(f"{name}: {'$int' if v.sort is L.Sort.INTEGER else OBJECT_SORT}")
        q = "!" if kind is L.ForAll else "?"
        return f"{q}[{', '.join(bound)}]: {self.formula(body, env, used)}"

    def declarations(self) -> list[str]:
        lines = [
            f"tff(type_object, type, {OBJECT_SORT}: $tType).",
            f"tff(type_{EMBEDDING}, type, {EMBEDDING}: $int > {OBJECT_SORT}).",
            f"tff(type_{OBJECT_LESS}, type, {OBJECT_LESS}: ({OBJECT_SORT} * {OBJECT_SORT}) > $o).",
        ]
        for k, (name, arity) in enumerate(sorted(self.predicates.items()), 1):
            if arity == 0:
                ty = "$o"
            elif arity == 1:
                ty = f"{OBJECT_SORT} > $o"
            else:
                ty = "(" + " * ".join([OBJECT_SORT] * arity) + ") > $o"
            lines.append(f"tff(type_predicate_{k}, type, {name}: {ty}).")
        for k, (name, ty) in enumerate(sorted(self.constants.items()), 1):
            lines.append(f"tff(type_constant_{k}, type, {name}: {ty}).")
        return lines


def _variable_name(name: str, used: set) -> str:
    base = re.sub(r"[^A-Za-z0-9_]", "_", name.lstrip("_")) or "V"
    if not base[0].isupper():
        base = "V" + base
    candidate, k = base, 0
    while candidate in used:
        k += 1
        candidate = f"{base}_{k}"
    used.add(candidate)
    return candidate


def _check_closed(label: str, f: L.Formula) -> None:
    free = L.free_variables_ordered(f)
    if free:
        raise TptpError(f"{label} is not closed: free {', '.join(v.name for v in free)}")
    if L.predicate_variables(f):
        raise TptpError(f"{label} contains predicate variables")


def emit_task(task: ProofTask) -> str:
    """The TFF text of a task: declarations, then axioms, then the conjecture."""
    em = _Emitter()
    body = []
    for label, f in [*task.axioms, task.conjecture]:
        _check_closed(label, f)
    for label, f in task.axioms:
        body.append(f"tff({_word(label)}, axiom, {em.formula(f, {}, set())}).")
    label, goal = task.conjecture
    body.append(f"tff({_word(label)}, conjecture, {em.formula(goal, {}, set())}).")
    header = [f"% {task.name}"]
    return "\n".join(header + em.declarations() + body) + "\n"
