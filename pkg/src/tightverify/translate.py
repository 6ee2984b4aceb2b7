"""Translation of mini-gringo rules into two-sorted first-order sentences.

``val(t, Z)`` says that Z is one of the values of program term t; ``tau_b``
translates body elements and ``tau_star`` whole rules.
"""
from __future__ import annotations

from typing import Iterable

from . import logic as L
from . import syntax as S

# Guards for the remainder R in the translation of / and \.
DIVISION_GUARDS = ("quotient", "divisor")


class FreshNames:
    """Hands out variable names not used elsewhere in one construction."""

    def __init__(self, avoid: Iterable[str] = ()):
        self.used: set[str] = set(avoid)

    def reserve(self, names: Iterable[str]) -> None:
        self.used.update(names)

    def name(self, prefix: str) -> str:
        candidate, k = prefix, 0
        while candidate in self.used:
            k += 1
            candidate = f"{prefix}{k}"
        self.used.add(candidate)
        return candidate

    def object(self, prefix: str = "Z") -> L.Var:
        return L.Var(self.name(prefix), L.Sort.OBJECT)

    def integer(self, prefix: str = "I") -> L.Var:
        return L.Var(self.name(prefix), L.Sort.INTEGER)


def program_var(v: S.Variable) -> L.Var:
    return L.Var(v.name, L.Sort.OBJECT)


def _rule_names(rule: S.Rule) -> set[str]:
    return {v.name for v in rule.variables()}


def _term_names(*terms: S.Term) -> set[str]:
    return {v.name for t in terms for v in S.term_variables(t)}


def _eq(z: L.Var, t: L.FOTerm) -> L.Formula:
    return L.Compare("=", z, t)


class Translator:
    def __init__(self, fresh: FreshNames | None = None, division_guard: str = "quotient"):
        if division_guard not in DIVISION_GUARDS:
            raise ValueError(f"division guard must be one of {DIVISION_GUARDS}")
        self.fresh = fresh or FreshNames()
        self.division_guard = division_guard

    def val(self, t: S.Term, z: L.Var) -> L.Formula:
        if isinstance(t, S.Variable):
            return _eq(z, program_var(t))
        if S.is_precomputed(t):
            return _eq(z, L.Const(t))
        assert isinstance(t, S.BinOp)
        f = self.fresh
        if t.op in ("+", "-", "*"):
            i, j = f.integer("I"), f.integer("J")
            body = L.conj([_eq(z, L.Arith(t.op, i, j)), self.val(t.left, i), self.val(t.right, j)])
            return L.exists([i, j], body)
        if t.op in ("/", "\\"):
            i, j, q, r = f.integer("I"), f.integer("J"), f.integer("Q"), f.integer("R")
            if self.division_guard == "quotient":
                bound = L.Compare("<", r, q)
            else:
                bound = L.Or(L.Compare("<", r, j), L.Compare("<", r, L.Arith("-", L.num(0), j)))
            body = L.conj([
                _eq(i, L.Arith("+", L.Arith("*", j, q), r)),
                self.val(t.left, i),
                self.val(t.right, j),
                L.Compare("!=", j, L.num(0)),
                L.Compare(">=", r, L.num(0)),
                bound,
                _eq(z, q if t.op == "/" else r),
            ])
            return L.exists([i, j, q, r], body)
        # interval
        i, j, k = f.integer("I"), f.integer("J"), f.integer("K")
        body = L.conj([
            self.val(t.left, i),
            self.val(t.right, j),
            L.Compare("<=", i, k),
            L.Compare("<=", k, j),
            _eq(z, k),
        ])
        return L.exists([i, j, k], body)

    def values(self, terms: Iterable[S.Term]) -> tuple[list[L.Var], list[L.Formula]]:
        zs, parts = [], []
        for t in terms:
            z = self.fresh.object("Z")
            zs.append(z)
            parts.append(self.val(t, z))
        return zs, parts

    def tau_b(self, item: S.BodyItem) -> L.Formula:
        if isinstance(item, S.Comparison):
            zs, parts = self.values([item.left, item.right])
            return L.exists(zs, L.conj(parts + [L.Compare(item.rel, zs[0], zs[1])]))
        atom = item.atom
        zs, parts = self.values(atom.args)
        core: L.Formula = L.Atom(atom.symbol, tuple(zs))
        for _ in range(item.negations):
            core = L.neg(core)
        return L.exists(zs, L.conj(parts + [core]))

    def tau_body(self, body: Iterable[S.BodyItem]) -> L.Formula:
        return L.conj([self.tau_b(b) for b in body])

    def head(self, rule: S.Rule) -> L.Formula:
        if rule.head is None:
            return L.BOTTOM
        atom = rule.head.atom
        zs, parts = self.values(atom.args)
        core: L.Formula = L.Atom(atom.symbol, tuple(zs))
        if isinstance(rule.head, S.ChoiceHead):
            core = L.Or(core, L.neg(core))
        return L.forall(zs, L.Implies(L.conj(parts), core))

    def tau_star_rule(self, rule: S.Rule) -> L.Formula:
        self.fresh.reserve(_rule_names(rule))
        body = self.tau_body(rule.body)
        return L.universal_closure(L.Implies(body, self.head(rule)))


def val(t: S.Term, z: L.Var, *, division_guard: str = "quotient") -> L.Formula:
    fresh = FreshNames(_term_names(t) | {z.name})
    return Translator(fresh, division_guard).val(t, z)


def tau_b(item: S.BodyItem, *, division_guard: str = "quotient") -> L.Formula:
    if isinstance(item, S.Comparison):
        names = _term_names(item.left, item.right)
    else:
        names = _term_names(*item.atom.args)
    return Translator(FreshNames(names), division_guard).tau_b(item)


def tau_star_rule(rule: S.Rule, *, division_guard: str = "quotient") -> L.Formula:
    return Translator(FreshNames(_rule_names(rule)), division_guard).tau_star_rule(rule)


def tau_star(program: S.Program, *, division_guard: str = "quotient") -> list[L.Formula]:
    return [tau_star_rule(r, division_guard=division_guard) for r in program]
