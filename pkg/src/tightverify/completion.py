"""Completed definitions, constraint representations and the completion.

Private symbols are replaced by predicate variables in the completion
proper; proof obligations use the private symbols themselves as constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping

from . import logic as L
from .analysis import AnalysisError, is_tight, topological_private_order, uses_private_recursion
from .ioprogram import IOProgram, IOProgramError, as_io_program
from .syntax import BasicHead, ChoiceHead, PredicateSymbol, Rule
from .translate import FreshNames, Translator

if TYPE_CHECKING:
    from .speclang import Specification

__all__ = [
    "IOProgram", "IOProgramError", "CompletionParts", "ProofObligations",
    "predicate_variable_map", "definition_of", "formula_representation",
    "completed_definition", "constraint_representation", "comp", "completion_parts",
    "universalize", "universal_completion", "completion_listing", "build_obligations",
]

PredicateMap = Mapping[PredicateSymbol, L.Predicate]


def predicate_variable_map(io: IOProgram) -> dict[PredicateSymbol, L.PredicateVariable]:
    """One predicate variable per private symbol, named by capitalising it."""
    taken = {p.name for p in io.occurring} | set(io.placeholders)
    out: dict[PredicateSymbol, L.PredicateVariable] = {}
    for p in io.private:
        base = p.name[:1].upper() + p.name[1:]
        name, k = base, 0
        while name in taken:
            k += 1
            name = f"{base}_{p.arity}" if k == 1 else f"{base}_{p.arity}_{k}"
        taken.add(name)
        out[p] = L.PredicateVariable(name, p.arity)
    return out


def _finish(f: L.Formula, io: IOProgram, predicate_map: PredicateMap | None) -> L.Formula:
    f = L.retype_constants(f, io.integer_placeholders)
    if predicate_map:
        f = L.substitute_predicates(f, dict(predicate_map))
    return f


def definition_of(p: PredicateSymbol, io) -> list[Rule]:
    io = as_io_program(io)
    if p in io.inputs:
        raise IOProgramError(f"{p} is an input symbol")
    return [r for r in io.rules if r.head is not None and r.head.atom.symbol == p]


def formula_representation(rule: Rule, head_vars: list[L.Var], *,
                           division_guard: str = "quotient") -> L.Formula:
    if not isinstance(rule.head, (BasicHead, ChoiceHead)):
        raise ValueError("constraints have no formula representation of this kind")
    atom = rule.head.atom
    if len(head_vars) != len(atom.args):
        raise ValueError("one head variable per argument is required")
    avoid = {v.name for v in rule.variables()} | {v.name for v in head_vars}
    tr = Translator(FreshNames(avoid), division_guard)
    parts = [tr.tau_body(rule.body)]
    if isinstance(rule.head, ChoiceHead):
        parts.append(L.Atom(atom.symbol, tuple(head_vars)))
    parts.extend(tr.val(t, v) for t, v in zip(atom.args, head_vars))
    return L.conj(parts)


def completed_definition(p: PredicateSymbol, io, predicate_map: PredicateMap | None = None, *,
                         division_guard: str = "quotient") -> L.Formula:
    io = as_io_program(io)
    if predicate_map is None:
        predicate_map = predicate_variable_map(io)
    rules = definition_of(p, io)
    avoid = {v.name for r in rules for v in r.variables()}
    fresh = FreshNames(avoid)
    head_vars = [fresh.object("V") for _ in range(p.arity)]
    alternatives = []
    for rule in rules:
        f = formula_representation(rule, head_vars, division_guard=division_guard)
        local = [v for v in L.free_variables_ordered(f) if v not in head_vars]
        alternatives.append(L.exists(local, f))
    body = L.iff(L.Atom(p, tuple(head_vars)), L.disj(alternatives))
    return _finish(L.forall(head_vars, body), io, predicate_map)


def constraint_representation(rule: Rule, io=None, predicate_map: PredicateMap | None = None, *,
                              division_guard: str = "quotient") -> L.Formula:
    if not rule.is_constraint:
        raise ValueError("not a constraint")
    tr = Translator(FreshNames(v.name for v in rule.variables()), division_guard)
    f = L.universal_closure(L.neg(tr.tau_body(rule.body)))
    if io is None:
        return L.substitute_predicates(f, dict(predicate_map)) if predicate_map else f
    io = as_io_program(io)
    if predicate_map is None:
        predicate_map = predicate_variable_map(io)
    return _finish(f, io, predicate_map)


def _conjuncts(io: IOProgram, predicate_map: PredicateMap, division_guard: str):
    defs = {p: completed_definition(p, io, predicate_map, division_guard=division_guard)
            for p in io.defined}
    constraints = [constraint_representation(r, io, predicate_map, division_guard=division_guard)
                   for r in io.rules if r.is_constraint]
    return defs, constraints


def comp(io, *, division_guard: str = "quotient") -> L.SecondOrderSentence:
    """The completion: an existential second-order sentence over the public signature."""
    io = as_io_program(io)
    pmap = predicate_variable_map(io)
    defs, constraints = _conjuncts(io, pmap, division_guard)
    matrix = L.conj(list(defs.values()) + constraints)
    return L.SecondOrderSentence("exists", tuple(pmap.values()), matrix)


@dataclass(frozen=True)
class CompletionParts:
    """Private definitions in dependency order, and the remaining conjuncts."""
    private_defs: tuple[tuple[L.Predicate, L.Formula], ...]
    public_conjuncts: tuple[L.Formula, ...]

    @property
    def public_part(self) -> L.Formula:
        return L.conj(self.public_conjuncts)

    @property
    def hypotheses(self) -> list[L.Formula]:
        return [f for _, f in self.private_defs]


def completion_parts(io, predicate_map: PredicateMap | None = None, *,
                     division_guard: str = "quotient") -> CompletionParts:
    """Split the completion for the universal form.

    With ``predicate_map={}`` private symbols stay predicate constants.
    """
    io = as_io_program(io)
    if predicate_map is None:
        predicate_map = predicate_variable_map(io)
    order = topological_private_order(io)
    defs, constraints = _conjuncts(io, predicate_map, division_guard)
    private = tuple((predicate_map.get(p, p), defs[p]) for p in order)
    public = tuple(f for p, f in defs.items() if p not in order) + tuple(constraints)
    return CompletionParts(private, public)


def universalize(parts: CompletionParts) -> L.SecondOrderSentence:
    pvars = tuple(p for p, _ in parts.private_defs if isinstance(p, L.PredicateVariable))
    matrix = L.Implies(L.conj(parts.hypotheses), parts.public_part)
    return L.SecondOrderSentence("forall", pvars, matrix)


def universal_completion(io, *, division_guard: str = "quotient") -> L.SecondOrderSentence:
    io = as_io_program(io)
    if uses_private_recursion(io):
        raise AnalysisError("the universal form requires a program without private recursion")
    return universalize(completion_parts(io, division_guard=division_guard))


def completion_listing(io, *, division_guard: str = "quotient") -> list[L.Formula]:
    """Completion formulas with private symbols as constants, for display:
    private definitions in dependency order, then public definitions,
    then constraints."""
    io = as_io_program(io)
    if uses_private_recursion(io):
        defs, constraints = _conjuncts(io, {}, division_guard)
        return list(defs.values()) + constraints
    parts = completion_parts(io, {}, division_guard=division_guard)
    return parts.hypotheses + list(parts.public_conjuncts)


@dataclass(frozen=True)
class ProofObligations:
    axioms: tuple[L.Formula, ...]
    assumptions: tuple[L.Formula, ...]
    completion_hypotheses: tuple[L.Formula, ...]
    public_completion: tuple[L.Formula, ...]
    specs: tuple[L.Formula, ...]
    lemmas_forward: tuple[L.Formula, ...]
    lemmas_backward: tuple[L.Formula, ...]

    def forward_premises(self) -> list[L.Formula]:
        return [*self.axioms, *self.assumptions, *self.completion_hypotheses, *self.public_completion]

    def backward_premises(self) -> list[L.Formula]:
        return [*self.axioms, *self.assumptions, *self.completion_hypotheses, *self.specs]

    def forward_goals(self) -> list[L.Formula]:
        return [*self.lemmas_forward, *self.specs]

    def backward_goals(self) -> list[L.Formula]:
        return [*self.lemmas_backward, *self.public_completion]

    def map(self, fn) -> "ProofObligations":
        return ProofObligations(*(tuple(fn(f) for f in group) for group in (
            self.axioms, self.assumptions, self.completion_hypotheses, self.public_completion,
            self.specs, self.lemmas_forward, self.lemmas_backward)))


def build_obligations(io, spec: "Specification", *, division_guard: str = "quotient") -> ProofObligations:
    io = as_io_program(io)
    if not is_tight(io):
        raise AnalysisError("the program is not tight")
    if uses_private_recursion(io):
        raise AnalysisError("the program uses private recursion")
    parts = completion_parts(io, {}, division_guard=division_guard)
    return ProofObligations(
        axioms=tuple(spec.axioms),
        assumptions=tuple(spec.assumptions),
        completion_hypotheses=tuple(parts.hypotheses),
        public_completion=parts.public_conjuncts,
        specs=tuple(spec.specs),
        lemmas_forward=tuple(spec.lemmas_for("forward")),
        lemmas_backward=tuple(spec.lemmas_for("backward")),
    )
