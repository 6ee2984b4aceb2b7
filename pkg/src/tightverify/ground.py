"""Propositional formulas over ground atoms, Ferraris reducts and a
SAT-backed stable-model enumerator.

Formulas are nested tuples: ``TRUE``, ``FALSE``, ``("a", key)``,
``("&", items)``, ``("|", items)`` and ``(">", left, right)``.  The smart
constructors fold truth constants only in ways that are valid
intuitionistically, so stable models are unaffected.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Iterator

import pycosat

TRUE = ("T",)
FALSE = ("F",)

GroundFormula = tuple


class EnumerationLimitError(RuntimeError):
    """The atom base is larger than the configured cap."""


def atom(key: Hashable) -> GroundFormula:
    return ("a", key)


def conj(items: Iterable[GroundFormula]) -> GroundFormula:
    out: dict[GroundFormula, None] = {}
    for f in items:
        if f == FALSE:
            return FALSE
        if f == TRUE:
            continue
        if f[0] == "&":
            out.update(dict.fromkeys(f[1]))
        else:
            out[f] = None
    if not out:
        return TRUE
    if len(out) == 1:
        return next(iter(out))
    return ("&", tuple(out))


def disj(items: Iterable[GroundFormula]) -> GroundFormula:
    out: dict[GroundFormula, None] = {}
    for f in items:
        if f == TRUE:
            return TRUE
        if f == FALSE:
            continue
        if f[0] == "|":
            out.update(dict.fromkeys(f[1]))
        else:
            out[f] = None
    if not out:
        return FALSE
    if len(out) == 1:
        return next(iter(out))
    return ("|", tuple(out))


def implies(a: GroundFormula, b: GroundFormula) -> GroundFormula:
    if a == FALSE or b == TRUE:
        return TRUE
    if a == TRUE:
        return b
    return (">", a, b)


def negation(a: GroundFormula) -> GroundFormula:
    return implies(a, FALSE)


def atoms_of(f: GroundFormula) -> set:
    out: set = set()
    stack = [f]
    while stack:
        g = stack.pop()
        tag = g[0]
        if tag == "a":
            out.add(g[1])
        elif tag in ("&", "|"):
            stack.extend(g[1])
        elif tag == ">":
            stack.append(g[1])
            stack.append(g[2])
    return out


def holds(f: GroundFormula, model) -> bool:
    tag = f[0]
    if tag == "T":
        return True
    if tag == "F":
        return False
    if tag == "a":
        return f[1] in model
    if tag == "&":
        return all(holds(g, model) for g in f[1])
    if tag == "|":
        return any(holds(g, model) for g in f[1])
    return not holds(f[1], model) or holds(f[2], model)


def reduct(f: GroundFormula, model) -> GroundFormula:
    """Ferraris reduct: maximal subformulas false in ``model`` become FALSE."""
    if not holds(f, model):
        return FALSE
    tag = f[0]
    if tag in ("T", "a"):
        return f
    if tag in ("&", "|"):
        return (tag, tuple(reduct(g, model) for g in f[1]))
    return (">", reduct(f[1], model), reduct(f[2], model))


def format_ground(f: GroundFormula, show=str) -> str:
    tag = f[0]
    if tag == "T":
        return "#true"
    if tag == "F":
        return "#false"
    if tag == "a":
        return show(f[1])
    if tag == "&":
        return "(" + " & ".join(format_ground(g, show) for g in f[1]) + ")"
    if tag == "|":
        return "(" + " | ".join(format_ground(g, show) for g in f[1]) + ")"
    if f[2] == FALSE:
        return "~" + format_ground(f[1], show)
    return "(" + format_ground(f[1], show) + " -> " + format_ground(f[2], show) + ")"


# --- CNF ---------------------------------------------------------------------

class Encoder:
    """Tseitin encoding with full equivalences, so every assignment to the
    atoms extends to exactly one satisfying assignment of the auxiliaries."""

    def __init__(self) -> None:
        self.atom_vars: dict = {}
        self.node_vars: dict = {}
        self.clauses: list[list[int]] = []
        self.count = 0

    def _new(self) -> int:
        self.count += 1
        return self.count

    def var_for_atom(self, key) -> int:
        v = self.atom_vars.get(key)
        if v is None:
            v = self.atom_vars[key] = self._new()
        return v

    def literal(self, f: GroundFormula) -> int:
        tag = f[0]
        if tag == "a":
            return self.var_for_atom(f[1])
        if tag in ("T", "F"):
            v = self.node_vars.get(f)
            if v is None:
                v = self.node_vars[f] = self._new()
                self.clauses.append([v] if tag == "T" else [-v])
            return v
        v = self.node_vars.get(f)
        if v is not None:
            return v
        if tag in ("&", "|"):
            kids = [self.literal(g) for g in f[1]]
            v = self._new()
            if tag == "&":
                for k in kids:
                    self.clauses.append([-v, k])
                self.clauses.append([v] + [-k for k in kids])
            else:
                self.clauses.append([-v] + kids)
                for k in kids:
                    self.clauses.append([v, -k])
        else:
            a, b = self.literal(f[1]), self.literal(f[2])
            v = self._new()
            self.clauses.append([-v, -a, b])
            self.clauses.append([v, a])
            self.clauses.append([v, -b])
        self.node_vars[f] = v
        return v

    def assert_formula(self, f: GroundFormula) -> None:
        if f == TRUE:
            return
        if f == FALSE:
            self.clauses.append([])
            return
        if f[0] == "&":
            for g in f[1]:
                self.assert_formula(g)
            return
        self.clauses.append([self.literal(f)])

    def decode(self, solution: Iterable[int]) -> frozenset:
        true_vars = {v for v in solution if v > 0}
        return frozenset(k for k, v in self.atom_vars.items() if v in true_vars)


def _solve(clauses: list[list[int]]):
    if any(not c for c in clauses):
        return "UNSAT"
    if not clauses:
        return []
    return pycosat.solve(clauses)


def satisfiable(formulas: Iterable[GroundFormula]) -> bool:
    enc = Encoder()
    for f in formulas:
        enc.assert_formula(f)
    return _solve(enc.clauses) != "UNSAT"


def models(formulas: Iterable[GroundFormula], project: Iterable | None = None) -> Iterator[frozenset]:
    """Classical models, as sets of true atoms, distinct on the projection
    atoms (all atoms by default).  Atoms absent from the formulas are false."""
    enc = Encoder()
    for f in formulas:
        enc.assert_formula(f)
    if project is not None:
        for key in project:
            enc.var_for_atom(key)
        keys = list(project)
    else:
        keys = list(enc.atom_vars)
    clauses = list(enc.clauses)
    while True:
        solution = _solve(clauses)
        if solution == "UNSAT":
            return
        model = enc.decode(solution)
        shown = frozenset(k for k in keys if k in model)
        yield shown if project is not None else model
        if not keys:
            return
        clauses.append([-enc.atom_vars[k] if k in shown else enc.atom_vars[k] for k in keys])


def is_minimal_model(theory: list[GroundFormula], model: frozenset) -> bool:
    """No proper subset of ``model`` satisfies ``theory``; the theory may only
    mention atoms of ``model``."""
    mentioned = set().union(*map(atoms_of, theory)) if theory else set()
    if model - mentioned:
        return False
    if not model:
        return True
    enc = Encoder()
    for f in theory:
        enc.assert_formula(f)
    enc.clauses.append([-enc.var_for_atom(k) for k in model])
    return _solve(enc.clauses) == "UNSAT"


def stable_models(theory: Iterable[GroundFormula], cap: int = 24) -> list[frozenset]:
    """All stable models of a finite propositional theory."""
    theory = [f for f in theory if f != TRUE]
    base = set().union(*map(atoms_of, theory)) if theory else set()
    if len(base) > cap:
        raise EnumerationLimitError(f"{len(base)} ground atoms exceed the cap of {cap}")
    found = []
    for candidate in models(theory):
        reduced = [reduct(f, candidate) for f in theory]
        if is_minimal_model(reduced, candidate):
            found.append(candidate)
    return found
