"""Predicate dependency graph, tightness and private recursion."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .ioprogram import IOProgram, as_io_program
from .syntax import ChoiceHead, Literal, PredicateSymbol


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Edge:
    source: PredicateSymbol
    target: PredicateSymbol
    positive: bool


@dataclass(frozen=True)
class DependencyGraph:
    vertices: tuple[PredicateSymbol, ...]
    edges: frozenset[Edge]

    def successors(self, p: PredicateSymbol, *, positive_only: bool = False,
                   within: frozenset | set | None = None) -> list[PredicateSymbol]:
        found = {e.target for e in self.edges
                 if e.source == p and (e.positive or not positive_only)
                 and (within is None or e.target in within)}
        return [v for v in self.vertices if v in found]

    def has_edge(self, source: PredicateSymbol, target: PredicateSymbol,
                 positive: bool | None = None) -> bool:
        return any(e.source == source and e.target == target
                   and (positive is None or e.positive == positive) for e in self.edges)


def dependency_graph(io) -> DependencyGraph:
    io = as_io_program(io)
    edges: set[Edge] = set()
    for rule in io.rules:
        if rule.head is None:
            continue
        head = rule.head.atom.symbol
        for item in rule.body:
            if isinstance(item, Literal):
                edges.add(Edge(head, item.atom.symbol, item.negations == 0))
    return DependencyGraph(tuple(io.occurring), frozenset(edges))


def find_cycle(graph: DependencyGraph, *, positive_only: bool = False,
               within: Iterable[PredicateSymbol] | None = None) -> list[PredicateSymbol] | None:
    """Some cycle of the graph (restricted as asked), as a vertex list, or None."""
    allowed = set(graph.vertices if within is None else within)
    state: dict[PredicateSymbol, int] = {}
    stack: list[PredicateSymbol] = []

    def visit(v: PredicateSymbol) -> list[PredicateSymbol] | None:
        state[v] = 1
        stack.append(v)
        for w in graph.successors(v, positive_only=positive_only, within=allowed):
            if state.get(w) == 1:
                return stack[stack.index(w):]
            if w not in state:
                found = visit(w)
                if found:
                    return found
        stack.pop()
        state[v] = 2
        return None

    for v in graph.vertices:
        if v in allowed and v not in state:
            found = visit(v)
            if found:
                return found
    return None


def positive_cycle(io) -> list[PredicateSymbol] | None:
    return find_cycle(dependency_graph(io), positive_only=True)


def is_tight(io) -> bool:
    return positive_cycle(io) is None


def private_choice_heads(io) -> list[PredicateSymbol]:
    io = as_io_program(io)
    seen: dict[PredicateSymbol, None] = {}
    for rule in io.rules:
        if isinstance(rule.head, ChoiceHead) and io.is_private(rule.head.atom.symbol):
            seen.setdefault(rule.head.atom.symbol)
    return list(seen)


def private_cycle(io) -> list[PredicateSymbol] | None:
    io = as_io_program(io)
    return find_cycle(dependency_graph(io), within=io.private)


def uses_private_recursion(io) -> bool:
    return bool(private_choice_heads(io)) or private_cycle(io) is not None


def topological_private_order(io) -> list[PredicateSymbol]:
    """Private symbols ordered so that each depends only on earlier ones.

    Ties go to the symbol occurring first in the program.
    """
    io = as_io_program(io)
    if uses_private_recursion(io):
        raise AnalysisError("the program uses private recursion")
    graph = dependency_graph(io)
    private = io.private
    pending = {p: set(graph.successors(p, within=set(private))) for p in private}
    order: list[PredicateSymbol] = []
    while pending:
        ready = next(p for p in private if p in pending and not pending[p])
        order.append(ready)
        del pending[ready]
        for deps in pending.values():
            deps.discard(ready)
    return order


@dataclass(frozen=True)
class AnalysisReport:
    graph: DependencyGraph
    tight: bool
    private_recursion: bool
    positive_cycle: tuple[PredicateSymbol, ...] | None
    private_cycle: tuple[PredicateSymbol, ...] | None
    private_choice: tuple[PredicateSymbol, ...]

    def diagnostics(self) -> list[str]:
        out = []
        if self.positive_cycle:
            out.append("program is not tight: positive cycle " + _cycle_text(self.positive_cycle))
        if self.private_cycle:
            out.append("program uses private recursion: private cycle " + _cycle_text(self.private_cycle))
        for p in self.private_choice:
            out.append(f"program uses private recursion: choice rule with private head {p}")
        return out


def _cycle_text(cycle: Iterable[PredicateSymbol]) -> str:
    cycle = list(cycle)
    return " -> ".join(str(p) for p in cycle + cycle[:1])


def analyze(io) -> AnalysisReport:
    io = as_io_program(io)
    graph = dependency_graph(io)
    pos = find_cycle(graph, positive_only=True)
    priv = find_cycle(graph, within=io.private)
    choice = private_choice_heads(io)
    return AnalysisReport(
        graph=graph,
        tight=pos is None,
        private_recursion=priv is not None or bool(choice),
        positive_cycle=tuple(pos) if pos else None,
        private_cycle=tuple(priv) if priv else None,
        private_choice=tuple(choice),
    )


def to_dot(graph: DependencyGraph, io: IOProgram | None = None) -> str:
    """Graphviz text; dashed edges are non-positive, private vertices are boxes."""
    lines = ["digraph dependencies {"]
    for v in graph.vertices:
        shape = "box" if io is not None and io.is_private(v) else "ellipse"
        lines.append(f'  "{v}" [shape={shape}];')
    for e in sorted(graph.edges):
        style = "solid" if e.positive else "dashed"
        lines.append(f'  "{e.source}" -> "{e.target}" [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
