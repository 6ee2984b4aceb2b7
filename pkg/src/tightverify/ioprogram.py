"""Programs with input and output: rules plus placeholders, input and output symbols."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .logic import Sort
from .syntax import PredicateSymbol, Program, predicate_symbols


class IOProgramError(ValueError):
    pass


@dataclass(frozen=True)
class IOProgram:
    rules: Program
    placeholders: Mapping[str, Sort] = field(default_factory=dict)
    inputs: frozenset[PredicateSymbol] = frozenset()
    outputs: frozenset[PredicateSymbol] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", frozenset(self.inputs))
        object.__setattr__(self, "outputs", frozenset(self.outputs))
        if not isinstance(self.placeholders, Mapping):
            object.__setattr__(self, "placeholders", {name: Sort.OBJECT for name in self.placeholders})
        clash = self.inputs & self.outputs
        if clash:
            raise IOProgramError(f"symbols both input and output: {', '.join(map(str, sorted(clash)))}")
        for rule in self.rules:
            atom = rule.head_atom
            if atom is not None and atom.symbol in self.inputs:
                raise IOProgramError(f"input symbol {atom.symbol} occurs in the head of a rule")

    @classmethod
    def from_program(cls, program: Program) -> "IOProgram":
        """A plain program: every occurring symbol is an output."""
        return cls(program, {}, frozenset(), frozenset(predicate_symbols(program)))

    @property
    def occurring(self) -> list[PredicateSymbol]:
        return predicate_symbols(self.rules)

    @property
    def public(self) -> frozenset[PredicateSymbol]:
        return self.inputs | self.outputs

    @property
    def private(self) -> list[PredicateSymbol]:
        return [p for p in self.occurring if p not in self.public]

    @property
    def defined(self) -> list[PredicateSymbol]:
        """Symbols that get a completed definition: every occurring or
        declared output symbol other than the inputs."""
        out = [p for p in self.occurring if p not in self.inputs]
        out += sorted(p for p in self.outputs if p not in out)
        return out

    @property
    def integer_placeholders(self) -> dict[str, Sort]:
        return {n: s for n, s in self.placeholders.items() if s is Sort.INTEGER}

    def is_private(self, p: PredicateSymbol) -> bool:
        return p not in self.public


def as_io_program(value: IOProgram | Program | Iterable) -> IOProgram:
    if isinstance(value, IOProgram):
        return value
    if not isinstance(value, Program):
        value = Program(tuple(value))
    return IOProgram.from_program(value)
