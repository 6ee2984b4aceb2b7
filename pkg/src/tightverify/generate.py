"""Small random io-programs for property tests.

Programs have at most three rules over at most two predicate symbols of
arity zero or one, and numerals between 0 and 3.  Only programs that are
tight and free of private recursion are kept by ``tight_corpus``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import logic as L
from .analysis import is_tight, uses_private_recursion
from .ioprogram import IOProgram
from .oracle import BoundedUniverse, Input
from .syntax import PredicateSymbol, parse_program

LO, HI = 0, 3
CONSTANTS = ("a",)
PLACEHOLDER = "n"


@dataclass(frozen=True)
class Case:
    io: IOProgram
    input: Input
    universe: BoundedUniverse
    text: str


def _term(rng: random.Random, variables: list[str], placeholder: bool) -> str:
    options = [str(rng.randint(LO, HI)), rng.choice(CONSTANTS)]
    options += variables * 2
    if placeholder:
        options.append(PLACEHOLDER)
    if variables:
        v = rng.choice(variables)
        options += [f"{v}+1", f"{v}-1", f"{v}*2"]
    options.append(f"{rng.randint(LO, 1)}..{rng.randint(1, HI)}")
    return rng.choice(options)


def _atom(rng, p: PredicateSymbol, variables, placeholder) -> str:
    if p.arity == 0:
        return p.name
    return f"{p.name}({_term(rng, variables, placeholder)})"


def _rule(rng: random.Random, preds: list[PredicateSymbol], heads: list[PredicateSymbol],
          placeholder: bool) -> str:
    variables = ["X", "Y"][: rng.randint(0, 2)]
    body = []
    for _ in range(rng.randint(0, 2)):
        if rng.random() < 0.7:
            p = rng.choice(preds)
            sign = rng.choices(["", "not ", "not not "], weights=[5, 3, 1])[0]
            if p.arity and variables and rng.random() < 0.7:
                body.append(f"{sign}{p.name}({rng.choice(variables)})")
            else:
                body.append(sign + _atom(rng, p, variables, placeholder))
        elif variables:
            rel = rng.choice(["=", "!=", "<", "<=", ">", ">="])
            body.append(f"{rng.choice(variables)} {rel} {_term(rng, [], placeholder)}")
    kind = rng.choices(["basic", "choice", "constraint"], weights=[5, 3, 2])[0]
    if kind == "constraint" or not heads:
        if not body:
            body.append(_atom(rng, rng.choice(preds), variables, placeholder))
        return ":- " + ", ".join(body) + "."
    head = _atom(rng, rng.choice(heads), variables, placeholder)
    if kind == "choice":
        head = "{" + head + "}"
    return head + (" :- " + ", ".join(body) if body else "") + "."


def random_case(rng: random.Random) -> Case:
    names = rng.sample(["p", "q"], rng.randint(1, 2))
    preds = [PredicateSymbol(name, rng.randint(0, 1)) for name in names]
    roles = {p: rng.choices(["input", "output", "private"], weights=[1, 3, 2])[0] for p in preds}
    if all(r == "input" for r in roles.values()):
        roles[preds[0]] = "output"
    heads = [p for p in preds if roles[p] != "input"]
    placeholder = rng.random() < 0.3
    text = "\n".join(_rule(rng, preds, heads, placeholder) for _ in range(rng.randint(1, 3)))
    program = parse_program(text)
    io = IOProgram(
        program,
        {PLACEHOLDER: L.Sort.INTEGER} if placeholder else {},
        frozenset(p for p in preds if roles[p] == "input"),
        frozenset(p for p in preds if roles[p] == "output"),
    )
    universe = BoundedUniverse(CONSTANTS, LO, HI)
    valuation = {PLACEHOLDER: rng.randint(LO, HI)} if placeholder else {}
    atoms = [a for a in universe.atoms(sorted(io.inputs)) if rng.random() < 0.4]
    return Case(io, Input(valuation, frozenset(atoms)), universe, text)


def random_corpus(seed: int, size: int):
    rng = random.Random(seed)
    return [random_case(rng) for _ in range(size)]


def tight_corpus(seed: int, size: int) -> list[Case]:
    """``size`` random cases that are tight and free of private recursion."""
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        case = random_case(rng)
        if is_tight(case.io) and not uses_private_recursion(case.io):
            out.append(case)
    return out
