"""Bounded-domain semantics: grounding, stable models, io-models and the
evaluation of first- and second-order sentences in standard interpretations.

Precomputed terms are represented by Python values: ``int`` for numerals,
``str`` for symbolic constants and the ``INF``/``SUP`` sentinels.  A ground
atom is a pair ``(name, args)``; predicate variables use names starting with
``?`` so they never collide with predicate symbols.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from . import ground as G
from . import logic as L
from . import syntax as S
from .completion import comp, universal_completion
from .ioprogram import IOProgram, as_io_program
from .translate import tau_star

INF = S.INFIMUM
SUP = S.SUPREMUM

DEFAULT_ATOM_CAP = 24
DEFAULT_RELATION_CAP = 2 ** 16


class OracleLimitError(G.EnumerationLimitError):
    pass


def value_key(v) -> tuple:
    if v is INF:
        return (0,)
    if isinstance(v, bool):
        raise TypeError("booleans are not precomputed terms")
    if isinstance(v, int):
        return (1, v)
    if isinstance(v, str):
        return (2, v)
    if v is SUP:
        return (3,)
    raise TypeError(f"not a precomputed value: {v!r}")


def atom_key(atom) -> tuple:
    name, args = atom
    return (name, len(args), tuple(value_key(a) for a in args))


def value_of_term(t: S.Term):
    if isinstance(t, S.Numeral):
        return t.value
    if isinstance(t, S.SymbolicConstant):
        return t.name
    if isinstance(t, (S.Infimum, S.Supremum)):
        return t
    raise ValueError(f"{S.format_term(t)} is not precomputed")


def term_of_value(v) -> S.Term:
    if isinstance(v, int):
        return S.Numeral(v)
    if isinstance(v, str):
        return S.SymbolicConstant(v)
    return v


def format_value(v) -> str:
    return S.format_term(term_of_value(v))


def format_atom(atom) -> str:
    name, args = atom
    if not args:
        return name
    return f"{name}({','.join(format_value(a) for a in args)})"


def format_model(model: Iterable) -> str:
    return "{" + ", ".join(format_atom(a) for a in sorted(model, key=atom_key)) + "}"


# --- universe ------------------------------------------------------------------

@dataclass(frozen=True)
class BoundedUniverse:
    constants: tuple[str, ...] = ()
    lo: int = 0
    hi: int = 3
    include_inf: bool = False
    include_sup: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "constants", tuple(sorted(set(self.constants))))
        if self.lo > self.hi:
            raise ValueError("empty integer range")

    @property
    def integers(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def objects(self) -> list:
        out: list = [INF] if self.include_inf else []
        out.extend(self.integers)
        out.extend(self.constants)
        if self.include_sup:
            out.append(SUP)
        return out

    def contains(self, v) -> bool:
        if isinstance(v, int):
            return self.lo <= v <= self.hi
        if isinstance(v, str):
            return v in self.constants
        return (v is INF and self.include_inf) or (v is SUP and self.include_sup)

    def domain(self, sort: L.Sort) -> list:
        return list(self.integers) if sort is L.Sort.INTEGER else self.objects

    def with_constants(self, names: Iterable[str]) -> "BoundedUniverse":
        return BoundedUniverse(tuple(set(self.constants) | set(names)), self.lo, self.hi,
                               self.include_inf, self.include_sup)

    def atoms(self, symbols: Iterable[S.PredicateSymbol]) -> list:
        out = []
        for p in symbols:
            for args in itertools.product(self.objects, repeat=p.arity):
                out.append((p.name, args))
        return out


def universe_for(program: S.Program, extra_constants: Iterable[str] = (), lo: int = 0, hi: int = 3,
                 placeholders: Iterable[str] = ()) -> BoundedUniverse:
    """Program constants (placeholders excluded) plus the given integer range."""
    skip = set(placeholders)
    names = [c.name for c in S.program_constants(program) if c.name not in skip]
    return BoundedUniverse(tuple(names) + tuple(extra_constants), lo, hi)


# --- program grounding -------------------------------------------------------

def _divisions(i: int, j: int, u: BoundedUniverse, guard: str) -> Iterator[tuple[int, int]]:
    if j == 0:
        return
    for q in u.integers:
        r = i - j * q
        if not u.lo <= r <= u.hi or r < 0:
            continue
        if guard == "quotient" and not r < q:
            continue
        if guard == "divisor" and not r < abs(j):
            continue
        yield q, r


def term_values(t: S.Term, env: Mapping[str, object], u: BoundedUniverse,
                division_guard: str = "quotient") -> set:
    """Values of a program term inside the universe; mirrors ``val`` with
    every quantified integer ranging over the universe's integers."""
    if isinstance(t, S.Variable):
        return {env[t.name]}
    if S.is_precomputed(t):
        v = value_of_term(t)
        return {v} if u.contains(v) else set()
    left = [v for v in term_values(t.left, env, u, division_guard) if isinstance(v, int)]
    right = [v for v in term_values(t.right, env, u, division_guard) if isinstance(v, int)]
    out: set = set()
    for i in left:
        for j in right:
            if t.op == "+":
                out.add(i + j)
            elif t.op == "-":
                out.add(i - j)
            elif t.op == "*":
                out.add(i * j)
            elif t.op == "..":
                out.update(k for k in u.integers if i <= k <= j)
            else:
                for q, r in _divisions(i, j, u, division_guard):
                    out.add(q if t.op == "/" else r)
    return {v for v in out if u.contains(v)}


def _holds(rel: str, a, b) -> bool:
    if rel == "=":
        return a == b
    if rel == "!=":
        return a != b
    ka, kb = value_key(a), value_key(b)
    return {"<": ka < kb, ">": ka > kb, "<=": ka <= kb, ">=": ka >= kb}[rel]


def _ground_body_item(item: S.BodyItem, env, u, guard) -> G.GroundFormula:
    if isinstance(item, S.Comparison):
        lefts = term_values(item.left, env, u, guard)
        rights = term_values(item.right, env, u, guard)
        return G.TRUE if any(_holds(item.rel, a, b) for a in lefts for b in rights) else G.FALSE
    atom = item.atom
    choices = [sorted(term_values(t, env, u, guard), key=value_key) for t in atom.args]
    out = []
    for args in itertools.product(*choices):
        f = G.atom((atom.predicate, args))
        for _ in range(item.negations):
            f = G.negation(f)
        out.append(f)
    return G.disj(out)


def _ground_head(rule: S.Rule, env, u, guard) -> G.GroundFormula:
    if rule.head is None:
        return G.FALSE
    atom = rule.head.atom
    choices = [sorted(term_values(t, env, u, guard), key=value_key) for t in atom.args]
    out = []
    for args in itertools.product(*choices):
        a = G.atom((atom.predicate, args))
        out.append(G.disj([a, G.negation(a)]) if isinstance(rule.head, S.ChoiceHead) else a)
    return G.conj(out)


@dataclass(frozen=True)
class GroundRule:
    body: G.GroundFormula
    head: G.GroundFormula

    @property
    def formula(self) -> G.GroundFormula:
        return G.implies(self.body, self.head)


def ground_rules(program: S.Program, u: BoundedUniverse, *, division_guard: str = "quotient") -> list[GroundRule]:
    out = []
    for rule in program:
        names = [v.name for v in rule.variables()]
        for values in itertools.product(u.objects, repeat=len(names)):
            env = dict(zip(names, values))
            body = G.conj(_ground_body_item(b, env, u, division_guard) for b in rule.body)
            if body == G.FALSE:
                continue
            head = _ground_head(rule, env, u, division_guard)
            if G.implies(body, head) != G.TRUE:
                out.append(GroundRule(body, head))
    return out


def tau_ground(program: S.Program, u: BoundedUniverse, *, division_guard: str = "quotient") -> list[G.GroundFormula]:
    """The propositional image of the program over the universe (trivial
    instances, whose formula folds to truth, are omitted)."""
    return [r.formula for r in ground_rules(program, u, division_guard=division_guard)]


def _optimistic(f: G.GroundFormula, possible: set) -> bool:
    tag = f[0]
    if tag == "T":
        return True
    if tag == "F":
        return False
    if tag == "a":
        return f[1] in possible
    if tag == "&":
        return all(_optimistic(g, possible) for g in f[1])
    if tag == "|":
        return any(_optimistic(g, possible) for g in f[1])
    return True  # negations may hold


def _substitute_false(f: G.GroundFormula, keep: set) -> G.GroundFormula:
    tag = f[0]
    if tag == "a":
        return f if f[1] in keep else G.FALSE
    if tag == "&":
        return G.conj(_substitute_false(g, keep) for g in f[1])
    if tag == "|":
        return G.disj(_substitute_false(g, keep) for g in f[1])
    if tag == ">":
        return G.implies(_substitute_false(f[1], keep), _substitute_false(f[2], keep))
    return f


def possible_atoms(rules: list[GroundRule]) -> set:
    """Atoms derivable when every negated formula is taken to hold; no stable
    model contains any other atom."""
    possible: set = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            if _optimistic(r.body, possible):
                new = G.atoms_of(r.head) - possible
                if new:
                    possible |= new
                    changed = True
    return possible


def stable_models(program: S.Program, u: BoundedUniverse, *, cap: int = DEFAULT_ATOM_CAP,
                  division_guard: str = "quotient") -> list[frozenset]:
    rules = ground_rules(program, u, division_guard=division_guard)
    keep = possible_atoms(rules)
    theory = [_substitute_false(r.formula, keep) for r in rules]
    if G.FALSE in theory:
        return []
    try:
        found = G.stable_models(theory, cap)
    except G.EnumerationLimitError as exc:
        raise OracleLimitError(str(exc)) from None
    return sorted(found, key=lambda m: sorted(map(atom_key, m)))


# --- io-programs ---------------------------------------------------------------

@dataclass(frozen=True)
class Input:
    valuation: Mapping[str, object] = field(default_factory=dict)
    atoms: frozenset = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", frozenset(self.atoms))


def instantiate(io: IOProgram, inp: Input) -> S.Program:
    """The program with placeholders replaced by their values plus the input facts."""
    missing = set(io.placeholders) - set(inp.valuation)
    if missing:
        raise ValueError(f"no value for placeholders {sorted(missing)}")
    for name, v in inp.valuation.items():
        if isinstance(v, str) and v in io.placeholders:
            raise ValueError("placeholder values must not be placeholders")
        if io.placeholders.get(name) is L.Sort.INTEGER and not isinstance(v, int):
            raise ValueError(f"integer placeholder {name} needs a numeral value")
    for atom in inp.atoms:
        name, args = atom
        if S.PredicateSymbol(name, len(args)) not in io.inputs:
            raise ValueError(f"input atom {format_atom(atom)} does not use an input symbol")
    mapping = {name: term_of_value(v) for name, v in inp.valuation.items()}

    def repl(t: S.Term) -> S.Term:
        if isinstance(t, S.SymbolicConstant) and t.name in mapping:
            return mapping[t.name]
        if isinstance(t, S.BinOp):
            return S.BinOp(t.op, repl(t.left), repl(t.right))
        return t

    def repl_atom(a: S.Atom) -> S.Atom:
        return S.Atom(a.predicate, tuple(repl(t) for t in a.args))

    rules = []
    for r in io.rules:
        head = None if r.head is None else type(r.head)(repl_atom(r.head.atom))
        body = tuple(S.Literal(repl_atom(b.atom), b.negations) if isinstance(b, S.Literal)
                     else S.Comparison(repl(b.left), b.rel, repl(b.right)) for b in r.body)
        rules.append(S.Rule(head, body))
    for name, args in sorted(inp.atoms, key=atom_key):
        rules.append(S.Rule(S.BasicHead(S.Atom(name, tuple(term_of_value(a) for a in args)))))
    return S.Program(tuple(rules))


def is_public_atom(io: IOProgram, atom) -> bool:
    name, args = atom
    return S.PredicateSymbol(name, len(args)) in io.public


def io_models(io, inp: Input, u: BoundedUniverse, *, cap: int = DEFAULT_ATOM_CAP,
              division_guard: str = "quotient") -> list[frozenset]:
    io = as_io_program(io)
    out: dict[frozenset, None] = {}
    for m in stable_models(instantiate(io, inp), u, cap=cap, division_guard=division_guard):
        out.setdefault(frozenset(a for a in m if is_public_atom(io, a)))
    return list(out)


# --- first-order evaluation ----------------------------------------------------

@dataclass(frozen=True)
class BoundedInterpretation:
    """The standard interpretation I^v restricted to a bounded universe."""
    universe: BoundedUniverse
    valuation: Mapping[str, object] = field(default_factory=dict)
    atoms: frozenset = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", frozenset(self.atoms))


def _pred_name(p: L.Predicate) -> str:
    return "?" + p.name if isinstance(p, L.PredicateVariable) else p.name


class _Grounder:
    """Turns a formula into a ground formula over a bounded universe.

    Predicates listed in ``fixed`` are evaluated against ``atoms``; all
    others stay as propositional atoms.  With every predicate fixed the
    result folds to TRUE or FALSE, which is plain evaluation.
    """

    def __init__(self, u: BoundedUniverse, valuation: Mapping[str, object], atoms: frozenset,
                 fixed, arithmetic: str = "exact"):
        self.u = u
        self.valuation = dict(valuation)
        self.atoms = atoms
        self.fixed = fixed  # callable name -> bool
        if arithmetic not in ("exact", "saturate"):
            raise ValueError("arithmetic must be 'exact' or 'saturate'")
        self.saturate = arithmetic == "saturate"
        self.object_set = set(u.objects)

    def term(self, t: L.FOTerm, env: dict):
        if isinstance(t, L.Var):
            return env[t]
        if isinstance(t, L.Const):
            v = t.value
            if isinstance(v, S.SymbolicConstant) and v.name in self.valuation:
                return self._clamp(self.valuation[v.name])
            return self._clamp(value_of_term(v))
        a, b = self.term(t.left, env), self.term(t.right, env)
        if not (isinstance(a, int) and isinstance(b, int)):
            raise TypeError(f"arithmetic on non-integer values in {L.format_term(t)}")
        return self._clamp(a + b if t.op == "+" else a - b if t.op == "-" else a * b)

    def _clamp(self, v):
        """Under saturating arithmetic every integer term denotes an integer
        of the universe, so each term has a value in the domain."""
        if self.saturate and isinstance(v, int):
            return min(max(v, self.u.lo), self.u.hi)
        return v

    def in_domain(self, v, sort: L.Sort) -> bool:
        if sort is L.Sort.INTEGER:
            return isinstance(v, int) and self.u.lo <= v <= self.u.hi
        return v in self.object_set and not isinstance(v, bool)

    def formula(self, f: L.Formula, env: dict) -> G.GroundFormula:
        if isinstance(f, L.Bottom):
            return G.FALSE
        if isinstance(f, L.Atom):
            args = tuple(self.term(t, env) for t in f.args)
            name = _pred_name(f.pred)
            if self.fixed(name):
                return G.TRUE if (name, args) in self.atoms else G.FALSE
            if not all(self.in_domain(a, L.Sort.OBJECT) for a in args):
                return G.FALSE
            return G.atom((name, args))
        if isinstance(f, L.Compare):
            return G.TRUE if _holds(f.rel, self.term(f.left, env), self.term(f.right, env)) else G.FALSE
        if isinstance(f, L.And):
            left = self.formula(f.left, env)
            if left == G.FALSE:
                return G.FALSE
            return G.conj([left, self.formula(f.right, env)])
        if isinstance(f, L.Or):
            left = self.formula(f.left, env)
            if left == G.TRUE:
                return G.TRUE
            return G.disj([left, self.formula(f.right, env)])
        if isinstance(f, L.Implies):
            left = self.formula(f.left, env)
            if left == G.FALSE:
                return G.TRUE
            return G.implies(left, self.formula(f.right, env))
        if isinstance(f, (L.ForAll, L.Exists)):
            return self.quantified(f, env)
        raise TypeError(f"not a formula: {f!r}")

    def quantified(self, f, env: dict) -> G.GroundFormula:
        kind = type(f)
        variables, body = L.quantifier_prefix(f, kind)
        if kind is L.Exists:
            guard_part = body
        elif isinstance(body, L.Implies):
            guard_part = body.left
        else:
            guard_part = L.TOP
        equations = [c for c in L.conjuncts(guard_part) if isinstance(c, L.Compare) and c.rel == "="]
        plan = _plan(variables, equations, set(env))
        results: list[G.GroundFormula] = []
        stop = G.FALSE if kind is L.ForAll else G.TRUE
        for inner in self._assignments(plan, dict(env)):
            r = self.formula(body, inner)
            if r == stop:
                return stop
            results.append(r)
        return G.conj(results) if kind is L.ForAll else G.disj(results)

    def _assignments(self, plan, env: dict) -> Iterator[dict]:
        if not plan:
            yield env
            return
        (var, term), rest = plan[0], plan[1:]
        if term is not None:
            v = self.term(term, env)
            if self.in_domain(v, var.sort):
                env[var] = v
                yield from self._assignments(rest, env)
            return
        for v in self.u.domain(var.sort):
            env[var] = v
            yield from self._assignments(rest, env)


def _plan(variables: list[L.Var], equations: list[L.Compare], bound: set):
    """Order the quantified variables so that any variable fixed by an
    equation over already-known variables is computed rather than enumerated.
    A variable bound twice in the prefix is enumerated once."""
    pending = list(dict.fromkeys(reversed(variables)))[::-1]
    known = set(bound) - set(pending)
    plan = []
    while pending:
        for var in pending:
            term = _defining_term(var, equations, known)
            if term is not None:
                break
        else:
            var, term = pending[0], None
        plan.append((var, term))
        pending.remove(var)
        known.add(var)
    return plan


def _defining_term(var: L.Var, equations: list[L.Compare], known: set):
    for eq in equations:
        for a, b in ((eq.left, eq.right), (eq.right, eq.left)):
            if a == var and all(w in known for w in L.term_vars(b)):
                return b
    return None


def _fixed_all(_name: str) -> bool:
    return True


def eval_formula(f: L.Formula, m: BoundedInterpretation, *, arithmetic: str = "exact",
                 relations: Mapping[str, frozenset] | None = None) -> bool:
    """Classical truth of a closed formula in the bounded interpretation.

    ``relations`` gives extensions to predicate variables, keyed by name."""
    atoms = m.atoms
    if relations:
        atoms = atoms | frozenset(("?" + name, args) for name, rel in relations.items() for args in rel)
    g = _Grounder(m.universe, m.valuation, atoms, _fixed_all, arithmetic)
    r = g.formula(f, {})
    if r not in (G.TRUE, G.FALSE):
        raise AssertionError("evaluation left atoms undecided")
    return r == G.TRUE


def ground_formula(f: L.Formula, u: BoundedUniverse, valuation: Mapping[str, object] | None = None, *,
                   atoms: frozenset = frozenset(), fixed=lambda name: False,
                   arithmetic: str = "exact") -> G.GroundFormula:
    """Ground a closed formula; predicates not ``fixed`` become propositional atoms."""
    return _Grounder(u, valuation or {}, frozenset(atoms), fixed, arithmetic).formula(f, {})


def eval_second_order(s, m: BoundedInterpretation, *, method: str = "enumerate",
                      relation_cap: int = DEFAULT_RELATION_CAP, arithmetic: str = "exact") -> bool:
    """Truth of ``exists P F`` or ``forall P F``, with P ranging over all
    relations on the bounded universe.

    ``method="enumerate"`` tries every relation; ``method="sat"`` grounds the
    matrix with the predicate variables left open and asks a SAT solver.
    """
    if not isinstance(s, L.SecondOrderSentence):
        return eval_formula(s, m, arithmetic=arithmetic)
    if not s.predicate_vars:
        return eval_formula(s.matrix, m, arithmetic=arithmetic)
    if method == "sat":
        names = {"?" + p.name for p in s.predicate_vars}
        g = ground_formula(s.matrix, m.universe, m.valuation, atoms=m.atoms,
                           fixed=lambda name: name not in names, arithmetic=arithmetic)
        if s.quantifier == "exists":
            return G.satisfiable([g])
        return not G.satisfiable([G.negation(g)])
    if method != "enumerate":
        raise ValueError("method must be 'enumerate' or 'sat'")
    objects = m.universe.objects
    spaces = []
    for p in s.predicate_vars:
        tuples = list(itertools.product(objects, repeat=p.arity))
        if 2 ** len(tuples) > relation_cap:
            raise OracleLimitError(f"{2 ** len(tuples)} relations for {p.name} exceed the cap of {relation_cap}")
        spaces.append(tuples)
    matrix, pvars = _hoist_first_order(s)
    if matrix is not None and s.quantifier == "exists" and not eval_formula(matrix, m, arithmetic=arithmetic):
        return False
    want = s.quantifier == "exists"
    for choice in itertools.product(*(_subsets(t) for t in spaces)):
        relations = {p.name: rel for p, rel in zip(s.predicate_vars, choice)}
        if eval_formula(pvars, m, arithmetic=arithmetic, relations=relations) == want:
            return want
    return not want


def _subsets(items: list) -> Iterator[frozenset]:
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def _hoist_first_order(s: L.SecondOrderSentence):
    """Split an existential matrix into conjuncts without predicate variables
    (checked once) and the rest."""
    if s.quantifier != "exists":
        return None, s.matrix
    plain, rest = [], []
    for c in L.conjuncts(s.matrix):
        (rest if L.predicate_variables(c) else plain).append(c)
    return (L.conj(plain) if plain else None), L.conj(rest)


# --- completion-based model sets --------------------------------------------------

def interpretation(io: IOProgram, inp: Input, u: BoundedUniverse, atoms: Iterable) -> BoundedInterpretation:
    return BoundedInterpretation(u, dict(inp.valuation), frozenset(atoms))


def output_atoms(io: IOProgram, u: BoundedUniverse) -> list:
    return u.atoms(sorted(io.outputs))


def completion_models(io, inp: Input, u: BoundedUniverse, *, sentence=None, method: str = "enumerate",
                      max_candidates: int = 2 ** 14, division_guard: str = "quotient") -> list[frozenset]:
    """All I with I^in = i whose I^v satisfies the completion, found by
    evaluating the completion on every candidate set of output atoms."""
    io = as_io_program(io)
    s = sentence if sentence is not None else comp(io, division_guard=division_guard)
    candidates = output_atoms(io, u)
    if 2 ** len(candidates) > max_candidates:
        raise OracleLimitError(f"{2 ** len(candidates)} candidate interpretations exceed the cap")
    found = []
    for chosen in _subsets(candidates):
        atoms = inp.atoms | chosen
        if eval_second_order(s, interpretation(io, inp, u, atoms), method=method):
            found.append(frozenset(atoms))
    return found


def universal_and_existential_agree(io, m: BoundedInterpretation, *, method: str = "enumerate") -> bool:
    io = as_io_program(io)
    return (eval_second_order(comp(io), m, method=method)
            == eval_second_order(universal_completion(io), m, method=method))


# --- the first-order image of a program ----------------------------------------

def tau_star_stable_models(program: S.Program, u: BoundedUniverse, *, cap: int = DEFAULT_ATOM_CAP,
                           division_guard: str = "quotient") -> list[frozenset]:
    """Stable models of the ground instances of the first-order image over the
    universe, for comparison with ``stable_models``."""
    theory = [ground_formula(f, u) for f in tau_star(program, division_guard=division_guard)]
    theory = [f for f in theory if f != G.TRUE]
    if G.FALSE in theory:
        return []
    try:
        found = G.stable_models(theory, cap)
    except G.EnumerationLimitError as exc:
        raise OracleLimitError(str(exc)) from None
    return sorted(found, key=lambda m: sorted(map(atom_key, m)))


# --- bounded equivalence ---------------------------------------------------------

def _placeholder_constants(*formulas) -> tuple[list[str], list[str]]:
    ints, objs = {}, {}
    for f in formulas:
        f = f.matrix if isinstance(f, L.SecondOrderSentence) else f
        for c in L.constants(f):
            if isinstance(c.value, S.SymbolicConstant):
                (ints if c.sort is L.Sort.INTEGER else objs).setdefault(c.value.name)
    return list(ints), list(objs)


def equivalent_bounded(f, g, u: BoundedUniverse, *, atom_cap: int = 4096,
                       arithmetic: str = "saturate") -> bool:
    """f and g agree on every interpretation of their predicates over the
    universe.  Integer-sorted symbolic constants are treated as placeholders
    and range over the integers; object-sorted ones denote themselves."""
    ints, objs = _placeholder_constants(f, g)
    u = u.with_constants(objs)
    extremes = {c.value for h in (f, g) for c in L.constants(h.matrix if isinstance(h, L.SecondOrderSentence) else h)}
    u = BoundedUniverse(u.constants, u.lo, u.hi, u.include_inf or INF in extremes, u.include_sup or SUP in extremes)
    for values in itertools.product(u.integers, repeat=len(ints)):
        valuation = dict(zip(ints, values))
        gf = _ground_sentence(f, u, valuation, arithmetic)
        gg = _ground_sentence(g, u, valuation, arithmetic)
        base = G.atoms_of(gf) | G.atoms_of(gg)
        if len(base) > atom_cap:
            raise OracleLimitError(f"{len(base)} ground atoms exceed the cap of {atom_cap}")
        differ = G.disj([G.conj([gf, G.negation(gg)]), G.conj([gg, G.negation(gf)])])
        if G.satisfiable([differ]):
            return False
    return True


def _ground_sentence(f, u, valuation, arithmetic):
    if isinstance(f, L.SecondOrderSentence):
        if f.predicate_vars:
            raise ValueError("bounded equivalence is defined for first-order sentences")
        f = f.matrix
    return ground_formula(f, u, valuation, arithmetic=arithmetic)
