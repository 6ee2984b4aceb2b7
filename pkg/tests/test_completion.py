from __future__ import annotations

import pytest

from tightverify import logic as L
from tightverify.analysis import AnalysisError
from tightverify.completion import (
    build_obligations,
    comp,
    completed_definition,
    completion_listing,
    completion_parts,
    constraint_representation,
    definition_of,
    predicate_variable_map,
    universal_completion,
)
from tightverify.ioprogram import IOProgram, IOProgramError
from tightverify.oracle import BoundedUniverse, equivalent_bounded
from tightverify.simplify import simplify
from tightverify.speclang import parse_formula, parse_spec
from tightverify.syntax import PredicateSymbol, parse_program

INT = {"n": L.Sort.INTEGER}
in_cover, covered, s2 = PredicateSymbol("in_cover", 1), PredicateSymbol("covered", 1), PredicateSymbol("s", 2)


@pytest.fixture
def exact_cover(data_dir):
    spec = parse_spec((data_dir / "exact_cover.spec").read_text())
    return spec.io_program(parse_program((data_dir / "exact_cover.lp").read_text())), spec


@pytest.fixture
def floor_sqrt(data_dir):
    spec = parse_spec((data_dir / "floor_sqrt.spec").read_text())
    spec = parse_spec((data_dir / "floor_sqrt.lemmas.spec").read_text(), base=spec)
    return spec.io_program(parse_program((data_dir / "floor_sqrt.lp").read_text())), spec


def test_io_program_roles(exact_cover):
    io, _ = exact_cover
    assert io.private == [covered]
    assert set(io.public) == {in_cover, s2}
    assert io.defined == [in_cover, covered]
    with pytest.raises(IOProgramError):
        definition_of(s2, io)
    with pytest.raises(IOProgramError):
        IOProgram(io.rules, {}, frozenset({in_cover}), frozenset())


def test_completed_definition_of_the_choice_symbol(exact_cover):
    io, _ = exact_cover
    got = completed_definition(in_cover, io)
    expected = parse_formula("forall V (in_cover(V) <-> #true and in_cover(V) and "
                             "exists I, J, K (I = 1 and J = n and I <= K and K <= J and V = K))", INT)
    assert L.alpha_equivalent(got, expected)


def test_completed_definition_uses_predicate_variables(exact_cover):
    io, _ = exact_cover
    got = completed_definition(covered, io)
    pmap = predicate_variable_map(io)
    assert pmap == {covered: L.PredicateVariable("Covered", 1)}
    assert L.predicate_variables(got) == {L.PredicateVariable("Covered", 1)}
    plain = completed_definition(covered, io, {})
    # the program variable I is object-sorted, written U here
    expected = parse_formula("forall V (covered(V) <-> exists U, X (exists Z (Z = U and in_cover(Z)) and "
                             "exists Z, Z1 (Z = X and Z1 = U and s(Z, Z1)) and V = X))")
    assert L.alpha_equivalent(plain, expected)


def test_constraint_representation_simplifies_to_the_short_form(exact_cover):
    io, _ = exact_cover
    rule = io.rules.rules[3]
    got = constraint_representation(rule, io, {})
    short = parse_formula("forall X, U not (s(X, U) and not covered(X))")
    assert L.alpha_equivalent(simplify(got), short)
    assert equivalent_bounded(got, short, BoundedUniverse(("a", "b"), 0, 2))


def test_comp_is_existential_over_private_symbols(exact_cover):
    io, _ = exact_cover
    sentence = comp(io)
    assert sentence.quantifier == "exists"
    assert sentence.predicate_vars == (L.PredicateVariable("Covered", 1),)
    assert len(L.conjuncts(sentence.matrix)) == 4
    assert not [p for p in L.predicate_symbols(sentence.matrix) if p == covered]


def test_universal_form_puts_private_definitions_first(exact_cover):
    io, _ = exact_cover
    sentence = universal_completion(io)
    assert sentence.quantifier == "forall"
    assert isinstance(sentence.matrix, L.Implies)
    hypothesis = sentence.matrix.left
    assert L.predicate_variables(hypothesis) == {L.PredicateVariable("Covered", 1)}
    assert len(L.conjuncts(sentence.matrix.right)) == 3


def test_listing_orders_private_public_constraints(exact_cover):
    io, _ = exact_cover
    listing = completion_listing(io)
    heads = [L.predicate_symbols(f)[0] for f in listing[:2]]
    assert heads == [covered, in_cover]
    assert len(listing) == 4
    assert not any(L.predicate_variables(f) for f in listing)


def test_floor_sqrt_definitions_match_hand_construction(floor_sqrt):
    io, _ = floor_sqrt
    p_def, q_def = completion_listing(io)
    expected_p = parse_formula(
        "forall V (p(V) <-> exists X ("
        "exists Z, Z1 (Z = X and exists I, J, K (I = 0 and J = n and I <= K and K <= J and Z1 = K) and Z = Z1)"
        " and exists Z, Z1 (exists I, J (Z = I * J and I = X and J = X) and Z1 = n and Z <= Z1)"
        " and V = X))", INT)
    expected_q = parse_formula(
        "forall V (q(V) <-> exists X (exists Z (Z = X and p(Z))"
        " and exists Z (exists I, J (Z = I + J and I = X and J = 1) and not p(Z)) and V = X))")
    assert L.alpha_equivalent(p_def, expected_p)
    assert L.alpha_equivalent(q_def, expected_q)


def test_declared_output_without_rules_is_defined_as_false():
    io = IOProgram(parse_program("p(1)."), {}, frozenset(), frozenset({PredicateSymbol("r", 0)}))
    sentence = comp(io)
    assert L.BOTTOM in [L.as_iff(c)[1] for c in L.conjuncts(sentence.matrix) if L.as_iff(c)]


def test_obligations_split_by_direction(exact_cover):
    io, spec = exact_cover
    obl = build_obligations(io, spec)
    assert len(obl.completion_hypotheses) == 1
    assert len(obl.public_completion) == 3
    assert obl.forward_goals() == list(spec.specs)
    assert obl.backward_goals() == list(obl.public_completion)
    assert obl.forward_premises()[-3:] == list(obl.public_completion)
    assert obl.backward_premises()[-3:] == list(spec.specs)


def test_obligations_include_lemmas_in_order(floor_sqrt):
    io, spec = floor_sqrt
    obl = build_obligations(io, spec)
    assert len(obl.lemmas_forward) == 7 and len(obl.lemmas_backward) == 6
    assert obl.forward_goals()[-1] == spec.specs[0]
    assert len(obl.axioms) == 1


def test_obligations_reject_non_tight_and_private_recursion():
    spec = parse_spec("output: q/0.")
    with pytest.raises(AnalysisError):
        build_obligations(spec.io_program(parse_program("q :- q.")), spec)
    with pytest.raises(AnalysisError):
        build_obligations(spec.io_program(parse_program("{p}. q :- p.")), spec)
    with pytest.raises(AnalysisError):
        universal_completion(spec.io_program(parse_program("p :- not r. r :- not p. q :- p.")))


def test_completion_parts_follow_private_dependencies():
    spec = parse_spec("output: q/0.")
    io = spec.io_program(parse_program("q :- b. b :- a. a."))
    parts = completion_parts(io, {})
    assert [L.predicate_symbols(f)[0].name for f in parts.hypotheses] == ["a", "b"]
