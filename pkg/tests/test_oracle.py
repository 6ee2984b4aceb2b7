from __future__ import annotations

import random

import pytest
from goldens import EXACT_COVER_INPUT, EXACT_COVER_IO_MODEL, EXACT_COVER_STABLE_MODEL, TWO_RULE_PROGRAM
from hypothesis import given, settings
from hypothesis import strategies as st

from tightverify import ground as G
from tightverify import logic as L
from tightverify import oracle as O
from tightverify.analysis import AnalysisError
from tightverify.completion import comp, universal_completion
from tightverify.generate import random_case
from tightverify.speclang import parse_formula, parse_spec
from tightverify.syntax import parse_program, parse_term

INT = {"n": L.Sort.INTEGER}


def exact_cover_input() -> O.Input:
    return O.Input({"n": 3}, {("s", args) for args in EXACT_COVER_INPUT["s"]})


@pytest.fixture
def exact_cover(data_dir):
    spec = parse_spec((data_dir / "exact_cover.spec").read_text())
    return spec.io_program(parse_program((data_dir / "exact_cover.lp").read_text())), spec


@pytest.fixture
def floor_sqrt(data_dir):
    spec = parse_spec((data_dir / "floor_sqrt.spec").read_text())
    return spec.io_program(parse_program((data_dir / "floor_sqrt.lp").read_text())), spec


def test_universe_layout():
    u = O.BoundedUniverse(("b", "a", "a"), -1, 1, include_inf=True, include_sup=True)
    assert u.objects == [O.INF, -1, 0, 1, "a", "b", O.SUP]
    assert u.domain(L.Sort.INTEGER) == [-1, 0, 1]
    assert u.contains("a") and not u.contains(2) and u.contains(O.SUP)
    with pytest.raises(ValueError):
        O.BoundedUniverse((), 2, 1)


@pytest.mark.parametrize("term, values", [
    ("1..3", {1, 2, 3}),
    ("3..1", set()),
    ("2 * 3", set()),
    ("4 / 2", {2}),
    ("5 \\ 2", {1}),
    ("1 / 0", set()),
    ("a + 1", set()),
    ("#sup", set()),
])
def test_term_values(term, values):
    assert O.term_values(parse_term(term), {}, O.BoundedUniverse(("a",), 0, 5)) == values


def test_division_guard_changes_small_quotients():
    u = O.BoundedUniverse((), 0, 5)
    assert O.term_values(parse_term("5 / 3"), {}, u, "quotient") == set()
    assert O.term_values(parse_term("5 / 3"), {}, u, "divisor") == {1}


def test_exact_cover_stable_model_and_io_model(exact_cover):
    io, _ = exact_cover
    inp = exact_cover_input()
    u = O.universe_for(io.rules, ["a", "b", "c"], 0, 4, placeholders=io.placeholders)
    assert O.stable_models(O.instantiate(io, inp), u) == [frozenset(EXACT_COVER_STABLE_MODEL)]
    assert O.io_models(io, inp, u) == [frozenset(EXACT_COVER_IO_MODEL)]
    assert O.format_model(EXACT_COVER_IO_MODEL).startswith("{in_cover(1), in_cover(3), s(a,1)")


def test_instantiate_checks_the_input(exact_cover):
    io, _ = exact_cover
    with pytest.raises(ValueError, match="no value"):
        O.instantiate(io, O.Input({}, set()))
    with pytest.raises(ValueError, match="numeral"):
        O.instantiate(io, O.Input({"n": "a"}, set()))
    with pytest.raises(ValueError, match="input symbol"):
        O.instantiate(io, O.Input({"n": 1}, {("in_cover", (1,))}))


def test_floor_sqrt_io_models(floor_sqrt):
    io, _ = floor_sqrt
    u = O.BoundedUniverse((), 0, 7)
    for n, root in [(0, 0), (3, 1), (5, 2)]:
        assert O.io_models(io, O.Input({"n": n}), u) == [frozenset({("q", (root,))})]


def test_tau_ground_of_a_rule():
    u = O.BoundedUniverse((), 0, 2)
    theory = O.tau_ground(parse_program("q(X + 1) :- p(X)."), u)
    assert [G.format_ground(f, O.format_atom) for f in theory] == ["(p(0) -> q(1))", "(p(1) -> q(2))"]
    (choice,) = O.tau_ground(parse_program("{p(1..2)}."), u)
    assert G.format_ground(choice, O.format_atom) == "((p(1) | ~p(1)) & (p(2) | ~p(2)))"


def test_stable_models_of_the_two_rule_program():
    program = parse_program(TWO_RULE_PROGRAM)
    u = O.BoundedUniverse((), 0, 4)
    models = O.stable_models(program, u)
    assert len(models) == 8
    assert frozenset({("p", (3,)), ("q", (4,))}) in models
    assert models == O.tau_star_stable_models(program, u)


def test_evaluation_in_a_standard_interpretation(exact_cover):
    _, spec = exact_cover
    u = O.BoundedUniverse(("a", "b", "c"), 0, 4)
    m = O.BoundedInterpretation(u, {"n": 3}, exact_cover_input().atoms | {("in_cover", (1,)), ("in_cover", (3,))})
    assert all(O.eval_formula(f, m) for f in spec.assumptions)
    assert all(O.eval_formula(f, m) for f in spec.specs)
    bad = O.BoundedInterpretation(u, {"n": 3}, m.atoms | {("in_cover", (2,))})
    assert not all(O.eval_formula(f, bad) for f in spec.specs)
    assert not O.eval_formula(parse_formula("n >= 0", INT), O.BoundedInterpretation(u, {"n": -1}))


def test_exact_arithmetic_leaves_the_universe():
    u = O.BoundedUniverse((), 0, 2)
    f = parse_formula("exists N (N = 2 + 2)")
    assert O.eval_formula(parse_formula("forall N (N + 1 != 0)"), O.BoundedInterpretation(u))
    assert not O.eval_formula(f, O.BoundedInterpretation(u))
    assert O.eval_formula(f, O.BoundedInterpretation(u), arithmetic="saturate")


def test_order_of_precomputed_terms():
    u = O.BoundedUniverse(("a", "b"), 0, 1, include_inf=True, include_sup=True)
    m = O.BoundedInterpretation(u)
    for text in ["#inf < 0", "1 < a", "a < b", "b < #sup", "forall X (X <= #sup)"]:
        assert O.eval_formula(parse_formula(text), m), text


@pytest.mark.parametrize("method", ["enumerate", "sat"])
def test_second_order_quantifiers(method):
    m = O.BoundedInterpretation(O.BoundedUniverse(("a",), 0, 1))
    P = L.PredicateVariable("P", 1)
    X = L.Var("X")
    empty = L.forall([X], L.iff(L.Atom(P, (X,)), L.BOTTOM))
    full = L.forall([X], L.Atom(P, (X,)))
    assert O.eval_second_order(L.SecondOrderSentence("exists", (P,), empty), m, method=method)
    assert not O.eval_second_order(L.SecondOrderSentence("forall", (P,), empty), m, method=method)
    assert O.eval_second_order(L.SecondOrderSentence("exists", (P,), L.And(empty, L.neg(full))), m,
                               method=method) is True


def test_relation_cap():
    m = O.BoundedInterpretation(O.BoundedUniverse(("a",), 0, 4))
    P = L.PredicateVariable("P", 2)
    s = L.SecondOrderSentence("exists", (P,), L.TOP)
    with pytest.raises(O.OracleLimitError):
        O.eval_second_order(s, m, method="enumerate")
    assert O.eval_second_order(s, m, method="sat")


def test_completion_is_false_on_a_violating_interpretation(exact_cover):
    io, _ = exact_cover
    inp = exact_cover_input()
    u = O.BoundedUniverse(("a", "b", "c"), 0, 4)
    sentence = comp(io)
    good = O.interpretation(io, inp, u, inp.atoms | {("in_cover", (1,)), ("in_cover", (3,))})
    bad = O.interpretation(io, inp, u, inp.atoms | {("in_cover", (1,)), ("in_cover", (2,))})
    for method in ("enumerate", "sat"):
        assert O.eval_second_order(sentence, good, method=method)
        assert not O.eval_second_order(sentence, bad, method=method)
    assert O.universal_and_existential_agree(io, good, method="sat")


def test_completion_models_of_floor_sqrt(floor_sqrt):
    io, _ = floor_sqrt
    u = O.BoundedUniverse((), 0, 5)
    found = O.completion_models(io, O.Input({"n": 5}), u, method="sat")
    assert found == [frozenset({("q", (2,))})]


def test_private_choice_has_an_existential_completion_only():
    spec = parse_spec("output: q/0.")
    io = spec.io_program(parse_program("{a}.\nq :- a."))
    m = O.BoundedInterpretation(O.BoundedUniverse((), 0, 0), {}, {("q", ())})
    assert O.eval_second_order(comp(io), m)
    with pytest.raises(AnalysisError):
        universal_completion(io)


def test_equivalence_needs_first_order_sentences():
    P = L.PredicateVariable("P", 0)
    s = L.SecondOrderSentence("exists", (P,), L.Atom(P, ()))
    with pytest.raises(ValueError):
        O.equivalent_bounded(s, L.TOP, O.BoundedUniverse())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_stable_models_match_the_first_order_image(seed):
    case = random_case(random.Random(seed))
    program = O.instantiate(case.io, case.input)
    assert O.stable_models(program, case.universe) == O.tau_star_stable_models(program, case.universe)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_second_order_methods_agree(seed):
    case = random_case(random.Random(seed))
    sentence = comp(case.io)
    rng = random.Random(seed)
    outputs = O.output_atoms(case.io, case.universe)
    atoms = case.input.atoms | {a for a in outputs if rng.random() < 0.5}
    m = O.interpretation(case.io, case.input, case.universe, atoms)
    try:
        by_enumeration = O.eval_second_order(sentence, m, method="enumerate")
    except O.OracleLimitError:
        return
    assert by_enumeration == O.eval_second_order(sentence, m, method="sat")
