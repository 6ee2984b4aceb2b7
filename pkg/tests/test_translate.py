from __future__ import annotations

import pytest

from tightverify import logic as L
from tightverify.speclang import parse_formula
from tightverify.syntax import parse_program, parse_rule, parse_term
from tightverify.translate import FreshNames, tau_b, tau_star, val

Z = L.Var("Z")


def f(text: str) -> L.Formula:
    return parse_formula(text)


def test_val_of_interval():
    assert L.alpha_equivalent(val(parse_term("1..3"), Z),
                              f("exists I, J, K (I = 1 and J = 3 and I <= K and K <= J and Z = K)"))


def test_val_of_sum():
    assert L.alpha_equivalent(val(parse_term("X + 1"), Z), f("exists I, J (Z = I + J and I = X and J = 1)"))


def test_val_of_precomputed_terms_and_variables():
    assert val(parse_term("a"), Z) == f("Z = a")
    assert val(parse_term("#inf"), Z) == L.Compare("=", Z, L.INF)
    assert val(parse_term("X"), Z) == f("Z = X")


@pytest.mark.parametrize("op, result", [("/", "Z = K"), ("\\", "Z = M")])
def test_val_of_division_and_remainder(op, result):
    got = val(parse_term(f"X {op} 2"), Z)
    expected = f("exists I, J, K, M (I = J * K + M and I = X and J = 2 and J != 0 and M >= 0 "
                 f"and M < K and {result})")
    assert L.alpha_equivalent(got, expected)


def test_divisor_guard_variant():
    got = val(parse_term("X / 2"), Z, division_guard="divisor")
    expected = f("exists I, J, K, M (I = J * K + M and I = X and J = 2 and J != 0 and M >= 0 "
                 "and (M < J or M < 0 - J) and Z = K)")
    assert L.alpha_equivalent(got, expected)


def test_tau_b_of_literals_and_comparisons():
    rule = parse_rule(":- p(X + 1), not q(X), not not r, X < 2.")
    pos, neg1, neg2, cmp = (tau_b(item) for item in rule.body)
    assert L.alpha_equivalent(pos, f("exists Z (exists I, J (Z = I + J and I = X and J = 1) and p(Z))"))
    assert L.alpha_equivalent(neg1, f("exists Z (Z = X and not q(Z))"))
    assert neg2 == f("not not r")
    assert L.alpha_equivalent(cmp, f("exists Z, Z1 (Z = X and Z1 = 2 and Z < Z1)"))


def test_tau_star_of_the_two_rule_example():
    program = parse_program("{p(1..3)}.\nq(X + 1) :- p(X).")
    choice, rule = tau_star(program)
    assert L.alpha_equivalent(choice, L.Implies(L.TOP, f(
        "forall Z (exists I, J, K (I = 1 and J = 3 and I <= K and K <= J and Z = K) -> p(Z) or not p(Z))")))
    assert L.alpha_equivalent(rule, f(
        "forall X (exists Z (Z = X and p(Z)) -> forall Z (exists I, J (Z = I + J and I = X and J = 1) -> q(Z)))"))


def test_tau_star_of_a_constraint_has_a_false_head():
    (sentence,) = tau_star(parse_program(":- p(X)."))
    assert L.alpha_equivalent(sentence, f("forall X (exists Z (Z = X and p(Z)) -> #false)"))


def test_fresh_names_avoid_rule_variables():
    fresh = FreshNames({"Z", "I"})
    assert fresh.object().name == "Z1"
    assert fresh.integer().name == "I1"
    assert fresh.name("Q") == "Q"
