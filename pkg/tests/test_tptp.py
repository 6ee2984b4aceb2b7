from __future__ import annotations

import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from randomformulas import random_formula

from tightverify import logic as L
from tightverify.oracle import BoundedInterpretation, BoundedUniverse, eval_formula
from tightverify.speclang import parse_formula
from tightverify.tptp import (
    ProofTask,
    Signature,
    TptpError,
    emit_task,
    label_groups,
    predicate_name,
    signature_of,
    standard_axiom_groups,
)
from tightverify.syntax import PredicateSymbol

INT = {"n": L.Sort.INTEGER}


def task(*axioms: str, goal: str = "#true", placeholders=INT) -> str:
    labelled = tuple((f"axiom_{k}", parse_formula(a, placeholders)) for k, a in enumerate(axioms, 1))
    return emit_task(ProofTask("t", labelled, ("goal", parse_formula(goal, placeholders))))


def statements(text: str) -> list[str]:
    return [line for line in text.splitlines() if line.startswith("tff(")]


def test_layout_and_declarations():
    text = task("s(a, n)", goal="exists X s(X, 1)")
    lines = text.splitlines()
    assert lines[0] == "% t"
    kinds = [re.match(r"tff\([^,]+, (\w+),", s).group(1) for s in statements(text)]
    assert kinds == ["type"] * 6 + ["axiom", "conjecture"]
    assert "tff(type_constant_2, type, c_n: $int)." in lines
    assert "tff(type_constant_1, type, c_a: object)." in lines
    assert "p_s_2(c_a, integer_object(c_n))" in text
    names = [re.match(r"tff\(([^,]+),", s).group(1) for s in statements(text)]
    assert len(names) == len(set(names))


def test_comparisons_by_sort():
    text = task("forall N (N < n)", "forall X (X <= a)", "forall X (X > 1)")
    assert "$less(N, c_n)" in text
    assert "(object_less(X, c_a) | X = c_a)" in text
    assert "object_less(integer_object(1), X)" in text


def test_arithmetic_and_connectives():
    text = task(goal="forall N (p(N * N + 1) <-> not p(N - 1))")
    assert "p_p_1(integer_object($sum($product(N, N), 1)))" in text
    assert "<=> ~ (p_p_1(integer_object($difference(N, 1))))" in text


def test_shadowed_variables_get_distinct_names():
    text = task(goal="forall X (p(X) -> exists X q(X))")
    assert "![X: object]" in text and "?[X_1: object]" in text


def test_extremes_and_quoted_names():
    text = task("p(#inf) and p(#sup)")
    assert "p_p_1(c_inf)" in text and "c_sup: object" in text
    assert predicate_name(PredicateSymbol("inCover", 1)) == "p_inCover_1"
    assert predicate_name(PredicateSymbol("_p", 1)) == "p__p_1"


def test_rejects_open_formulas_and_predicate_variables():
    with pytest.raises(TptpError, match="not closed"):
        emit_task(ProofTask("t", (), ("goal", parse_formula("p(X)"))))
    P = L.PredicateVariable("P", 0)
    with pytest.raises(TptpError, match="predicate variables"):
        emit_task(ProofTask("t", (), ("goal", L.Atom(P, ()))))


def test_constant_with_two_sorts_is_rejected():
    with pytest.raises(TptpError, match="two sorts"):
        emit_task(ProofTask("t", (("a1", L.Atom(PredicateSymbol("p", 1), (L.sym("n"),))),),
                            ("goal", parse_formula("n > 0", INT))))


def test_standard_axioms_skip_placeholders():
    sig = signature_of([parse_formula("p(a) and p(b) and p(n) and p(#sup)", INT)])
    assert sig == Signature(("a", "b", "n"), (PredicateSymbol("p", 1),), False, True)
    groups = standard_axiom_groups(sig, INT)
    distinct = [f for g, f in groups if g == "distinct"]
    assert distinct == [L.Compare("!=", L.sym("a"), L.sym("b"))]
    assert all(c.value.name != "n" for _, f in groups for c in L.constants(f) if hasattr(c.value, "name"))
    labels = [label for label, _ in label_groups(groups)]
    assert labels[:2] == ["axiom_embedding_1", "axiom_embedding_2"]
    assert "axiom_layer_4" in labels and "axiom_layer_5" not in labels


def test_standard_axioms_hold_in_the_standard_interpretation():
    sig = Signature(("a", "b", "c"), (), True, True)
    u = BoundedUniverse(("a", "b", "c"), -2, 2, include_inf=True, include_sup=True)
    for group, f in standard_axiom_groups(sig):
        assert eval_formula(f, BoundedInterpretation(u)), group


@settings(max_examples=100)
@given(st.integers(0, 10 ** 9))
def test_emitted_text_is_well_formed(seed):
    f = random_formula(random.Random(seed), depth=3, placeholder=True)
    text = emit_task(ProofTask("t", (), ("goal", f)))
    for line in statements(text):
        assert line.endswith(").")
        depth = 0
        for ch in line:
            depth += {"(": 1, ")": -1}.get(ch, 0)
            assert depth >= 0
        assert depth == 0
    declared = set(re.findall(r"type, (\w+):", text))
    goal = statements(text)[-1]
    for name in re.findall(r"\b([pc]_\w+)", goal):
        assert name in declared
