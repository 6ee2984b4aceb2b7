"""Acceptance criteria, one test each.

A summary line per criterion is printed at the end of the run (see
conftest.py); run ``pytest tests/test_acceptance.py -v`` to see only these.
"""
from __future__ import annotations

import random
import time

import pytest
from analysiscases import CASES
from goldens import (
    EXACT_COVER_COMPLETION,
    EXACT_COVER_INPUT,
    EXACT_COVER_IO_MODEL,
    EXACT_COVER_STABLE_MODEL,
    PLACEHOLDER_N,
    TWO_RULE_PROGRAM,
    TWO_RULE_TAU_STAR,
)
from randomformulas import random_formula, random_universe

from tightverify import logic as L
from tightverify import oracle as O
from tightverify.analysis import is_tight, uses_private_recursion
from tightverify.cli import EXIT_OK, main
from tightverify.completion import comp, completion_listing
from tightverify.generate import tight_corpus
from tightverify.prover import default_prover_path
from tightverify.simplify import simplify
from tightverify.speclang import parse_formula, parse_spec
from tightverify.syntax import parse_program
from tightverify.translate import tau_star

CORPUS_SEED, CORPUS_SIZE = 2024, 60
INTERPRETATIONS_PER_PROGRAM = 20
NON_TIGHT_PROGRAMS = [
    ("p :- p.\nq :- not p.", "output: p/0, q/0."),
    ("p(X) :- q(X).\nq(X) :- p(X).\nq(1).\n{p(2)}.", "output: p/1, q/1."),
    ("a :- b.\nb :- a.\n{b}.\nq :- a.", "output: q/0."),
    ("p(X) :- p(X), s(X).\np(X) :- s(X), not r(X).", "input: s/1, r/1.\noutput: p/1."),
]
NON_TIGHT_INPUTS = [set(), set(), set(), {("s", (1,)), ("s", (2,)), ("r", (2,))}]

_io_models_seen: list[tuple] = []


def criterion(record_property, key: str, detail: str = "") -> None:
    record_property("criterion", key)
    if detail:
        record_property("detail", detail)


def exact_cover(data_dir):
    spec = parse_spec((data_dir / "exact_cover.spec").read_text())
    return spec.io_program(parse_program((data_dir / "exact_cover.lp").read_text()))


def exact_cover_input() -> O.Input:
    return O.Input({"n": 3}, {("s", args) for args in EXACT_COVER_INPUT["s"]})


def corpus():
    return tight_corpus(CORPUS_SEED, CORPUS_SIZE)


def test_criterion_1_completion_reproduction(record_property, data_dir, capsys):
    start = time.monotonic()
    code = main(["complete", str(data_dir / "exact_cover.lp"), str(data_dir / "exact_cover.spec")])
    printed = capsys.readouterr().out.splitlines()
    assert code == EXIT_OK and len(printed) == 4
    io = exact_cover(data_dir)
    u = O.BoundedUniverse(("a", "b", "c"), -1, 5)
    for line, expected, raw in zip(printed, EXACT_COVER_COMPLETION, completion_listing(io), strict=True):
        got = parse_formula(line, PLACEHOLDER_N)
        assert L.alpha_equivalent(got, parse_formula(expected, PLACEHOLDER_N), match_sorts=False), line
        assert O.equivalent_bounded(got, raw, u), line
    elapsed = time.monotonic() - start
    criterion(record_property, "1 completion reproduction", f"{elapsed:.2f} s, limit 5 s")
    assert elapsed < 5


def test_criterion_2_tau_star_golden(record_property):
    start = time.monotonic()
    got = tau_star(parse_program(TWO_RULE_PROGRAM))
    expected = [parse_formula(text) for text in TWO_RULE_TAU_STAR]
    assert len(got) == len(expected)
    assert all(L.alpha_equivalent(g, e) for g, e in zip(got, expected))
    elapsed = time.monotonic() - start
    criterion(record_property, "2 first-order image golden", f"{elapsed:.3f} s, limit 1 s")
    assert elapsed < 1


def test_criterion_3_exact_cover_oracle(record_property, data_dir):
    start = time.monotonic()
    io = exact_cover(data_dir)
    inp = exact_cover_input()
    u = O.universe_for(io.rules, ["a", "b", "c"], 0, 4, placeholders=io.placeholders)
    stable = O.stable_models(O.instantiate(io, inp), u)
    models = O.io_models(io, inp, u)
    assert stable == [frozenset(EXACT_COVER_STABLE_MODEL)]
    assert models == [frozenset(EXACT_COVER_IO_MODEL)]
    _io_models_seen.extend((io, inp, u, m) for m in models)
    elapsed = time.monotonic() - start
    criterion(record_property, "3 exact cover io-model", f"{elapsed:.2f} s, limit 30 s")
    assert elapsed < 30


def test_criterion_4_completion_characterizes_io_models(record_property, data_dir):
    start = time.monotonic()
    io = exact_cover(data_dir)
    inp = exact_cover_input()
    u = O.universe_for(io.rules, ["a", "b", "c"], 0, 4, placeholders=io.placeholders)
    cases = [(io, inp, u)] + [(c.io, c.input, c.universe) for c in corpus()]
    assert len(cases) >= 51
    discrepancies = []
    for case_io, case_input, case_universe in cases:
        assert is_tight(case_io) and not uses_private_recursion(case_io)
        models = O.io_models(case_io, case_input, case_universe)
        found = O.completion_models(case_io, case_input, case_universe, method="sat")
        _io_models_seen.extend((case_io, case_input, case_universe, m) for m in models)
        if set(models) != set(found):
            discrepancies.append(case_io.rules)
    elapsed = time.monotonic() - start
    criterion(record_property, "4 tight programs: io-models equal completion models",
              f"{len(cases)} programs, {len(discrepancies)} discrepancies, {elapsed:.1f} s")
    assert not discrepancies
    assert elapsed < 600


def _sample_interpretations(case, rng: random.Random, k: int):
    public = case.universe.atoms(sorted(case.io.public))
    for _ in range(k):
        valuation = {name: rng.choice(list(case.universe.integers)) for name in case.io.placeholders}
        yield O.BoundedInterpretation(case.universe, valuation, {a for a in public if rng.random() < 0.4})


def test_criterion_5_universal_and_existential_completion_agree(record_property):
    start = time.monotonic()
    rng = random.Random(CORPUS_SEED)
    checked, discrepancies = 0, 0
    for case in corpus():
        for m in _sample_interpretations(case, rng, INTERPRETATIONS_PER_PROGRAM):
            checked += 1
            if not O.universal_and_existential_agree(case.io, m, method="sat"):
                discrepancies += 1
    elapsed = time.monotonic() - start
    criterion(record_property, "5 universal and existential completion agree",
              f"{checked} interpretations, {discrepancies} discrepancies, {elapsed:.1f} s")
    assert checked >= CORPUS_SIZE * INTERPRETATIONS_PER_PROGRAM
    assert discrepancies == 0
    assert elapsed < 600


def test_criterion_6_analysis_verdicts(record_property):
    correct = 0
    for _, program, spec, tight, private in CASES:
        io = parse_spec(spec).io_program(parse_program(program))
        correct += is_tight(io) == tight and uses_private_recursion(io) == private
    criterion(record_property, "6 analysis verdicts", f"{correct}/{len(CASES)}")
    assert len(CASES) == 12 and correct == 12


def test_criterion_7_simplifier_soundness(record_property):
    start = time.monotonic()
    rng = random.Random(7)
    failures = 0
    for _ in range(500):
        f = random_formula(rng, depth=3, placeholder=rng.random() < 0.3)
        s = simplify(f)
        if simplify(s) != s:
            failures += 1
            continue
        failures += not all(O.equivalent_bounded(f, s, random_universe(rng)) for _ in range(3))
    elapsed = time.monotonic() - start
    criterion(record_property, "7 simplifier soundness", f"500 formulas x 3 universes, {failures} failures, "
                                                         f"{elapsed:.1f} s")
    assert failures == 0
    assert elapsed < 300


def _require_prover(record_property, key: str) -> str:
    path = default_prover_path()
    if path is None:
        criterion(record_property, key)
        pytest.skip("no TPTP prover installed; set TIGHTVERIFY_PROVER or put one on PATH")
    return path


def test_criterion_8_exact_cover_verification(record_property, data_dir, capsys):
    key = "8 exact cover verification"
    path = _require_prover(record_property, key)
    start = time.monotonic()
    code = main(["verify", str(data_dir / "exact_cover.lp"), str(data_dir / "exact_cover.spec"),
                 "--prover-path", path])
    out = capsys.readouterr().out
    criterion(record_property, key, f"{time.monotonic() - start:.1f} s")
    assert code == EXIT_OK and "overall: verified" in out


def test_criterion_9_floor_sqrt_verification(record_property, data_dir, capsys, tmp_path):
    key = "9 floor square root verification"
    path = _require_prover(record_property, key)
    program, spec = str(data_dir / "floor_sqrt.lp"), str(data_dir / "floor_sqrt.spec")
    lemmas = data_dir / "floor_sqrt.lemmas.spec"
    code = main(["verify", program, spec, str(lemmas), "--prover-path", path])
    assert code == EXIT_OK and "overall: verified" in capsys.readouterr().out
    text = lemmas.read_text()
    without_axiom = tmp_path / "lemmas.spec"
    without_axiom.write_text(text[text.index("lemma"):])
    code = main(["verify", program, spec, str(without_axiom), "--prover-path", path, "--direction", "forward"])
    out = capsys.readouterr().out
    criterion(record_property, key, "forward direction without the axiom: " + out.splitlines()[-1])
    assert code != EXIT_OK and "overall: verified" not in out


def test_criterion_10_io_models_satisfy_the_completion(record_property, data_dir):
    seen = list(_io_models_seen)
    if not seen:
        io = exact_cover(data_dir)
        u = O.universe_for(io.rules, ["a", "b", "c"], 0, 4, placeholders=io.placeholders)
        seen = [(io, exact_cover_input(), u, m) for m in O.io_models(io, exact_cover_input(), u)]
        for case in corpus():
            seen += [(case.io, case.input, case.universe, m) for m in O.io_models(case.io, case.input, case.universe)]
    non_tight = 0
    for (program, spec), atoms in zip(NON_TIGHT_PROGRAMS, NON_TIGHT_INPUTS, strict=True):
        io = parse_spec(spec).io_program(parse_program(program))
        assert not is_tight(io)
        inp = O.Input({}, atoms)
        u = O.universe_for(io.rules, lo=0, hi=3)
        models = O.io_models(io, inp, u)
        non_tight += len(models)
        seen += [(io, inp, u, m) for m in models]
    failures = sum(not O.eval_second_order(comp(io), O.interpretation(io, inp, u, m), method="sat")
                   for io, inp, u, m in seen)
    criterion(record_property, "10 io-models satisfy the completion",
              f"{len(seen)} io-models ({non_tight} from non-tight programs), {failures} failures")
    assert non_tight > 0
    assert failures == 0
