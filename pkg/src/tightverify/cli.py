"""Command-line entry point: ``verify``, ``complete``, ``analyze`` and ``oracle``.

Exit codes: 0 success, 1 verification incomplete or refuted, 2 usage or
parse error, 3 the program was rejected by the analysis.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Sequence

from . import logic as L
from . import oracle as O
from .analysis import AnalysisError, analyze, to_dot
from .completion import build_obligations, comp, completion_listing
from .ioprogram import IOProgram, IOProgramError
from .prover import DIRECTIONS, PROVER_ENV, ProverConfig, default_prover_args, default_prover_path, run_sequence
from .simplify import normalize_names, simplify
from .speclang import Specification, parse_spec
from .syntax import BasicHead, ParseError, Program, parse_program, parse_term, program_numerals

EXIT_OK, EXIT_INCOMPLETE, EXIT_USAGE, EXIT_REJECTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --- loading -----------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_program(path: str) -> Program:
    return parse_program(_read(path), source=path)


def load_spec(paths: Sequence[str]) -> Specification | None:
    spec = None
    for path in paths:
        spec = parse_spec(_read(path), source=path, base=spec)
    return spec


def load_io(program_path: str, spec_paths: Sequence[str]) -> tuple[IOProgram, Specification | None]:
    program = load_program(program_path)
    spec = load_spec(spec_paths)
    io = spec.io_program(program) if spec is not None else IOProgram.from_program(program)
    return io, spec


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        bounds = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None
    if bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError("empty integer range")
    return bounds


def parse_let(text: str) -> tuple[str, object]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        term = parse_term(value.strip())
        return name.strip(), O.value_of_term(term)
    except (ParseError, ValueError):
        raise argparse.ArgumentTypeError(f"{value!r} is not a precomputed term") from None


def parse_facts(text: str, source: str = "--input") -> frozenset:
    atoms = set()
    for rule in parse_program(text, source=source):
        if not isinstance(rule.head, BasicHead) or rule.body:
            raise UsageError(f"{source}: only facts are allowed")
        atom = rule.head.atom
        try:
            atoms.add((atom.predicate, tuple(O.value_of_term(t) for t in atom.args)))
        except ValueError:
            raise UsageError(f"{source}: fact arguments must be precomputed terms") from None
    return frozenset(atoms)


# --- output helpers ----------------------------------------------------------

def completion_lines(io: IOProgram, *, simplified: bool = True, division_guard: str = "quotient") -> list[str]:
    out = []
    for f in completion_listing(io, division_guard=division_guard):
        if simplified:
            f = normalize_names(simplify(f))
        out.append(L.format_formula(f))
    return out


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


# --- commands ----------------------------------------------------------------

def cmd_complete(args) -> int:
    io, _ = load_io(args.program, args.spec)
    lines = completion_lines(io, simplified=not args.no_simplify, division_guard=args.division_guard)
    _emit(args, {"completion": lines}, lines)
    return EXIT_OK


def cmd_analyze(args) -> int:
    io, _ = load_io(args.program, args.spec)
    report = analyze(io)
    if args.dot:
        print(to_dot(report.graph, io), end="")
        return EXIT_OK
    payload = {
        "tight": report.tight,
        "private_recursion": report.private_recursion,
        "positive_cycle": [str(p) for p in report.positive_cycle or ()],
        "private_cycle": [str(p) for p in report.private_cycle or ()],
        "private_choice": [str(p) for p in report.private_choice],
        "private": [str(p) for p in io.private],
    }
    lines = [f"tight: {'yes' if report.tight else 'no'}",
             f"private recursion: {'yes' if report.private_recursion else 'no'}"]
    lines += report.diagnostics()
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    io, spec = load_io(args.program, args.spec)
    report = analyze(io)
    if not report.tight or report.private_recursion:
        for line in report.diagnostics():
            print(f"{args.program}: {line}", file=sys.stderr)
        return EXIT_REJECTED
    simplified = not args.no_simplify
    lines = completion_lines(io, simplified=simplified, division_guard=args.division_guard)
    obligations = build_obligations(io, spec, division_guard=args.division_guard)
    if simplified:
        obligations = dataclasses.replace(
            obligations,
            completion_hypotheses=tuple(simplify(f) for f in obligations.completion_hypotheses),
            public_completion=tuple(simplify(f) for f in obligations.public_completion))
    directions = DIRECTIONS if args.direction == "both" else (args.direction,)
    path = args.prover_path or default_prover_path()
    cfg = None
    if path is not None:
        prover_args = tuple(args.prover_arg) if args.prover_arg else default_prover_args(path)
        cfg = ProverConfig(path, prover_args, args.time_limit, args.parallel)
    elif args.emit_tptp is None:
        raise UsageError(f"no prover found; pass --prover-path, set {PROVER_ENV}, or use --emit-tptp")
    result = run_sequence(obligations, cfg, placeholders=io.placeholders, directions=directions,
                          keep_going=args.keep_going, emit_dir=args.emit_tptp,
                          tight=report.tight, private_recursion=report.private_recursion)
    payload = {"completion": lines, **result.to_json()}
    text = ["completion:", *(f"  {line}" for line in lines)]
    if cfg is None:
        text.append(f"emitted {len(result.emitted)} task files to {args.emit_tptp}")
        _emit(args, payload, text)
        return EXIT_OK
    text.append("steps (verdict, step, seconds):")
    text += [f"  {s.verdict:<9} {s.step:<28} [{s.seconds:8.3f}]" for s in result.steps]
    skipped = result.expected_steps - len(result.steps)
    if skipped:
        text.append(f"  {skipped} step(s) not attempted")
    text.append(f"overall: {result.overall}")
    _emit(args, payload, text)
    return EXIT_OK if result.overall == "verified" else EXIT_INCOMPLETE


def _default_range(io: IOProgram, inp: O.Input) -> tuple[int, int]:
    nums = list(program_numerals(io.rules))
    nums += [v for v in inp.valuation.values() if isinstance(v, int)]
    nums += [a for _, args in inp.atoms for a in args if isinstance(a, int)]
    return min([0, *nums]), max([0, *nums]) + 2


def cmd_oracle(args) -> int:
    io, _ = load_io(args.program, args.spec)
    atoms = frozenset()
    if args.input:
        atoms |= parse_facts(args.input)
    if args.input_file:
        atoms |= parse_facts(_read(args.input_file), args.input_file)
    inp = O.Input(dict(args.let), atoms)
    lo, hi = args.int_range or _default_range(io, inp)
    values = [v for v in inp.valuation.values() if isinstance(v, str)]
    values += [a for _, a_args in atoms for a in a_args if isinstance(a, str)]
    universe = O.universe_for(io.rules, values, lo, hi, placeholders=io.placeholders)
    try:
        program = O.instantiate(io, inp)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    stable = O.stable_models(program, universe, division_guard=args.division_guard)
    models = O.io_models(io, inp, universe, division_guard=args.division_guard)
    report = analyze(io)
    sentence = comp(io, division_guard=args.division_guard)
    checks = {"theorem1": all(O.eval_second_order(sentence, O.interpretation(io, inp, universe, m), method="sat")
                              for m in models)}
    if report.tight:
        found = O.completion_models(io, inp, universe, sentence=sentence, method="sat",
                                    division_guard=args.division_guard)
        checks["theorem2"] = set(found) == set(models)
    if not report.private_recursion:
        checks["theorem3"] = all(O.universal_and_existential_agree(io, O.interpretation(io, inp, universe, m),
                                                                   method="sat") for m in models)
    payload = {
        "universe": {"constants": list(universe.constants), "lo": lo, "hi": hi},
        "stable_models": [sorted(O.format_atom(a) for a in m) for m in stable],
        "io_models": [sorted(O.format_atom(a) for a in m) for m in models],
        "checks": checks,
    }
    lines = [f"universe: constants {{{', '.join(universe.constants)}}}, integers {lo}..{hi}"]
    lines.append(f"stable models: {len(stable)}")
    lines += [f"  {O.format_model(m)}" for m in stable]
    lines.append(f"io-models: {len(models)}")
    lines += [f"  {O.format_model(m)}" for m in models]
    lines += [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in checks.items()]
    _emit(args, payload, lines)
    return EXIT_OK if all(checks.values()) else EXIT_INCOMPLETE


# --- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tightverify",
                                     description="Verify tight answer set programs against first-order specifications.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec_required: bool) -> None:
        p.add_argument("program", help="logic program file")
        p.add_argument("spec", nargs="+" if spec_required else "*",
                       help="specification files; later files extend earlier ones")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--division-guard", choices=("quotient", "divisor"), default="quotient",
                       help="remainder bound used for / and \\")

    p = sub.add_parser("verify", help="prove that the program implements the specification")
    common(p, True)
    p.add_argument("--prover-path", help=f"prover executable (default: ${PROVER_ENV} or a prover on PATH)")
    p.add_argument("--prover-arg", action="append", default=[],
                   help="prover argument, repeatable; {time_limit} is substituted (default: known flags for vampire and z3)")
    p.add_argument("--time-limit", type=float, default=300.0, help="seconds per proof step")
    p.add_argument("--parallel", type=int, default=1, help="run both directions at once when 2 or more")
    p.add_argument("--direction", choices=("forward", "backward", "both"), default="both")
    p.add_argument("--emit-tptp", metavar="DIR", help="write every proof task to DIR")
    p.add_argument("--keep-going", action="store_true", help="continue after a failed step")
    p.add_argument("--no-simplify", action="store_true", help="use the completion as constructed")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("complete", help="print the completion")
    common(p, False)
    p.add_argument("--no-simplify", action="store_true")
    p.set_defaults(run=cmd_complete)

    p = sub.add_parser("analyze", help="tightness and private recursion")
    common(p, False)
    p.add_argument("--dot", action="store_true", help="print the dependency graph in Graphviz format")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("oracle", help="stable models, io-models and bounded theorem checks")
    common(p, False)
    p.add_argument("--let", type=parse_let, action="append", default=[], metavar="NAME=VALUE",
                   help="placeholder value, repeatable")
    p.add_argument("--input", help="input facts, as in 's(a,1). s(b,1).'")
    p.add_argument("--input-file", help="file of input facts")
    p.add_argument("--int-range", type=parse_range, metavar="LO..HI", help="integers of the bounded universe")
    p.set_defaults(run=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args)
    except (ParseError, IOProgramError, UsageError, O.OracleLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REJECTED


if __name__ == "__main__":
    sys.exit(main())
