"""Running an external TPTP prover over the proof obligations.

Each direction is a chain of steps.  A step's conjecture is proven from
the presupposed formulas, and once proven it joins them for later steps.
Verdicts come from the prover's SZS status line.
"""
from __future__ import annotations

import os
import re
import shutil
import subprocess
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from . import logic as L
from .completion import ProofObligations
from .tptp import ProofTask, emit_task, label_groups, signature_of, standard_axiom_groups

PROVER_ENV = "TIGHTVERIFY_PROVER"
DEFAULT_TIME_LIMIT = 300.0
VERDICTS = ("proven", "timeout", "disproven", "error")
DIRECTIONS = ("forward", "backward")
RECOMMENDED_VAMPIRE_ARGS = ("--mode", "casc", "--cores", "8", "--time_limit", "{time_limit}")
# Arguments used when none are given, by executable name.
KNOWN_PROVERS = {
    "vampire": RECOMMENDED_VAMPIRE_ARGS,
    "z3": ("-tptp", "-T:{time_limit}"),
}
# Extra wall-clock seconds before the prover is killed, so that its own
# Timeout status is normally what gets reported.
KILL_GRACE = 5.0

_SZS = re.compile(r"SZS status\s+(\w+)")
_PROVEN = {"Theorem", "Unsatisfiable", "ContradictoryAxioms"}
_DISPROVEN = {"CounterSatisfiable", "Satisfiable", "CounterTheorem"}
_TIMEOUT = {"Timeout", "ResourceOut"}


@dataclass(frozen=True)
class ProverConfig:
    """``args`` go before the task file; ``{time_limit}`` in them is
    replaced by the limit in whole seconds."""
    path: str
    args: tuple[str, ...] = ()
    time_limit: float = DEFAULT_TIME_LIMIT
    parallel: int = 1

    def __post_init__(self) -> None:
        if not self.time_limit > 0:
            raise ValueError("time limit must be positive")
        if self.parallel < 1:
            raise ValueError("at least one parallel slot is needed")

    def command(self, task_file: str) -> list[str]:
        limit = str(max(1, int(self.time_limit)))
        return [self.path, *(a.replace("{time_limit}", limit) for a in self.args), task_file]


def default_prover_path() -> str | None:
    """The prover from the environment, else the first known prover on PATH."""
    path = os.environ.get(PROVER_ENV)
    if path:
        return path
    for name in KNOWN_PROVERS:
        found = shutil.which(name)
        if found:
            return found
    return None


def default_prover_args(path: str) -> tuple[str, ...]:
    return KNOWN_PROVERS.get(Path(path).name, ())


@dataclass(frozen=True)
class StepResult:
    step: str
    direction: str
    verdict: str
    seconds: float
    transcript: str = ""
    task_file: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    tight: bool
    private_recursion: bool
    steps: tuple[StepResult, ...]
    directions: tuple[str, ...] = DIRECTIONS
    expected_steps: int = 0
    emitted: tuple[str, ...] = ()

    @property
    def overall(self) -> str:
        """``verified`` when every step of every requested direction is
        proven, ``refuted-step`` when some step was disproven, otherwise
        ``incomplete``."""
        if any(s.verdict == "disproven" for s in self.steps):
            return "refuted-step"
        if len(self.steps) == self.expected_steps and all(s.verdict == "proven" for s in self.steps):
            return "verified" if self.tight and not self.private_recursion else "incomplete"
        return "incomplete"

    def to_json(self) -> dict:
        return {
            "tight": self.tight,
            "private_recursion": self.private_recursion,
            "directions": list(self.directions),
            "overall": self.overall,
            "steps": [{"step": s.step, "direction": s.direction, "verdict": s.verdict,
                       "seconds": round(s.seconds, 3), "task_file": s.task_file} for s in self.steps],
            "emitted": list(self.emitted),
        }


def classify(output: str) -> str:
    statuses = _SZS.findall(output)
    if not statuses:
        return "error"
    status = statuses[-1]
    if status in _PROVEN:
        return "proven"
    if status in _DISPROVEN:
        return "disproven"
    if status in _TIMEOUT:
        return "timeout"
    return "error"


def run_step(task: ProofTask, cfg: ProverConfig, *, direction: str = "forward",
             task_file: str | os.PathLike | None = None) -> StepResult:
    """Emit ``task``, run the prover on it and classify the outcome.  The
    task goes to ``task_file`` when given, otherwise to a temporary file."""
    text = emit_task(task)
    with tempfile.TemporaryDirectory(prefix="tightverify-") as tmp:
        path = Path(task_file) if task_file is not None else Path(tmp) / f"{task.name}.p"
        path.write_text(text)
        start = time.monotonic()
        try:
            done = subprocess.run(cfg.command(str(path)), stdout=subprocess.PIPE, stderr=subprocess.STDOUT,
                                  text=True, timeout=cfg.time_limit + KILL_GRACE)
        except subprocess.TimeoutExpired as exc:
            out = exc.stdout or ""
            out = out.decode(errors="replace") if isinstance(out, bytes) else out
            return StepResult(task.name, direction, "timeout", time.monotonic() - start, out,
                              str(path) if task_file is not None else None)
        except OSError as exc:
            return StepResult(task.name, direction, "error", time.monotonic() - start,
                              f"cannot run prover {cfg.path}: {exc}",
                              str(path) if task_file is not None else None)
        return StepResult(task.name, direction, classify(done.stdout), time.monotonic() - start,
                          done.stdout, str(path) if task_file is not None else None)


# --- step sequences ----------------------------------------------------------

@dataclass(frozen=True)
class Step:
    name: str
    group: str
    formula: L.Formula


@dataclass(frozen=True)
class Pass:
    """One direction: the presupposed formulas and the goals in order."""
    direction: str
    premises: tuple[tuple[str, L.Formula], ...]
    steps: tuple[Step, ...] = field(default=())

    def tasks(self) -> list[ProofTask]:
        """Every task of the pass, assuming all earlier steps were proven."""
        out, accumulated = [], list(self.premises)
        for step in self.steps:
            out.append(ProofTask(step.name, tuple(accumulated), (f"conjecture_{step.name}", step.formula)))
            accumulated.append((f"axiom_{step.name}", step.formula))
        return out


def build_passes(obl: ProofObligations, placeholders: Mapping[str, L.Sort] = {},
                 directions: Sequence[str] = DIRECTIONS) -> list[Pass]:
    everything = [f for group in (obl.axioms, obl.assumptions, obl.completion_hypotheses,
                                  obl.public_completion, obl.specs, obl.lemmas_forward,
                                  obl.lemmas_backward) for f in group]
    standard = standard_axiom_groups(signature_of(everything), placeholders, obl.axioms)
    shared = [*standard, *(("assumption", f) for f in obl.assumptions),
              *(("definition", f) for f in obl.completion_hypotheses)]
    passes = []
    if "forward" in directions:
        premises = label_groups([*shared, *(("completion", f) for f in obl.public_completion)])
        goals = [("lemma", f) for f in obl.lemmas_forward] + [("spec", f) for f in obl.specs]
        passes.append(Pass("forward", tuple(premises), _steps("forward", goals)))
    if "backward" in directions:
        premises = label_groups([*shared, *(("spec", f) for f in obl.specs)])
        goals = [("lemma", f) for f in obl.lemmas_backward] + [("completion", f) for f in obl.public_completion]
        passes.append(Pass("backward", tuple(premises), _steps("backward", goals)))
    return passes


def _steps(direction: str, goals) -> tuple[Step, ...]:
    width = max(3, len(str(len(goals))))
    return tuple(Step(f"{direction}_{k:0{width}d}_{group}", group, f) for k, (group, f) in enumerate(goals, 1))


def _run_pass(p: Pass, cfg: ProverConfig, keep_going: bool, emit_dir: Path | None) -> list[StepResult]:
    results = []
    for task in p.tasks():
        target = emit_dir / f"{task.name}.p" if emit_dir is not None else None
        result = run_step(task, cfg, direction=p.direction, task_file=target)
        results.append(result)
        if result.verdict != "proven" and not keep_going:
            break
    return results


def emit_passes(passes: Sequence[Pass], emit_dir: str | os.PathLike) -> list[str]:
    """Write every task file without running a prover."""
    root = Path(emit_dir)
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for p in passes:
        for task in p.tasks():
            path = root / f"{task.name}.p"
            path.write_text(emit_task(task))
            written.append(str(path))
    return written


def run_sequence(obl: ProofObligations, cfg: ProverConfig | None, *,
                 placeholders: Mapping[str, L.Sort] = {},
                 directions: Sequence[str] = DIRECTIONS,
                 keep_going: bool = False,
                 emit_dir: str | os.PathLike | None = None,
                 tight: bool = True, private_recursion: bool = False) -> VerificationReport:
    """Prove both directions step by step.  Without a prover configuration
    the tasks are only written to ``emit_dir``.  With two or more parallel
    slots the two directions run concurrently; results keep step order."""
    passes = build_passes(obl, placeholders, directions)
    expected = sum(len(p.steps) for p in passes)
    root = Path(emit_dir) if emit_dir is not None else None
    emitted: tuple[str, ...] = ()
    if root is not None:
        emitted = tuple(emit_passes(passes, root))
    if cfg is None:
        return VerificationReport(tight, private_recursion, (), tuple(directions), expected, emitted)
    if cfg.parallel > 1 and len(passes) > 1:
        with ThreadPoolExecutor(max_workers=len(passes)) as pool:
            futures = [pool.submit(_run_pass, p, cfg, keep_going, root) for p in passes]
            chunks = [f.result() for f in futures]
    else:
        chunks = [_run_pass(p, cfg, keep_going, root) for p in passes]
    steps = tuple(r for chunk in chunks for r in chunk)
    return VerificationReport(tight, private_recursion, steps, tuple(directions), expected, emitted)
