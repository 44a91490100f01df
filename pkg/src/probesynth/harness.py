"""Benchmark runner, run records, suite reports and result files."""
from __future__ import annotations

import csv
import json
import logging
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .dsl import Example, Program, eval_program, values_equal
from .enumerator import HeightSearch, SearchState, search
from .grammar import Grammar, all_ones_cost_model
from .learner import Probe, ProbeConfig, SelectionScheme
from .sexpr import ParseError
from .sygus import (Cegis, Pbe, UnsupportedConstruct, default_verifier, extract_examples,
                    parse_sygus_file)

logger = logging.getLogger(__name__)

MODES = ("height", "size", "probe")
FIELDS = ("benchmark", "mode", "scheme", "solved", "wall_time_s", "levels", "candidates",
          "solution_size", "ite_count", "solution")
DEFAULT_TIMEOUT = 60.0
# enough levels that a search only stops on its budget
_UNBOUNDED = 1 << 20


@dataclass
class RunRecord:
    benchmark: str
    mode: str
    scheme: str
    solved: bool
    wall_time_s: float
    levels: int
    candidates: int
    solution_size: int | None = None
    ite_count: int | None = None
    solution: str | None = None
    # not written to result files
    error: str | None = field(default=None, compare=False)
    n_examples: int = field(default=0, compare=False)

    def row(self) -> dict[str, Any]:
        return {k: getattr(self, k) for k in FIELDS}


@dataclass
class Outcome:
    program: Program | None
    candidates: int
    levels: int


def count_ite(p: Program) -> int:
    return sum(1 for prod in p.trace() if prod.name == "ite")


def eval_holdout(p: Program, examples: Sequence[Example]) -> float:
    """Fraction of ``examples`` on which ``p`` produces the expected output."""
    if not examples:
        return 1.0
    hits = sum(values_equal(eval_program(p, e.inputs), e.output) for e in examples)
    return hits / len(examples)


def _synthesizer(mode: str, scheme: SelectionScheme, lim_factor: int):
    """A ``synth(grammar, spec, max_candidates, deadline) -> Outcome`` for ``mode``."""
    if mode == "probe":
        def synth(g: Grammar, spec: Any, max_candidates: int | None, deadline: float | None):
            cfg = ProbeConfig(lim_factor=lim_factor, scheme=scheme, max_candidates=max_candidates)
            return Probe(g, spec, cfg, deadline=deadline).run()
    elif mode == "size":
        def synth(g, spec, max_candidates, deadline):
            program, state = search(g, all_ones_cost_model(g), spec, SearchState(), _UNBOUNDED,
                                    max_candidates=max_candidates, deadline=deadline)
            return Outcome(program, state.candidates, state.lvl + (program is not None))
    elif mode == "height":
        def synth(g, spec, max_candidates, deadline):
            hs = HeightSearch(g, spec)
            program = hs.run(_UNBOUNDED, max_candidates=max_candidates, deadline=deadline)
            return Outcome(program, hs.candidates, hs.height + 1)
    else:
        raise ValueError(f"unknown mode {mode}")
    return synth


def run_benchmark(path: Any, mode: str = "probe",
                  scheme: SelectionScheme = SelectionScheme.FIRST_CHEAPEST,
                  timeout: float | None = DEFAULT_TIMEOUT, seed: int = 0,
                  max_candidates: int | None = None, lim_factor: int = 6) -> RunRecord:
    """Parse, classify and solve one benchmark file.

    Example specs go straight to the synthesizer; universally quantified
    ones go through CEGIS with the same synthesizer inside. ``scheme`` only
    applies to probe and is recorded as ``none`` otherwise.
    """
    start = time.monotonic()
    deadline = None if timeout is None else start + timeout
    scheme_name = scheme.value if mode == "probe" else "none"
    record = RunRecord(str(path), mode, scheme_name, False, 0.0, 0, 0)
    synth = _synthesizer(mode, scheme, lim_factor)
    try:
        problem = parse_sygus_file(path)
        spec = extract_examples(problem)
        if isinstance(spec, Pbe):
            out = synth(problem.grammar, spec.examples, max_candidates, deadline)
            record.n_examples = len(spec.examples)
        else:
            cfg = ProbeConfig(lim_factor=lim_factor, scheme=scheme, max_candidates=max_candidates)
            result = Cegis(problem, cfg, default_verifier(spec, seed),
                           synth=synth, deadline=deadline).run()
            out = Outcome(result.program, result.candidates, result.levels)
            record.n_examples = len(result.bindings)
    except (OSError, ParseError, UnsupportedConstruct) as exc:
        record.error = f"{type(exc).__name__}: {exc}"
        record.wall_time_s = round(time.monotonic() - start, 4)
        logger.warning("%s: %s", path, record.error)
        return record
    record.wall_time_s = round(time.monotonic() - start, 4)
    record.levels = out.levels
    record.candidates = out.candidates
    if out.program is not None:
        record.solved = True
        record.solution_size = out.program.size
        record.ite_count = count_ite(out.program)
        record.solution = str(out.program)
    return record


@dataclass
class SuiteReport:
    records: list[RunRecord]

    @property
    def solved(self) -> int:
        return sum(r.solved for r in self.records)

    def _times(self) -> list[float]:
        return [r.wall_time_s for r in self.records if r.solved]

    @property
    def mean_time(self) -> float | None:
        times = self._times()
        return statistics.fmean(times) if times else None

    @property
    def median_time(self) -> float | None:
        times = self._times()
        return statistics.median(times) if times else None

    @property
    def mean_ite_per_example(self) -> float | None:
        """Mean over solved runs of ite count divided by example (or binding) count."""
        ratios = [r.ite_count / r.n_examples for r in self.records if r.solved and r.n_examples]
        return statistics.fmean(ratios) if ratios else None

    def aggregates(self) -> dict[str, Any]:
        return {"records": len(self.records), "solved": self.solved, "mean_time": self.mean_time,
                "median_time": self.median_time, "mean_ite_per_example": self.mean_ite_per_example}

    def summary(self) -> str:
        agg = self.aggregates()
        fmt = lambda x: "-" if x is None else f"{x:.3f}"  # noqa: E731
        return (f"solved {agg['solved']}/{agg['records']}, mean time {fmt(agg['mean_time'])}s, "
                f"median time {fmt(agg['median_time'])}s, "
                f"ite per example {fmt(agg['mean_ite_per_example'])}")


def write_records(records: Iterable[RunRecord], path: Any, fmt: str = "csv") -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if fmt == "csv":
            writer = csv.DictWriter(fh, fieldnames=FIELDS)
            writer.writeheader()
            for r in records:
                writer.writerow(r.row())
        elif fmt == "json":
            for r in records:
                fh.write(json.dumps(r.row()) + "\n")
        else:
            raise ValueError(f"unknown format {fmt}")


def _from_csv_row(row: dict[str, str]) -> RunRecord:
    opt_int = lambda s: int(s) if s != "" else None  # noqa: E731
    return RunRecord(row["benchmark"], row["mode"], row["scheme"], row["solved"] == "True",
                     float(row["wall_time_s"]), int(row["levels"]), int(row["candidates"]),
                     opt_int(row["solution_size"]), opt_int(row["ite_count"]),
                     row["solution"] if row["solution"] != "" else None)


def read_records(path: Any, fmt: str | None = None) -> list[RunRecord]:
    fmt = fmt or ("json" if str(path).endswith((".json", ".jsonl")) else "csv")
    with open(path, newline="", encoding="utf-8") as fh:
        if fmt == "csv":
            return [_from_csv_row(row) for row in csv.DictReader(fh)]
        return [RunRecord(**json.loads(line)) for line in fh if line.strip()]


def _run_job(job: tuple) -> RunRecord:
    return run_benchmark(*job)


def suite_jobs(directory: Any, modes: Sequence[str], schemes: Sequence[SelectionScheme],
               timeout: float | None, seed: int, max_candidates: int | None,
               lim_factor: int) -> list[tuple]:
    paths = sorted(Path(directory).rglob("*.sl"))
    jobs = []
    for path in paths:
        for mode in modes:
            for scheme in (schemes if mode == "probe" else schemes[:1]):
                jobs.append((str(path), mode, scheme, timeout, seed, max_candidates, lim_factor))
    return jobs


def run_suite(directory: Any, modes: Sequence[str] = MODES,
              schemes: Sequence[SelectionScheme] = (SelectionScheme.FIRST_CHEAPEST,),
              timeout: float | None = DEFAULT_TIMEOUT, out_path: Any = None, fmt: str = "csv",
              *, seed: int = 0, max_candidates: int | None = None, lim_factor: int = 6,
              workers: int = 1) -> SuiteReport:
    """Run every ``.sl`` file under ``directory`` in each mode (and scheme, for probe).

    Records come back in path order whatever the worker count.
    """
    jobs = suite_jobs(directory, modes, schemes, timeout, seed, max_candidates, lim_factor)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_job, jobs))
    else:
        records = [_run_job(job) for job in jobs]
    for r in records:
        logger.info("%s %s %s: %s in %.2fs", r.benchmark, r.mode, r.scheme,
                    r.solution if r.solved else "unsolved", r.wall_time_s)
    if out_path is not None:
        write_records(records, out_path, fmt)
    return SuiteReport(records)
