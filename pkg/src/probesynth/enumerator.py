"""Cost-ordered bottom-up enumeration with observational-equivalence pruning.

Candidates are evaluated incrementally: a new program's output vector is
computed from the cached output vectors of its banked children, and the
``Program`` object is only built once it survives the equivalence check.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Iterator, Sequence

from .dsl import Example, Program
from .grammar import CostModel, Grammar, Pcfg, Production, all_ones_cost_model, cost_model

logger = logging.getLogger(__name__)

# deadline is polled every this many candidates
_POLL = 4096


class ExampleSpec:
    """Input-output examples viewed as a search objective."""

    def __init__(self, examples: Sequence[Example]):
        self.examples = list(examples)
        self.inputs = [e.inputs for e in self.examples]
        self.expected = tuple(e.output for e in self.examples)
        self.n = len(self.examples)

    def solves(self, outs: tuple) -> bool:
        return outs == self.expected

    def satisfied(self, outs: tuple) -> frozenset[int]:
        return frozenset(i for i, (a, b) in enumerate(zip(outs, self.expected)) if a == b)

    def find_solution(self, batch: list[tuple]) -> int:
        """Index of the first solving output vector in ``batch``, or -1."""
        try:
            return batch.index(self.expected)
        except ValueError:
            return -1


def as_spec(examples: Any) -> Any:
    if hasattr(examples, "solves"):
        return examples
    return ExampleSpec(examples)


@dataclass
class PartialSolution:
    program: Program
    satisfied: frozenset[int]
    cost: int

    def productions(self) -> set[int]:
        return {r.id for r in self.program.trace()}


class Bank:
    """Programs indexed by (cost level, nonterminal), each with its output vector.

    A cell stores two parallel lists, programs and output vectors, so that
    candidates can be evaluated a whole cell at a time.
    """

    def __init__(self) -> None:
        self.levels: dict[tuple[int, str], tuple[list[Program], list[tuple]]] = {}

    def add(self, level: int, nt: str, program: Program, outs: tuple) -> None:
        cell = self.levels.get((level, nt))
        if cell is None:
            cell = self.levels[(level, nt)] = ([], [])
        cell[0].append(program)
        cell[1].append(outs)

    def cell(self, level: int, nt: str) -> tuple[list[Program], list[tuple]]:
        return self.levels.get((level, nt), _EMPTY_CELL)

    def entries(self, level: int, nt: str) -> list[tuple[Program, tuple]]:
        progs, outs = self.cell(level, nt)
        return list(zip(progs, outs))

    def programs(self, level: int, nt: str | None = None) -> list[Program]:
        if nt is not None:
            return list(self.cell(level, nt)[0])
        return [p for (lvl, _), (ps, _) in self.levels.items() if lvl == level for p in ps]

    def count(self, level: int | None = None) -> int:
        return sum(len(ps) for (lvl, _), (ps, _) in self.levels.items() if level is None or lvl == level)

    def __iter__(self) -> Iterator[tuple[int, str, Program, tuple]]:
        for (lvl, nt), (ps, os) in self.levels.items():
            for p, outs in zip(ps, os):
                yield lvl, nt, p, outs

    def __len__(self) -> int:
        return self.count()


_EMPTY_CELL: tuple[list, list] = ([], [])


@dataclass
class SearchState:
    """Resumable search state.

    ``candidates`` counts observationally distinct programs enumerated (each
    one is banked or returned); ``evaluated`` counts every program built,
    including those discarded as equivalent.
    """

    lvl: int = 0
    bank: Bank = field(default_factory=Bank)
    cache: dict[str, set] = field(default_factory=dict)
    psol: list[PartialSolution] = field(default_factory=list)
    candidates: int = 0
    evaluated: int = 0
    out_of_budget: bool = False


def _compositions(total: int, kinds: Sequence[str], bank: Bank) -> Iterator[tuple[int, ...]]:
    """Cost tuples summing to ``total`` with nonempty bank cells.

    Order is descending lexicographic: earlier operands take the larger share
    of the budget first, so tall, skinny programs come early within a level.
    """
    if len(kinds) == 1:
        if bank.cell(total, kinds[0])[0]:
            yield (total,)
        return
    rest = len(kinds) - 1
    for c in range(total - rest, 0, -1):
        if not bank.cell(c, kinds[0])[0]:
            continue
        for tail in _compositions(total - c, kinds[1:], bank):
            yield (c, *tail)


def _expand(g: Grammar, cm: CostModel, lvl: int, bank: Bank) -> Iterator[tuple[Production, tuple]]:
    costs = cm.cost
    for prod in g.productions:
        c = costs[prod.id]
        if not prod.rhs:
            if c == lvl:
                yield prod, ()
        elif c < lvl:
            for ctuple in _compositions(lvl - c, prod.rhs, bank):
                cells = [bank.entries(ci, n) for ci, n in zip(ctuple, prod.rhs)]
                for combo in product(*cells):
                    yield prod, combo


def _cell_batches(prod: Production, cells: list) -> Iterator[tuple[tuple, list[Program], list[tuple]]]:
    """Evaluate ``prod`` over the product of ``cells``, one batch per last-operand cell.

    Yields ``(prefix_programs, last_programs, output_vectors)``; the i-th
    candidate of a batch is ``prod(*prefix_programs, last_programs[i])``.
    """
    fn = prod.fn
    last_progs, last_outs = cells[-1]
    k = len(cells)
    if k == 1:
        yield (), last_progs, [tuple(map(fn, o)) for o in last_outs]
    elif k == 2:
        for pa, oa in zip(*cells[0]):
            yield (pa,), last_progs, [tuple(map(fn, oa, o)) for o in last_outs]
    elif k == 3:
        (pas, oas), (pbs, obs) = cells[0], cells[1]
        for pa, oa in zip(pas, oas):
            for pb, ob in zip(pbs, obs):
                yield (pa, pb), last_progs, [tuple(map(fn, oa, ob, o)) for o in last_outs]
    else:
        heads = [list(zip(*cell)) for cell in cells[:-1]]
        for prefix in product(*heads):
            cols = [e[1] for e in prefix]
            yield tuple(e[0] for e in prefix), last_progs, [tuple(map(fn, *cols, o)) for o in last_outs]


def _batches(g: Grammar, cm: CostModel, lvl: int, bank: Bank,
             leaves: dict[int, tuple]) -> Iterator[tuple[Production, tuple, list[Program], list[tuple]]]:
    """Batched candidates of cost ``lvl``, in the same order as ``new_programs``."""
    costs = cm.cost
    for prod in g.productions:
        c = costs[prod.id]
        if not prod.rhs:
            if c == lvl:
                yield prod, (), [None], [leaves[prod.id]]
        elif c < lvl:
            for ctuple in _compositions(lvl - c, prod.rhs, bank):
                cells = [bank.cell(ci, n) for ci, n in zip(ctuple, prod.rhs)]
                for prefix, last_progs, batch in _cell_batches(prod, cells):
                    yield prod, prefix, last_progs, batch


def new_programs(g: Grammar, cm: CostModel, lvl: int, bank: Bank) -> Iterator[Program]:
    """All programs of cost ``lvl`` built over ``bank`` (complete below ``lvl``)."""
    for prod, combo in _expand(g, cm, lvl, bank):
        yield Program(prod, tuple(e[0] for e in combo))


def _leaf_outputs(g: Grammar, spec: Any) -> dict[int, tuple]:
    leaves = {}
    for prod in g.productions:
        if prod.kind == "var":
            leaves[prod.id] = tuple(env[prod.name] for env in spec.inputs)
        elif prod.kind == "lit":
            leaves[prod.id] = (prod.value,) * len(spec.inputs)
    return leaves


def search(g: Grammar, cm: CostModel, examples: Any, init: SearchState | None = None,
           lim: int = 0, *, max_candidates: int | None = None,
           deadline: float | None = None) -> tuple[Program | None, SearchState]:
    """Guided bottom-up search over an explicit cost model."""
    spec = as_spec(examples)
    state = init if init is not None else SearchState()
    leaves = _leaf_outputs(g, spec)
    start = g.start
    bank, cache, psol = state.bank, state.cache, state.psol
    for nt in g.nonterminals:
        cache.setdefault(nt, set())
    stop_at = state.lvl + lim
    next_poll = state.evaluated + _POLL
    while state.lvl <= stop_at:
        lvl = state.lvl
        evaluated_before, banked = state.evaluated, 0
        for prod, prefix, last_progs, batch in _batches(g, cm, lvl, bank, leaves):
            nt = prod.lhs
            seen = cache[nt]
            hit = spec.find_solution(batch) if nt == start else -1
            limit = hit if hit >= 0 else len(batch)
            fresh = [j for j in range(limit) if batch[j] not in seen]
            for j in fresh:
                outs = batch[j]
                if outs in seen:
                    continue
                if max_candidates is not None and state.candidates >= max_candidates:
                    state.evaluated += j
                    state.out_of_budget = True
                    return None, state
                program = Program(prod, (*prefix, last_progs[j]) if prod.rhs else ())
                if nt == start:
                    sat = spec.satisfied(outs)
                    if sat:
                        psol.append(PartialSolution(program, sat, lvl))
                bank.add(lvl, nt, program, outs)
                seen.add(outs)
                state.candidates += 1
                banked += 1
            if hit >= 0:
                if max_candidates is not None and state.candidates >= max_candidates:
                    state.evaluated += hit
                    state.out_of_budget = True
                    return None, state
                state.evaluated += hit + 1
                state.candidates += 1
                return Program(prod, (*prefix, last_progs[hit]) if prod.rhs else ()), state
            state.evaluated += limit
            if deadline is not None and state.evaluated >= next_poll:
                next_poll = state.evaluated + _POLL
                if time.monotonic() > deadline:
                    state.out_of_budget = True
                    return None, state
        logger.debug("level %d: evaluated %d, banked %d, partial solutions %d",
                     lvl, state.evaluated - evaluated_before, banked, len(psol))
        state.lvl += 1
        if deadline is not None and time.monotonic() > deadline:
            state.out_of_budget = True
            return None, state
    return None, state


def guided_search(pcfg: Pcfg, examples: Any, init: SearchState | None = None, lim: int = 0,
                  **budget: Any) -> tuple[Program | None, SearchState]:
    """Enumerate in order of increasing discrete cost under ``pcfg``.

    Explores levels ``init.lvl .. init.lvl + lim``; returns the first program
    satisfying every example, or ``None`` with the state to resume from.
    """
    return search(pcfg.grammar, cost_model(pcfg), examples, init, lim, **budget)


def size_search(g: Grammar, examples: Any, max_size: int, **budget: Any) -> tuple[Program | None, SearchState]:
    """Unguided size-ordered baseline: every production costs 1."""
    return search(g, all_ones_cost_model(g), examples, SearchState(), max_size, **budget)


class HeightSearch:
    """Height-ordered bottom-up baseline.

    Iteration ``n`` combines operands of height at most ``n - 1`` with at
    least one operand of height exactly ``n - 1``. Budget accounting matches
    ``search``.
    """

    def __init__(self, g: Grammar, examples: Any):
        self.g = g
        self.spec = as_spec(examples)
        self.leaves = _leaf_outputs(g, self.spec)
        self.bank: list[dict[str, tuple[list[Program], list[tuple]]]] = []
        self.cache: dict[str, set] = {nt: set() for nt in g.nonterminals}
        self.candidates = 0
        self.evaluated = 0
        self.out_of_budget = False

    @property
    def height(self) -> int:
        return len(self.bank) - 1

    def banked(self, height: int) -> int:
        return sum(len(ps) for ps, _ in self.bank[height].values())

    def _batches(self, n: int) -> Iterator[tuple[Production, tuple, list, list[tuple]]]:
        for prod in self.g.productions:
            if not prod.rhs:
                if n == 0:
                    yield prod, (), [None], [self.leaves[prod.id]]
                continue
            if n == 0:
                continue
            for heights in product(range(n), repeat=prod.arity):
                if max(heights) != n - 1:
                    continue
                cells = [self.bank[h].get(nt, _EMPTY_CELL) for h, nt in zip(heights, prod.rhs)]
                if not all(ps for ps, _ in cells):
                    continue
                for prefix, last_progs, batch in _cell_batches(prod, cells):
                    yield prod, prefix, last_progs, batch

    def run(self, max_height: int, *, max_candidates: int | None = None,
            deadline: float | None = None) -> Program | None:
        spec, start = self.spec, self.g.start
        next_poll = self.evaluated + _POLL
        while self.height < max_height:
            n = self.height + 1
            level: dict[str, tuple[list[Program], list[tuple]]] = {}
            self.bank.append(level)
            for prod, prefix, last_progs, batch in self._batches(n):
                nt = prod.lhs
                seen = self.cache[nt]
                hit = spec.find_solution(batch) if nt == start else -1
                limit = hit if hit >= 0 else len(batch)
                for j in [j for j in range(limit) if batch[j] not in seen]:
                    outs = batch[j]
                    if outs in seen:
                        continue
                    if max_candidates is not None and self.candidates >= max_candidates:
                        self.evaluated += j
                        self.out_of_budget = True
                        return None
                    cell = level.setdefault(nt, ([], []))
                    cell[0].append(Program(prod, (*prefix, last_progs[j]) if prod.rhs else ()))
                    cell[1].append(outs)
                    seen.add(outs)
                    self.candidates += 1
                if hit >= 0:
                    self.evaluated += hit + 1
                    self.candidates += 1
                    return Program(prod, (*prefix, last_progs[hit]) if prod.rhs else ())
                self.evaluated += limit
                if deadline is not None and self.evaluated >= next_poll:
                    next_poll = self.evaluated + _POLL
                    if time.monotonic() > deadline:
                        self.out_of_budget = True
                        return None
            logger.debug("height %d: banked %d", n, self.banked(n))
            if not level:
                # nothing new at this height, so nothing new at any later one
                break
        return None


def height_search(g: Grammar, examples: Any, max_height: int, **budget: Any) -> Program | None:
    return HeightSearch(g, examples).run(max_height, **budget)
