"""Just-in-time learning: select promising partial solutions, reweight the grammar, restart."""
from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from .dsl import Program
from .enumerator import PartialSolution, SearchState, as_spec, search
from .grammar import CostModel, Grammar, Pcfg, cost_model, uniform_pcfg

logger = logging.getLogger(__name__)


class SelectionScheme(enum.Enum):
    LARGEST_SUBSET = "largest"
    FIRST_CHEAPEST = "first-cheapest"
    ALL_CHEAPEST = "all-cheapest"
    ALL = "all"


@dataclass
class PromisingStore:
    """Partial solutions retained across synthesis-learning cycles, keyed by satisfied subset.

    For every scheme except ``ALL`` the retained programs of a subset all have
    its best cost; ``ALL`` keeps everything it has ever selected.
    """

    by_subset: dict[frozenset[int], tuple[int, list[PartialSolution]]] = field(default_factory=dict)
    largest: int = 0

    def retained(self) -> list[PartialSolution]:
        return [s for _, sols in self.by_subset.values() for s in sols]

    def __len__(self) -> int:
        return sum(len(sols) for _, sols in self.by_subset.values())


def _improves(store: PromisingStore, subset: frozenset[int], cost: int) -> bool:
    best = store.by_subset.get(subset)
    return best is None or cost < best[0]


def select(psol: Sequence[PartialSolution], store: PromisingStore,
           scheme: SelectionScheme) -> tuple[list[PartialSolution], PromisingStore]:
    """Pick the promising partial solutions of one cycle and record them in ``store``.

    ``psol`` is in discovery order. The store is updated in place and also
    returned.
    """
    if scheme is SelectionScheme.ALL:
        selected = []
        for s in psol:
            best, sols = store.by_subset.get(s.satisfied, (s.cost, []))
            if any(s.program == t.program for t in sols):
                continue
            store.by_subset[s.satisfied] = (min(best, s.cost), sols + [s])
            store.largest = max(store.largest, len(s.satisfied))
            selected.append(s)
        return selected, store

    cheapest: dict[frozenset[int], list[PartialSolution]] = {}
    for s in psol:
        group = cheapest.setdefault(s.satisfied, [])
        if not group or s.cost < group[0].cost:
            group[:] = [s]
        elif s.cost == group[0].cost:
            group.append(s)

    if scheme is SelectionScheme.LARGEST_SUBSET:
        if not cheapest:
            return [], store
        size = max(len(subset) for subset in cheapest)
        if size <= store.largest:
            return [], store
        # first discovered among the cheapest programs of maximal-size subsets
        best = min((g[0] for subset, g in cheapest.items() if len(subset) == size),
                   key=lambda s: (s.cost, psol.index(s)))
        store.by_subset[best.satisfied] = (best.cost, [best])
        store.largest = size
        return [best], store

    selected = []
    for subset, group in cheapest.items():
        if not _improves(store, subset, group[0].cost):
            continue
        chosen = group[:1] if scheme is SelectionScheme.FIRST_CHEAPEST else group
        store.by_subset[subset] = (group[0].cost, list(chosen))
        store.largest = max(store.largest, len(subset))
        selected.extend(chosen)
    order = {id(s): i for i, s in enumerate(psol)}
    selected.sort(key=lambda s: order[id(s)])
    return selected, store


def fit(rule: Any, retained: Sequence[PartialSolution], example_count: int) -> float:
    """Largest fraction of examples satisfied by a retained solution using ``rule``; 0 if none."""
    rid = rule if isinstance(rule, int) else rule.id
    return max((len(s.satisfied) / example_count for s in retained if rid in s.productions()),
               default=0.0)


def _fits(g: Grammar, retained: Sequence[PartialSolution], example_count: int) -> list[float]:
    fits = [0.0] * len(g)
    for s in retained:
        f = len(s.satisfied) / example_count
        for rid in s.productions():
            fits[rid] = max(fits[rid], f)
    return fits


def _trajectory(g: Grammar, before: list[PartialSolution], selected: list[PartialSolution],
                scheme: SelectionScheme, example_count: int) -> list[tuple[int, ...]]:
    """Cost tables as if the selected solutions had been rewarded one at a time."""
    out = []
    for i in range(1, len(selected) + 1):
        prefix = selected[:i]
        if scheme is SelectionScheme.ALL:
            retained = before + prefix
        else:
            replaced = {s.satisfied for s in prefix}
            retained = [s for s in before if s.satisfied not in replaced] + prefix
        out.append(cost_model(update_pcfg(g, retained, example_count)).cost)
    return out


def update_pcfg(g: Grammar, store: PromisingStore | Sequence[PartialSolution],
                example_count: int) -> Pcfg:
    """Reweight every rule as ``p_u(R) ** (1 - fit(R))``, normalized per nonterminal."""
    retained = store.retained() if isinstance(store, PromisingStore) else list(store)
    return pcfg_from_fits(g, _fits(g, retained, example_count))


def pcfg_from_fits(g: Grammar, fits: Sequence[float]) -> Pcfg:
    pu = uniform_pcfg(g).prob
    return Pcfg.from_weights(g, [pu[i] ** (1.0 - fits[i]) for i in range(len(g))])


@dataclass
class ProbeConfig:
    lim_factor: int = 6
    timeout: float | None = None
    scheme: SelectionScheme = SelectionScheme.FIRST_CHEAPEST
    max_candidates: int | None = None
    initial_pcfg: Pcfg | None = None

    def __post_init__(self) -> None:
        if self.lim_factor < 1:
            raise ValueError("lim_factor must be at least 1")


@dataclass
class CycleLog:
    cycle: int
    levels: tuple[int, int]
    partial_found: int
    selected: list[PartialSolution]
    costs: tuple[int, ...]
    restarted: bool
    # cost table after rewarding each selected solution in turn
    trajectory: list[tuple[int, ...]] = field(default_factory=list)


@dataclass
class ProbeResult:
    program: Program | None
    cycles: list[CycleLog]
    candidates: int
    evaluated: int
    levels: int
    store: PromisingStore
    pcfg: Pcfg
    timed_out: bool = False


class Probe:
    """Synthesis-learning cycles over a grammar and an example spec.

    ``deadline`` (monotonic seconds) overrides ``config.timeout`` when both
    are given, so callers can share one wall-clock budget.
    """

    def __init__(self, g: Grammar, examples: Any, config: ProbeConfig | None = None,
                 deadline: float | None = None):
        self.g = g
        self.spec = as_spec(examples)
        self.config = config or ProbeConfig()
        if deadline is None and self.config.timeout is not None:
            deadline = time.monotonic() + self.config.timeout
        self.deadline = deadline

    def run(self) -> ProbeResult:
        cfg = self.config
        pcfg = cfg.initial_pcfg or uniform_pcfg(self.g)
        cm: CostModel = cost_model(pcfg)
        lim = cfg.lim_factor * cm.max_rule_cost
        state = SearchState()
        store = PromisingStore()
        cycles: list[CycleLog] = []
        candidates = evaluated = levels = 0
        while True:
            start_lvl = state.lvl
            before_c, before_e = state.candidates, state.evaluated
            remaining = None if cfg.max_candidates is None else cfg.max_candidates - candidates
            program, state = search(self.g, cm, self.spec, state, lim,
                                    max_candidates=None if remaining is None else state.candidates + remaining,
                                    deadline=self.deadline)
            candidates += state.candidates - before_c
            evaluated += state.evaluated - before_e
            levels += state.lvl - start_lvl + (1 if program is not None else 0)
            if program is not None or state.out_of_budget:
                cycles.append(CycleLog(len(cycles) + 1, (start_lvl, state.lvl), len(state.psol),
                                       [], cm.cost, False))
                return ProbeResult(program, cycles, candidates, evaluated, levels, store, pcfg,
                                   timed_out=program is None)
            before = store.retained()
            selected, store = select(state.psol, store, cfg.scheme)
            found = len(state.psol)
            trajectory = _trajectory(self.g, before, selected, cfg.scheme, self.spec.n)
            if selected:
                pcfg = update_pcfg(self.g, store, self.spec.n)
                cm = cost_model(pcfg)
                state = SearchState()
            else:
                state.psol = []
            cycles.append(CycleLog(len(cycles) + 1, (start_lvl, start_lvl + lim), found,
                                   selected, cm.cost, bool(selected), trajectory))
            logger.info("cycle %d: levels %d..%d, %d partial, %d selected%s",
                        len(cycles), start_lvl, start_lvl + lim, found, len(selected),
                        ", restart" if selected else "")
            if selected:
                logger.info("costs: %s", " ".join(f"{r.name}={c}" for r, c in zip(self.g.productions, cm.cost)))


def probe(g: Grammar, examples: Any, config: ProbeConfig | None = None) -> Program | None:
    return Probe(g, examples, config).run().program
