"""Context-free and probabilistic grammars, discrete costs, program cost and probability."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .dsl import OperatorSig, Program, Sort, format_literal, operator_impl, resolve_operator

NORMALIZATION_TOLERANCE = 1e-9


class GrammarError(ValueError):
    pass


@dataclass(eq=False)
class Production:
    """``lhs -> (terminal rhs...)``.

    ``kind`` is ``"var"``, ``"lit"`` or ``"op"``; ``name`` is the variable name
    or the operator name as written in the grammar.
    """

    id: int
    lhs: str
    kind: str
    name: str
    sort: Sort
    rhs: tuple[str, ...] = ()
    value: Any = None
    op: OperatorSig | None = None
    fn: Any = field(default=None, repr=False)

    @property
    def arity(self) -> int:
        return len(self.rhs)

    def key(self) -> tuple:
        """Structural identity, independent of ``id``."""
        return (self.lhs, self.kind, self.name, self.sort, self.rhs, self.value)

    def __str__(self) -> str:
        if self.kind == "lit":
            term = format_literal(self.value, self.sort)
        elif self.rhs:
            term = "(" + " ".join((self.name, *self.rhs)) + ")"
        else:
            term = self.name
        return f"{self.lhs} -> {term}"


class Grammar:
    """A typed CFG; productions keep their declaration order."""

    def __init__(self, start: str, nonterminals: Mapping[str, Sort], productions: Sequence[Production]):
        self.start = start
        self.nonterminals = dict(nonterminals)
        self.productions = list(productions)
        self.by_lhs: dict[str, list[Production]] = {n: [] for n in self.nonterminals}
        for i, prod in enumerate(self.productions):
            if prod.id != i:
                raise GrammarError(f"production ids must be 0..n-1 in order, got {prod.id} at {i}")
            if prod.lhs not in self.nonterminals:
                raise GrammarError(f"unknown nonterminal {prod.lhs}")
            for n in prod.rhs:
                if n not in self.nonterminals:
                    raise GrammarError(f"undeclared nonterminal {n} in {prod}")
            if prod.kind == "op" and prod.op.arity != prod.arity:
                raise GrammarError(f"arity mismatch in {prod}")
            self.by_lhs[prod.lhs].append(prod)
        if start not in self.nonterminals:
            raise GrammarError(f"start symbol {start} is not a nonterminal")

    @classmethod
    def build(cls, start: str, nonterminals: Mapping[str, Sort], rules: Iterable[tuple]) -> Grammar:
        """Build from ``(lhs, terminal, *rhs)`` tuples.

        ``terminal`` is ``("var", name)``, ``("lit", value)`` or an operator name.
        """
        prods = []
        for i, (lhs, terminal, *rhs) in enumerate(rules):
            prods.append(make_production(i, lhs, terminal, tuple(rhs), nonterminals))
        return cls(start, nonterminals, prods)

    def __len__(self) -> int:
        return len(self.productions)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grammar):
            return NotImplemented
        return (self.start == other.start and self.nonterminals == other.nonterminals
                and [p.key() for p in self.productions] == [p.key() for p in other.productions])

    def __repr__(self) -> str:
        return f"Grammar(start={self.start!r}, {len(self.productions)} productions)"

    def find(self, lhs: str, name: str, arity: int | None = None) -> Production:
        for prod in self.by_lhs[lhs]:
            if prod.name == name and (arity is None or prod.arity == arity):
                return prod
        raise KeyError(f"no production {lhs} -> {name}")


def make_production(pid: int, lhs: str, terminal: Any, rhs: tuple[str, ...],
                    nonterminals: Mapping[str, Sort]) -> Production:
    sort = nonterminals[lhs]
    if isinstance(terminal, tuple) and terminal[0] == "var":
        return Production(pid, lhs, "var", terminal[1], sort)
    if isinstance(terminal, tuple) and terminal[0] == "lit":
        value = terminal[1]
        return Production(pid, lhs, "lit", format_literal(value, sort), sort, value=value)
    for n in rhs:
        if n not in nonterminals:
            raise GrammarError(f"undeclared nonterminal {n} in production of {lhs}")
    sig = resolve_operator(terminal, [nonterminals[n] for n in rhs])
    if sig.result_sort is not sort:
        raise GrammarError(f"{terminal} returns {sig.result_sort}, but {lhs} has sort {sort}")
    return Production(pid, lhs, "op", terminal, sort, rhs=rhs, op=sig, fn=operator_impl(sig))


class Pcfg:
    """A grammar with a probability per production, normalized per nonterminal."""

    def __init__(self, grammar: Grammar, prob: Sequence[float]):
        if len(prob) != len(grammar):
            raise GrammarError("one probability per production required")
        self.grammar = grammar
        self.prob = tuple(float(p) for p in prob)
        for n, prods in grammar.by_lhs.items():
            total = sum(self.prob[r.id] for r in prods)
            if prods and abs(total - 1.0) > NORMALIZATION_TOLERANCE:
                raise GrammarError(f"probabilities of {n} sum to {total}")
            for r in prods:
                if not 0.0 < self.prob[r.id] <= 1.0:
                    raise GrammarError(f"probability of {r} must be in (0, 1]")

    @classmethod
    def from_weights(cls, grammar: Grammar, weights: Sequence[float]) -> Pcfg:
        """Normalize positive weights per nonterminal."""
        prob = list(weights)
        for prods in grammar.by_lhs.values():
            z = sum(weights[r.id] for r in prods)
            for r in prods:
                prob[r.id] = weights[r.id] / z
        return cls(grammar, prob)

    def __getitem__(self, prod: Production) -> float:
        return self.prob[prod.id]


@dataclass(frozen=True)
class CostModel:
    cost: tuple[int, ...]
    max_rule_cost: int

    @classmethod
    def from_costs(cls, costs: Sequence[int]) -> CostModel:
        costs = tuple(int(c) for c in costs)
        if any(c < 1 for c in costs):
            raise GrammarError("every production cost must be at least 1")
        return cls(costs, max(costs, default=1))

    def __getitem__(self, prod: Production) -> int:
        return self.cost[prod.id]


def uniform_pcfg(g: Grammar) -> Pcfg:
    for n, prods in g.by_lhs.items():
        if not prods:
            raise GrammarError(f"nonterminal {n} has no productions")
    return Pcfg(g, [1.0 / len(g.by_lhs[r.lhs]) for r in g.productions])


def real_cost(p: float) -> float:
    return -math.log2(p)


def rule_cost(p: float) -> int:
    """Rounded (half-up) negative log2 probability, clamped to at least 1."""
    if not p > 0:
        raise GrammarError(f"nonpositive probability {p}")
    return max(1, math.floor(real_cost(p) + 0.5))


def cost_model(pcfg: Pcfg) -> CostModel:
    return CostModel.from_costs([rule_cost(p) for p in pcfg.prob])


def all_ones_cost_model(g: Grammar) -> CostModel:
    """Every production costs 1: cost-ordered search becomes size-ordered."""
    return CostModel.from_costs([1] * len(g))


def program_cost(p: Program, cm: CostModel) -> int:
    costs = cm.cost
    return sum(costs[r.id] for r in p.trace())


def program_probability(p: Program, pcfg: Pcfg) -> float:
    return math.prod(pcfg.prob[r.id] for r in p.trace())


def format_pcfg(pcfg: Pcfg) -> str:
    """One line per production: rule, probability, real cost, discrete cost."""
    lines = []
    for r in pcfg.grammar.productions:
        p = pcfg.prob[r.id]
        lines.append(f"{r!s:40} {p:.3f} {real_cost(p):6.2f} {rule_cost(p):3d}")
    return "\n".join(lines)
