"""SyGuS-IF v1 front end: problems, example extraction, testing verifiers and CEGIS."""
from __future__ import annotations

import dataclasses
import itertools
import logging
import random
import string
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence, Union

from .dsl import (BV_MASK, BV_SIGN, INT_MIN, Example, Program, Sort, canonical_names,
                  format_literal, operator_impl, resolve_operator, values_equal)
from .grammar import Grammar, GrammarError, make_production
from .learner import Probe, ProbeConfig
from .sexpr import Literal, Node, ParseError, SList, Symbol, parse_all, parse_one

logger = logging.getLogger(__name__)

__all__ = [
    "ParseError", "UnsupportedConstruct", "TargetFun", "SygusProblem", "Pbe", "FirstOrder",
    "Term", "parse_sygus", "format_problem", "parse_program", "extract_examples",
    "compile_term", "eval_term", "eval_constraint", "ConstraintSpec", "Valid",
    "Counterexample", "TooManyVariables", "ExhaustiveVerifier", "SampledVerifier",
    "exhaustive_verifier", "sampled_verifier", "Cegis", "CegisResult", "cegis", "load_examples",
]


class UnsupportedConstruct(Exception):
    def __init__(self, message: str, form: Node | None = None):
        where = f"{form.line}:{form.col}: " if form is not None and form.line else ""
        shown = f": {form}" if form is not None else ""
        super().__init__(f"{where}{message}{shown}")
        self.form = form


@dataclass(frozen=True)
class TargetFun:
    name: str
    params: tuple[tuple[str, Sort], ...]
    ret: Sort

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.params)


@dataclass
class SygusProblem:
    """``logic_name`` is the symbol from ``set-logic``; ``logic`` is the domain tag."""

    logic_name: str
    target: TargetFun
    grammar: Grammar
    universals: dict[str, Sort]
    constraints: list[Node]

    @property
    def logic(self) -> str:
        if self.logic_name.upper() == "SLIA":
            return "SLIA"
        sorts = [s for _, s in self.target.params] + [self.target.ret]
        if all(s is Sort.BOOL for s in sorts):
            return "circuit-boolean"
        return "BV"


@dataclass
class Pbe:
    examples: list[Example]


@dataclass
class FirstOrder:
    target: TargetFun
    universals: dict[str, Sort]
    constraints: list[Term]


Spec = Union[Pbe, FirstOrder]

_LOGICS = {"SLIA", "S", "BV", "QF_BV", "LIA"}


# --- parsing -----------------------------------------------------------------

def _sort(node: Node) -> Sort:
    if isinstance(node, Symbol):
        for sort in (Sort.STRING, Sort.INT, Sort.BOOL):
            if node.name == sort.value:
                return sort
    elif isinstance(node, SList):
        parts = [str(x) for x in node.items]
        if parts in (["BitVec", "64"], ["_", "BitVec", "64"]):
            return Sort.BV
        if parts[:1] == ["BitVec"] or parts[:2] == ["_", "BitVec"]:
            raise UnsupportedConstruct("only 64-bit bitvectors are supported", node)
    raise UnsupportedConstruct("unknown sort", node)


def _negative_literal(node: Node) -> int | None:
    if (isinstance(node, SList) and len(node) == 2 and node.head() == "-"
            and isinstance(node[1], Literal) and node[1].sort is Sort.INT):
        return -node[1].value
    return None


def _literal_value(node: Node) -> tuple[Any, Sort] | None:
    if isinstance(node, Literal):
        return node.value, node.sort
    neg = _negative_literal(node)
    return None if neg is None else (neg, Sort.INT)


def _parse_grammar(blocks: Node, params: Mapping[str, Sort], ret: Sort) -> Grammar:
    if not isinstance(blocks, SList) or not blocks.items:
        raise UnsupportedConstruct("synth-fun needs an inline grammar", blocks)
    nts: dict[str, Sort] = {}
    bodies = []
    for block in blocks.items:
        if not (isinstance(block, SList) and len(block) == 3 and isinstance(block[0], Symbol)
                and isinstance(block[2], SList)):
            raise ParseError("expected (Nonterminal Sort (productions...))", block.line, block.col)
        name = block[0].name
        if name in nts:
            raise ParseError(f"nonterminal {name} declared twice", block.line, block.col)
        nts[name] = _sort(block[1])
        bodies.append((name, block[2]))

    start = bodies[0][0]
    first = bodies[0][1]
    if (len(first) == 1 and isinstance(first[0], Symbol) and first[0].name in nts
            and first[0].name != start):
        # Start -> NT as the only production: NT becomes the start symbol
        if nts[first[0].name] is not nts[start]:
            raise ParseError("start nonterminal sort mismatch", first.line, first.col)
        del nts[start]
        start = first[0].name
        bodies = bodies[1:]
    if nts[start] is not ret:
        raise ParseError(f"start nonterminal has sort {nts[start]}, function returns {ret}",
                         blocks.line, blocks.col)

    prods = []
    for lhs, body in bodies:
        if not body.items:
            raise ParseError(f"nonterminal {lhs} has no productions", body.line, body.col)
        for form in body.items:
            prods.append(_production(len(prods), lhs, form, nts, params))
    return Grammar(start, nts, prods)


def _production(pid: int, lhs: str, form: Node, nts: Mapping[str, Sort], params: Mapping[str, Sort]):
    sort = nts[lhs]
    lit = _literal_value(form)
    try:
        if lit is not None:
            if lit[1] is not sort:
                raise ParseError(f"literal {form} is not of sort {sort}", form.line, form.col)
            return make_production(pid, lhs, ("lit", lit[0]), (), nts)
        if isinstance(form, Symbol):
            if form.name in params:
                if params[form.name] is not sort:
                    raise ParseError(f"variable {form.name} is not of sort {sort}", form.line, form.col)
                return make_production(pid, lhs, ("var", form.name), (), nts)
            if form.name in nts:
                raise UnsupportedConstruct("unit production", form)
            raise ParseError(f"undeclared nonterminal or variable {form.name}", form.line, form.col)
        head = form.head()
        if head is None:
            raise UnsupportedConstruct("production must start with an operator", form)
        if head in ("Constant", "Variable", "InputVariable", "LocalVariable", "let"):
            raise UnsupportedConstruct(f"{head} productions", form)
        rhs = []
        for arg in form.items[1:]:
            if not isinstance(arg, Symbol):
                raise UnsupportedConstruct("nested terms in productions", form)
            if arg.name not in nts:
                raise ParseError(f"undeclared nonterminal {arg.name}", arg.line, arg.col)
            rhs.append(arg.name)
        return make_production(pid, lhs, head, tuple(rhs), nts)
    except (KeyError, GrammarError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        raise ParseError(str(msg), form.line, form.col) from None


def parse_sygus(text: str) -> SygusProblem:
    logic = None
    target = grammar = None
    universals: dict[str, Sort] = {}
    raw_constraints: list[Node] = []
    for cmd in parse_all(text):
        head = cmd.head() if isinstance(cmd, SList) else None
        if head == "set-logic" and len(cmd) == 2:
            logic = str(cmd[1])
            if logic not in _LOGICS:
                raise UnsupportedConstruct("logic", cmd)
        elif head == "synth-fun":
            if target is not None:
                raise UnsupportedConstruct("more than one synth-fun", cmd)
            if len(cmd) != 5:
                raise UnsupportedConstruct("synth-fun without an inline grammar", cmd)
            name, params_form, ret_form, blocks = cmd.items[1:]
            params = []
            for p in params_form.items if isinstance(params_form, SList) else ():
                if not (isinstance(p, SList) and len(p) == 2 and isinstance(p[0], Symbol)):
                    raise ParseError("bad parameter", p.line, p.col)
                params.append((p[0].name, _sort(p[1])))
            ret = _sort(ret_form)
            target = TargetFun(str(name), tuple(params), ret)
            grammar = _parse_grammar(blocks, dict(params), ret)
        elif head == "declare-var" and len(cmd) == 3 and isinstance(cmd[1], Symbol):
            universals[cmd[1].name] = _sort(cmd[2])
        elif head == "constraint" and len(cmd) == 2:
            raw_constraints.append(cmd[1])
        elif head == "check-synth":
            pass
        elif head in ("set-option", "set-info"):
            pass
        else:
            raise UnsupportedConstruct("command", cmd)
    if target is None:
        raise ParseError("no synth-fun")
    problem = SygusProblem(logic or "SLIA", target, grammar, universals, raw_constraints)
    for c in raw_constraints:
        term = compile_term(c, problem)
        if term.sort is not Sort.BOOL:
            raise ParseError("constraint is not Boolean", c.line, c.col)
    return problem


def parse_sygus_file(path: Any) -> SygusProblem:
    with open(path, encoding="utf-8") as fh:
        return parse_sygus(fh.read())


def _format_production(prod: Any) -> str:
    if prod.kind == "lit":
        return format_literal(prod.value, prod.sort)
    if prod.rhs:
        return "(" + " ".join((prod.name, *prod.rhs)) + ")"
    return prod.name


def format_problem(problem: SygusProblem) -> str:
    g = problem.grammar
    t = problem.target
    lines = [f"(set-logic {problem.logic_name})"]
    params = " ".join(f"({n} {s})" for n, s in t.params)
    lines.append(f"(synth-fun {t.name} ({params}) {t.ret}")
    blocks = []
    for nt, sort in g.nonterminals.items():
        prods = " ".join(_format_production(p) for p in g.by_lhs[nt])
        blocks.append(f"   ({nt} {sort} ({prods}))")
    lines.append("  (" + "\n".join(blocks).lstrip() + "))")
    for name, sort in problem.universals.items():
        lines.append(f"(declare-var {name} {sort})")
    for c in problem.constraints:
        lines.append(f"(constraint {c})")
    lines.append("(check-synth)")
    return "\n".join(lines) + "\n"


def parse_program(text: str | Node, grammar: Grammar, nt: str | None = None) -> Program:
    """Read an S-expression as a derivation from ``nt`` (default: the start symbol)."""
    node = parse_one(text) if isinstance(text, str) else text
    prog = _match(node, grammar, nt or grammar.start)
    if prog is None:
        raise ParseError(f"{node} is not derivable from {nt or grammar.start}",
                         getattr(node, "line", 0), getattr(node, "col", 0))
    return prog


def _match(node: Node, g: Grammar, nt: str) -> Program | None:
    lit = _literal_value(node)
    for prod in g.by_lhs[nt]:
        if prod.kind == "lit":
            if lit is not None and lit[1] is prod.sort and values_equal(lit[0], prod.value):
                return Program(prod)
        elif prod.kind == "var":
            if isinstance(node, Symbol) and node.name == prod.name:
                return Program(prod)
        elif isinstance(node, SList) and len(node) == prod.arity + 1:
            head = node.head()
            if head != prod.name and prod.op.name not in canonical_names(head or ""):
                continue
            children = []
            for arg, sub in zip(node.items[1:], prod.rhs):
                child = _match(arg, g, sub)
                if child is None:
                    break
                children.append(child)
            else:
                return Program(prod, tuple(children))
    return None


# --- constraint terms --------------------------------------------------------

@dataclass(frozen=True)
class Term:
    """A compiled constraint term; ``kind`` is var, lit, op or call."""

    kind: str
    sort: Sort
    name: str = ""
    value: Any = None
    fn: Any = field(default=None, compare=False, repr=False)
    args: tuple[Term, ...] = ()

    def calls(self) -> list[Term]:
        out = [self] if self.kind == "call" else []
        for a in self.args:
            out.extend(a.calls())
        return out


def compile_term(node: Node, problem: SygusProblem) -> Term:
    """Sort-check ``node`` against the problem's variables and target function."""
    t = problem.target
    if isinstance(node, Literal):
        return Term("lit", node.sort, value=node.value)
    if isinstance(node, Symbol):
        if node.name in problem.universals:
            return Term("var", problem.universals[node.name], node.name)
        raise ParseError(f"undeclared variable {node.name}", node.line, node.col)
    head = node.head()
    if head is None:
        raise UnsupportedConstruct("application of a non-symbol", node)
    args = tuple(compile_term(a, problem) for a in node.items[1:])
    sorts = [a.sort for a in args]
    if head == t.name:
        if sorts != [s for _, s in t.params]:
            raise ParseError(f"{head} applied to ({' '.join(map(str, sorts))})", node.line, node.col)
        return Term("call", t.ret, head, t.param_names, args=args)
    if head in ("let", "forall", "exists"):
        raise UnsupportedConstruct(head, node)
    try:
        sig = resolve_operator(head, sorts)
    except KeyError as exc:
        raise ParseError(exc.args[0], node.line, node.col) from None
    return Term("op", sig.result_sort, sig.name, fn=operator_impl(sig), args=args)


def eval_term(term: Term, binding: Mapping[str, Any], call: Callable[[tuple], Any]) -> Any:
    kind = term.kind
    if kind == "lit":
        return term.value
    if kind == "var":
        return binding[term.name]
    args = [eval_term(a, binding, call) for a in term.args]
    if kind == "call":
        return call(tuple(args))
    return term.fn(*args)


def _candidate_call(candidate: Program, params: Sequence[str]) -> Callable[[tuple], Any]:
    from .dsl import eval_program

    def call(args: tuple) -> Any:
        return eval_program(candidate, dict(zip(params, args)))
    return call


def eval_constraint(term: Term, candidate: Program, binding: Mapping[str, Any]) -> bool:
    """Evaluate a Boolean constraint with ``candidate`` substituted for the target function."""
    return eval_term(term, binding, _candidate_call(candidate, term_params(term))) is True


def term_params(term: Term) -> tuple[str, ...]:
    calls = term.calls()
    return calls[0].value if calls else ()


def _is_literal_call(node: Node, fname: str) -> bool:
    return (isinstance(node, SList) and node.head() == fname
            and all(_literal_value(a) is not None for a in node.items[1:]))


def extract_examples(problem: SygusProblem) -> Spec:
    """Pbe if every constraint reads ``(= (f lit...) lit)`` in either orientation."""
    fname = problem.target.name
    examples = []
    for c in problem.constraints:
        if not (isinstance(c, SList) and c.head() == "=" and len(c) == 3):
            break
        lhs, rhs = c[1], c[2]
        if not _is_literal_call(lhs, fname):
            lhs, rhs = rhs, lhs
        out = _literal_value(rhs)
        if not _is_literal_call(lhs, fname) or out is None:
            break
        inputs = dict(zip(problem.target.param_names,
                          (_literal_value(a)[0] for a in lhs.items[1:])))
        examples.append(Example(inputs, out[0]))
    else:
        return Pbe(examples)
    return FirstOrder(problem.target, dict(problem.universals),
                      [compile_term(c, problem) for c in problem.constraints])


def load_examples(text: str, problem: SygusProblem) -> list[Example]:
    """Examples from the ``(constraint (= (f lit...) lit))`` forms of ``text``.

    Other commands are ignored, so a full benchmark file or a bare list of
    constraints both work as holdout sets.
    """
    forms = [cmd[1] for cmd in parse_all(text)
             if isinstance(cmd, SList) and cmd.head() == "constraint" and len(cmd) == 2]
    held = SygusProblem(problem.logic_name, problem.target, problem.grammar, {}, forms)
    spec = extract_examples(held)
    if not isinstance(spec, Pbe):
        raise UnsupportedConstruct("holdout constraints must be literal equalities")
    return spec.examples


# --- CEGIS -------------------------------------------------------------------

def _equality_to_term(term: Term) -> tuple[Term, Term] | None:
    """``(call, rhs)`` for ``(= (f args) rhs)`` with no nested calls, else None."""
    if term.kind != "op" or term.name != "=":
        return None
    a, b = term.args
    if a.kind != "call":
        a, b = b, a
    if a.kind != "call" or b.calls() or any(x.calls() for x in a.args):
        return None
    return a, b


def _no_call(args: tuple) -> Any:
    raise UnsupportedConstruct("nested applications of the target function")


class ConstraintSpec:
    """Bindings of the universals viewed as a search objective.

    Outputs are the candidate's values at every distinct argument tuple the
    constraints apply it to; binding ``i`` is satisfied when every constraint
    holds there.
    """

    def __init__(self, spec: FirstOrder, bindings: Sequence[Mapping[str, Any]]):
        self.constraints = spec.constraints
        self.bindings = [dict(b) for b in bindings]
        self.n = len(self.bindings)
        params = spec.target.param_names
        points: dict[tuple, int] = {}
        for b in self.bindings:
            for c in self.constraints:
                for call in c.calls():
                    for a in call.args:
                        if a.calls():
                            raise UnsupportedConstruct("nested applications of the target function")
                    key = tuple(eval_term(a, b, _no_call) for a in call.args)
                    points.setdefault(key, len(points))
        self.points = points
        self.inputs = [dict(zip(params, key)) for key in points]

    def _holds(self, outs: tuple, i: int) -> bool:
        points = self.points
        call = lambda args: outs[points[args]]  # noqa: E731
        b = self.bindings[i]
        return all(eval_term(c, b, call) is True for c in self.constraints)

    def solves(self, outs: tuple) -> bool:
        return all(self._holds(outs, i) for i in range(self.n))

    def satisfied(self, outs: tuple) -> frozenset[int]:
        return frozenset(i for i in range(self.n) if self._holds(outs, i))

    def find_solution(self, batch: list[tuple]) -> int:
        for j, outs in enumerate(batch):
            if self.solves(outs):
                return j
        return -1


def bindings_to_spec(spec: FirstOrder, bindings: Sequence[Mapping[str, Any]]) -> Any:
    """Examples when every constraint equates a call with a call-free term, else a ConstraintSpec."""
    shapes = [_equality_to_term(c) for c in spec.constraints]
    if any(s is None for s in shapes):
        return ConstraintSpec(spec, bindings)
    params = spec.target.param_names
    examples: list[Example] = []
    seen = set()
    for b in bindings:
        for call, rhs in shapes:
            args = tuple(eval_term(a, b, _no_call) for a in call.args)
            out = eval_term(rhs, b, _no_call)
            key = (args, type(out), out)
            if key not in seen:
                seen.add(key)
                examples.append(Example(dict(zip(params, args)), out))
    return examples


@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True)
class Counterexample:
    inputs: Mapping[str, Any]


class TooManyVariables(ValueError):
    pass


def holds_on(candidate: Program, spec: FirstOrder, binding: Mapping[str, Any]) -> bool:
    call = _candidate_call(candidate, spec.target.param_names)
    return all(eval_term(c, binding, call) is True for c in spec.constraints)


class ExhaustiveVerifier:
    """Checks every assignment of Boolean universals."""

    def __init__(self, max_vars: int = 24):
        self.max_vars = max_vars
        self.checks = 0

    def check(self, candidate: Program, spec: FirstOrder) -> Valid | Counterexample:
        names = list(spec.universals)
        if any(s is not Sort.BOOL for s in spec.universals.values()):
            raise ValueError("exhaustive verification needs Boolean universals")
        if len(names) > self.max_vars:
            raise TooManyVariables(f"{len(names)} variables > {self.max_vars}")
        for values in itertools.product((False, True), repeat=len(names)):
            binding = dict(zip(names, values))
            self.checks += 1
            if not holds_on(candidate, spec, binding):
                return Counterexample(binding)
        return Valid()


_CHARS = string.ascii_letters + string.digits + " <>-/.+_"


def corner_values(sort: Sort) -> list[Any]:
    if sort is Sort.BV:
        return [0, 1, BV_MASK, BV_SIGN, 0x5555555555555555, 0xAAAAAAAAAAAAAAAA]
    if sort is Sort.INT:
        return [0, 1, -1, INT_MIN, -INT_MIN - 1]
    if sort is Sort.BOOL:
        return [False, True]
    return ["", "a", " ", "-", "<a>"]


def random_value(rng: random.Random, sort: Sort) -> Any:
    if sort is Sort.BV:
        return rng.getrandbits(64)
    if sort is Sort.INT:
        return rng.choice((rng.randint(-16, 16), rng.randint(INT_MIN, -INT_MIN - 1)))
    if sort is Sort.BOOL:
        return rng.random() < 0.5
    return "".join(rng.choice(_CHARS) for _ in range(rng.randint(0, 8)))


class SampledVerifier:
    """Corner cases per variable, then ``n_samples`` seeded random bindings.

    With few variables every combination of corner values is tried;
    otherwise each variable takes each corner with the others at zero.
    """

    def __init__(self, seed: int, n_samples: int = 10_000):
        self.seed = seed
        self.n_samples = n_samples
        self.checks = 0

    def bindings(self, universals: Mapping[str, Sort]):
        names = list(universals)
        corners = [corner_values(universals[n]) for n in names]
        combos = 1
        for c in corners:
            combos *= len(c)
        if combos <= 4096:
            for values in itertools.product(*corners):
                yield dict(zip(names, values))
        else:
            zero = {n: corner_values(universals[n])[0] for n in names}
            for n, cs in zip(names, corners):
                for v in cs:
                    yield {**zero, n: v}
        rng = random.Random(self.seed)
        for _ in range(self.n_samples):
            yield {n: random_value(rng, universals[n]) for n in names}

    def check(self, candidate: Program, spec: FirstOrder) -> Valid | Counterexample:
        for binding in self.bindings(spec.universals):
            self.checks += 1
            if not holds_on(candidate, spec, binding):
                return Counterexample(binding)
        return Valid()


def exhaustive_verifier(max_vars: int = 24) -> ExhaustiveVerifier:
    return ExhaustiveVerifier(max_vars)


def sampled_verifier(seed: int, n_samples: int = 10_000) -> SampledVerifier:
    return SampledVerifier(seed, n_samples)


def default_verifier(spec: FirstOrder, seed: int = 0) -> Any:
    if spec.universals and all(s is Sort.BOOL for s in spec.universals.values()) \
            and len(spec.universals) <= 24:
        return ExhaustiveVerifier()
    return SampledVerifier(seed)


def zero_binding(universals: Mapping[str, Sort]) -> dict[str, Any]:
    zeros = {Sort.BV: 0, Sort.INT: 0, Sort.BOOL: False, Sort.STRING: ""}
    return {n: zeros[s] for n, s in universals.items()}


@dataclass
class CegisResult:
    program: Program | None
    iterations: int
    bindings: list[dict[str, Any]]
    candidates: int = 0
    levels: int = 0
    timed_out: bool = False


class Cegis:
    """Counterexample-guided loop around a fresh synthesizer per iteration.

    ``synth(grammar, spec, max_candidates, deadline)`` must return an object
    with ``program``, ``candidates`` and ``levels``; the default runs a new
    probe instance from the uniform grammar.
    """

    def __init__(self, problem: SygusProblem, config: ProbeConfig | None = None,
                 verifier: Any = None, synth: Callable[..., Any] | None = None,
                 deadline: float | None = None, max_iterations: int = 1000):
        self.problem = problem
        self.config = config or ProbeConfig()
        spec = extract_examples(problem)
        if isinstance(spec, Pbe):
            spec = FirstOrder(problem.target, dict(problem.universals),
                              [compile_term(c, problem) for c in problem.constraints])
        self.spec = spec
        self.verifier = verifier or default_verifier(spec)
        self.synth = synth or self._probe
        if deadline is None and self.config.timeout is not None:
            deadline = time.monotonic() + self.config.timeout
        self.deadline = deadline
        self.max_iterations = max_iterations

    def _probe(self, g: Grammar, spec: Any, max_candidates: int | None, deadline: float | None):
        cfg = dataclasses.replace(self.config, max_candidates=max_candidates)
        return Probe(g, spec, cfg, deadline=deadline).run()

    def run(self) -> CegisResult:
        bindings = [zero_binding(self.spec.universals)]
        result = CegisResult(None, 0, bindings)
        budget = self.config.max_candidates
        while result.iterations < self.max_iterations:
            result.iterations += 1
            spec = bindings_to_spec(self.spec, bindings)
            remaining = None if budget is None else budget - result.candidates
            out = self.synth(self.problem.grammar, spec, remaining, self.deadline)
            result.candidates += out.candidates
            result.levels += out.levels
            if out.program is None:
                result.timed_out = True
                return result
            verdict = self.verifier.check(out.program, self.spec)
            logger.info("cegis iteration %d: %s -> %s", result.iterations, out.program,
                        "valid" if isinstance(verdict, Valid) else "counterexample")
            if isinstance(verdict, Valid):
                result.program = out.program
                return result
            cex = dict(verdict.inputs)
            if cex in bindings:
                raise RuntimeError(f"verifier repeated binding {cex}")
            bindings.append(cex)
        result.timed_out = True
        return result


def cegis(problem: SygusProblem, config: ProbeConfig | None = None, verifier: Any = None,
          **kwargs: Any) -> Program | None:
    return Cegis(problem, config, verifier, **kwargs).run().program
