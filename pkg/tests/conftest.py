import random

import pytest

from probesynth.dsl import Example, Program, Sort
from probesynth.grammar import Grammar, Pcfg

ARG = "arg"
REMOVE_ANGLES = [
    Example({ARG: "a < 4 and a > 0"}, "a  4 and a  0"),
    Example({ARG: "<open and <close>"}, "open and close"),
    Example({ARG: "<Change> <string> to <a> number"}, "Change string to a number"),
]

REPLACE_2 = '(replace (replace arg "<" "") ">" "")'
REPLACE_3 = '(replace (replace (replace arg "<" "") "<" "") ">" "")'
REPLACE_6 = ('(replace (replace (replace (replace (replace (replace arg "<" "") "<" "") '
             '"<" "") ">" "") ">" "") ">" "")')


def angles_grammar() -> Grammar:
    return Grammar.build("S", {"S": Sort.STRING}, [
        ("S", ("var", ARG)), ("S", ("lit", "")), ("S", ("lit", "<")), ("S", ("lit", ">")),
        ("S", "replace", "S", "S", "S"), ("S", "concat", "S", "S"),
    ])


def hand_pcfg(g: Grammar) -> Pcfg:
    # the printed probabilities sum to 0.999, so they are normalized
    return Pcfg.from_weights(g, [0.188 if r.name != "concat" else 0.059 for r in g.productions])


@pytest.fixture
def g3():
    return angles_grammar()


def random_program(g: Grammar, nt: str, rng: random.Random, depth: int = 3) -> Program:
    prods = g.by_lhs[nt]
    if depth <= 0:
        leaves = [r for r in prods if not r.rhs]
        if leaves:
            prods = leaves
    prod = rng.choice(prods)
    return Program(prod, tuple(random_program(g, n, rng, depth - 1) for n in prod.rhs))


# pass/fail lines of the acceptance suite, printed in the terminal summary
ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    def record(number, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        print(line)
        ACCEPTANCE.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
