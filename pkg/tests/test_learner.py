import random

import pytest
from hypothesis import given, settings, strategies as st

from probesynth.dsl import Example, Sort
from probesynth.enumerator import PartialSolution
from probesynth.grammar import Grammar, cost_model, program_cost, uniform_pcfg
from probesynth.learner import (Probe, ProbeConfig, PromisingStore, SelectionScheme, fit,
                                pcfg_from_fits, probe, select, update_pcfg)
from probesynth.corpus import benchmark_path
from probesynth.sygus import parse_program, parse_sygus_file

from conftest import REMOVE_ANGLES, REPLACE_2, REPLACE_3, angles_grammar, random_program


def scheme_cycles():
    """Partial solutions over four examples, grouped by the cycle that found them."""
    g = parse_sygus_file(benchmark_path("phone")).grammar
    rows = [
        ("(substr arg 4 3)", {0, 1}, 20),
        ('(replace (substr arg 4 3) " " arg)', {0, 1}, 21),
        ("(substr arg (indexof arg (at arg 5) 3) 3)", {1, 2}, 37),
        ("(substr arg (- 4 (to.int (at arg 4))) 3)", {1, 2}, 37),
    ]
    ps = [PartialSolution(parse_program(t, g), frozenset(s), c) for t, s, c in rows]
    return ps, [[ps[0]], [ps[1]], [ps[2], ps[3]]]


def run_cycles(cycles, scheme):
    store = PromisingStore()
    chosen = []
    for psol in cycles:
        selected, store = select(psol, store, scheme)
        chosen.extend(selected)
    return chosen


@pytest.mark.parametrize("scheme, expected", [
    (SelectionScheme.LARGEST_SUBSET, [0]),
    (SelectionScheme.FIRST_CHEAPEST, [0, 2]),
    (SelectionScheme.ALL_CHEAPEST, [0, 2, 3]),
    (SelectionScheme.ALL, [0, 1, 2, 3]),
])
def test_scheme_selection(scheme, expected):
    ps, cycles = scheme_cycles()
    chosen = run_cycles(cycles, scheme)
    assert [ps.index(s) for s in chosen] == expected


def test_first_cheapest_prefers_first_discovered():
    ps, _ = scheme_cycles()
    selected, _ = select([ps[3], ps[2]], PromisingStore(), SelectionScheme.FIRST_CHEAPEST)
    assert selected == [ps[3]]


def test_strictly_cheaper_is_rewarded_again():
    ps, _ = scheme_cycles()
    store = PromisingStore()
    select([ps[1]], store, SelectionScheme.FIRST_CHEAPEST)
    selected, _ = select([ps[0]], store, SelectionScheme.FIRST_CHEAPEST)
    assert selected == [ps[0]]
    assert store.by_subset[frozenset({0, 1})] == (20, [ps[0]])


def sol(g, text, sat):
    p = parse_program(text, g)
    return PartialSolution(p, frozenset(sat), program_cost(p, cost_model(uniform_pcfg(g))))


def test_fit_examples():
    g = angles_grammar()
    replace, concat = g.find("S", "replace"), g.find("S", "concat")
    r2 = sol(g, REPLACE_2, {0})
    r3 = sol(g, REPLACE_3, {0, 1})
    assert fit(replace, [r2], 3) == pytest.approx(1 / 3)
    assert fit(concat, [r2], 3) == 0
    assert fit(replace, [r2, r3], 3) == pytest.approx(2 / 3)
    assert fit(replace, [], 3) == 0


def test_update_examples():
    g = angles_grammar()
    r2 = sol(g, REPLACE_2, {0})
    r3 = sol(g, REPLACE_3, {0, 1})
    assert cost_model(update_pcfg(g, [r2], 3)).cost == (2, 2, 2, 2, 2, 3)
    pcfg = update_pcfg(g, [r2, r3], 3)
    assert cost_model(pcfg).cost == (2, 2, 2, 2, 2, 4)
    assert pcfg.prob[0] == pytest.approx(0.188, abs=1e-3)
    assert pcfg.prob[5] == pytest.approx(0.059, abs=3e-3)
    assert update_pcfg(g, [], 3).prob == pytest.approx(uniform_pcfg(g).prob)


def phone_grammar():
    return parse_sygus_file(benchmark_path("phone")).grammar


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_no_double_reward(seed):
    g = phone_grammar()
    rng = random.Random(seed)
    psol = [PartialSolution(random_program(g, g.start, rng, 3),
                            frozenset(rng.sample(range(4), rng.randint(1, 3))), rng.randint(1, 30))
            for _ in range(rng.randint(1, 12))]
    for scheme in SelectionScheme:
        store = PromisingStore()
        select(psol, store, scheme)
        again, _ = select(psol, store, scheme)
        assert again == []
        if scheme is not SelectionScheme.ALL:
            for best, sols in store.by_subset.values():
                assert all(s.cost == best for s in sols)


@settings(max_examples=100)
@given(st.data())
def test_reward_monotonicity(data):
    g = phone_grammar()
    fits = data.draw(st.lists(st.floats(0, 1), min_size=len(g), max_size=len(g)))
    pcfg = pcfg_from_fits(g, fits)
    cm = cost_model(pcfg)
    for prods in g.by_lhs.values():
        for r1 in prods:
            for r2 in prods:
                if fits[r1.id] >= fits[r2.id]:
                    assert pcfg.prob[r1.id] >= pcfg.prob[r2.id] - 1e-15
                    assert cm.cost[r1.id] <= cm.cost[r2.id]


def test_probe_config_validation():
    with pytest.raises(ValueError):
        ProbeConfig(lim_factor=0)


def test_probe_leaf_solution():
    g = angles_grammar()
    result = Probe(g, [Example({"arg": "x"}, "<")]).run()
    assert str(result.program) == '"<"'
    assert len(result.cycles) == 1
    assert result.levels <= 3 + 1


def test_probe_short_solved_before_update():
    g = angles_grammar()
    result = Probe(g, REMOVE_ANGLES[:2]).run()
    assert result.program.size == 10
    assert not any(c.restarted for c in result.cycles)
    assert len(result.cycles) == 2


def test_probe_restart_hygiene():
    g = angles_grammar()
    result = Probe(g, REMOVE_ANGLES, ProbeConfig(max_candidates=300_000)).run()
    lim = 6 * 3
    for prev, cur in zip(result.cycles, result.cycles[1:]):
        if prev.restarted:
            assert cur.levels[0] == 0
        else:
            assert cur.levels[0] == prev.levels[0] + lim + 1


def test_probe_timeout_returns_none():
    g = angles_grammar()
    result = Probe(g, REMOVE_ANGLES, ProbeConfig(timeout=0.05)).run()
    assert result.program is None and result.timed_out


def test_probe_wrapper_and_initial_pcfg():
    g = Grammar.build("S", {"S": Sort.BOOL}, [("S", ("var", "a")), ("S", "not", "S")])
    examples = [Example({"a": True}, False), Example({"a": False}, True)]
    assert str(probe(g, examples)) == "(not a)"
    cfg = ProbeConfig(initial_pcfg=uniform_pcfg(g))
    assert str(probe(g, examples, cfg)) == "(not a)"
