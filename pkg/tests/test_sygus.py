import itertools

import pytest
from hypothesis import given, settings, strategies as st

from probesynth.corpus import all_benchmarks, benchmark_path
from probesynth.dsl import BV_MASK, Sort, eval_program
from probesynth.learner import Probe, ProbeConfig
from probesynth.sexpr import ParseError, parse_all, parse_one
from probesynth.sygus import (Cegis, ConstraintSpec, Counterexample, ExhaustiveVerifier, FirstOrder,
                              Pbe, SampledVerifier, TooManyVariables, UnsupportedConstruct, Valid,
                              compile_term, eval_constraint, extract_examples, format_problem,
                              holds_on, load_examples, parse_program, parse_sygus,
                              parse_sygus_file)

from conftest import REMOVE_ANGLES, REPLACE_6

FIG3 = benchmark_path("remove-angles").read_text()

HD11 = """
(set-logic BV)
(synth-fun f ((x (BitVec 64)) (y (BitVec 64))) Bool
  ((Start Bool ((bvult V V) (bvugt V V)))
   (V (BitVec 64) (x y (bvand V V) (bvnot V)))))
(declare-var x (BitVec 64))
(declare-var y (BitVec 64))
(constraint (= (f x y) (bvugt (bvand x (bvnot y)) y)))
(check-synth)
"""

HD18 = """
(set-logic BV)
(synth-fun f ((x (BitVec 64))) Bool
  ((Start Bool ((bvult V V) (bvredor V)))
   (V (BitVec 64) (x (bvxor V V) (bvneg V) (bvand V V)))))
(declare-var x (BitVec 64))
(constraint (= (f x) (and (not (bvredor (bvand (bvsub x #x0000000000000001) x))) (bvredor x))))
(check-synth)
"""


def test_parse_angles_problem():
    p = parse_sygus(FIG3)
    assert len(p.grammar) == 6
    assert p.logic == "SLIA"
    assert p.target.params == (("arg", Sort.STRING),)
    spec = extract_examples(p)
    assert isinstance(spec, Pbe)
    assert [(e.inputs, e.output) for e in spec.examples] == [(e.inputs, e.output) for e in REMOVE_ANGLES]


def test_undeclared_nonterminal():
    text = FIG3.replace("(concat Start Start)", "(concat Start Other)")
    with pytest.raises(ParseError) as info:
        parse_sygus(text)
    assert info.value.line == 4 and info.value.col > 1


def test_parse_errors_have_positions():
    with pytest.raises(ParseError) as info:
        parse_all('(a\n  (b "unterminated)')
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_all("(a))")
    with pytest.raises(ParseError) as info:
        parse_all("(a\n(b)")
    assert (info.value.line, info.value.col) == (1, 1)


def test_literals():
    node = parse_one('(f "say ""hi""" 12 -3 #x0f #b101 true false)')
    values = [x.value for x in node.items[1:]]
    assert values == ['say "hi"', 12, -3, 15, 5, True, False]
    assert str(node) == '(f "say ""hi""" 12 -3 #x000000000000000f #x0000000000000005 true false)'


@pytest.mark.parametrize("change", [
    ("(set-logic SLIA)", "(set-logic SLIA)\n(define-fun g ((x String)) String x)"),
    ('(arg "" "<"', '(arg (Constant String) "<"'),
    ("(concat Start Start)", '(concat Start "x")'),
    ("(set-logic SLIA)", "(set-logic NRA)"),
])
def test_unsupported_constructs(change):
    with pytest.raises(UnsupportedConstruct):
        parse_sygus(FIG3.replace(*change))


def test_unsupported_widths_and_units():
    with pytest.raises(UnsupportedConstruct):
        parse_sygus(HD18.replace("(BitVec 64)", "(BitVec 32)"))
    unit = HD18.replace("(x (bvxor V V)", "(x Start (bvxor V V)")
    with pytest.raises(UnsupportedConstruct):
        parse_sygus(unit)


def test_start_unit_production_collapses():
    text = """
    (set-logic BV)
    (synth-fun f ((x (BitVec 64))) (BitVec 64)
      ((Start (BitVec 64) (B))
       (B (BitVec 64) (x (bvneg B)))))
    (declare-var x (BitVec 64))
    (constraint (= (f x) (bvneg x)))
    """
    p = parse_sygus(text)
    assert p.grammar.start == "B" and len(p.grammar) == 2
    assert p.logic == "BV"


def test_grammar_sort_checked():
    with pytest.raises(ParseError):
        parse_sygus(FIG3.replace("(concat Start Start)", "(len Start)"))
    with pytest.raises(ParseError):
        parse_sygus(FIG3.replace('"<"', "4"))


@pytest.mark.parametrize("path", all_benchmarks(), ids=lambda p: p.stem)
def test_round_trip_bundled(path):
    p = parse_sygus_file(path)
    again = parse_sygus(format_problem(p))
    assert again == p
    assert format_problem(again) == format_problem(p)


@settings(max_examples=100)
@given(st.lists(st.text(alphabet='ab"<> -', max_size=5), min_size=1, max_size=4, unique=True),
       st.lists(st.tuples(st.text(alphabet='ab"<>', max_size=6), st.text(alphabet='ab"', max_size=6)),
                max_size=4))
def test_round_trip_random(literals, pairs):
    lits = " ".join('"' + s.replace('"', '""') + '"' for s in literals)
    cons = "\n".join('(constraint (= (f "{}") "{}"))'.format(i.replace('"', '""'), o.replace('"', '""'))
                     for i, o in pairs)
    text = f"""(set-logic SLIA)
(synth-fun f ((arg String)) String ((Start String (arg {lits} (replace Start Start Start)))))
{cons}
"""
    p = parse_sygus(text)
    assert parse_sygus(format_problem(p)) == p
    spec = extract_examples(p)
    assert [e.output for e in spec.examples] == [o for _, o in pairs]


def test_extract_examples_shapes():
    p = parse_sygus(FIG3.replace('(constraint (= (f "a < 4 and a > 0") "a  4 and a  0"))',
                                 '(constraint (= "a  4 and a  0" (f "a < 4 and a > 0")))'))
    spec = extract_examples(p)
    assert isinstance(spec, Pbe) and spec.examples[0].output == "a  4 and a  0"
    empty = parse_sygus(FIG3.split("(constraint")[0])
    assert extract_examples(empty) == Pbe([])
    assert isinstance(extract_examples(parse_sygus(HD11)), FirstOrder)


def test_negative_int_examples():
    text = """(set-logic SLIA)
    (synth-fun f ((n Int)) Int ((I Int (n 0 (- I I)))))
    (constraint (= (f 3) (- 3)))
    (constraint (= (f -2) 2))
    """
    spec = extract_examples(parse_sygus(text))
    assert [(e.inputs["n"], e.output) for e in spec.examples] == [(3, -3), (-2, 2)]


def test_undeclared_variable_in_constraint():
    with pytest.raises(ParseError):
        parse_sygus(HD11.replace("(declare-var y (BitVec 64))", ""))


def test_eval_constraint_identity():
    text = """(set-logic BV)
    (synth-fun f ((x (BitVec 64))) (BitVec 64) ((Start (BitVec 64) (x))))
    (declare-var x (BitVec 64))
    (constraint (= (f x) x))
    """
    p = parse_sygus(text)
    term = compile_term(p.constraints[0], p)
    ident = parse_program("x", p.grammar)
    for x in (0, 1, BV_MASK, 12345):
        assert eval_constraint(term, ident, {"x": x}) is True


def test_eval_constraint_replace6():
    p = parse_sygus(FIG3)
    r6 = parse_program(REPLACE_6, p.grammar)
    assert all(eval_constraint(compile_term(c, p), r6, {}) for c in p.constraints)


def test_hd18_solution_at_zero():
    p = parse_sygus(HD18)
    sol = parse_program("(bvult (bvxor x (bvneg x)) (bvneg x))", p.grammar)
    x = 0
    neg = -x & BV_MASK
    candidate = (x ^ neg) < neg
    reference = (((x - 1) & BV_MASK) & x) == 0 and x != 0
    term = compile_term(p.constraints[0], p)
    assert eval_constraint(term, sol, {"x": x}) is (candidate == reference)


def test_parse_program_aliases():
    p = parse_sygus(FIG3)
    a = parse_program('(str.replace arg "<" "")', p.grammar)
    b = parse_program('(replace arg "<" "")', p.grammar)
    assert a == b
    with pytest.raises(ParseError):
        parse_program('(replace arg "x" "")', p.grammar)


def xor_problem():
    return parse_sygus_file(benchmark_path("circuit-xor"))


def test_exhaustive_verifier():
    p = xor_problem()
    spec = extract_examples(p)
    v = ExhaustiveVerifier()
    good = parse_program("(and (or a b) (not (and a b)))", p.grammar)
    assert v.check(good, spec) == Valid() and v.checks == 4
    bad = parse_program("(or a b)", p.grammar)
    cex = v.check(bad, spec)
    assert cex == Counterexample({"a": True, "b": True})
    assert not holds_on(bad, spec, cex.inputs)


def test_exhaustive_too_many_variables():
    names = [f"v{i}" for i in range(25)]
    text = "(set-logic BV)\n(synth-fun f ({}) Bool ((Start Bool ({} (not Start)))))\n".format(
        " ".join(f"({n} Bool)" for n in names), " ".join(names))
    text += "".join(f"(declare-var {n} Bool)\n" for n in names)
    text += "(constraint (= (f {0}) (f {0})))\n".format(" ".join(names))
    p = parse_sygus(text)
    spec = FirstOrder(p.target, p.universals, [compile_term(c, p) for c in p.constraints])
    with pytest.raises(TooManyVariables):
        ExhaustiveVerifier(24).check(parse_program("v0", p.grammar), spec)


def test_cegis_circuit():
    p = xor_problem()
    result = Cegis(p, verifier=ExhaustiveVerifier()).run()
    prog = result.program
    for a, b in itertools.product((False, True), repeat=2):
        assert eval_program(prog, {"a": a, "b": b}) == (a != b)
    assert len(result.bindings) == result.iterations
    assert len({tuple(b.items()) for b in result.bindings}) == len(result.bindings)
    spec = extract_examples(p)
    assert all(holds_on(prog, spec, b) for b in result.bindings)


def test_cegis_one_iteration():
    text = """(set-logic BV)
    (synth-fun f ((x (BitVec 64))) (BitVec 64) ((Start (BitVec 64) (x (bvneg Start)))))
    (declare-var x (BitVec 64))
    (constraint (= (f x) x))
    """
    result = Cegis(parse_sygus(text), verifier=SampledVerifier(1, 100)).run()
    assert str(result.program) == "x" and result.iterations == 1


def test_cegis_hd11_sampled():
    p = parse_sygus(HD11)
    prog = Cegis(p, verifier=SampledVerifier(seed=5)).run().program
    assert prog is not None
    spec = extract_examples(p)
    checker = SampledVerifier(seed=99, n_samples=10_000)
    assert checker.check(prog, spec) == Valid()
    assert checker.checks >= 10_000


def test_sampled_verifier_deterministic():
    p = parse_sygus_file(benchmark_path("hd-01"))
    spec = extract_examples(p)
    wrong = parse_program("(bvand x (bvsub x x))", p.grammar)
    a = SampledVerifier(7).check(wrong, spec)
    b = SampledVerifier(7).check(wrong, spec)
    assert a == b and isinstance(a, Counterexample)
    assert list(SampledVerifier(3, 20).bindings(spec.universals)) == \
        list(SampledVerifier(3, 20).bindings(spec.universals))


@pytest.mark.parametrize("mutant", ["(bvashr x #x000000000000003f)",
                                    "(bvlshr (bvneg x) #x000000000000003f)"])
def test_hd13_mutants_rejected_by_corners(mutant):
    p = parse_sygus_file(benchmark_path("hd-13"))
    spec = extract_examples(p)
    right = parse_program("(bvor (bvashr x #x000000000000003f) (bvlshr (bvneg x) #x000000000000003f))",
                          p.grammar)
    corners_only = SampledVerifier(0, n_samples=0)
    assert corners_only.check(right, spec) == Valid()
    assert isinstance(corners_only.check(parse_program(mutant, p.grammar), spec), Counterexample)


def test_constraint_spec_general_constraints():
    text = """(set-logic BV)
    (synth-fun f ((a Bool) (b Bool)) Bool ((Start Bool (a b (and Start Start) (not Start)))))
    (declare-var a Bool)
    (declare-var b Bool)
    (constraint (= (f a b) (f b a)))
    (constraint (=> a (f a b)))
    (constraint (not (f false false)))
    """
    p = parse_sygus(text)
    spec = extract_examples(p)
    assert isinstance(spec, FirstOrder)
    cs = ConstraintSpec(spec, [{"a": True, "b": False}])
    # the call points are (a, b), (b, a) and (false, false)
    assert len(cs.inputs) == 3 and cs.n == 1
    result = Cegis(p, verifier=ExhaustiveVerifier()).run()
    assert ExhaustiveVerifier().check(result.program, spec) == Valid()
    for a, b in itertools.product((False, True), repeat=2):
        assert eval_program(result.program, {"a": a, "b": b}) == (a or b)


def test_pbe_path_equivalence():
    p = parse_sygus(FIG3)
    pbe = extract_examples(p)
    direct = Probe(p.grammar, pbe.examples, ProbeConfig()).run()
    via = Cegis(p, verifier=SampledVerifier(0, 10)).run()
    assert str(via.program) == str(direct.program)
    assert via.iterations == 1 and via.candidates == direct.candidates


def test_load_examples():
    p = parse_sygus(FIG3)
    held = load_examples('(constraint (= (f "<x>") "x"))\n(constraint (= (f "") ""))', p)
    assert [(e.inputs["arg"], e.output) for e in held] == [("<x>", "x"), ("", "")]
    assert len(load_examples(FIG3, p)) == 3
