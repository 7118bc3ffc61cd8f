from fractions import Fraction
from itertools import combinations

import pytest

from PROB_TAYLOR.components.syntax import parse_lambda
from PROB_TAYLOR.components.tts import (
    bisimilarity,
    distinguishing_test_search,
    enumerate_tests,
    eval_tts_test,
    format_tts,
    lmc_bisimilarity,
    lmc_translation,
    parse_tts,
    parse_tts_test,
    print_tts_test,
    translation_agrees,
    tts_of_terms,
    tts_test_depth,
    validate,
    value_profiles,
)
from PROB_TAYLOR.constant import BOHM_LINEAR_LABEL
from PROB_TAYLOR.entity.trees import And, Omega
from PROB_TAYLOR.entity.tts import BranchArity, BranchProjection, BranchStep, LinStep, ResidualMark, TreeTransitionSystem
from PROB_TAYLOR.exceptions import KindMismatchError, MalformedSystemError, TermSyntaxError
from PROB_TAYLOR.utils.corpus import random_systems

HALF = Fraction(1, 2)

SAMPLE = """
# q0 and q1 reach a branching class with mass 1, q2 only with 1/2
lin q0 --a-> {s0: 1/2, s1: 1/2}
lin q1 --a-> {s2: 1}
lin q2 --a-> {s0: 1/2}
bra s0 --f->
bra s1 --f->
bra s2 --f->
"""


@pytest.fixture
def sample():
    return parse_tts(SAMPLE)


def test_parse_tts(sample):
    assert sample.linear_states == {"q0", "q1", "q2"}
    assert sample.branching_states == {"s0", "s1", "s2"}
    assert sample.delta[("q0", "a")] == {"s0": HALF, "s1": HALF}
    assert sample.gamma[("s0", "f")] == ()


def test_parse_tts_with_residuals_and_idle_states():
    tts = parse_tts("lin q0 --a-> {s0: 1/2, s1: 1/4}\nres q0 --a-> 1/4\nbra s0 --f-> q0 q1\nbra s1 --(lam 1 y)->\nlin q1\n")
    assert tts.residual("q0", "a") == Fraction(1, 4)
    assert tts.gamma[("s1", "lam 1 y")] == ()
    assert tts.linear_states == {"q0", "q1"}
    assert not tts.linear_labels_of("q1")


def test_format_parse(sample):
    assert parse_tts(format_tts(sample)) == sample
    tts, _ = tts_of_terms([parse_lambda("x (I (+1/2) Omega)")], 3, 8)
    assert parse_tts(format_tts(tts)) == tts


@pytest.mark.parametrize(
    "text",
    [
        "lin q0 --a-> {s0: 3/4, s1: 1/2}",
        "lin q0 --a-> {q0: 1}",
        "lin q0 --f-> {s0: 1}\nbra s0 --f->",
        "lin q0 --a-> {s0: 1/2}\nres q0 --a-> 3/4",
        "res q0 --a-> 1/4",
    ],
)
def test_malformed_systems(text):
    with pytest.raises(MalformedSystemError):
        parse_tts(text)


def test_syntax_error_reports_line():
    with pytest.raises(TermSyntaxError) as info:
        parse_tts("lin q0 --a-> {s0: 1}\nlin q0 -a-> {}\n")
    assert info.value.line == 2


# bisimilarity and tests


def test_bisimilarity(sample):
    partition = bisimilarity(sample)
    assert partition.equivalent("q0", "q1")
    assert not partition.equivalent("q0", "q2")
    assert partition.equivalent("s0", "s2")
    assert len(partition.linear) == 2
    assert len(partition.branching) == 1


def test_residual_separates_states():
    tts = parse_tts("lin q0 --a-> {s0: 1/2}\nres q0 --a-> 1/2\nlin q1 --a-> {s0: 1/2}\nbra s0 --f->")
    assert not bisimilarity(tts).equivalent("q0", "q1")


def test_arity_separates_branching_states():
    tts = parse_tts("bra s0 --f-> q0\nbra s1 --f-> q0 q0\nlin q0")
    assert not bisimilarity(tts).equivalent("s0", "s1")


def test_eval_tts_test(sample):
    test = parse_tts_test("a(f())")
    assert test == LinStep("a", BranchStep("f", ()))
    assert eval_tts_test(sample, "q0", test) == 1
    assert eval_tts_test(sample, "q2", test) == HALF
    assert eval_tts_test(sample, "q0", parse_tts_test("b()")) == 0
    assert eval_tts_test(sample, "s0", parse_tts_test("f() & f()", linear=False)) == 1


def test_arity_mismatch_fails(sample):
    assert eval_tts_test(sample, "s0", BranchStep("f", (Omega(),))) == 0


def test_eval_checks_sorts(sample):
    with pytest.raises(KindMismatchError):
        eval_tts_test(sample, "q0", BranchStep("f"))
    with pytest.raises(KindMismatchError):
        eval_tts_test(sample, "s0", LinStep("a"))


def test_print_parse_tts_test():
    test = And(LinStep("a", BranchStep("lam 1 #0", (LinStep("ev"), Omega()))), LinStep("b"))
    assert print_tts_test(test) == "a((lam 1 #0)(ev(), w)) & b()"
    assert parse_tts_test(print_tts_test(test)) == test
    assert tts_test_depth(test) == 2


def test_distinguishing_test_search(sample):
    test = distinguishing_test_search(sample, "q0", "q2", 2)
    assert test is not None
    assert eval_tts_test(sample, "q0", test) != eval_tts_test(sample, "q2", test)
    assert distinguishing_test_search(sample, "q0", "q1", 3) is None
    with pytest.raises(KindMismatchError):
        distinguishing_test_search(sample, "q0", "s0", 2)


def test_enumerate_tests_levels(sample):
    levels = list(enumerate_tests(sample, 2))
    assert [d for d, _, _ in levels] == [0, 1, 2]
    for d, linear, branching in levels:
        assert all(tts_test_depth(t) <= d for t in linear)
        assert all(tts_test_depth(t) <= d for t in branching)


# Markov chain translation


def test_lmc_translation():
    tts = parse_tts("lin q0 --a-> {s0: 1/2}\nres q0 --a-> 1/4\nbra s0 --f-> q0 q1\nlin q1")
    lmc = lmc_translation(tts)
    assert lmc.step("s0", BranchArity("f", 2)) == {"s0": 1}
    assert lmc.step("s0", BranchProjection("f", 2, 2)) == {"q1": 1}
    assert lmc.step("q0", ResidualMark("a", Fraction(1, 4))) == {"q0": 1}
    assert lmc.step("q0", "a") == {"s0": HALF}
    assert translation_agrees(tts)


def test_lmc_bisimilarity_matches_sample(sample):
    blocks = lmc_bisimilarity(lmc_translation(sample))
    assert any({"q0", "q1"} <= block for block in blocks)
    assert not any({"q0", "q2"} <= block for block in blocks)
    assert translation_agrees(sample)


# Böhm tree systems


def test_tts_of_identity():
    tts, names = tts_of_terms([parse_lambda("I")], 1, 1)
    assert tts.size == 2
    assert names[parse_lambda("I")] == "q0"


def test_tts_of_running_example(delta_choice):
    tts, names = tts_of_terms([delta_choice], 1, 16)
    q = names[delta_choice]
    assert tts.delta[(q, BOHM_LINEAR_LABEL)] == {"s0": Fraction(1, 4)}
    assert tts.residual(q, BOHM_LINEAR_LABEL) == Fraction(3, 4)


def test_tts_of_commuted_choices():
    M, N = parse_lambda("x (+1/2) y"), parse_lambda("y (+1/2) x")
    tts, names = tts_of_terms([M, N], 2, 4)
    assert bisimilarity(tts).equivalent(names[M], names[N])


def test_tts_of_distinct_terms():
    M, N = parse_lambda("x (+1/3) y"), parse_lambda("x (+1/2) y")
    tts, names = tts_of_terms([M, N], 2, 4)
    assert not bisimilarity(tts).equivalent(names[M], names[N])
    test = distinguishing_test_search(tts, names[M], names[N], 2)
    assert test is not None


# random systems


def test_value_profiles_agree_with_evaluation(sample):
    profiles = value_profiles(sample, 2)
    tests = {"q": [], "s": []}
    for _, linear, branching in enumerate_tests(sample, 2):
        tests["q"].extend(linear)
        tests["s"].extend(branching)
    for state, profile in profiles.items():
        assert profile == tuple(eval_tts_test(sample, state, t) for t in tests[state[0]])


def _check_corpus(systems, search, threshold):
    separated, distinct, missed = 0, 0, []
    for index, tts in enumerate(systems):
        assert translation_agrees(tts), index
        partition = bisimilarity(tts)
        profiles = value_profiles(tts, 4, search)
        for states in (tts.linear_states, tts.branching_states):
            for a, b in combinations(sorted(states), 2):
                if partition.equivalent(a, b):
                    assert profiles[a] == profiles[b], (index, a, b)
                else:
                    distinct += 1
                    if profiles[a] != profiles[b]:
                        separated += 1
                    else:
                        missed.append((index, a, b))
    assert distinct > 0
    assert separated >= threshold * distinct, missed


def test_random_systems(corpus_config, search_config):
    _check_corpus(random_systems(corpus_config, 20), search_config, 0.9)


@pytest.mark.slow
def test_random_systems_corpus(corpus_config, search_config):
    _check_corpus(random_systems(corpus_config), search_config, 0.95)


def test_validate_rejects_mixed_sorts():
    tts = TreeTransitionSystem(frozenset({"q0"}), frozenset({"q0"}), frozenset({"a"}), frozenset({"f"}))
    with pytest.raises(MalformedSystemError):
        validate(tts)
    validate(parse_tts(SAMPLE))
