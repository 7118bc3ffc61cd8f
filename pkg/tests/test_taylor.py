import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given

from PROB_TAYLOR.components.bohm import nesting_depth, pt_approximant, taylor_of_tree
from PROB_TAYLOR.components.operational import left_reduct_term, substitute_term
from PROB_TAYLOR.components.resource import (
    is_regular,
    left_reduct_combination,
    multinomial,
    normalize,
    occurrences,
    size,
    substitute,
)
from PROB_TAYLOR.components.syntax import parse_lambda, parse_resource
from PROB_TAYLOR.components.taylor import (
    barycentric_equiv_check,
    erase,
    erase_combination,
    explicit_taylor,
    explicit_taylor_nf,
    explicit_taylor_support,
    generic_taylor,
    generic_taylor_direct,
    taylor_nf,
)
from PROB_TAYLOR.entity.combination import Combination
from PROB_TAYLOR.entity.config import TruncationBudget
from PROB_TAYLOR.entity.terms import Abs, App, Bag, Choice, Free, LinApp, LTag, RAbs, RTag, Var
from PROB_TAYLOR.utils.corpus import random_lambda_term, random_terms

from tests.strategies import lambda_terms

x, y, z = Free("x"), Free("y"), Free("z")
HALF, THIRD = Fraction(1, 2), Fraction(1, 3)
SMALL = TruncationBudget(6, 2)
SWEEP = TruncationBudget(7, 2)


def test_explicit_taylor_of_application(budget):
    expansion = explicit_taylor(parse_lambda("x y"), budget)
    assert expansion.coefficient(parse_resource("x []")) == 1
    assert expansion.coefficient(parse_resource("x [y]")) == 1
    assert expansion.coefficient(parse_resource("x [y, y]")) == HALF
    assert expansion.coefficient(parse_resource("x [y, y, y]")) == Fraction(1, 6)
    assert len(expansion) == 4


def test_explicit_taylor_tags_choices(budget):
    expansion = explicit_taylor(parse_lambda(r"\z. z (+1/3) x"), budget)
    assert expansion == Combination({RAbs(LTag(THIRD, Var(0))): 1, RAbs(RTag(THIRD, x)): 1})


def test_explicit_taylor_respects_size_bound():
    expansion = explicit_taylor(parse_lambda("x y"), TruncationBudget(3, 5))
    assert parse_resource("x [y]") in expansion
    assert parse_resource("x [y, y]") not in expansion


@given(lambda_terms())
def test_explicit_expansion_is_regular(M):
    assert is_regular(explicit_taylor(M, SMALL))


@given(lambda_terms())
def test_support_matches_expansion(M):
    assert explicit_taylor_support(M, SMALL) == set(explicit_taylor(M, SMALL).support())


@given(lambda_terms())
def test_generic_expansion_by_erasure_matches_direct(M):
    assert generic_taylor(M, SMALL) == generic_taylor_direct(M, SMALL)


def test_erase():
    erased = erase(parse_resource("x [l{1/2} y, r{1/3} z]"))
    assert erased.term == parse_resource("x [y, z]")
    assert erased.weight == Fraction(1, 3)
    assert erase_combination(Combination({LTag(HALF, x): 1, RTag(HALF, x): 1})) == Combination.of(x)


M1, M2, M3 = x, App(y, z), Abs(Var(0))


@pytest.mark.parametrize(
    "left, right",
    [
        (Choice(THIRD, M1, M1), M1),
        (Choice(THIRD, M1, M2), Choice(1 - THIRD, M2, M1)),
        (
            Choice(HALF, M1, Choice(THIRD, M2, M3)),
            Choice(Fraction(3, 4), Choice(Fraction(2, 3), M1, M2), M3),
        ),
        (Choice(Fraction(1), M1, M2), M1),
        (App(x, Choice(HALF, M2, M2)), App(x, M2)),
    ],
)
def test_barycentric_laws_hold_for_generic_expansion(left, right, budget):
    assert barycentric_equiv_check(left, right, budget)


def test_explicit_expansion_sees_choice_order(budget):
    left, right = parse_lambda("x (+1/2) y"), parse_lambda("y (+1/2) x")
    assert explicit_taylor(left, budget) != explicit_taylor(right, budget)
    assert generic_taylor(left, budget) == generic_taylor(right, budget)


# normal forms


def test_taylor_nf_of_running_example(delta_choice, budget):
    normal, residual = taylor_nf(delta_choice, budget, 16)
    assert normal == Combination.of(RAbs(Var(0)), Fraction(1, 4))
    assert residual == Fraction(3, 4)


def test_taylor_nf_without_choice(budget):
    normal, residual = taylor_nf(parse_lambda("Delta I"), budget, 16)
    assert normal == Combination.of(RAbs(Var(0)))
    assert residual == 0


def test_explicit_taylor_nf_keeps_tags(delta_choice, budget):
    normal, residual = explicit_taylor_nf(delta_choice, budget, 16)
    assert normal == Combination.of(LTag(HALF, LTag(HALF, RAbs(Var(0)))))
    assert residual == Fraction(3, 4)
    assert erase_combination(normal) == taylor_nf(delta_choice, budget, 16)[0]


@pytest.mark.parametrize("text", ["x (y (+1/2) z)", r"\z. z (I (+1/3) x)", "Delta (I (+1/2) Omega)"])
def test_explicit_normal_form_is_regular(text, budget):
    normal, _ = explicit_taylor_nf(parse_lambda(text), TruncationBudget(8, 2), 16)
    assert not normal.is_zero()
    for s, c in normal.items():
        assert c == Fraction(1, multinomial(s))


def test_explicit_normal_form_of_choice_argument():
    normal, residual = explicit_taylor_nf(parse_lambda("x (y (+1/2) z)"), TruncationBudget(8, 2), 4)
    assert normal.coefficient(parse_resource("x [l{1/2} y, r{1/2} z]")) == 1
    assert normal.coefficient(parse_resource("x [l{1/2} y, l{1/2} y]")) == HALF
    assert len(normal) == 6
    assert residual == 0


@pytest.mark.parametrize("text, budget_", [("I x", TruncationBudget(8, 3)), ("Delta I", TruncationBudget(10, 3))])
def test_normal_form_agrees_with_normalized_expansion(text, budget_):
    M = parse_lambda(text)
    through_reduction, residual = explicit_taylor_nf(M, budget_, 16)
    through_expansion = normalize(explicit_taylor(M, budget_))
    assert residual == 0
    shared = set(through_reduction.support()) & set(through_expansion.support())
    assert shared
    for s in shared:
        assert through_reduction.coefficient(s) == through_expansion.coefficient(s)


def test_normalized_expansion_of_application():
    assert normalize(explicit_taylor(parse_lambda("I x"), TruncationBudget(8, 3))) == Combination.of(x)


@pytest.mark.parametrize(
    "text",
    [
        "x (I (+1/2) Omega)",
        r"\y. y (x (+1/3) y) (Delta I)",
        "x (y (+1/2) z) (+1/2) x y",
    ],
)
def test_normal_form_coefficients_come_from_bohm_approximants(text):
    M = parse_lambda(text)
    b = TruncationBudget(8, 2)
    normal, _ = taylor_nf(M, b, 12)
    assert not normal.is_zero()
    for s, c in normal.items():
        tree = pt_approximant(M, nesting_depth(s), 12)
        assert taylor_of_tree(tree, b).coefficient(s) == c, s


def test_taylor_nf_residual_brackets_unresolved_arguments(budget):
    normal, residual = taylor_nf(parse_lambda("x (I (+1/2) Omega)"), TruncationBudget(8, 2), 12)
    assert normal.coefficient(parse_resource("x []")) == 1
    assert normal.coefficient(parse_resource("x [I]")) == HALF
    assert normal.coefficient(parse_resource("x [I, I]")) == Fraction(1, 8)
    assert residual > 0
    assert LinApp(x, parse_resource("[]")) in normal


# expansion against reduction


def _check_left_reduct_commutes(M, b) -> int:
    through_term = explicit_taylor(left_reduct_term(M), b)
    through_expansion = left_reduct_combination(explicit_taylor(M, b))
    assert set(through_expansion.support()) <= set(through_term.support()), M
    for s, c in through_expansion.items():
        assert through_term.coefficient(s) == c, (M, s)
    return len(through_expansion)


@pytest.mark.parametrize("text", ["I x", r"(\x. x x) (y (+1/2) z)", r"\z. (I (+1/3) x) z y", "x (I y) (Delta I)"])
def test_left_reduct_commutes_with_expansion(text):
    assert _check_left_reduct_commutes(parse_lambda(text), TruncationBudget(8, 2)) > 0


def test_left_reduct_commutes_with_expansion_on_random_terms(corpus_config):
    for M in random_terms(corpus_config, 20):
        _check_left_reduct_commutes(M, SWEEP)


def _check_substituted_supports(body, N, b) -> int:
    """Every s<t/x> within b, for s in supp T(body) and t drawn from supp T(N), is in supp T(body[N/x])."""
    target = explicit_taylor_support(substitute_term(body, N), b)
    alphabet = sorted(explicit_taylor_support(N, b), key=lambda t: t.key)
    checked = 0
    for s in explicit_taylor_support(body, b):
        n = occurrences(s, Var(0))
        room = b.max_term_size - size(s) + n
        fitting = [t for t in alphabet if size(t) <= room]
        for items in combinations_with_replacement(fitting, n):
            if sum(size(t) for t in items) > room:
                continue
            for u in substitute(s, Bag(items), Var(0)).support():
                assert u in target, (body, N, s, u)
                checked += 1
    return checked


def test_substituted_supports():
    body = App(Var(0), Abs(App(Var(1), Var(0))))
    N = parse_lambda("I (+1/3) z")
    assert _check_substituted_supports(body, N, TruncationBudget(7, 2)) > 0


def test_substituted_supports_on_random_terms(corpus_config):
    rng = random.Random(corpus_config.seed)
    names, probabilities = corpus_config.free_names, corpus_config.probabilities
    checked = 0
    for _ in range(30):
        body = random_lambda_term(rng, rng.randint(1, 4), names, probabilities, depth=1)
        N = random_lambda_term(rng, rng.randint(1, 4), names, probabilities)
        checked += _check_substituted_supports(body, N, TruncationBudget(6, 2))
    assert checked > 0


@pytest.mark.parametrize("text", ["x (y (+1/2) y)", "x (y (+1/3) z) (y (+1/2) y)", "Delta (I (+1/2) Omega)"])
def test_erased_weights_of_one_term_sum_to_at_most_one(text, budget):
    weights = {}
    for s in explicit_taylor_support(parse_lambda(text), budget):
        erased = erase(s)
        weights[erased.term] = weights.get(erased.term, Fraction(0)) + erased.weight
    assert weights
    assert all(w <= 1 for w in weights.values())


@given(lambda_terms())
def test_erased_weights_are_bounded(M):
    weights = {}
    for s in explicit_taylor_support(M, SMALL):
        erased = erase(s)
        weights[erased.term] = weights.get(erased.term, Fraction(0)) + erased.weight
    assert all(w <= 1 for w in weights.values())


def _check_fuel_monotone(M, b, fuels=(1, 2, 4, 8, 12)):
    previous, previous_residual = taylor_nf(M, b, fuels[0])
    for fuel in fuels[1:]:
        normal, residual = taylor_nf(M, b, fuel)
        assert residual <= previous_residual, (M, fuel)
        for t, c in previous.items():
            assert normal.coefficient(t) >= c, (M, fuel, t)
        for t, c in normal.items():
            assert c <= previous.coefficient(t) + previous_residual, (M, fuel, t)
        previous, previous_residual = normal, residual


@pytest.mark.parametrize("text", ["Delta (I (+1/2) Omega)", "x (I (+1/2) Omega)", r"(\x. x (x y)) (I (+1/3) Omega)"])
def test_taylor_nf_is_monotone_in_fuel(text):
    _check_fuel_monotone(parse_lambda(text), TruncationBudget(8, 2))


def test_taylor_nf_is_monotone_in_fuel_on_random_terms(corpus_config):
    for M in random_terms(corpus_config, 15):
        _check_fuel_monotone(M, SWEEP)


# sweeps over the random term corpus


def _check_reduction_matches_expansion(M, b) -> int:
    through_reduction, _ = explicit_taylor_nf(M, b, 12)
    through_expansion = normalize(explicit_taylor(M, b))
    shared = set(through_reduction.support()) & set(through_expansion.support())
    for s in shared:
        assert through_reduction.coefficient(s) == through_expansion.coefficient(s), (M, s)
    return len(shared)


def _check_bohm_coefficients(M, b):
    normal, _ = taylor_nf(M, b, 12)
    for s, c in normal.items():
        tree = pt_approximant(M, nesting_depth(s), 12)
        assert taylor_of_tree(tree, b).coefficient(s) == c, (M, s)


def test_normal_form_agrees_with_normalized_expansion_on_random_terms(corpus_config):
    shared = sum(_check_reduction_matches_expansion(M, SWEEP) for M in random_terms(corpus_config, 10))
    assert shared > 0


@pytest.mark.slow
def test_normal_form_agrees_with_normalized_expansion_corpus(corpus_config):
    terms = random_terms(corpus_config)
    assert len(terms) == corpus_config.random_terms
    assert sum(_check_reduction_matches_expansion(M, TruncationBudget(8, 2)) for M in terms) > 0


def test_bohm_coefficients_on_random_terms(corpus_config):
    for M in random_terms(corpus_config, 10):
        _check_bohm_coefficients(M, SWEEP)


@pytest.mark.slow
def test_bohm_coefficients_corpus(corpus_config):
    for M in random_terms(corpus_config):
        _check_bohm_coefficients(M, TruncationBudget(8, 2))
