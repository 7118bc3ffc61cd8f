from fractions import Fraction
from itertools import islice, product

import pytest
from hypothesis import given

from PROB_TAYLOR.components.bohm import (
    approximant_to_json,
    btt_to_rbtt_family,
    coefficient_test_correspondence,
    compare_approximants,
    correspondence_bounds,
    enumerate_rbtts,
    eval_bht,
    eval_btt,
    is_resource_test,
    nesting_depth,
    normalize_test,
    parse_test,
    polyterm_to_rbtt,
    print_test,
    pt_approximant,
    rbtt_to_polyterm,
    taylor_of_tree,
    term_to_rbht,
)
from PROB_TAYLOR.components.operational import convergence_prob
from PROB_TAYLOR.components.syntax import parse_lambda, parse_resource
from PROB_TAYLOR.entity.artifact import HeadNormalForm, Verdict
from PROB_TAYLOR.entity.combination import Combination
from PROB_TAYLOR.entity.config import FamilyBudget, TruncationBudget
from PROB_TAYLOR.entity.terms import Bag, Free, Var
from PROB_TAYLOR.entity.trees import And, BohmApprox, Ev, Head, Omega, ValueTreeApprox
from PROB_TAYLOR.exceptions import TermSyntaxError, TestShapeError
from PROB_TAYLOR.utils.corpus import random_terms

from tests.strategies import lambda_terms

x, y = Free("x"), Free("y")
HALF = Fraction(1, 2)
FUEL = 8


# approximants


def test_approximant_of_running_example(delta_choice):
    A = pt_approximant(delta_choice, 1, 16)
    assert A.dist == ((ValueTreeApprox(1, Var(0), ()), Fraction(1, 4)),)
    assert A.unfolded_residual == A.folded_residual() == Fraction(3, 4)
    assert not A.is_exact()


def test_depth_zero_is_empty():
    A = pt_approximant(parse_lambda("x y"), 0, FUEL)
    assert A == BohmApprox(0)
    assert A.mass() == 0


def test_approximant_children():
    A = pt_approximant(parse_lambda("x (y (+1/2) Omega)"), 2, FUEL)
    ((tree, p),) = A.dist
    assert p == 1
    (child,) = tree.children
    assert child.probability(ValueTreeApprox(0, y)) == HALF
    assert child.unfolded_residual == child.folded_residual() == HALF
    assert A.unfolded_residual == 0
    assert A.folded_residual() == 1


@pytest.mark.parametrize(
    "left, right, verdict",
    [
        ("x (+1/2) y", "y (+1/2) x", Verdict.EQUAL),
        ("I", "I (+1/2) Omega", Verdict.UNKNOWN),
        ("x", "y", Verdict.DISTINCT),
        ("x (+1/3) y", "x (+1/2) y", Verdict.DISTINCT),
    ],
)
def test_compare_approximants(left, right, verdict):
    A = pt_approximant(parse_lambda(left), 2, FUEL)
    B = pt_approximant(parse_lambda(right), 2, FUEL)
    assert compare_approximants(A, B) == verdict


def test_taylor_of_tree_for_a_variable(budget):
    assert taylor_of_tree(pt_approximant(x, 1, FUEL), budget) == Combination.of(x)


@pytest.mark.parametrize("text, depth", [(r"\x. x [] []", 1), ("x", 1), ("x [y [z]]", 3), (r"\x. y [x] [z [x]]", 3)])
def test_nesting_depth(text, depth):
    assert nesting_depth(parse_resource(text)) == depth


def test_approximant_json_names_avoid_free_heads():
    payload = approximant_to_json(pt_approximant(parse_lambda(r"\y. x"), 1, FUEL))
    (tree,) = payload["trees"]
    assert tree["binders"] == ["y"]
    assert tree["head"] == "x"
    assert payload["residual"] == payload["unfolded_residual"] == "0"


def test_approximant_json_reports_folded_residual():
    payload = approximant_to_json(pt_approximant(parse_lambda("x (y (+1/2) Omega)"), 2, FUEL))
    assert payload["unfolded_residual"] == "0"
    assert payload["residual"] == "1"
    (tree,) = payload["trees"]
    (child,) = tree["children"]
    assert child["residual"] == child["unfolded_residual"] == "1/2"


@given(lambda_terms())
def test_folded_residual_covers_unfolded(M):
    A = pt_approximant(M, 2, FUEL)
    assert A.unfolded_residual <= A.folded_residual() <= 1
    assert A.mass() + A.unfolded_residual <= 1


# test syntax


@pytest.mark.parametrize(
    "text, expected",
    [
        ("w", Omega()),
        ("ev(x(w))", Ev(Head(0, x, (Omega(),)))),
        ("ev(x())", Ev(Head(0, x, ()))),
        (r"ev((\y. y)(w))", Ev(Head(1, Var(0), (Omega(),)))),
        (r"ev((λy z. y)())", Ev(Head(2, Var(1), ()))),
        ("ev(x()) & w", And(Ev(Head(0, x, ())), Omega())),
        ("ev(x() & w)", Ev(And(Head(0, x, ()), Omega()))),
    ],
)
def test_parse_test(text, expected):
    assert parse_test(text) == expected


@pytest.mark.parametrize("text", ["ev(", "x(w)", "ev(w", "ev(x(w)) &"])
def test_parse_test_rejects(text):
    with pytest.raises(TermSyntaxError):
        parse_test(text)


def test_print_test_keeps_free_heads_apart():
    T = Ev(Head(1, x, ()))
    assert print_test(T) == r"ev((\y. x)())"
    assert parse_test(print_test(T)) == T


def test_print_parse_enumerated_tests():
    for T in islice(enumerate_rbtts(("x", "y"), 2, 1, 1), 300):
        assert parse_test(print_test(T)) == T


# evaluation


def test_eval_head_test():
    assert eval_btt(parse_test("ev(x(w))"), parse_lambda("x Omega (+1/2) y"), FUEL) == (HALF, HALF)


def test_eval_keeps_unresolved_mass_as_upper_bound():
    T = parse_test("ev(x(ev(y())))")
    assert eval_btt(T, parse_lambda("x (y (+1/2) Omega)"), FUEL) == (HALF, 1)


def test_eval_conjunction_multiplies():
    T = parse_test("ev(x(w)) & ev(x(w))")
    assert eval_btt(T, parse_lambda("x Omega (+1/2) y"), FUEL) == (Fraction(1, 4), Fraction(1, 4))


def test_eval_rejects_hnf_test_at_term_level():
    with pytest.raises(TestShapeError):
        eval_btt(Head(0, x, ()), x, FUEL)


@given(lambda_terms())
def test_ev_omega_is_convergence(M):
    lower, residual = convergence_prob(M, 6)
    assert eval_btt(Ev(Omega()), M, 6) == (lower, lower + residual)


# resource tests


@pytest.mark.parametrize(
    "text, expected",
    [("w", True), ("ev(w)", False), ("ev(x(w))", True), ("ev(x() & x())", False), ("ev(x(ev(w)))", False)],
)
def test_is_resource_test(text, expected):
    assert is_resource_test(parse_test(text)) is expected


def test_polyterm_encoding():
    T = parse_test("ev(x(w)) & ev(x(ev(y())))")
    assert rbtt_to_polyterm(T) == parse_resource("[x [], x [y]]")
    assert rbtt_to_polyterm(Omega()) == Bag()
    with pytest.raises(TestShapeError):
        rbtt_to_polyterm(parse_test("ev(w)"))


def test_polyterm_encoding_is_invertible():
    for T in islice(enumerate_rbtts(("x",), 2, 1, 1), 200):
        bag = rbtt_to_polyterm(T)
        assert normalize_test(polyterm_to_rbtt(bag)) == normalize_test(T)
        assert rbtt_to_polyterm(polyterm_to_rbtt(bag)) == bag


def test_normalize_test():
    a, b = parse_test("ev(x())"), parse_test("ev(y())")
    assert normalize_test(And(a, b)) == normalize_test(And(b, a))
    assert normalize_test(And(And(a, b), a)) == normalize_test(And(a, And(b, a)))
    assert normalize_test(And(a, Omega())) == a
    assert normalize_test(And(Omega(), Omega())) == Omega()


TESTS = ["w", "ev(x(w))", "ev(x())", "ev(x(w)) & ev(x(w))", "ev(x(ev(y())))", r"ev((\z. z)())"]
TERMS = ["x Omega (+1/2) y", "x (y (+1/2) Omega)", "I", "x (+1/3) x x"]


@pytest.mark.parametrize("test", TESTS)
@pytest.mark.parametrize("term", TERMS)
def test_coefficients_match_test_probabilities(test, term):
    T, M = parse_test(test), parse_lambda(term)
    b = TruncationBudget(8, 2)
    assert coefficient_test_correspondence(T, M, FUEL, b)
    (c_lo, _), (t_lo, _) = correspondence_bounds(T, M, FUEL, b)
    assert c_lo == t_lo


def _check_correspondence(tests, terms) -> int:
    b = TruncationBudget(8, 2)
    pairs = list(product(tests, terms))
    for T, M in pairs:
        assert coefficient_test_correspondence(T, M, FUEL, b), (print_test(T), M)
    return len(pairs)


def test_coefficients_match_test_probabilities_on_random_terms(corpus_config):
    assert _check_correspondence([parse_test(t) for t in TESTS], random_terms(corpus_config, 5)) >= 30


@pytest.mark.slow
def test_coefficients_match_test_probabilities_corpus(corpus_config):
    tests = [parse_test(t) for t in TESTS] + list(islice(enumerate_rbtts(("x", "y"), 2, 1, 1), 24))
    assert _check_correspondence(tests, random_terms(corpus_config)) >= 30


def test_correspondence_needs_resource_test():
    with pytest.raises(TestShapeError):
        correspondence_bounds(parse_test("ev(w)"), x, FUEL, TruncationBudget(8, 2))


def test_omega_family_sums_to_test_probability():
    M = parse_lambda("x (+1/2) y y")
    family = list(btt_to_rbtt_family(Ev(Omega()), FamilyBudget(1, 2, ("x", "y"))))
    assert all(is_resource_test(T) for T in family)
    assert sum(eval_btt(T, M, FUEL)[0] for T in family) == eval_btt(Ev(Omega()), M, FUEL)[0] == 1


def test_family_of_clashing_heads_is_empty():
    T = parse_test("ev(x() & y())")
    assert list(btt_to_rbtt_family(T, FamilyBudget(1, 1, ("x", "y")))) == []


def test_family_distributes_conjunctions():
    T = parse_test("ev(x(w)) & w")
    family = list(btt_to_rbtt_family(T, FamilyBudget(0, 0, ("x",))))
    assert family == [Ev(Head(0, x, (Omega(),)))]


def test_eval_bht_on_head_normal_forms():
    h = HeadNormalForm(0, x, (parse_lambda("Omega"),))
    assert eval_bht(Head(0, x, (Omega(),)), h, FUEL) == (1, 1)
    assert eval_bht(Head(0, y, (Omega(),)), h, FUEL) == (0, 0)
    assert eval_bht(Head(0, x, ()), h, FUEL) == (0, 0)
    assert eval_bht(Head(0, x, (Ev(Omega()),)), h, FUEL) == (0, 1)
    with pytest.raises(TestShapeError):
        eval_bht(Ev(Omega()), h, FUEL)


def test_term_to_rbht():
    assert term_to_rbht(parse_resource(r"\z. x [z] []")) == Head(1, x, (Ev(Head(0, Var(0), ())), Omega()))
    with pytest.raises(TestShapeError):
        term_to_rbht(parse_resource(r"(\z. z) [y]"))
