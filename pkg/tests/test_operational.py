from fractions import Fraction

import pytest
from hypothesis import given

from PROB_TAYLOR.components.operational import (
    AlreadyHnf,
    Beta,
    ChoiceStep,
    convergence_prob,
    head_reductions,
    head_step,
    hnf_prob,
    left_reduct_term,
    reduction_tree,
    substitute_term,
)
from PROB_TAYLOR.components.syntax import parse_lambda
from PROB_TAYLOR.entity.artifact import ChoiceSeq, HeadNormalForm, Side
from PROB_TAYLOR.entity.terms import Abs, App, Free, LTag, RTag, Var

from tests.strategies import lambda_terms

x, y = Free("x"), Free("y")
I = Abs(Var(0))
HALF = Fraction(1, 2)


def test_substitute_term():
    assert substitute_term(Var(0), y) == y
    assert substitute_term(Abs(Var(1)), y) == Abs(y)
    # the argument is shifted under the binder it crosses
    assert substitute_term(Abs(App(Var(0), Var(1))), Var(3)) == Abs(App(Var(0), Var(4)))
    # a free index of the body above the substituted one moves down
    assert substitute_term(App(Var(0), Var(1)), y) == App(y, Var(0))


def test_head_step():
    assert head_step(parse_lambda("x y")) == AlreadyHnf(HeadNormalForm(0, x, (y,)))
    assert head_step(parse_lambda(r"\z. (\x. x) z")) == Beta(Abs(Var(0)))
    step = head_step(parse_lambda("(x (+1/3) y) I"))
    assert step == ChoiceStep(Fraction(1, 3), App(x, I), App(y, I))


def test_head_step_keeps_abstractions_outside_choices():
    step = head_step(parse_lambda(r"\z. z (+1/2) x"))
    assert step == ChoiceStep(HALF, Abs(Var(0)), Abs(x))


def test_running_example(delta_choice):
    frontier = head_reductions(delta_choice, 16)
    assert len(frontier.resolved) == 1
    rho, h = frontier.resolved[0]
    assert h.to_term() == I
    assert rho == ChoiceSeq(((Side.L, HALF), (Side.L, HALF)))
    assert str(rho) == "(l,1/2)(l,1/2)"
    assert frontier.resolved_mass == Fraction(1, 4)
    assert frontier.unresolved_mass == Fraction(3, 4)


def test_hnf_prob(delta_choice):
    assert hnf_prob(delta_choice, HeadNormalForm(1, Var(0)), 16) == (Fraction(1, 4), Fraction(3, 4))
    assert hnf_prob(parse_lambda("Delta I"), HeadNormalForm(1, Var(0)), 4) == (1, 0)


@pytest.mark.parametrize(
    "text, fuel, expected",
    [
        ("I (+1/3) Omega", 8, (Fraction(1, 3), Fraction(2, 3))),
        ("x (+1/2) y", 1, (1, 0)),
        ("Omega", 10, (0, 1)),
        (r"(\x. x (+1/2) x) y", 3, (1, 0)),
    ],
)
def test_convergence_prob(text, fuel, expected):
    assert convergence_prob(parse_lambda(text), fuel) == expected


def test_fuel_zero_resolves_only_hnfs():
    frontier = head_reductions(parse_lambda("I x"), 0)
    assert not frontier.resolved
    assert frontier.unresolved_mass == 1
    assert head_reductions(x, 0).resolved_mass == 1


def test_choice_seq():
    rho = ChoiceSeq().extend(Side.L, HALF).extend(Side.R, Fraction(1, 3))
    assert rho.probability() == Fraction(1, 3)
    assert rho.prefix(x) == LTag(HALF, RTag(Fraction(1, 3), x))
    assert ChoiceSeq().extend(Side.L, HALF).is_prefix_of(rho)
    assert str(ChoiceSeq()) == "ε"


def test_left_reduct_term():
    assert left_reduct_term(parse_lambda("I x")) == x
    assert left_reduct_term(parse_lambda("x (I y)")) == App(x, y)


def test_reduction_tree(delta_choice):
    root = reduction_tree(delta_choice, 4)
    assert root.status == "step"
    (beta,) = root.children
    assert beta.edge == "β"
    assert [child.edge for child in beta.children] == ["l,1/2", "r,1/2"]

    def leaves(node):
        if not node.children:
            return [node]
        return [leaf for child in node.children for leaf in leaves(child)]

    assert {leaf.status for leaf in leaves(root)} == {"hnf", "cut"}


@given(lambda_terms())
def test_frontier_mass_is_one(M):
    frontier = head_reductions(M, 6)
    assert frontier.resolved_mass + frontier.unresolved_mass == 1


@given(lambda_terms())
def test_more_fuel_resolves_more(M):
    assert convergence_prob(M, 3)[0] <= convergence_prob(M, 6)[0]
