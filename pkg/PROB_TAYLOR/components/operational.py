"""Labelled head reduction of probabilistic lambda-terms.

A head step either finds a head normal form, contracts the head beta-redex
(the choice sequence is unchanged) or splits a head choice into its two
branches. Exploration is breadth-first and bounded by fuel per branch, so
every reported probability is an exact lower bound paired with the mass
still unresolved.
"""

import sys
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple, Union

from PROB_TAYLOR.components.resource import shift
from PROB_TAYLOR.entity.artifact import ChoiceSeq, HeadNormalForm, ReductionFrontier, Side
from PROB_TAYLOR.entity.terms import (
    Abs,
    App,
    Choice,
    Free,
    Node,
    Var,
    abstract,
    apply_all,
    spine,
    strip_abstractions,
)
from PROB_TAYLOR.exceptions import ProbTaylorException
from PROB_TAYLOR.logger import logging


def _replace_var(t: Node, j: int, s: Node) -> Node:
    if isinstance(t, Var):
        return s if t.index == j else t
    if isinstance(t, Free):
        return t
    if isinstance(t, Abs):
        return Abs(_replace_var(t.body, j + 1, shift(s, 1)))
    if isinstance(t, App):
        return App(_replace_var(t.fun, j, s), _replace_var(t.arg, j, s))
    if isinstance(t, Choice):
        return Choice(t.p, _replace_var(t.left, j, s), _replace_var(t.right, j, s))
    raise TypeError(f"not a lambda-term: {t!r}")


@lru_cache(maxsize=1 << 14)
def substitute_term(body: Node, arg: Node) -> Node:
    """body[arg/x] where x is the de Bruijn index 0 of body."""
    return shift(_replace_var(body, 0, shift(arg, 1)), -1)


# head steps


@dataclass(frozen=True)
class AlreadyHnf:
    hnf: HeadNormalForm


@dataclass(frozen=True)
class Beta:
    term: Node


@dataclass(frozen=True)
class ChoiceStep:
    p: Fraction
    left: Node
    right: Node


HeadStep = Union[AlreadyHnf, Beta, ChoiceStep]


def head_step(M: Node) -> HeadStep:
    """Decompose M as H[r] for its maximal head context H and act on r."""
    k, core = strip_abstractions(M)
    head, args = spine(core)
    if isinstance(head, (Var, Free)):
        return AlreadyHnf(HeadNormalForm(k, head, tuple(args)))
    if isinstance(head, Abs):
        contracted = apply_all(substitute_term(head.body, args[0]), args[1:])
        return Beta(abstract(contracted, k))
    if isinstance(head, Choice):
        return ChoiceStep(
            head.p,
            abstract(apply_all(head.left, args), k),
            abstract(apply_all(head.right, args), k),
        )
    raise TypeError(f"not a lambda-term: {M!r}")


def head_reductions(M: Node, fuel: int) -> ReductionFrontier:
    """All (rho, h) with M reducing to h along rho within fuel steps per branch.

    Args:
        M: Term to explore.
        fuel: Head steps (beta and choice alike) allowed on each branch.

    Returns:
        ReductionFrontier: resolved pairs and the branches fuel cut off.
    """
    try:
        resolved: List[Tuple[ChoiceSeq, HeadNormalForm]] = []
        unresolved: List[Tuple[ChoiceSeq, Node, int]] = []
        queue = deque([(ChoiceSeq(), M, 0)])
        while queue:
            rho, term, steps = queue.popleft()
            step = head_step(term)
            if isinstance(step, AlreadyHnf):
                resolved.append((rho, step.hnf))
            elif steps >= fuel:
                unresolved.append((rho, term, steps))
            elif isinstance(step, Beta):
                queue.append((rho, step.term, steps + 1))
            else:
                queue.append((rho.extend(Side.L, step.p), step.left, steps + 1))
                queue.append((rho.extend(Side.R, step.p), step.right, steps + 1))
        frontier = ReductionFrontier(tuple(resolved), tuple(unresolved))
        logging.debug(
            f"head reductions: {len(resolved)} resolved, {len(unresolved)} cut at fuel {fuel}"
        )
        return frontier
    except ProbTaylorException:
        raise
    except Exception as e:
        raise ProbTaylorException(e, sys) from e


def hnf_prob(M: Node, h: HeadNormalForm, fuel: int) -> Tuple[Fraction, Fraction]:
    """(lower, residual) bracketing the probability that M reduces to h."""
    frontier = head_reductions(M, fuel)
    lower = sum((rho.probability() for rho, g in frontier.resolved if g == h), Fraction(0))
    return lower, frontier.unresolved_mass


def convergence_prob(M: Node, fuel: int) -> Tuple[Fraction, Fraction]:
    """(lower, residual) bracketing the probability that M has a head normal form."""
    frontier = head_reductions(M, fuel)
    return frontier.resolved_mass, frontier.unresolved_mass


def left_reduct_term(M: Node) -> Node:
    """Complete left reduct of a lambda-term."""
    if isinstance(M, Choice):
        return Choice(M.p, left_reduct_term(M.left), left_reduct_term(M.right))
    k, core = strip_abstractions(M)
    head, args = spine(core)
    if isinstance(head, (Var, Free)):
        return abstract(apply_all(head, [left_reduct_term(a) for a in args]), k)
    step = head_step(M)
    if isinstance(step, Beta):
        return step.term
    return Choice(step.p, step.left, step.right)


# traces


@dataclass
class TraceNode:
    """One node of a head-reduction tree.

    Attributes:
        term: Term at this node.
        edge: Label of the step that produced it (``β``, ``l,p``, ``r,p`` or empty at the root).
        status: ``hnf``, ``cut`` or ``step``.
        children: Successors.
    """

    term: Node
    edge: str = ""
    status: str = "step"
    children: list = field(default_factory=list)


def reduction_tree(M: Node, fuel: int) -> TraceNode:
    """The head-reduction tree of M, cut after fuel steps on each branch."""

    def grow(term: Node, edge: str, left: int) -> TraceNode:
        step = head_step(term)
        if isinstance(step, AlreadyHnf):
            return TraceNode(term, edge, "hnf")
        if left == 0:
            return TraceNode(term, edge, "cut")
        node = TraceNode(term, edge)
        if isinstance(step, Beta):
            node.children.append(grow(step.term, "β", left - 1))
        else:
            node.children.append(grow(step.left, f"l,{step.p}", left - 1))
            node.children.append(grow(step.right, f"r,{step.p}", left - 1))
        return node

    return grow(M, "", fuel)


__all__ = [
    "substitute_term",
    "AlreadyHnf",
    "Beta",
    "ChoiceStep",
    "head_step",
    "head_reductions",
    "hnf_prob",
    "convergence_prob",
    "left_reduct_term",
    "TraceNode",
    "reduction_tree",
]
