"""Böhm-tree approximants and Böhm tests.

ValueTreeApprox and BohmApprox are the depth-bounded trees; Omega, And, Ev
and Head form the test language, where the same Omega and And serve both the
term-level tests (BTT) and the hnf-level tests (BHT).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Tuple, Union

from PROB_TAYLOR.entity.terms import Node, Variable


@dataclass(frozen=True, eq=False)
class ValueTreeApprox(Node):
    """λx1..xn. y T1 ... Tm with each Ti an approximant one level shallower."""

    binders: int
    head_var: Variable
    children: Tuple["BohmApprox", ...] = ()

    @cached_property
    def key(self) -> tuple:
        return (self.binders, self.head_var.key, tuple(c.key for c in self.children))

    def is_exact(self) -> bool:
        return all(c.is_exact() for c in self.children)


@dataclass(frozen=True, eq=False)
class BohmApprox(Node):
    """Sub-probability distribution over value trees of a fixed depth.

    dist holds exact lower bounds sorted by tree. unfolded_residual is only the
    head mass left unresolved at this node; folded_residual adds the mass of
    trees whose own sub-approximants are inexact.
    """

    depth: int
    dist: Tuple[Tuple[ValueTreeApprox, Fraction], ...] = ()
    unfolded_residual: Fraction = Fraction(0)

    def __post_init__(self):
        ordered = tuple(sorted(((t, Fraction(c)) for t, c in self.dist if c), key=lambda e: e[0].key))
        object.__setattr__(self, "dist", ordered)
        object.__setattr__(self, "unfolded_residual", Fraction(self.unfolded_residual))

    @cached_property
    def key(self) -> tuple:
        return (self.depth, tuple((t.key, c) for t, c in self.dist), self.unfolded_residual)

    def probability(self, tree: ValueTreeApprox) -> Fraction:
        for t, c in self.dist:
            if t == tree:
                return c
        return Fraction(0)

    def mass(self) -> Fraction:
        return sum((c for _, c in self.dist), Fraction(0))

    def is_exact(self) -> bool:
        return self.unfolded_residual == 0 and all(t.is_exact() for t, _ in self.dist)

    def folded_residual(self) -> Fraction:
        """Unfolded residual plus the mass of every tree that is itself inexact."""
        return self.unfolded_residual + sum((c for t, c in self.dist if not t.is_exact()), Fraction(0))


# tests


@dataclass(frozen=True, eq=False)
class Omega(Node):
    """The trivial test, succeeding with probability 1."""

    @cached_property
    def key(self) -> tuple:
        return (0,)


@dataclass(frozen=True, eq=False)
class And(Node):
    left: "Test"
    right: "Test"

    @cached_property
    def key(self) -> tuple:
        return (1, self.left.key, self.right.key)


@dataclass(frozen=True, eq=False)
class Ev(Node):
    """ev(t): reduce the term to head normal forms and run t on each."""

    test: "Test"

    @cached_property
    def key(self) -> tuple:
        return (2, self.test.key)


@dataclass(frozen=True, eq=False)
class Head(Node):
    """(λx1..xn. y)(T1, ..., Tm): match the hnf shape, then test the arguments."""

    binders: int
    head_var: Variable
    args: Tuple["Test", ...] = ()

    @cached_property
    def key(self) -> tuple:
        return (3, self.binders, self.head_var.key, tuple(a.key for a in self.args))


Test = Union[Omega, And, Ev, Head]
