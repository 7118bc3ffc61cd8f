"""Result artifacts produced by the operational, Taylor and compare stages."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from PROB_TAYLOR.entity.combination import Combination
from PROB_TAYLOR.entity.terms import (
    LTag,
    Node,
    RTag,
    Variable,
    abstract,
    apply_all,
)


class Side(str, Enum):
    L = "l"
    R = "r"


@dataclass(frozen=True)
class ChoiceSeq:
    """Record of the choice branches taken by a head reduction.

    Attributes:
        steps: Pairs (side, p), outermost choice first.
    """

    steps: Tuple[Tuple[Side, Fraction], ...] = ()

    def extend(self, side: Side, p: Fraction) -> "ChoiceSeq":
        return ChoiceSeq(self.steps + ((side, Fraction(p)),))

    def probability(self) -> Fraction:
        result = Fraction(1)
        for side, p in self.steps:
            result *= p if side == Side.L else 1 - p
        return result

    def prefix(self, s: Node) -> Node:
        """<rho>s: wrap s in one tag per step, the first step outermost."""
        for side, p in reversed(self.steps):
            s = LTag(p, s) if side == Side.L else RTag(p, s)
        return s

    def is_prefix_of(self, other: "ChoiceSeq") -> bool:
        return other.steps[: len(self.steps)] == self.steps

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        if not self.steps:
            return "ε"
        return "".join(f"({side.value},{p})" for side, p in self.steps)


@dataclass(frozen=True)
class HeadNormalForm:
    """λx1..xn. y P1 ... Pm with a variable head.

    Attributes:
        binders: n.
        head_var: y, a de Bruijn Var (possibly one of the n binders) or a Free name.
        args: P1..Pm, living under the n binders.
    """

    binders: int
    head_var: Variable
    args: tuple = ()

    def to_term(self):
        return abstract(apply_all(self.head_var, self.args), self.binders)

    @property
    def shape(self) -> Tuple[int, Variable, int]:
        return (self.binders, self.head_var, len(self.args))


@dataclass(frozen=True)
class ReductionFrontier:
    """Finite view of the head-reduction judgement.

    Attributes:
        resolved: (rho, h) pairs with M reducing to h along rho.
        unresolved: (rho, term, steps) branches cut by fuel.
    """

    resolved: Tuple[Tuple[ChoiceSeq, HeadNormalForm], ...] = ()
    unresolved: Tuple[Tuple[ChoiceSeq, Node, int], ...] = ()

    @property
    def resolved_mass(self) -> Fraction:
        return sum((rho.probability() for rho, _ in self.resolved), Fraction(0))

    @property
    def unresolved_mass(self) -> Fraction:
        return sum((rho.probability() for rho, _, _ in self.unresolved), Fraction(0))


@dataclass(frozen=True)
class NormalFormArtifact:
    """Truncated Taylor normal form with its error bound.

    Attributes:
        combination: Exact lower-bound coefficients.
        residual: Every true coefficient lies in [c, c + residual].
        explicit: Whether tags were kept (explicit expansion).
    """

    combination: Combination
    residual: Fraction
    explicit: bool = False

    def interval(self, term: Node) -> Tuple[Fraction, Fraction]:
        lower = self.combination.coefficient(term)
        return lower, min(Fraction(1), lower + self.residual)


class Verdict(str, Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass
class ComparisonArtifact:
    """Outcome of comparing two terms at fixed budgets.

    Attributes:
        generic_taylor_equal: Truncated generic expansions coincide.
        explicit_taylor_equal: Truncated explicit expansions coincide.
        taylor_nf: EQUAL, DISTINCT (disjoint intervals somewhere) or UNKNOWN.
        bohm: Verdict on the depth-d approximants.
        separating_test: Printed rBTT separating the terms, if one was found.
        separating_values: Its intervals on the two terms.
    """

    generic_taylor_equal: bool
    explicit_taylor_equal: bool
    taylor_nf: Verdict
    bohm: Verdict
    separating_test: Optional[str] = None
    separating_values: Tuple = field(default_factory=tuple)

    @property
    def separated(self) -> bool:
        return self.separating_test is not None or Verdict.DISTINCT in (self.taylor_nf, self.bohm)


@dataclass(frozen=True)
class ErasedWeight:
    """A choice-free term with the probability its erased tags carried.

    Attributes:
        term: Tag-free simple term.
        weight: Product of p (left tags) and 1 - p (right tags).
    """

    term: Node
    weight: Fraction
