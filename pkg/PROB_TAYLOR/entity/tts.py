"""Finite tree transition systems and their tests.

A system alternates linear states, whose labelled steps lead to
sub-distributions over branching states, with branching states, whose
labelled steps lead to sequences of linear states.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, Mapping, Optional, Tuple, Union

from PROB_TAYLOR.entity.trees import And, Omega

State = Hashable
Label = Hashable
Distribution = Mapping[State, Fraction]


@dataclass
class TreeTransitionSystem:
    """(Q, S, L, I, delta, gamma) with optional residual metadata.

    Attributes:
        linear_states: Q.
        branching_states: S.
        linear_labels: L.
        branching_labels: I, disjoint from L.
        delta: (q, l) -> sub-distribution over S.
        gamma: (s, i) -> tuple over Q.
        residuals: (q, l) -> mass cut by a finite unfolding; compared for equality.
    """

    linear_states: FrozenSet[State] = frozenset()
    branching_states: FrozenSet[State] = frozenset()
    linear_labels: FrozenSet[Label] = frozenset()
    branching_labels: FrozenSet[Label] = frozenset()
    delta: Dict[Tuple[State, Label], Dict[State, Fraction]] = field(default_factory=dict)
    gamma: Dict[Tuple[State, Label], Tuple[State, ...]] = field(default_factory=dict)
    residuals: Dict[Tuple[State, Label], Fraction] = field(default_factory=dict)

    def residual(self, q: State, label: Label) -> Fraction:
        return self.residuals.get((q, label), Fraction(0))

    def linear_labels_of(self, q: State) -> FrozenSet[Label]:
        return frozenset(label for (p, label) in self.delta if p == q)

    def branching_labels_of(self, s: State) -> FrozenSet[Label]:
        return frozenset(label for (t, label) in self.gamma if t == s)

    @property
    def size(self) -> int:
        return len(self.linear_states) + len(self.branching_states)


@dataclass(frozen=True)
class Bipartition:
    """Tree bisimilarity as two partitions, one per sort."""

    linear: Tuple[FrozenSet[State], ...]
    branching: Tuple[FrozenSet[State], ...]

    def class_of(self, state: State) -> Optional[FrozenSet[State]]:
        for block in self.linear + self.branching:
            if state in block:
                return block
        return None

    def equivalent(self, a: State, b: State) -> bool:
        block = self.class_of(a)
        return block is not None and b in block


# tests


@dataclass(frozen=True)
class LinStep:
    """l(T_B): take the linear step l and run T_B on the reached branching states."""

    label: Label
    test: "TtsTest" = field(default_factory=Omega)


@dataclass(frozen=True)
class BranchStep:
    """i(T_1, ..., T_m): take the branching step i and run T_k on the k-th successor."""

    label: Label
    tests: Tuple["TtsTest", ...] = ()


TtsTest = Union[Omega, And, LinStep, BranchStep]


# labelled Markov chains


@dataclass(frozen=True)
class BranchArity:
    """(i, n): self-loop announcing that gamma(s, i) has n successors."""

    label: Label
    arity: int


@dataclass(frozen=True)
class BranchProjection:
    """(i, n, k): move to the k-th of the n successors of gamma(s, i), k from 1."""

    label: Label
    arity: int
    position: int


@dataclass(frozen=True)
class ResidualMark:
    """Self-loop recording the residual of (q, label) in the chain."""

    label: Label
    residual: Fraction


@dataclass
class LabelledMarkovChain:
    """States with labelled sub-distributions eta(state, label)."""

    states: FrozenSet[State] = frozenset()
    labels: FrozenSet[Label] = frozenset()
    eta: Dict[Tuple[State, Label], Dict[State, Fraction]] = field(default_factory=dict)

    def step(self, state: State, label: Label) -> Dict[State, Fraction]:
        return self.eta.get((state, label), {})
