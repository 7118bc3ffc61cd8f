"""Immutable term syntax shared by every component.

Two calculi live here:

- probabilistic lambda-terms: Var, Free, Abs, App, Choice;
- probabilistic simple resource terms: Var, Free, RAbs, LinApp, LTag, RTag,
  with Bag as the poly-term (a canonically sorted multiset).

Bound variables are de Bruijn indices (0 is the nearest binder); free
variables carry their surface name. Every node exposes a structural `key`
that induces the total order used to sort bags and print supports.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Tuple, Union

from PROB_TAYLOR.exceptions import ProbabilityRangeError


def _check_probability(p) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ProbabilityRangeError(f"probability {p} outside [0, 1]")
    return p


class Node:
    """Structural equality and hashing through the cached key."""

    __slots__ = ()

    @property
    def key(self) -> tuple:  # pragma: no cover - overridden
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Node):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "Node") -> bool:
        return self.key < other.key


# Variables are shared by both calculi


@dataclass(frozen=True, eq=False)
class Var(Node):
    index: int

    @cached_property
    def key(self) -> tuple:
        return (0, self.index)


@dataclass(frozen=True, eq=False)
class Free(Node):
    name: str

    @cached_property
    def key(self) -> tuple:
        return (1, self.name)


Variable = Union[Var, Free]


# Probabilistic lambda-terms


@dataclass(frozen=True, eq=False)
class Abs(Node):
    body: "LambdaTerm"

    @cached_property
    def key(self) -> tuple:
        return (2, self.body.key)


@dataclass(frozen=True, eq=False)
class App(Node):
    fun: "LambdaTerm"
    arg: "LambdaTerm"

    @cached_property
    def key(self) -> tuple:
        return (3, self.fun.key, self.arg.key)


@dataclass(frozen=True, eq=False)
class Choice(Node):
    """M (+p) N: the left branch is taken with probability p."""

    p: Fraction
    left: "LambdaTerm"
    right: "LambdaTerm"

    def __post_init__(self):
        object.__setattr__(self, "p", _check_probability(self.p))

    @cached_property
    def key(self) -> tuple:
        return (4, self.p, self.left.key, self.right.key)


LambdaTerm = Union[Var, Free, Abs, App, Choice]


# Probabilistic simple resource terms


@dataclass(frozen=True, eq=False)
class RAbs(Node):
    body: "SimpleResource"

    @cached_property
    def key(self) -> tuple:
        return (7, self.body.key)


@dataclass(frozen=True, eq=False)
class Bag(Node):
    """Finite multiset of simple terms, stored sorted by key."""

    items: Tuple["SimpleResource", ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(self.items, key=lambda t: t.key)))

    @classmethod
    def of(cls, *items: "SimpleResource") -> "Bag":
        return cls(tuple(items))

    @cached_property
    def key(self) -> tuple:
        return (6, tuple(t.key for t in self.items))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator["SimpleResource"]:
        return iter(self.items)

    def counts(self) -> Counter:
        return Counter(self.items)

    def union(self, other: "Bag") -> "Bag":
        return Bag(self.items + other.items)


@dataclass(frozen=True, eq=False)
class LinApp(Node):
    head: "SimpleResource"
    bag: Bag

    @cached_property
    def key(self) -> tuple:
        return (8, self.head.key, self.bag.key)


@dataclass(frozen=True, eq=False)
class LTag(Node):
    p: Fraction
    body: "SimpleResource"

    def __post_init__(self):
        object.__setattr__(self, "p", _check_probability(self.p))

    @cached_property
    def key(self) -> tuple:
        return (4, self.p, self.body.key)


@dataclass(frozen=True, eq=False)
class RTag(Node):
    p: Fraction
    body: "SimpleResource"

    def __post_init__(self):
        object.__setattr__(self, "p", _check_probability(self.p))

    @cached_property
    def key(self) -> tuple:
        return (5, self.p, self.body.key)


SimpleResource = Union[Var, Free, RAbs, LinApp, LTag, RTag]
ResourceLike = Union[SimpleResource, Bag]

LAMBDA_NODES = (Abs, App, Choice)
RESOURCE_NODES = (RAbs, LinApp, LTag, RTag, Bag)


def is_variable(t: Node) -> bool:
    return isinstance(t, (Var, Free))


def abstract(body, binders: int, resource: bool = False):
    """Wrap `binders` abstractions around body."""
    ctor = RAbs if resource else Abs
    for _ in range(binders):
        body = ctor(body)
    return body


def strip_abstractions(t) -> Tuple[int, Node]:
    """Split lambda x1..xk. t' into (k, t') for either calculus."""
    k = 0
    while isinstance(t, (Abs, RAbs)):
        t = t.body
        k += 1
    return k, t


def spine(t) -> Tuple[Node, list]:
    """Split an application spine into its head and argument list."""
    args = []
    while isinstance(t, (App, LinApp)):
        args.append(t.arg if isinstance(t, App) else t.bag)
        t = t.fun if isinstance(t, App) else t.head
    args.reverse()
    return t, args


def apply_all(head, args: Iterable, resource: bool = False):
    for a in args:
        head = LinApp(head, a) if resource else App(head, a)
    return head


def free_names(t: Node) -> set:
    """Names of the Free variables occurring in t."""
    names = set()
    stack = [t]
    while stack:
        n = stack.pop()
        if isinstance(n, Free):
            names.add(n.name)
        elif isinstance(n, (Abs, RAbs, LTag, RTag)):
            stack.append(n.body)
        elif isinstance(n, App):
            stack.extend((n.fun, n.arg))
        elif isinstance(n, Choice):
            stack.extend((n.left, n.right))
        elif isinstance(n, LinApp):
            stack.extend((n.head, n.bag))
        elif isinstance(n, Bag):
            stack.extend(n.items)
    return names
