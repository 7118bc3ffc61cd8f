"""
corpus.py
---------
Seeded generators for the property suites: random lambda-terms, random
resource terms and combinations, exhaustive resource-term and bag
enumerations, and random finite tree transition systems.

Every random generator takes a ``random.Random`` so corpora are
reproducible from CorpusConfig.seed.
"""

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import List, Optional, Sequence, Tuple

from PROB_TAYLOR.entity.combination import Combination, Kind
from PROB_TAYLOR.entity.config import CorpusConfig
from PROB_TAYLOR.entity.terms import (
    Abs,
    App,
    Bag,
    Choice,
    Free,
    LinApp,
    LTag,
    Node,
    RAbs,
    RTag,
    Var,
)
from PROB_TAYLOR.entity.tts import TreeTransitionSystem
from PROB_TAYLOR.logger import logging


# lambda-terms


def random_lambda_term(
    rng: random.Random,
    size: int,
    free_names: Sequence[str] = ("x", "y", "z"),
    probabilities: Sequence[Fraction] = (Fraction(1, 2),),
    depth: int = 0,
) -> Node:
    """A random term with about ``size`` constructors, binders numbered from depth."""
    if size <= 1:
        pool = [Var(i) for i in range(depth)] + [Free(n) for n in free_names]
        return rng.choice(pool)
    shape = rng.choice(("abs", "app", "app", "choice"))
    if shape == "abs":
        return Abs(random_lambda_term(rng, size - 1, free_names, probabilities, depth + 1))
    split = rng.randint(1, size - 1)
    left = random_lambda_term(rng, split, free_names, probabilities, depth)
    right = random_lambda_term(rng, max(1, size - 1 - split), free_names, probabilities, depth)
    if shape == "choice":
        return Choice(rng.choice(list(probabilities)), left, right)
    return App(left, right)


def random_terms(config: CorpusConfig, count: Optional[int] = None) -> List[Node]:
    rng = random.Random(config.seed)
    count = config.random_terms if count is None else count
    return [
        random_lambda_term(rng, rng.randint(1, config.random_term_size), config.free_names, config.probabilities)
        for _ in range(count)
    ]


# resource terms


def random_resource_term(
    rng: random.Random,
    size: int,
    free_names: Sequence[str] = ("x", "y", "z"),
    probabilities: Sequence[Fraction] = (Fraction(1, 2),),
    depth: int = 0,
    tags: bool = True,
) -> Node:
    if size <= 1:
        pool = [Var(i) for i in range(depth)] + [Free(n) for n in free_names]
        return rng.choice(pool)
    shapes = ["abs", "app", "app"] + (["tag"] if tags else [])
    shape = rng.choice(shapes)
    if shape == "abs":
        return RAbs(random_resource_term(rng, size - 1, free_names, probabilities, depth + 1, tags))
    if shape == "tag":
        body = random_resource_term(rng, size - 1, free_names, probabilities, depth, tags)
        p = rng.choice(list(probabilities))
        return LTag(p, body) if rng.random() < 0.5 else RTag(p, body)
    head_size = rng.randint(1, size - 1)
    head = random_resource_term(rng, head_size, free_names, probabilities, depth, tags)
    room = size - 1 - head_size
    items = []
    while room > 0 and rng.random() < 0.7:
        part = rng.randint(1, room)
        items.append(random_resource_term(rng, part, free_names, probabilities, depth, tags))
        room -= part
    return LinApp(head, Bag(tuple(items)))


def random_combination(rng: random.Random, config: CorpusConfig) -> Combination:
    """Support of at most random_combination_support terms, each of size <= random_combination_size."""
    entries = {}
    for _ in range(rng.randint(1, config.random_combination_support)):
        term = random_resource_term(
            rng, rng.randint(1, config.random_combination_size), config.free_names, config.probabilities
        )
        entries[term] = entries.get(term, Fraction(0)) + Fraction(rng.randint(1, 4), rng.randint(1, 4))
    return Combination(entries, Kind.TERM)


def random_combinations(config: CorpusConfig, count: Optional[int] = None) -> List[Combination]:
    rng = random.Random(config.seed)
    count = config.random_combinations if count is None else count
    return [random_combination(rng, config) for _ in range(count)]


@lru_cache(maxsize=None)
def enumerate_resource_terms(
    size: int,
    free_names: Tuple[str, ...] = ("x", "y", "z"),
    probabilities: Tuple[Fraction, ...] = (),
    depth: int = 0,
) -> Tuple[Node, ...]:
    """Every simple term of exactly this size, binders numbered from depth.

    Tags are generated only for the given probabilities.
    """
    if size < 1:
        return ()
    if size == 1:
        return tuple([Var(i) for i in range(depth)] + [Free(n) for n in free_names])
    out: List[Node] = [RAbs(b) for b in enumerate_resource_terms(size - 1, free_names, probabilities, depth + 1)]
    for p in probabilities:
        for body in enumerate_resource_terms(size - 1, free_names, probabilities, depth):
            out.extend((LTag(p, body), RTag(p, body)))
    for head_size in range(1, size):
        heads = enumerate_resource_terms(head_size, free_names, probabilities, depth)
        bags = _bags_of_size(size - 1 - head_size, free_names, probabilities, depth)
        out.extend(LinApp(h, b) for h in heads for b in bags)
    return tuple(out)


@lru_cache(maxsize=None)
def _bags_of_size(total: int, free_names, probabilities, depth: int) -> Tuple[Bag, ...]:
    elements = [
        (u, s) for s in range(1, total + 1) for u in enumerate_resource_terms(s, free_names, probabilities, depth)
    ]
    out = []

    def grow(start: int, chosen: list, room: int):
        if room == 0:
            out.append(Bag(tuple(chosen)))
            return
        for i in range(start, len(elements)):
            u, s = elements[i]
            if s <= room:
                grow(i, chosen + [u], room - s)

    grow(0, [], total)
    return tuple(out)


def enumerate_bags(alphabet: Sequence[Node], max_elements: int) -> List[Bag]:
    """Every bag of at most max_elements items drawn from alphabet."""
    return [Bag(items) for k in range(max_elements + 1) for items in combinations_with_replacement(alphabet, k)]


# tree transition systems


def _split(rng: random.Random, mass: Fraction, parts: int) -> List[Fraction]:
    weights = [rng.randint(1, 3) for _ in range(parts)]
    return [mass * w / sum(weights) for w in weights]


def random_tts(
    rng: random.Random,
    max_states: int = 10,
    linear_labels: Sequence[str] = ("a", "b"),
    branching_labels: Sequence[str] = ("f", "g"),
) -> TreeTransitionSystem:
    """A random well-formed system with positive-mass linear steps.

    Some linear states copy the transitions of an earlier one, so bisimilar
    pairs occur regularly.
    """
    n_linear = rng.randint(1, max_states - 1)
    n_branching = rng.randint(1, max_states - n_linear)
    linear = [f"q{i}" for i in range(n_linear)]
    branching = [f"s{i}" for i in range(n_branching)]
    delta, gamma = {}, {}
    for s in branching:
        for label in branching_labels:
            if rng.random() < 0.6:
                gamma[(s, label)] = tuple(rng.choice(linear) for _ in range(rng.randint(0, 2)))
    for i, q in enumerate(linear):
        if i and rng.random() < 0.3:
            source = linear[rng.randrange(i)]
            for (p, label), dist in list(delta.items()):
                if p == source:
                    delta[(q, label)] = dict(dist)
            continue
        for label in linear_labels:
            if rng.random() < 0.7:
                targets = rng.sample(branching, rng.randint(1, min(2, len(branching))))
                mass = rng.choice((Fraction(1), Fraction(1), Fraction(1, 2), Fraction(3, 4)))
                delta[(q, label)] = dict(zip(targets, _split(rng, mass, len(targets))))
    return TreeTransitionSystem(
        frozenset(linear),
        frozenset(branching),
        frozenset(linear_labels),
        frozenset(branching_labels),
        delta,
        gamma,
        {},
    )


def random_systems(config: CorpusConfig, count: Optional[int] = None) -> List[TreeTransitionSystem]:
    rng = random.Random(config.seed)
    count = config.random_systems if count is None else count
    systems = [random_tts(rng, config.max_system_states) for _ in range(count)]
    logging.debug(f"generated {len(systems)} random systems")
    return systems
