"""The probabilistic resource calculus.

Linear substitution, beta and choice-lifting reductions, the complete left
reduct L, normalization, coherence, multinomial coefficients, regularity
and the exponential !S. Everything is exact and works on de Bruijn terms.
"""

import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Callable, Dict, List, Optional, Set, Tuple, Union

from PROB_TAYLOR.entity.combination import Combination, Kind, kind_of
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
    abstract,
    apply_all,
    spine,
    strip_abstractions,
)
from PROB_TAYLOR.exceptions import KindMismatchError, ProbTaylorException
from PROB_TAYLOR.logger import logging

Target = Union[int, str, Var, Free]
Terms = Dict[Node, Fraction]

_CACHE = 1 << 16


def _target(x: Target) -> Union[int, str]:
    if isinstance(x, Var):
        return x.index
    if isinstance(x, Free):
        return x.name
    return x


def _matches(t: Node, x: Union[int, str], depth: int) -> bool:
    if isinstance(x, str):
        return isinstance(t, Free) and t.name == x
    return isinstance(t, Var) and t.index == x + depth


# de Bruijn plumbing, shared with the lambda-calculus side


@lru_cache(maxsize=_CACHE)
def shift(t: Node, d: int, cutoff: int = 0) -> Node:
    """Add d to every Var index >= cutoff (indices below cutoff are bound inside t)."""
    if d == 0:
        return t
    if isinstance(t, Var):
        return Var(t.index + d) if t.index >= cutoff else t
    if isinstance(t, Free):
        return t
    if isinstance(t, Abs):
        return Abs(shift(t.body, d, cutoff + 1))
    if isinstance(t, RAbs):
        return RAbs(shift(t.body, d, cutoff + 1))
    if isinstance(t, App):
        return App(shift(t.fun, d, cutoff), shift(t.arg, d, cutoff))
    if isinstance(t, Choice):
        return Choice(t.p, shift(t.left, d, cutoff), shift(t.right, d, cutoff))
    if isinstance(t, LinApp):
        return LinApp(shift(t.head, d, cutoff), shift(t.bag, d, cutoff))
    if isinstance(t, (LTag, RTag)):
        return type(t)(t.p, shift(t.body, d, cutoff))
    if isinstance(t, Bag):
        return Bag(tuple(shift(u, d, cutoff) for u in t.items))
    raise TypeError(f"not a term: {t!r}")


@lru_cache(maxsize=_CACHE)
def _occurrences(t: Node, x: Union[int, str], depth: int) -> int:
    if isinstance(t, (Var, Free)):
        return 1 if _matches(t, x, depth) else 0
    if isinstance(t, RAbs):
        return _occurrences(t.body, x, depth + 1)
    if isinstance(t, (LTag, RTag)):
        return _occurrences(t.body, x, depth)
    if isinstance(t, LinApp):
        return _occurrences(t.head, x, depth) + _occurrences(t.bag, x, depth)
    if isinstance(t, Bag):
        return sum(_occurrences(u, x, depth) for u in t.items)
    raise TypeError(f"not a resource term: {t!r}")


def occurrences(sigma: Node, x: Target) -> int:
    """Number of free occurrences of x in sigma."""
    return _occurrences(sigma, _target(x), 0)


# substitution


def _product(parts: List[Terms], build: Callable[[tuple], Node]) -> Terms:
    out: Terms = {}
    for choice in product(*(list(p.items()) for p in parts)):
        coefficient = Fraction(1)
        for _, c in choice:
            coefficient *= c
        term = build(tuple(t for t, _ in choice))
        out[term] = out.get(term, Fraction(0)) + coefficient
    return out


def _subst(t: Node, items: tuple, x: Union[int, str], depth: int) -> Terms:
    n = len(items)
    if isinstance(t, (Var, Free)):
        if _matches(t, x, depth):
            return {shift(items[0], depth): Fraction(1)} if n == 1 else {}
        return {t: Fraction(1)} if n == 0 else {}
    if n != _occurrences(t, x, depth):
        return {}
    if n == 0:
        return {t: Fraction(1)}
    if isinstance(t, RAbs):
        return {RAbs(u): c for u, c in _subst(t.body, items, x, depth + 1).items()}
    if isinstance(t, (LTag, RTag)):
        return {type(t)(t.p, u): c for u, c in _subst(t.body, items, x, depth).items()}
    if isinstance(t, LinApp):
        k = _occurrences(t.head, x, depth)
        out: Terms = {}
        for chosen in combinations(range(n), k):
            rest = tuple(items[i] for i in range(n) if i not in chosen)
            heads = _subst(t.head, tuple(items[i] for i in chosen), x, depth)
            if not heads:
                continue
            bags = _subst(t.bag, rest, x, depth)
            for term, c in _product([heads, bags], lambda hb: LinApp(hb[0], hb[1])).items():
                out[term] = out.get(term, Fraction(0)) + c
        return out
    if isinstance(t, Bag):
        out = {}
        for parts in _bag_partitions(t.items, tuple(range(n)), x, depth):
            images = [_subst(u, tuple(items[i] for i in idx), x, depth) for u, idx in parts]
            if any(not img for img in images):
                continue
            for term, c in _product(images, Bag).items():
                out[term] = out.get(term, Fraction(0)) + c
        return out
    raise TypeError(f"not a resource term: {t!r}")


def _bag_partitions(elements: tuple, indices: tuple, x, depth):
    """Ordered partitions of indices, block i sized by the occurrences in element i."""
    if not elements:
        if not indices:
            yield []
        return
    first, rest = elements[0], elements[1:]
    k = _occurrences(first, x, depth)
    for chosen in combinations(indices, k):
        remaining = tuple(i for i in indices if i not in chosen)
        for tail in _bag_partitions(rest, remaining, x, depth):
            yield [(first, chosen)] + tail


def substitute(sigma: Node, bag: Bag, x: Target) -> Combination:
    """Linear substitution sigma<bag/x>.

    Splits the bag over every way of distributing its elements to the free
    occurrences of x; the result is 0 unless x occurs exactly len(bag) times.

    Args:
        sigma: Simple term or poly-term.
        bag: Elements, expressed in sigma's outer context.
        x: A Free name or the de Bruijn index of a variable free in sigma.

    Returns:
        Combination: of the same kind as sigma.
    """
    try:
        return Combination(_subst(sigma, bag.items, _target(x), 0), kind_of(sigma))
    except ProbTaylorException:
        raise
    except Exception as e:
        raise ProbTaylorException(e, sys) from e


def _replace(t: Node, x, depth: int, supply: Callable[[int], Node]) -> Node:
    if isinstance(t, (Var, Free)):
        return supply(depth) if _matches(t, x, depth) else t
    if isinstance(t, RAbs):
        return RAbs(_replace(t.body, x, depth + 1, supply))
    if isinstance(t, (LTag, RTag)):
        return type(t)(t.p, _replace(t.body, x, depth, supply))
    if isinstance(t, LinApp):
        head = _replace(t.head, x, depth, supply)
        return LinApp(head, _replace(t.bag, x, depth, supply))
    if isinstance(t, Bag):
        return Bag(tuple(_replace(u, x, depth, supply) for u in t.items))
    raise TypeError(f"not a resource term: {t!r}")


def substitute_oracle(sigma: Node, bag: Bag, x: Target) -> Combination:
    """Sum over all n! assignments of bag elements to the occurrences of x."""
    target = _target(x)
    items = bag.items
    if len(items) != _occurrences(sigma, target, 0):
        return Combination.zero(kind_of(sigma))
    out: Terms = {}
    for perm in permutations(range(len(items))):
        order = iter(perm)
        term = _replace(sigma, target, 0, lambda depth: shift(items[next(order)], depth))
        out[term] = out.get(term, Fraction(0)) + 1
    return Combination(out, kind_of(sigma))


@lru_cache(maxsize=_CACHE)
def _beta(body: Node, bag: Bag) -> Tuple[Tuple[Node, Fraction], ...]:
    lifted = tuple(shift(u, 1) for u in bag.items)
    return tuple((shift(t, -1), c) for t, c in _subst(body, lifted, 0, 0).items())


def beta_contract(body: Node, bag: Bag) -> Terms:
    """Contract (\\x. body) bag."""
    return dict(_beta(body, bag))


# reduction


def _reducts(t: Node) -> List[Terms]:
    out: List[Terms] = []
    if isinstance(t, LinApp):
        if isinstance(t.head, RAbs):
            out.append(beta_contract(t.head.body, t.bag))
        elif isinstance(t.head, (LTag, RTag)):
            tag = t.head
            out.append({type(tag)(tag.p, LinApp(tag.body, t.bag)): Fraction(1)})
        out.extend({LinApp(u, t.bag): c for u, c in r.items()} for r in _reducts(t.head))
        out.extend({LinApp(t.head, u): c for u, c in r.items()} for r in _reducts(t.bag))
    elif isinstance(t, RAbs):
        if isinstance(t.body, (LTag, RTag)):
            tag = t.body
            out.append({type(tag)(tag.p, RAbs(tag.body)): Fraction(1)})
        out.extend({RAbs(u): c for u, c in r.items()} for r in _reducts(t.body))
    elif isinstance(t, (LTag, RTag)):
        out.extend({type(t)(t.p, u): c for u, c in r.items()} for r in _reducts(t.body))
    elif isinstance(t, Bag):
        seen: Set[Node] = set()
        for i, element in enumerate(t.items):
            if element in seen:
                continue
            seen.add(element)
            rest = t.items[:i] + t.items[i + 1 :]
            for r in _reducts(element):
                out.append({Bag(rest + (u,)): c for u, c in r.items()})
    return out


def is_normal(sigma: Node) -> bool:
    return not _reducts(sigma)


def one_step_reducts(sigma: Node) -> List[Combination]:
    """Every T with sigma -> T, one per redex occurrence."""
    return [Combination(r, kind_of(sigma)) for r in _reducts(sigma)]


def reduce_one(S: Combination) -> Set[Combination]:
    """All one-step reducts S - S_s.s + S_s.T of a finite combination."""
    results = set()
    entries = S.as_dict()
    for sigma, c in entries.items():
        for reduct in _reducts(sigma):
            rest = {t: d for t, d in entries.items() if t != sigma}
            pairs = list(rest.items()) + [(u, c * d) for u, d in reduct.items()]
            results.add(Combination(pairs, S.kind))
    return results


# complete left reduct


@lru_cache(maxsize=_CACHE)
def _left(t: Node) -> Tuple[Tuple[Node, Fraction], ...]:
    if isinstance(t, (LTag, RTag)):
        return tuple((type(t)(t.p, u), c) for u, c in _left(t.body))
    if isinstance(t, Bag):
        parts = [dict(_left(u)) for u in t.items]
        return tuple(_product(parts, Bag).items())
    k, core = strip_abstractions(t)
    head, args = spine(core)
    if isinstance(head, (Var, Free)):
        parts = [dict(_left(b)) for b in args]
        built = _product(parts, lambda bags: abstract(apply_all(head, bags, True), k, True))
        return tuple(built.items())
    if isinstance(head, RAbs):
        out = {}
        for u, c in beta_contract(head.body, args[0]).items():
            term = abstract(apply_all(u, args[1:], True), k, True)
            out[term] = out.get(term, Fraction(0)) + c
        return tuple(out.items())
    if isinstance(head, (LTag, RTag)):
        lifted = type(head)(head.p, abstract(apply_all(head.body, args, True), k, True))
        return ((lifted, Fraction(1)),)
    raise TypeError(f"not a resource term: {t!r}")


def left_reduct(sigma: Node) -> Combination:
    """L(sigma): one synchronised leftmost pass; identity exactly on normal forms."""
    return Combination(dict(_left(sigma)), kind_of(sigma))


def left_reduct_combination(S: Combination) -> Combination:
    return S.map_linear(left_reduct)


def normal_form_steps(S: Combination) -> Tuple[Combination, int]:
    """nf(S) and the number k of L passes with L^k(S) = nf(S)."""
    steps = 0
    while True:
        nxt = left_reduct_combination(S)
        if nxt == S:
            return S, steps
        S = nxt
        steps += 1


def normalize(S: Combination) -> Combination:
    """The unique normal form, by iterating L to its fixpoint."""
    try:
        nf, steps = normal_form_steps(S)
        logging.debug(f"normalized {len(S)} terms in {steps} left passes")
        return nf
    except ProbTaylorException:
        raise
    except RecursionError as e:
        raise ProbTaylorException(e, sys) from e


# coherence and coefficients


@lru_cache(maxsize=_CACHE)
def coherent(a: Node, b: Node) -> bool:
    """The coherence relation a ⌢ b."""
    if kind_of(a) != kind_of(b):
        raise KindMismatchError("coherence compares terms of the same kind")
    if isinstance(a, (Var, Free)) or isinstance(b, (Var, Free)):
        return a == b
    if isinstance(a, RAbs) and isinstance(b, RAbs):
        return coherent(a.body, b.body)
    if isinstance(a, LinApp) and isinstance(b, LinApp):
        return coherent(a.head, b.head) and coherent(a.bag, b.bag)
    if isinstance(a, (LTag, RTag)) and isinstance(b, (LTag, RTag)):
        if a.p != b.p:
            return False
        if type(a) is type(b):
            return coherent(a.body, b.body)
        return coherent(a.body, a.body) and coherent(b.body, b.body)
    if isinstance(a, Bag) and isinstance(b, Bag):
        pool = list(set(a.items) | set(b.items))
        return all(coherent(u, v) for i, u in enumerate(pool) for v in pool[i:])
    return False


def is_uniform(S: Combination) -> bool:
    support = S.support()
    return all(coherent(u, v) for i, u in enumerate(support) for v in support[i:])


@lru_cache(maxsize=_CACHE)
def multinomial(sigma: Node) -> int:
    """m(sigma): the number of bag permutations fixing sigma."""
    if isinstance(sigma, (Var, Free)):
        return 1
    if isinstance(sigma, (RAbs, LTag, RTag)):
        return multinomial(sigma.body)
    if isinstance(sigma, LinApp):
        return multinomial(sigma.head) * multinomial(sigma.bag)
    if isinstance(sigma, Bag):
        m = 1
        for u, count in sigma.counts().items():
            m *= factorial(count) * multinomial(u) ** count
        return m
    raise TypeError(f"not a resource term: {sigma!r}")


def is_regular(S: Combination) -> bool:
    return is_uniform(S) and all(c == Fraction(1, multinomial(s)) for s, c in S.items())


# sizes


@lru_cache(maxsize=_CACHE)
def size(sigma: Node, count_tags: bool = True) -> int:
    """Constructor count; with count_tags=False tags are free (the erased size)."""
    if isinstance(sigma, (Var, Free)):
        return 1
    if isinstance(sigma, RAbs):
        return 1 + size(sigma.body, count_tags)
    if isinstance(sigma, (LTag, RTag)):
        return int(count_tags) + size(sigma.body, count_tags)
    if isinstance(sigma, LinApp):
        return 1 + size(sigma.head, count_tags) + size(sigma.bag, count_tags)
    if isinstance(sigma, Bag):
        return sum(size(u, count_tags) for u in sigma.items)
    raise TypeError(f"not a resource term: {sigma!r}")


@dataclass(frozen=True)
class SizeMultiset:
    """Multiset of support sizes, ordered by the reverse lexicographic order."""

    sizes: Tuple[int, ...]

    def count(self, a: int) -> int:
        return self.sizes.count(a)

    def precedes(self, other: "SizeMultiset") -> bool:
        """self ≺ other: the largest size where they differ has fewer copies in self."""
        for a in sorted(set(self.sizes) | set(other.sizes), reverse=True):
            mine, theirs = self.count(a), other.count(a)
            if mine != theirs:
                return mine < theirs
        return False


def ssize(S: Combination) -> SizeMultiset:
    return SizeMultiset(tuple(sorted((size(s) for s in S.support()), reverse=True)))


# exponential


def exponential(
    S: Combination,
    max_copies: int,
    max_size: Optional[int] = None,
    measure: Callable[[Node], int] = size,
) -> Combination:
    """Truncated !S = sum over n <= max_copies of [S^n]/n!.

    The coefficient of [s1^k1 ... sj^kj] is  prod ci^ki / ki!.  With
    max_size, only bags whose measured size is at most max_size are kept;
    each kept coefficient is still exact.
    """
    if S.kind != Kind.TERM:
        raise KindMismatchError("exponential takes a term-level combination")
    entries = [(s, c, measure(s)) for s, c in S.items()]
    out: Terms = {}

    def grow(start: int, chosen: list, coefficient: Fraction, copies: int, room):
        bag = Bag(tuple(chosen))
        out[bag] = out.get(bag, Fraction(0)) + coefficient
        if copies == 0:
            return
        for i in range(start, len(entries)):
            s, c, sz = entries[i]
            if room is not None and sz > room:
                continue
            already = sum(1 for u in chosen if u == s)
            grow(
                i,
                chosen + [s],
                coefficient * c / (already + 1),
                copies - 1,
                None if room is None else room - sz,
            )

    grow(0, [], Fraction(1), max_copies, max_size)
    return Combination(out, Kind.POLY)


__all__ = [
    "shift",
    "occurrences",
    "substitute",
    "substitute_oracle",
    "beta_contract",
    "reduce_one",
    "one_step_reducts",
    "is_normal",
    "left_reduct",
    "left_reduct_combination",
    "normalize",
    "normal_form_steps",
    "coherent",
    "is_uniform",
    "multinomial",
    "is_regular",
    "exponential",
    "size",
    "ssize",
    "SizeMultiset",
]
