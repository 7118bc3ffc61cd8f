"""Taylor expansions of probabilistic lambda-terms, truncated by size.

The explicit expansion keeps every choice as an l/r tag; the generic one
erases tags into probability weights. Normal forms are computed through
head reduction: each resolved branch (rho, h) contributes <rho> applied to
the normal form of the expansion of h, built recursively from the
arguments of h.

Every budget keeps exactly the terms whose size fits, so each reported
coefficient is exact for its term.
"""

import sys
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from PROB_TAYLOR.components.operational import head_reductions
from PROB_TAYLOR.components.resource import exponential, size
from PROB_TAYLOR.entity.artifact import ErasedWeight, HeadNormalForm
from PROB_TAYLOR.entity.combination import Combination, Kind
from PROB_TAYLOR.entity.config import TruncationBudget
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
)
from PROB_TAYLOR.exceptions import ProbTaylorException
from PROB_TAYLOR.logger import logging

Items = Tuple[Tuple[Node, Fraction], ...]


def _measure(count_tags: bool):
    return lambda s: size(s, count_tags)


def _applications(heads: Items, arg: Items, limit: int, copies: int, count_tags: bool) -> Dict[Node, Fraction]:
    """sum over heads h and bags b of c_h d_b . h b, keeping size <= limit."""
    out: Dict[Node, Fraction] = {}
    if not heads:
        return out
    measure = _measure(count_tags)
    room = limit - 1 - min(measure(h) for h, _ in heads)
    bags = exponential(Combination(dict(arg)), copies, max_size=room, measure=measure)
    for h, c in heads:
        left = limit - 1 - measure(h)
        for bag, d in bags.items():
            if measure(bag) <= left:
                term = LinApp(h, bag)
                out[term] = out.get(term, Fraction(0)) + c * d
    return out


@lru_cache(maxsize=1 << 12)
def _expand(M: Node, limit: int, copies: int, count_tags: bool) -> Items:
    if limit < 1:
        return ()
    if isinstance(M, (Var, Free)):
        return ((M, Fraction(1)),)
    if isinstance(M, Abs):
        return tuple((RAbs(s), c) for s, c in _expand(M.body, limit - 1, copies, count_tags))
    if isinstance(M, Choice):
        inner = limit - 1 if count_tags else limit
        left = [(LTag(M.p, s), c) for s, c in _expand(M.left, inner, copies, count_tags)]
        right = [(RTag(M.p, s), c) for s, c in _expand(M.right, inner, copies, count_tags)]
        return tuple(left + right)
    if isinstance(M, App):
        heads = _expand(M.fun, limit - 1, copies, count_tags)
        arg = _expand(M.arg, limit - 2, copies, count_tags)
        return tuple(_applications(heads, arg, limit, copies, count_tags).items())
    raise TypeError(f"not a lambda-term: {M!r}")


def explicit_taylor(M: Node, b: TruncationBudget) -> Combination:
    """The explicit Taylor expansion of M, restricted to size <= b.max_term_size.

    Application expands through the exponential; choices become l/r tags.
    Every kept term s carries exactly 1/m(s).
    """
    try:
        expansion = Combination(dict(_expand(M, b.max_term_size, b.max_bag_copies, True)), Kind.TERM)
        logging.debug(f"explicit expansion: {len(expansion)} terms at {b}")
        return expansion
    except ProbTaylorException:
        raise
    except Exception as e:
        raise ProbTaylorException(e, sys) from e


def _multisets(elements: List[Tuple[Node, int]], copies: int, room: int, start: int = 0):
    yield ()
    if copies == 0:
        return
    for i in range(start, len(elements)):
        s, sz = elements[i]
        if sz > room:
            continue
        for tail in _multisets(elements, copies - 1, room - sz, i):
            yield (s,) + tail


@lru_cache(maxsize=1 << 12)
def _support(M: Node, limit: int, copies: int) -> frozenset:
    if limit < 1:
        return frozenset()
    if isinstance(M, (Var, Free)):
        return frozenset({M})
    if isinstance(M, Abs):
        return frozenset(RAbs(s) for s in _support(M.body, limit - 1, copies))
    if isinstance(M, Choice):
        return frozenset(
            [LTag(M.p, s) for s in _support(M.left, limit - 1, copies)]
            + [RTag(M.p, s) for s in _support(M.right, limit - 1, copies)]
        )
    if isinstance(M, App):
        elements = sorted(((t, size(t)) for t in _support(M.arg, limit - 2, copies)), key=lambda e: e[0].key)
        out = set()
        for s in _support(M.fun, limit - 1, copies):
            room = limit - 1 - size(s)
            out.update(LinApp(s, Bag(bag)) for bag in _multisets(elements, copies, room))
        return frozenset(out)
    raise TypeError(f"not a lambda-term: {M!r}")


def explicit_taylor_support(M: Node, b: TruncationBudget) -> set:
    """Support of the explicit expansion within b, built clause by clause."""
    return set(_support(M, b.max_term_size, b.max_bag_copies))


@lru_cache(maxsize=1 << 14)
def _erase(sigma: Node) -> Tuple[Node, Fraction]:
    if isinstance(sigma, (Var, Free)):
        return sigma, Fraction(1)
    if isinstance(sigma, LTag):
        term, weight = _erase(sigma.body)
        return term, sigma.p * weight
    if isinstance(sigma, RTag):
        term, weight = _erase(sigma.body)
        return term, (1 - sigma.p) * weight
    if isinstance(sigma, RAbs):
        term, weight = _erase(sigma.body)
        return RAbs(term), weight
    if isinstance(sigma, LinApp):
        head, w1 = _erase(sigma.head)
        bag, w2 = _erase(sigma.bag)
        return LinApp(head, bag), w1 * w2
    if isinstance(sigma, Bag):
        weight = Fraction(1)
        items = []
        for u in sigma.items:
            term, w = _erase(u)
            items.append(term)
            weight *= w
        return Bag(tuple(items)), weight
    raise TypeError(f"not a resource term: {sigma!r}")


def erase(sigma: Node) -> ErasedWeight:
    """Forget the tags of sigma, keeping the probability they carried."""
    term, weight = _erase(sigma)
    return ErasedWeight(term, weight)


def erase_combination(S: Combination) -> Combination:
    pairs = []
    for s, c in S.items():
        erased = erase(s)
        pairs.append((erased.term, c * erased.weight))
    return Combination(pairs, S.kind)


def generic_taylor(M: Node, b: TruncationBudget) -> Combination:
    """Generic Taylor expansion within b, as the erasure of the explicit one.

    The explicit expansion is truncated by erased size, so the erased
    coefficients are exact for every choice-free term of size <= b.max_term_size.
    """
    explicit = Combination(dict(_expand(M, b.max_term_size, b.max_bag_copies, False)), Kind.TERM)
    return erase_combination(explicit)


@lru_cache(maxsize=1 << 12)
def _direct(M: Node, limit: int, copies: int) -> Items:
    if limit < 1:
        return ()
    if isinstance(M, (Var, Free)):
        return ((M, Fraction(1)),)
    if isinstance(M, Abs):
        return tuple((RAbs(s), c) for s, c in _direct(M.body, limit - 1, copies))
    if isinstance(M, Choice):
        left = Combination(dict(_direct(M.left, limit, copies))).scale(M.p)
        right = Combination(dict(_direct(M.right, limit, copies))).scale(1 - M.p)
        return tuple((left + right).as_dict().items())
    if isinstance(M, App):
        heads = _direct(M.fun, limit - 1, copies)
        arg = _direct(M.arg, limit - 2, copies)
        return tuple(_applications(heads, arg, limit, copies, True).items())
    raise TypeError(f"not a lambda-term: {M!r}")


def generic_taylor_direct(M: Node, b: TruncationBudget) -> Combination:
    """Generic expansion by its own inductive definition, with p.T(M) + (1-p).T(N) for choices."""
    return Combination(dict(_direct(M, b.max_term_size, b.max_bag_copies)), Kind.TERM)


def barycentric_equiv_check(M: Node, N: Node, b: TruncationBudget) -> bool:
    """True iff the generic expansions of M and N agree within b."""
    return generic_taylor(M, b) == generic_taylor(N, b)


# normal forms through head reduction


def bag_products(per_arg: List[Combination], room: int, measure) -> Dict[tuple, Fraction]:
    """One bag per argument position, total measured size at most room."""
    out: Dict[tuple, Fraction] = {(): Fraction(1)}
    for bags in per_arg:
        nxt: Dict[tuple, Fraction] = {}
        for chosen, c in out.items():
            used = sum(measure(b) for b in chosen)
            for bag, d in bags.items():
                if used + measure(bag) <= room:
                    nxt[chosen + (bag,)] = c * d
        out = nxt
    return out


def _hnf_expansion(h: HeadNormalForm, room: int, copies: int, fuel: int, count_tags: bool):
    """Normal form of the expansion of h, as (items, error)."""
    base = h.binders + 1 + len(h.args)
    if base > room:
        return (), Fraction(0)
    avail = room - base
    measure = _measure(count_tags)
    per_arg = []
    error = Fraction(0)
    for P in h.args:
        items, residual = _nf(P, avail, copies, fuel, count_tags)
        per_arg.append(exponential(Combination(dict(items), Kind.TERM), copies, max_size=avail, measure=measure))
        error += copies * residual
    out = {}
    for bags, c in bag_products(per_arg, avail, measure).items():
        out[abstract(apply_all(h.head_var, bags, True), h.binders, True)] = c
    return tuple(out.items()), min(Fraction(1), error)


@lru_cache(maxsize=1 << 12)
def _nf(M: Node, limit: int, copies: int, fuel: int, count_tags: bool) -> Tuple[Items, Fraction]:
    frontier = head_reductions(M, fuel)
    out: Dict[Node, Fraction] = {}
    residual = frontier.unresolved_mass
    for rho, h in frontier.resolved:
        room = limit - len(rho) if count_tags else limit
        items, error = _hnf_expansion(h, room, copies, fuel, count_tags)
        residual += rho.probability() * error
        for s, c in items:
            term = rho.prefix(s)
            out[term] = out.get(term, Fraction(0)) + c
    return tuple(out.items()), residual


def explicit_taylor_nf(M: Node, b: TruncationBudget, fuel: int) -> Tuple[Combination, Fraction]:
    """Normal form of the explicit expansion of M within b.

    Args:
        M: Term to expand.
        b: Size and copy bounds on the reported normal terms.
        fuel: Head steps explored per branch, at every nesting level.

    Returns:
        (Combination, residual): terms <rho>s for every resolved branch, each with
        coefficient 1/m; residual is the probability mass left unresolved.
    """
    try:
        items, residual = _nf(M, b.max_term_size, b.max_bag_copies, fuel, True)
        return Combination(dict(items), Kind.TERM), residual
    except ProbTaylorException:
        raise
    except Exception as e:
        raise ProbTaylorException(e, sys) from e


def taylor_nf(M: Node, b: TruncationBudget, fuel: int) -> Tuple[Combination, Fraction]:
    """Normal form of the generic expansion of M within b.

    Coefficients are exact lower bounds; the true coefficient of every
    normal term t lies in [c_t, c_t + residual].
    """
    try:
        items, residual = _nf(M, b.max_term_size, b.max_bag_copies, fuel, False)
        normal = erase_combination(Combination(dict(items), Kind.TERM))
        logging.debug(f"taylor normal form: {len(normal)} terms, residual {residual}")
        return normal, residual
    except ProbTaylorException:
        raise
    except Exception as e:
        raise ProbTaylorException(e, sys) from e


__all__ = [
    "explicit_taylor",
    "explicit_taylor_support",
    "erase",
    "erase_combination",
    "generic_taylor",
    "generic_taylor_direct",
    "barycentric_equiv_check",
    "explicit_taylor_nf",
    "taylor_nf",
]
