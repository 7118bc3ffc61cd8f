"""Böhm-tree approximants, Böhm tests and resource Böhm tests.

Approximants are computed to a fixed depth from fuel-bounded head
reduction; every probability is a lower bound and the unresolved mass is
kept alongside. Tests are evaluated to intervals [lower, upper].

Resource tests (no omega and no conjunction below ev) are in bijection with
normal choice-free resource terms through the s_T encoding, which links
test probabilities to Taylor coefficients.
"""

import sys
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import islice, product
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from lark import Lark, Token
from lark.exceptions import UnexpectedInput

from PROB_TAYLOR.components.operational import head_reductions
from PROB_TAYLOR.components.resource import exponential, multinomial, size
from PROB_TAYLOR.components.syntax import fresh_name, print_term
from PROB_TAYLOR.components.taylor import bag_products, taylor_nf
from PROB_TAYLOR.entity.artifact import HeadNormalForm, Verdict
from PROB_TAYLOR.entity.combination import Combination, Kind
from PROB_TAYLOR.entity.config import FamilyBudget, TruncationBudget
from PROB_TAYLOR.entity.terms import Bag, Free, Node, Var, abstract, apply_all, spine, strip_abstractions
from PROB_TAYLOR.entity.trees import And, BohmApprox, Ev, Head, Omega, Test, ValueTreeApprox
from PROB_TAYLOR.exceptions import ProbTaylorException, TermSyntaxError, TestShapeError
from PROB_TAYLOR.logger import logging

Interval = Tuple[Fraction, Fraction]

ONE: Interval = (Fraction(1), Fraction(1))
ZERO: Interval = (Fraction(0), Fraction(0))


# approximants


@lru_cache(maxsize=1 << 12)
def pt_approximant(M: Node, d: int, fuel: int) -> BohmApprox:
    """Depth-d Böhm approximant of M.

    Args:
        M: Term.
        d: Depth; 0 gives the empty approximant.
        fuel: Head steps per branch, at every level.

    Returns:
        BohmApprox: lower-bound distribution over value trees; unfolded_residual is the
        unresolved head mass and folded_residual() adds inexact sub-approximants.
    """
    if d == 0:
        return BohmApprox(0)
    frontier = head_reductions(M, fuel)
    dist: Dict[ValueTreeApprox, Fraction] = {}
    for rho, h in frontier.resolved:
        children = tuple(pt_approximant(P, d - 1, fuel) for P in h.args)
        tree = ValueTreeApprox(h.binders, h.head_var, children)
        dist[tree] = dist.get(tree, Fraction(0)) + rho.probability()
    return BohmApprox(d, tuple(dist.items()), frontier.unresolved_mass)


def _trees(A: BohmApprox) -> set:
    return {t for t, _ in A.dist}


def compare_approximants(A: BohmApprox, B: BohmApprox) -> Verdict:
    """EQUAL when both are exact and identical, DISTINCT when some interval
    separates them, UNKNOWN otherwise."""
    if A.is_exact() and B.is_exact():
        return Verdict.EQUAL if A == B else Verdict.DISTINCT
    ra, rb = A.folded_residual(), B.folded_residual()
    if A.mass() + A.unfolded_residual < B.mass() or B.mass() + B.unfolded_residual < A.mass():
        return Verdict.DISTINCT
    for tree in _trees(A) | _trees(B):
        if not tree.is_exact():
            continue
        a, b = A.probability(tree), B.probability(tree)
        if a + ra < b or b + rb < a:
            return Verdict.DISTINCT
    return Verdict.UNKNOWN


@lru_cache(maxsize=1 << 12)
def _tree_taylor(T: BohmApprox, limit: int, copies: int) -> Tuple[Tuple[Node, Fraction], ...]:
    out: Dict[Node, Fraction] = {}
    for tree, c in T.dist:
        base = tree.binders + 1 + len(tree.children)
        if base > limit:
            continue
        avail = limit - base
        per_arg = [
            exponential(Combination(dict(_tree_taylor(child, avail, copies)), Kind.TERM), copies, max_size=avail)
            for child in tree.children
        ]
        for bags, d in bag_products(per_arg, avail, size).items():
            term = abstract(apply_all(tree.head_var, bags, True), tree.binders, True)
            out[term] = out.get(term, Fraction(0)) + c * d
    return tuple(out.items())


def taylor_of_tree(T: BohmApprox, b: TruncationBudget) -> Combination:
    """Taylor expansion of an approximant: sum of T(t) . λx.y !T(T1) ... !T(Tm)."""
    return Combination(dict(_tree_taylor(T, b.max_term_size, b.max_bag_copies)), Kind.TERM)


def nesting_depth(s: Node) -> int:
    """Layers of nested bags in a normal choice-free term; λx.y [] ... [] has depth 1."""
    _, core = strip_abstractions(s)
    _, bags = spine(core)
    return 1 + max((nesting_depth(u) for bag in bags for u in bag.items), default=0)


def free_heads(T: Node) -> set:
    """Free head names occurring in an approximant or a test."""
    if isinstance(T, BohmApprox):
        return set().union(*(free_heads(tree) for tree, _ in T.dist))
    if isinstance(T, (ValueTreeApprox, Head)):
        inner = T.children if isinstance(T, ValueTreeApprox) else T.args
        own = {T.head_var.name} if isinstance(T.head_var, Free) else set()
        return own.union(*(free_heads(c) for c in inner))
    if isinstance(T, And):
        return free_heads(T.left) | free_heads(T.right)
    if isinstance(T, Ev):
        return free_heads(T.test)
    return set()


def approximant_to_json(T: BohmApprox, scope: Sequence[str] = (), avoid: Optional[set] = None) -> dict:
    avoid = free_heads(T) if avoid is None else avoid
    trees = []
    for tree, c in T.dist:
        names = list(scope)
        for _ in range(tree.binders):
            names.append(fresh_name(set(names) | avoid))
        trees.append(
            {
                "probability": str(c),
                "binders": names[len(scope):],
                "head": print_term(tree.head_var, names),
                "children": [approximant_to_json(child, names, avoid) for child in tree.children],
            }
        )
    return {
        "depth": T.depth,
        "residual": str(T.folded_residual()),
        "unfolded_residual": str(T.unfolded_residual),
        "trees": trees,
    }


# test syntax

TEST_GRAMMAR = r"""
    ?start: btt
    ?btt: btt_atom
        | btt "&" btt_atom -> conj
    ?btt_atom: OMEGA -> omega
             | "ev" "(" bht ")" -> ev
             | "(" btt ")"
    ?bht: bht_atom
        | bht "&" bht_atom -> conj
    ?bht_atom: OMEGA -> omega
             | head_test
    head_test: "(" LAMBDA NAME+ "." NAME ")" "(" [btt ("," btt)*] ")"
             | NAME "(" [btt ("," btt)*] ")"
    OMEGA.2: /w(?![A-Za-z0-9_'])/ | "ω"
    LAMBDA: "\\" | "λ"
    NAME: /[A-Za-z_][A-Za-z0-9_']*/
    %import common.WS
    %ignore WS
"""

_test_parser = Lark(TEST_GRAMMAR, parser="lalr", maybe_placeholders=True)


def _resolve(name: str, scope: List[str]):
    for depth, bound in enumerate(reversed(scope)):
        if bound == name:
            return Var(depth)
    return Free(name)


def _build_test(tree, scope: List[str]) -> Test:
    rule = tree.data
    if rule == "omega":
        return Omega()
    if rule == "conj":
        return And(_build_test(tree.children[0], scope), _build_test(tree.children[1], scope))
    if rule == "ev":
        return Ev(_build_test(tree.children[0], scope))
    if rule == "head_test":
        tokens = [c for c in tree.children if isinstance(c, Token)]
        args = [c for c in tree.children if c is not None and not isinstance(c, Token)]
        names = [str(t) for t in tokens if t.type == "NAME"]
        binders, head = names[:-1], names[-1]
        inner = scope + binders
        return Head(
            len(binders),
            _resolve(head, inner),
            tuple(_build_test(a, inner) for a in args),
        )
    raise TermSyntaxError(f"unknown test construct {rule}")


def parse_test(text: str) -> Test:
    """Parse a Böhm term test: ``w | T & T | ev(t)`` with ``t`` built from
    ``w``, ``&`` and head tests ``(\\x1 .. xn. y)(T1, ..., Tm)`` or ``y(T1, ...)``.
    The name ``w`` is reserved for omega."""
    try:
        tree = _test_parser.parse(text)
    except UnexpectedInput as e:
        raise TermSyntaxError(
            f"cannot parse test {text!r}", line=getattr(e, "line", None), column=getattr(e, "column", None)
        ) from e
    return _build_test(tree, [])


def print_test(T: Test, scope: Sequence[str] = (), avoid: Optional[set] = None) -> str:
    avoid = free_heads(T) | {"w"} if avoid is None else avoid
    if isinstance(T, Omega):
        return "w"
    if isinstance(T, And):
        return f"{print_test(T.left, scope, avoid)} & {print_test(T.right, scope, avoid)}"
    if isinstance(T, Ev):
        return f"ev({print_test(T.test, scope, avoid)})"
    if isinstance(T, Head):
        names = list(scope)
        for _ in range(T.binders):
            names.append(fresh_name(set(names) | avoid))
        y = T.head_var.name if isinstance(T.head_var, Free) else names[-1 - T.head_var.index]
        args = ", ".join(print_test(a, names, avoid) for a in T.args)
        if T.binders == 0:
            return f"{y}({args})"
        return f"(\\{' '.join(names[len(scope):])}. {y})({args})"
    raise TestShapeError(f"not a test: {T!r}")


# evaluation


def eval_btt(T: Test, M: Node, fuel: int) -> Interval:
    """Interval for the success probability of a term test on M."""
    try:
        return _eval_btt(T, M, fuel)
    except ProbTaylorException:
        raise
    except Exception as e:
        raise ProbTaylorException(e, sys) from e


@lru_cache(maxsize=1 << 14)
def _eval_btt(T: Test, M: Node, fuel: int) -> Interval:
    if isinstance(T, Omega):
        return ONE
    if isinstance(T, And):
        l1, u1 = _eval_btt(T.left, M, fuel)
        l2, u2 = _eval_btt(T.right, M, fuel)
        return l1 * l2, u1 * u2
    if isinstance(T, Ev):
        frontier = head_reductions(M, fuel)
        lower, upper = Fraction(0), frontier.unresolved_mass
        for rho, h in frontier.resolved:
            lo, hi = _eval_bht(T.test, h, fuel)
            lower += rho.probability() * lo
            upper += rho.probability() * hi
        return lower, upper
    raise TestShapeError(f"{type(T).__name__} is not a term-level test")


def eval_bht(t: Test, h: HeadNormalForm, fuel: int) -> Interval:
    """Interval for the success probability of an hnf test on h."""
    return _eval_bht(t, h, fuel)


@lru_cache(maxsize=1 << 14)
def _eval_bht(t: Test, h: HeadNormalForm, fuel: int) -> Interval:
    if isinstance(t, Omega):
        return ONE
    if isinstance(t, And):
        l1, u1 = _eval_bht(t.left, h, fuel)
        l2, u2 = _eval_bht(t.right, h, fuel)
        return l1 * l2, u1 * u2
    if isinstance(t, Head):
        if (t.binders, t.head_var, len(t.args)) != h.shape:
            return ZERO
        lower, upper = Fraction(1), Fraction(1)
        for test, arg in zip(t.args, h.args):
            lo, hi = _eval_btt(test, arg, fuel)
            lower *= lo
            upper *= hi
        return lower, upper
    raise TestShapeError(f"{type(t).__name__} is not an hnf-level test")


# resource tests


def is_resource_test(T: Test) -> bool:
    """True on the resource fragment: below ev only head tests, no omega or conjunction."""
    if isinstance(T, Omega):
        return True
    if isinstance(T, And):
        return is_resource_test(T.left) and is_resource_test(T.right)
    if isinstance(T, Ev):
        return is_resource_hnf_test(T.test)
    return False


def is_resource_hnf_test(t: Test) -> bool:
    return isinstance(t, Head) and all(is_resource_test(a) for a in t.args)


def rbtt_to_polyterm(T: Test) -> Bag:
    """s_T: omega is [], conjunction is bag union, ev(t) is [s_t]."""
    if isinstance(T, Omega):
        return Bag()
    if isinstance(T, And):
        return rbtt_to_polyterm(T.left).union(rbtt_to_polyterm(T.right))
    if isinstance(T, Ev):
        return Bag.of(rbht_to_term(T.test))
    raise TestShapeError(f"not a resource term test: {T!r}")


def rbht_to_term(t: Test) -> Node:
    """s_t = λx1..xn. y s_T1 ... s_Tm."""
    if not isinstance(t, Head):
        raise TestShapeError(f"not a resource hnf test: {t!r}")
    bags = [rbtt_to_polyterm(a) for a in t.args]
    return abstract(apply_all(t.head_var, bags, True), t.binders, True)


def term_to_rbht(s: Node) -> Head:
    """Inverse of rbht_to_term on normal choice-free terms."""
    k, core = strip_abstractions(s)
    head, bags = spine(core)
    if not isinstance(head, (Var, Free)):
        raise TestShapeError("only normal choice-free terms encode resource tests")
    return Head(k, head, tuple(polyterm_to_rbtt(b) for b in bags))


def polyterm_to_rbtt(bag: Bag) -> Test:
    """Inverse of rbtt_to_polyterm: a conjunction of ev tests, omega when empty."""
    tests = [Ev(term_to_rbht(u)) for u in bag.items]
    if not tests:
        return Omega()
    return reduce(And, tests)


def _conjuncts(T: Test) -> List[Test]:
    if isinstance(T, And):
        return _conjuncts(T.left) + _conjuncts(T.right)
    return [T]


def _conjoin(tests: List[Test]) -> Test:
    return reduce(And, tests) if tests else Omega()


def normalize_test(T: Test) -> Test:
    """Canonical form modulo associativity, commutativity and the unit omega of ∧."""
    parts = []
    for part in _conjuncts(T):
        if isinstance(part, Ev):
            part = Ev(normalize_test(part.test))
        elif isinstance(part, Head):
            part = Head(part.binders, part.head_var, tuple(normalize_test(a) for a in part.args))
        if not isinstance(part, Omega):
            parts.append(part)
    return _conjoin(sorted(parts, key=lambda p: p.key))


def _head_variables(binders: int, context: int, budget: FamilyBudget) -> List[Node]:
    return [Var(i) for i in range(binders + context)] + [Free(n) for n in budget.free_names]


def _omega_family(budget: FamilyBudget, context: int) -> Iterator[Test]:
    for total in range(budget.max_binders + budget.max_arity + 1):
        for n in range(min(total, budget.max_binders) + 1):
            m = total - n
            if m > budget.max_arity:
                continue
            for y in _head_variables(n, context, budget):
                yield Head(n, y, (Omega(),) * m)


def _btt_family(T: Test, budget: FamilyBudget, context: int) -> Iterator[Test]:
    parts = [p for p in _conjuncts(T) if not isinstance(p, Omega)]
    if not parts:
        yield Omega()
        return
    if len(parts) > 1:
        families = [list(_btt_family(p, budget, context)) for p in parts]
        for combo in product(*families):
            yield _conjoin(list(combo))
        return
    (part,) = parts
    if not isinstance(part, Ev):
        raise TestShapeError(f"{type(part).__name__} is not a term-level test")
    for t in _bht_family(part.test, budget, context):
        yield Ev(t)


def _bht_family(t: Test, budget: FamilyBudget, context: int) -> Iterator[Test]:
    heads = [p for p in _conjuncts(t) if not isinstance(p, Omega)]
    if not heads:
        yield from _omega_family(budget, context)
        return
    if any(not isinstance(h, Head) for h in heads):
        raise TestShapeError("ev may only contain head tests, omega and conjunctions")
    shapes = {(h.binders, h.head_var, len(h.args)) for h in heads}
    if len(shapes) > 1:
        return
    n, y, m = shapes.pop()
    merged = [_conjoin([h.args[i] for h in heads]) for i in range(m)]
    families = [list(_btt_family(arg, budget, context + n)) for arg in merged]
    for combo in product(*families):
        yield Head(n, y, tuple(combo))


def btt_to_rbtt_family(T: Test, enum_budget: FamilyBudget) -> Iterator[Test]:
    """Resource tests whose success probabilities sum to that of T.

    Omega below ev unfolds into the head tests (λx1..xn.y)(ω^m) in order of
    n + m; conjunctions distribute; clashing heads give no test. The sum
    reaches Pr(T, M) once the budget covers the shapes M produces.
    """
    yield from _btt_family(T, enum_budget, 0)


def _max_copies(bag: Bag) -> int:
    inner = [b for u in bag.items for b in spine(strip_abstractions(u)[1])[1]]
    return max([len(bag)] + [_max_copies(b) for b in inner])


def correspondence_bounds(T: Test, M: Node, fuel: int, b: TruncationBudget) -> Tuple[Interval, Interval]:
    """((coefficient route), (testing route)) for !nf(T(M)) at s_T and Pr(T, M)/m(s_T)."""
    if not is_resource_test(T):
        raise TestShapeError("correspondence needs a resource term test")
    bag = rbtt_to_polyterm(T)
    needed = max((size(u) for u in bag.items), default=0)
    budget = TruncationBudget(max(b.max_term_size, needed), max(b.max_bag_copies, _max_copies(bag)))
    normal, residual = taylor_nf(M, budget, fuel)
    lower, upper = Fraction(1), Fraction(1)
    for u, k in bag.counts().items():
        c = normal.coefficient(u)
        lower *= c**k / factorial(k)
        upper *= min(Fraction(1), c + residual) ** k / factorial(k)
    m = multinomial(bag)
    lo, hi = eval_btt(T, M, fuel)
    logging.debug(f"correspondence at {budget}: coefficients [{lower}, {upper}], tests [{lo / m}, {hi / m}]")
    return (lower, upper), (lo / m, hi / m)


def coefficient_test_correspondence(T: Test, M: Node, fuel: int, b: TruncationBudget) -> bool:
    """True when both routes give overlapping intervals, equal when both are exact."""
    (c_lo, c_hi), (t_lo, t_hi) = correspondence_bounds(T, M, fuel, b)
    if c_lo == c_hi and t_lo == t_hi:
        return c_lo == t_lo
    return c_lo <= t_hi and t_lo <= c_hi


def enumerate_rbtts(free_names: Sequence[str], depth: int, binders: int, arity: int, context: int = 0) -> Iterator[Test]:
    """Resource term tests of nesting depth <= depth, smallest shapes first."""
    yield Omega()
    if depth == 0:
        return
    budget = FamilyBudget(binders, arity, tuple(free_names))
    heads = list(_rbhts(budget, depth, context))
    for t in heads:
        yield Ev(t)
    for i, t in enumerate(heads):
        for u in heads[i:]:
            yield And(Ev(t), Ev(u))


def _rbhts(budget: FamilyBudget, depth: int, context: int) -> Iterator[Test]:
    for m in range(budget.max_arity + 1):
        for n in range(budget.max_binders + 1):
            options = list(islice(enumerate_rbtts(budget.free_names, depth - 1, budget.max_binders, budget.max_arity, context + n), 64))
            for y in _head_variables(n, context, budget):
                for combo in product(options, repeat=m):
                    yield Head(n, y, tuple(combo))


__all__ = [
    "pt_approximant",
    "compare_approximants",
    "taylor_of_tree",
    "nesting_depth",
    "free_heads",
    "approximant_to_json",
    "parse_test",
    "print_test",
    "eval_btt",
    "eval_bht",
    "is_resource_test",
    "rbtt_to_polyterm",
    "rbht_to_term",
    "term_to_rbht",
    "polyterm_to_rbtt",
    "normalize_test",
    "btt_to_rbtt_family",
    "correspondence_bounds",
    "coefficient_test_correspondence",
    "enumerate_rbtts",
]
