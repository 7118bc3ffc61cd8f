"""Tree bisimilarity, tests and the labelled Markov chain translation.

Bisimilarity is computed by signature refinement: a linear state is
described by, for each of its labels, the residual and the mass sent to each
current branching class; a branching state by, for each of its labels, the
classes of its successor sequence. The chain translation is checked against
an independent refinement over state pairs.
"""

import re
import sys
from collections import deque
from fractions import Fraction
from itertools import combinations_with_replacement, islice, product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from lark import Lark
from lark.exceptions import UnexpectedInput

from PROB_TAYLOR.components.operational import head_reductions
from PROB_TAYLOR.constant import BOHM_LINEAR_LABEL
from PROB_TAYLOR.entity.artifact import HeadNormalForm
from PROB_TAYLOR.entity.config import SearchConfig
from PROB_TAYLOR.entity.terms import Free, Node
from PROB_TAYLOR.entity.trees import And, Omega
from PROB_TAYLOR.entity.tts import (
    Bipartition,
    BranchArity,
    BranchProjection,
    BranchStep,
    LabelledMarkovChain,
    LinStep,
    ResidualMark,
    State,
    TreeTransitionSystem,
    TtsTest,
)
from PROB_TAYLOR.exceptions import (
    KindMismatchError,
    MalformedSystemError,
    ProbTaylorException,
    TermSyntaxError,
    TestShapeError,
)
from PROB_TAYLOR.logger import logging
from PROB_TAYLOR.utils.main_utils import parse_rational


def _ordered(items) -> list:
    return sorted(items, key=repr)


def validate(tts: TreeTransitionSystem) -> None:
    """Raise MalformedSystemError unless tts is a well-formed finite system."""
    if tts.linear_states & tts.branching_states:
        raise MalformedSystemError(f"states of both sorts: {_ordered(tts.linear_states & tts.branching_states)}")
    if tts.linear_labels & tts.branching_labels:
        raise MalformedSystemError(f"labels of both sorts: {_ordered(tts.linear_labels & tts.branching_labels)}")
    for (q, label), dist in tts.delta.items():
        if q not in tts.linear_states or label not in tts.linear_labels:
            raise MalformedSystemError(f"delta({q!r}, {label!r}) is outside Q x L")
        for s, c in dist.items():
            if s not in tts.branching_states:
                raise MalformedSystemError(f"delta({q!r}, {label!r}) reaches {s!r}, not a branching state")
            if c < 0:
                raise MalformedSystemError(f"negative probability {c} in delta({q!r}, {label!r})")
        if sum(dist.values(), Fraction(0)) + tts.residual(q, label) > 1:
            raise MalformedSystemError(f"delta({q!r}, {label!r}) has mass above 1")
    for (q, label), r in tts.residuals.items():
        if (q, label) not in tts.delta:
            raise MalformedSystemError(f"residual on undefined step ({q!r}, {label!r})")
        if r < 0:
            raise MalformedSystemError(f"negative residual {r} at ({q!r}, {label!r})")
    for (s, label), successors in tts.gamma.items():
        if s not in tts.branching_states or label not in tts.branching_labels:
            raise MalformedSystemError(f"gamma({s!r}, {label!r}) is outside S x I")
        for q in successors:
            if q not in tts.linear_states:
                raise MalformedSystemError(f"gamma({s!r}, {label!r}) lists {q!r}, not a linear state")


# bisimilarity


def _renumber(signatures: Dict[State, tuple]) -> Dict[State, int]:
    ids = {sig: i for i, sig in enumerate(_ordered(set(signatures.values())))}
    return {state: ids[sig] for state, sig in signatures.items()}


def _linear_signature(tts: TreeTransitionSystem, q: State, branching: Dict[State, int]) -> tuple:
    out = []
    for (p, label), dist in tts.delta.items():
        if p != q:
            continue
        masses: Dict[int, Fraction] = {}
        for s, c in dist.items():
            masses[branching[s]] = masses.get(branching[s], Fraction(0)) + c
        out.append((repr(label), tts.residual(q, label), tuple(sorted((k, v) for k, v in masses.items() if v))))
    return tuple(sorted(out))


def _branching_signature(tts: TreeTransitionSystem, s: State, linear: Dict[State, int]) -> tuple:
    out = []
    for (t, label), successors in tts.gamma.items():
        if t == s:
            out.append((repr(label), tuple(linear[q] for q in successors)))
    return tuple(sorted(out))


def _blocks(ids: Dict[State, int]) -> Tuple[frozenset, ...]:
    groups: Dict[int, Set[State]] = {}
    for state, i in ids.items():
        groups.setdefault(i, set()).add(state)
    return tuple(sorted((frozenset(g) for g in groups.values()), key=lambda b: repr(_ordered(b)[0])))


def bisimilarity(tts: TreeTransitionSystem) -> Bipartition:
    """Greatest tree bisimulation by partition refinement.

    Args:
        tts: A well-formed finite system.

    Returns:
        Bipartition: classes over Q and over S, stable under one more refinement.

    Raises:
        MalformedSystemError: tts is not well formed.
    """
    validate(tts)
    linear = {q: 0 for q in tts.linear_states}
    branching = {s: 0 for s in tts.branching_states}
    rounds = 0
    while True:
        rounds += 1
        new_branching = _renumber({s: (branching[s], _branching_signature(tts, s, linear)) for s in branching})
        new_linear = _renumber({q: (linear[q], _linear_signature(tts, q, new_branching)) for q in linear})
        stable = len(set(new_linear.values())) == len(set(linear.values())) and len(set(new_branching.values())) == len(
            set(branching.values())
        )
        linear, branching = new_linear, new_branching
        if stable:
            break
    logging.debug(f"bisimilarity: {rounds} refinement rounds on {tts.size} states")
    return Bipartition(_blocks(linear), _blocks(branching))


# tests


def eval_tts_test(tts: TreeTransitionSystem, state: State, test: TtsTest) -> Fraction:
    """Success probability of test on state: omega is 1, conjunction multiplies,
    a linear step sums over delta and a branching step multiplies over gamma.
    Undefined steps and arity mismatches give 0."""
    if isinstance(test, Omega):
        return Fraction(1)
    if isinstance(test, And):
        return eval_tts_test(tts, state, test.left) * eval_tts_test(tts, state, test.right)
    if isinstance(test, LinStep):
        if state not in tts.linear_states:
            raise KindMismatchError(f"linear test on {state!r}, which is not a linear state")
        dist = tts.delta.get((state, test.label))
        if dist is None:
            return Fraction(0)
        return sum((c * eval_tts_test(tts, s, test.test) for s, c in dist.items()), Fraction(0))
    if isinstance(test, BranchStep):
        if state not in tts.branching_states:
            raise KindMismatchError(f"branching test on {state!r}, which is not a branching state")
        successors = tts.gamma.get((state, test.label))
        if successors is None or len(successors) != len(test.tests):
            return Fraction(0)
        value = Fraction(1)
        for q, sub in zip(successors, test.tests):
            value *= eval_tts_test(tts, q, sub)
            if not value:
                break
        return value
    raise TestShapeError(f"not a system test: {test!r}")


def tts_test_depth(test: TtsTest) -> int:
    """Nesting of linear steps."""
    if isinstance(test, And):
        return max(tts_test_depth(test.left), tts_test_depth(test.right))
    if isinstance(test, LinStep):
        return 1 + tts_test_depth(test.test)
    if isinstance(test, BranchStep):
        return max((tts_test_depth(t) for t in test.tests), default=0)
    return 0


Pool = Dict[tuple, TtsTest]


def _keep(candidates: Iterable[Tuple[tuple, TtsTest]], cap: int) -> Pool:
    seen: Pool = {}
    for values, test in candidates:
        if len(seen) >= cap:
            break
        seen.setdefault(values, test)
    return seen


def _with_conjunctions(base: Pool, conjuncts: int, cap: int) -> Pool:
    pool = dict(base)
    layer = list(base.items())
    for _ in range(conjuncts - 1):
        fresh = []
        for (lv, left), (rv, right) in product(layer, list(base.items())):
            if isinstance(left, Omega) or isinstance(right, Omega):
                continue
            values = tuple(a * b for a, b in zip(lv, rv))
            if values not in pool and len(pool) < cap:
                pool[values] = And(left, right)
                fresh.append((values, pool[values]))
        layer = fresh
    return pool


def _levels(tts: TreeTransitionSystem, depth: int, search: SearchConfig) -> Iterator[Tuple[int, Pool, Pool]]:
    """Test pools keyed by their value vectors over the ordered states of each sort.

    Values are computed from the vectors of the sub-tests, so no test is
    evaluated twice.
    """
    linear_states = _ordered(tts.linear_states)
    branching_states = _ordered(tts.branching_states)
    position = {q: i for i, q in enumerate(linear_states)}
    position.update({s: i for i, s in enumerate(branching_states)})
    arities: Dict[object, Set[int]] = {}
    for (_, label), successors in tts.gamma.items():
        arities.setdefault(label, set()).add(len(successors))

    def branch_values(label, vectors: List[tuple]) -> tuple:
        out = []
        for s in branching_states:
            successors = tts.gamma.get((s, label))
            if successors is None or len(successors) != len(vectors):
                out.append(Fraction(0))
                continue
            value = Fraction(1)
            for q, vector in zip(successors, vectors):
                value *= vector[position[q]]
            out.append(value)
        return tuple(out)

    def linear_values(label, vector: tuple) -> tuple:
        return tuple(
            sum((c * vector[position[s]] for s, c in tts.delta.get((q, label), {}).items()), Fraction(0))
            for q in linear_states
        )

    def branching_candidates(linear_pool: Pool):
        yield tuple(Fraction(1) for _ in branching_states), Omega()
        for label in _ordered(arities):
            for arity in sorted(arities[label]):
                for args in islice(product(list(linear_pool.items()), repeat=arity), search.product_cap):
                    yield branch_values(label, [v for v, _ in args]), BranchStep(label, tuple(t for _, t in args))

    def linear_candidates(branching_pool: Pool):
        yield tuple(Fraction(1) for _ in linear_states), Omega()
        for label in _ordered(tts.linear_labels):
            for values, test in branching_pool.items():
                yield linear_values(label, values), LinStep(label, test)

    linear_pool = _keep(linear_candidates({}), search.pool_cap)
    for d in range(depth + 1):
        branching_base = _keep(branching_candidates(linear_pool), search.pool_cap)
        branching_pool = _with_conjunctions(branching_base, search.max_conjuncts, search.pool_cap)
        yield d, linear_pool, branching_pool
        if d == depth:
            return
        linear_base = _keep(linear_candidates(branching_pool), search.pool_cap)
        linear_pool = _with_conjunctions(linear_base, search.max_conjuncts, search.pool_cap)


def enumerate_tests(
    tts: TreeTransitionSystem, depth: int, search: SearchConfig = SearchConfig()
) -> Iterator[Tuple[int, List[TtsTest], List[TtsTest]]]:
    """Levels (d, linear tests, branching tests) for d = 0..depth.

    Level d holds tests with at most d nested linear steps, one per distinct
    vector of values over the states of its sort, ordered by label.
    """
    for d, linear_pool, branching_pool in _levels(tts, depth, search):
        yield d, list(linear_pool.values()), list(branching_pool.values())


def value_profiles(tts: TreeTransitionSystem, depth: int, search: SearchConfig = SearchConfig()) -> Dict[State, tuple]:
    """For every state, its values on all tests enumerated up to depth, level by level."""
    linear_states = _ordered(tts.linear_states)
    branching_states = _ordered(tts.branching_states)
    profiles: Dict[State, list] = {state: [] for state in linear_states + branching_states}
    for _, linear_pool, branching_pool in _levels(tts, depth, search):
        for states, pool in ((linear_states, linear_pool), (branching_states, branching_pool)):
            for values in pool:
                for state, value in zip(states, values):
                    profiles[state].append(value)
    return {state: tuple(values) for state, values in profiles.items()}


def distinguishing_test_search(
    tts: TreeTransitionSystem, q: State, r: State, depth_budget: int, search: SearchConfig = SearchConfig()
) -> Optional[TtsTest]:
    """A test of depth <= depth_budget with different values on q and r, or None."""
    if q in tts.linear_states and r in tts.linear_states:
        pick, states = 1, _ordered(tts.linear_states)
    elif q in tts.branching_states and r in tts.branching_states:
        pick, states = 2, _ordered(tts.branching_states)
    else:
        raise KindMismatchError(f"{q!r} and {r!r} are not states of the same sort")
    i, j = states.index(q), states.index(r)
    for level in _levels(tts, depth_budget, search):
        for values, test in level[pick].items():
            if values[i] != values[j]:
                logging.debug(f"separated {q!r} and {r!r} at depth {level[0]}")
                return test
    return None



# labelled Markov chains


def lmc_translation(tts: TreeTransitionSystem) -> LabelledMarkovChain:
    """T*: linear steps are kept; gamma(s, i) = (q1..qn) becomes a self-loop
    labelled (i, n) and Dirac steps (i, n, k) to qk. Residuals become
    self-loops labelled by their value."""
    eta: Dict[tuple, Dict[State, Fraction]] = {}
    labels = set(tts.linear_labels)
    for (q, label), dist in tts.delta.items():
        eta[(q, label)] = dict(dist)
        r = tts.residual(q, label)
        if r:
            mark = ResidualMark(label, r)
            labels.add(mark)
            eta[(q, mark)] = {q: Fraction(1)}
    longest = max((len(seq) for seq in tts.gamma.values()), default=0)
    for label in tts.branching_labels:
        for n in range(longest + 1):
            labels.add(BranchArity(label, n))
            labels.update(BranchProjection(label, n, k) for k in range(1, n + 1))
    for (s, label), successors in tts.gamma.items():
        n = len(successors)
        eta[(s, BranchArity(label, n))] = {s: Fraction(1)}
        for k, q in enumerate(successors, start=1):
            eta[(s, BranchProjection(label, n, k))] = {q: Fraction(1)}
    return LabelledMarkovChain(tts.linear_states | tts.branching_states, frozenset(labels), eta)


def lmc_bisimilarity(lmc: LabelledMarkovChain) -> List[frozenset]:
    """Probabilistic bisimilarity of a chain, refining the full relation on pairs."""
    states = _ordered(lmc.states)
    labels = _ordered(lmc.labels)
    relation = {(x, y) for x in states for y in states}

    def masses(x, classes, label) -> dict:
        step = lmc.step(x, label)
        return {i: sum((step.get(y, Fraction(0)) for y in classes[i]), Fraction(0)) for i in classes}

    def defined(x) -> frozenset:
        return frozenset(label for label in labels if (x, label) in lmc.eta)

    while True:
        classes = {x: frozenset(y for y in states if (x, y) in relation) for x in states}
        refined = {
            (x, y)
            for (x, y) in relation
            if defined(x) == defined(y) and all(masses(x, classes, l) == masses(y, classes, l) for l in labels)
        }
        if refined == relation:
            break
        relation = refined
    return _ordered({frozenset(y for y in states if (x, y) in relation) for x in states})


def translation_agrees(tts: TreeTransitionSystem) -> bool:
    """Same-sort pairs are tree-bisimilar iff they are bisimilar in T*."""
    partition = bisimilarity(tts)
    blocks = lmc_bisimilarity(lmc_translation(tts))
    for sort in (tts.linear_states, tts.branching_states):
        for a, b in combinations_with_replacement(_ordered(sort), 2):
            in_lmc = any(a in block and b in block for block in blocks)
            if in_lmc != partition.equivalent(a, b):
                return False
    return True


# the Böhm tree system


def hnf_label(h: HeadNormalForm) -> str:
    """``lam n y``, bound heads written ``#i``."""
    y = h.head_var.name if isinstance(h.head_var, Free) else f"#{h.head_var.index}"
    return f"lam {h.binders} {y}"


def tts_of_terms(terms: Sequence[Node], depth: int, fuel: int) -> Tuple[TreeTransitionSystem, Dict[object, str]]:
    """Unfold the Böhm tree system from terms.

    Linear states are terms with the single label ev, branching states are
    head normal forms. Terms first reached at depth ``depth`` are left
    without transitions.

    Returns:
        (TreeTransitionSystem, state map): the map sends each term and hnf to its state name.
    """
    try:
        names: Dict[object, str] = {}
        delta, gamma, residuals = {}, {}, {}
        linear, branching, labels = set(), set(), set()
        queue = deque()

        def linear_state(M: Node, level: int) -> str:
            if M not in names:
                names[M] = f"q{len(linear)}"
                linear.add(names[M])
                queue.append((M, level))
            return names[M]

        for M in terms:
            linear_state(M, 0)
        while queue:
            M, level = queue.popleft()
            if level >= depth:
                continue
            q = names[M]
            frontier = head_reductions(M, fuel)
            dist: Dict[str, Fraction] = {}
            for rho, h in frontier.resolved:
                if h not in names:
                    names[h] = f"s{len(branching)}"
                    branching.add(names[h])
                    label = hnf_label(h)
                    labels.add(label)
                    gamma[(names[h], label)] = tuple(linear_state(P, level + 1) for P in h.args)
                dist[names[h]] = dist.get(names[h], Fraction(0)) + rho.probability()
            delta[(q, BOHM_LINEAR_LABEL)] = dist
            if frontier.unresolved_mass:
                residuals[(q, BOHM_LINEAR_LABEL)] = frontier.unresolved_mass
        tts = TreeTransitionSystem(
            frozenset(linear),
            frozenset(branching),
            frozenset({BOHM_LINEAR_LABEL}),
            frozenset(labels),
            delta,
            gamma,
            residuals,
        )
        logging.debug(f"Böhm system: {len(linear)} linear and {len(branching)} branching states")
        return tts, names
    except ProbTaylorException:
        raise
    except Exception as e:
        raise ProbTaylorException(e, sys) from e


# text formats

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")

TTS_LINE_GRAMMAR = r"""
    ?start: lin | bra | res | decl_lin | decl_bra
    lin: "lin" STATE "--" label "->" dist
    bra: "bra" STATE "--" label "->" STATE*
    res: "res" STATE "--" label "->" RATIONAL
    decl_lin: "lin" STATE+
    decl_bra: "bra" STATE+
    label: NAME -> bare
         | "(" LABEL_TEXT ")" -> grouped
    dist: "{" [entry ("," entry)*] "}"
    entry: STATE ":" RATIONAL
    STATE: /[A-Za-z0-9_'#.]+/
    NAME: /[A-Za-z_][A-Za-z0-9_']*/
    LABEL_TEXT: /[^()\n]+/
    RATIONAL: /[0-9]+(\.[0-9]+)?(\s*\/\s*[0-9]+)?/
    %import common.WS_INLINE
    %ignore WS_INLINE
"""

_line_parser = Lark(TTS_LINE_GRAMMAR, parser="lalr", maybe_placeholders=True)


def _label(tree) -> str:
    return str(tree.children[0]).strip()


def parse_tts(text: str) -> TreeTransitionSystem:
    """Read the line format::

        lin q0 --ev-> {s0: 1/4, s1: 1/2}
        bra s0 --(lam 2 y)-> q1 q2
        res q0 --ev-> 1/4
        lin q3

    Blank lines and lines starting with ``#`` are skipped.
    """
    tts = TreeTransitionSystem(delta={}, gamma={}, residuals={})
    linear, branching, lin_labels, bra_labels = set(), set(), set(), set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            tree = _line_parser.parse(line)
        except UnexpectedInput as e:
            raise TermSyntaxError(f"cannot parse system line {line!r}", line=number, column=getattr(e, "column", None)) from e
        kind = tree.data
        if kind == "decl_lin":
            linear.update(str(q) for q in tree.children)
        elif kind == "decl_bra":
            branching.update(str(s) for s in tree.children)
        elif kind == "lin":
            q, label, dist = str(tree.children[0]), _label(tree.children[1]), tree.children[2]
            entries = {}
            for entry in (c for c in dist.children if c is not None):
                s, c = str(entry.children[0]), parse_rational(str(entry.children[1]))
                entries[s] = entries.get(s, Fraction(0)) + c
            linear.add(q)
            branching.update(entries)
            lin_labels.add(label)
            tts.delta[(q, label)] = entries
        elif kind == "bra":
            s, label = str(tree.children[0]), _label(tree.children[1])
            successors = tuple(str(q) for q in tree.children[2:] if q is not None)
            branching.add(s)
            linear.update(successors)
            bra_labels.add(label)
            tts.gamma[(s, label)] = successors
        else:
            q, label = str(tree.children[0]), _label(tree.children[1])
            tts.residuals[(q, label)] = parse_rational(str(tree.children[2]))
    tts.linear_states, tts.branching_states = frozenset(linear), frozenset(branching)
    tts.linear_labels, tts.branching_labels = frozenset(lin_labels), frozenset(bra_labels)
    validate(tts)
    return tts


def _format_label(label) -> str:
    text = str(label)
    return text if _NAME.match(text) else f"({text})"


def format_tts(tts: TreeTransitionSystem) -> str:
    lines = []
    for (q, label) in _ordered(tts.delta):
        dist = ", ".join(f"{s}: {c}" for s, c in _ordered(tts.delta[(q, label)].items()))
        lines.append(f"lin {q} --{_format_label(label)}-> {{{dist}}}")
    for (q, label) in _ordered(tts.residuals):
        if tts.residuals[(q, label)]:
            lines.append(f"res {q} --{_format_label(label)}-> {tts.residuals[(q, label)]}")
    for (s, label) in _ordered(tts.gamma):
        lines.append(f"bra {s} --{_format_label(label)}-> {' '.join(map(str, tts.gamma[(s, label)]))}".rstrip())
    idle_linear = _ordered(q for q in tts.linear_states if not tts.linear_labels_of(q))
    idle_branching = _ordered(s for s in tts.branching_states if not tts.branching_labels_of(s))
    if idle_linear:
        lines.append("lin " + " ".join(map(str, idle_linear)))
    if idle_branching:
        lines.append("bra " + " ".join(map(str, idle_branching)))
    return "\n".join(lines) + "\n"


TTS_TEST_GRAMMAR = r"""
    ?start: test
    ?test: atom
         | test "&" atom -> conj
    ?atom: OMEGA -> omega
         | label "(" [test ("," test)*] ")" -> step
    label: NAME -> bare
         | "(" LABEL_TEXT ")" -> grouped
    OMEGA.2: /w(?![A-Za-z0-9_'])/ | "ω"
    NAME: /[A-Za-z_][A-Za-z0-9_']*/
    LABEL_TEXT: /[^()]+/
    %import common.WS
    %ignore WS
"""

_test_parser = Lark(TTS_TEST_GRAMMAR, parser="lalr", maybe_placeholders=True)


def _build_tts_test(tree, linear: bool) -> TtsTest:
    if tree.data == "omega":
        return Omega()
    if tree.data == "conj":
        return And(_build_tts_test(tree.children[0], linear), _build_tts_test(tree.children[1], linear))
    label = _label(tree.children[0])
    args = [c for c in tree.children[1:] if c is not None]
    if linear:
        if len(args) > 1:
            raise TestShapeError(f"linear step {label} takes one branching test, got {len(args)}")
        return LinStep(label, _build_tts_test(args[0], False) if args else Omega())
    return BranchStep(label, tuple(_build_tts_test(a, True) for a in args))


def parse_tts_test(text: str, linear: bool = True) -> TtsTest:
    """Parse ``w``, ``T & U``, ``l(T_B)`` and ``i(T1, ..., Tm)``; the sort of the
    outermost steps is given by linear, and alternates below."""
    try:
        tree = _test_parser.parse(text)
    except UnexpectedInput as e:
        raise TermSyntaxError(
            f"cannot parse system test {text!r}", line=getattr(e, "line", None), column=getattr(e, "column", None)
        ) from e
    return _build_tts_test(tree, linear)


def print_tts_test(test: TtsTest) -> str:
    if isinstance(test, Omega):
        return "w"
    if isinstance(test, And):
        return f"{print_tts_test(test.left)} & {print_tts_test(test.right)}"
    if isinstance(test, LinStep):
        inner = "" if isinstance(test.test, Omega) else print_tts_test(test.test)
        return f"{_format_label(test.label)}({inner})"
    if isinstance(test, BranchStep):
        return f"{_format_label(test.label)}({', '.join(print_tts_test(t) for t in test.tests)})"
    raise TestShapeError(f"not a system test: {test!r}")


__all__ = [
    "validate",
    "bisimilarity",
    "eval_tts_test",
    "tts_test_depth",
    "enumerate_tests",
    "value_profiles",
    "distinguishing_test_search",
    "lmc_translation",
    "lmc_bisimilarity",
    "translation_agrees",
    "hnf_label",
    "tts_of_terms",
    "parse_tts",
    "format_tts",
    "parse_tts_test",
    "print_tts_test",
]
