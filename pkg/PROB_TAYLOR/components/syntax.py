"""Parsing and printing of lambda-terms, resource terms and combinations.

Surface grammars (lark, LALR):

    lambda     x | \\x y. M | M N | M (+ p) N        choice binds loosest, right-assoc
    resource   x | \\x. s | s [t1, ..., tn] | l{p} s | r{p} s
    combination  0 | c1.s1 + c2.s2 + ...            each si a resource term or a bag

Names bound by an enclosing abstraction become de Bruijn indices, every other
name is a Free variable unless it names a prelude combinator.
``#n`` is a variable free in the whole term: index n past every enclosing
binder. The printer uses it for open subterms.
"""

import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedInput

from PROB_TAYLOR.constant import BOUND_NAME_POOL, PRELUDE_TERMS, RESOURCE_PRELUDE
from PROB_TAYLOR.entity.combination import Combination, Kind
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
    free_names,
)
from PROB_TAYLOR.exceptions import ProbTaylorException, TermSyntaxError
from PROB_TAYLOR.logger import logging
from PROB_TAYLOR.utils.main_utils import dump_json, parse_rational

_COMMON = r"""
    LAMBDA: "\\" | "λ"
    NAME: /[A-Za-z_][A-Za-z0-9_']*/
    LOOSE: /#[0-9]+/
    RATIONAL: /[0-9]+(\.[0-9]+)?(\s*\/\s*[0-9]+)?/
    %import common.WS
    %ignore WS
"""

LAMBDA_GRAMMAR = r"""
    ?start: term
    ?term: abstraction | choice | app
    abstraction: LAMBDA NAME+ "." term
    choice: app OPLUS term
    ?app: atom
        | app atom -> application
    ?atom: NAME -> name
         | LOOSE -> loose
         | "(" term ")"
    OPLUS.3: /\(\s*\+\s*[0-9]+(\.[0-9]+)?(\s*\/\s*[0-9]+)?\s*\)/
""" + _COMMON

_RESOURCE_RULES = r"""
    ?rterm: rabstraction | tag | rapp
    rabstraction: LAMBDA NAME+ "." rterm
    tag: TAG RATIONAL "}" rterm
    ?rapp: ratom
         | rapp bag -> linapp
    ?ratom: NAME -> name
          | LOOSE -> loose
          | "(" rterm ")"
    bag: "[" [rterm ("," rterm)*] "]"
    TAG.3: /[lr]\{/
"""

RESOURCE_GRAMMAR = r"""
    ?start: rterm
    ?poly: bag
""" + _RESOURCE_RULES + _COMMON

COMBINATION_GRAMMAR = r"""
    start: monomial ("+" monomial)*
    monomial: [COEF "."] (rterm | bag)
    COEF.2: /[0-9]+(\s*\/\s*[0-9]+)?/
""" + _RESOURCE_RULES + _COMMON

_lambda_parser = Lark(LAMBDA_GRAMMAR, parser="lalr", maybe_placeholders=True)
_resource_parser = Lark(
    RESOURCE_GRAMMAR, parser="lalr", maybe_placeholders=True, start=["start", "poly"]
)
_combination_parser = Lark(COMBINATION_GRAMMAR, parser="lalr", maybe_placeholders=True)


def _syntax_error(e: UnexpectedInput, text: str) -> TermSyntaxError:
    return TermSyntaxError(
        f"cannot parse {text!r}: unexpected input",
        line=getattr(e, "line", None),
        column=getattr(e, "column", None),
    )


def _lookup(name: str, scope: List[str]) -> Optional[Var]:
    for depth, bound in enumerate(reversed(scope)):
        if bound == name:
            return Var(depth)
    return None


def _loose(tree, scope: List[str]) -> Var:
    return Var(int(str(tree.children[0])[1:]) + len(scope))


# lambda-terms


def _build_lambda(tree, scope: List[str], prelude: bool):
    if isinstance(tree, Token):
        raise TermSyntaxError(f"unexpected token {tree!r}")
    rule = tree.data
    if rule == "loose":
        return _loose(tree, scope)
    if rule == "name":
        name = str(tree.children[0])
        bound = _lookup(name, scope)
        if bound is not None:
            return bound
        if prelude and name in PRELUDE_TERMS:
            return parse_lambda(PRELUDE_TERMS[name], prelude=False)
        return Free(name)
    if rule == "abstraction":
        names = [str(t) for t in tree.children[1:-1]]
        body = _build_lambda(tree.children[-1], scope + names, prelude)
        for _ in names:
            body = Abs(body)
        return body
    if rule == "application":
        fun, arg = tree.children
        return App(_build_lambda(fun, scope, prelude), _build_lambda(arg, scope, prelude))
    if rule == "choice":
        left, op, right = tree.children
        p = parse_rational(str(op).strip()[1:-1].strip().lstrip("+"), check_probability=True)
        return Choice(p, _build_lambda(left, scope, prelude), _build_lambda(right, scope, prelude))
    raise TermSyntaxError(f"unknown construct {rule}")


def parse_lambda(text: str, prelude: bool = True):
    """Parse a probabilistic lambda-term into de Bruijn form.

    Args:
        text: Surface term such as ``(\\x. x x) (I (+ 1/2) W)``.
        prelude: Resolve unbound I, K, S, Delta/D, Omega/W to their definitions.

    Returns:
        LambdaTerm: Canonical term; its free names are ``free_names(term)``.

    Raises:
        TermSyntaxError: Text outside the grammar.
        ProbabilityRangeError: A choice probability outside [0, 1].
    """
    try:
        tree = _lambda_parser.parse(text)
    except UnexpectedInput as e:
        raise _syntax_error(e, text) from e
    return _build_lambda(tree, [], prelude)


# resource terms


def _build_resource(tree, scope: List[str], prelude: bool):
    rule = tree.data
    if rule == "loose":
        return _loose(tree, scope)
    if rule == "name":
        name = str(tree.children[0])
        bound = _lookup(name, scope)
        if bound is not None:
            return bound
        if prelude and name in RESOURCE_PRELUDE:
            return parse_resource(RESOURCE_PRELUDE[name], prelude=False)
        return Free(name)
    if rule == "rabstraction":
        names = [str(t) for t in tree.children[1:-1]]
        body = _build_resource(tree.children[-1], scope + names, prelude)
        for _ in names:
            body = RAbs(body)
        return body
    if rule == "tag":
        marker, rational, body = tree.children
        p = parse_rational(str(rational), check_probability=True)
        ctor = LTag if str(marker).startswith("l") else RTag
        return ctor(p, _build_resource(body, scope, prelude))
    if rule == "linapp":
        head, bag = tree.children
        return LinApp(_build_resource(head, scope, prelude), _build_resource(bag, scope, prelude))
    if rule == "bag":
        return Bag(tuple(_build_resource(c, scope, prelude) for c in tree.children if c is not None))
    raise TermSyntaxError(f"unknown construct {rule}")


def parse_resource(text: str, prelude: bool = True):
    """Parse a simple resource term, e.g. ``(\\x. x [x]) [I, I]``.

    A bracketed text ``[s, t]`` is read as a poly-term (Bag).
    """
    stripped = text.strip()
    try:
        if stripped.startswith("["):
            tree = _resource_parser.parse(stripped, start="poly")
        else:
            tree = _resource_parser.parse(stripped, start="start")
    except UnexpectedInput as e:
        raise _syntax_error(e, text) from e
    return _build_resource(tree, [], prelude)


def parse_combination(text: str, prelude: bool = True) -> Combination:
    """Read back the printed form of a combination (``0`` is the zero)."""
    if text.strip() == "0":
        return Combination()
    try:
        tree = _combination_parser.parse(text)
    except UnexpectedInput as e:
        raise _syntax_error(e, text) from e
    pairs = []
    for monomial in tree.children:
        parts = monomial.children
        coefficient = Fraction(1) if parts[0] is None else parse_rational(str(parts[0]))
        pairs.append((_build_resource(parts[-1], [], prelude), coefficient))
    try:
        return Combination(pairs)
    except ValueError as e:
        raise ProbTaylorException(e, sys) from e


# printing


def fresh_name(used: set) -> str:
    for name in BOUND_NAME_POOL:
        if name not in used:
            return name
    n = 1
    while True:
        for name in BOUND_NAME_POOL:
            if f"{name}{n}" not in used:
                return f"{name}{n}"
        n += 1


class _Printer:
    def __init__(self, avoid: set, scope: Sequence[str] = ()):
        self.avoid = set(avoid)
        self.scope = list(scope)

    def var(self, t) -> str:
        if isinstance(t, Free):
            return t.name
        if t.index < len(self.scope):
            return self.scope[-1 - t.index]
        return f"#{t.index - len(self.scope)}"

    def bind(self, body, show) -> str:
        name = fresh_name(self.avoid | set(self.scope))
        self.scope.append(name)
        try:
            return f"\\{name}. {show(body)}"
        finally:
            self.scope.pop()

    # lambda

    def term(self, t) -> str:
        if isinstance(t, Abs):
            return self.bind(t.body, self.term)
        if isinstance(t, Choice):
            return f"{self.app(t.left)} (+{t.p}) {self.term(t.right)}"
        return self.app(t)

    def app(self, t) -> str:
        if isinstance(t, App):
            return f"{self.app(t.fun)} {self.atom(t.arg)}"
        return self.atom(t)

    def atom(self, t) -> str:
        if isinstance(t, (Var, Free)):
            return self.var(t)
        return f"({self.term(t)})"

    # resource

    def rterm(self, t) -> str:
        if isinstance(t, RAbs):
            return self.bind(t.body, self.rterm)
        if isinstance(t, LTag):
            return f"l{{{t.p}}} {self.rterm(t.body)}"
        if isinstance(t, RTag):
            return f"r{{{t.p}}} {self.rterm(t.body)}"
        if isinstance(t, Bag):
            return self.bag(t)
        return self.rapp(t)

    def rapp(self, t) -> str:
        if isinstance(t, LinApp):
            return f"{self.rapp(t.head)} {self.bag(t.bag)}"
        if isinstance(t, (Var, Free)):
            return self.var(t)
        return f"({self.rterm(t)})"

    def bag(self, b: Bag) -> str:
        return "[" + ", ".join(self.rterm(e) for e in b.items) + "]"


def _is_resource(t: Node) -> bool:
    stack = [t]
    while stack:
        n = stack.pop()
        if isinstance(n, (RAbs, LinApp, LTag, RTag, Bag)):
            return True
        if isinstance(n, (Abs, App, Choice)):
            return False
    return False


def print_term(t, scope: Sequence[str] = ()) -> str:
    """Render a lambda-term, resource term, bag or combination.

    Args:
        t: Value to print.
        scope: Names of enclosing binders, innermost last, for open subterms.

    Returns:
        str: Text that parses back to ``t`` when scope is empty.
    """
    if isinstance(t, Combination):
        if t.is_zero():
            return "0"
        return " + ".join(f"{c}.{print_term(s, scope)}" for s, c in t.items())
    printer = _Printer(free_names(t) | set(PRELUDE_TERMS), scope)
    if _is_resource(t):
        return printer.rterm(t)
    return printer.term(t)


def combination_to_json(S: Combination) -> list:
    """JSON-ready rows ``{"term", "num", "den"}`` in support order."""
    return [
        {"term": print_term(t), "num": str(c.numerator), "den": str(c.denominator)}
        for t, c in S.items()
    ]


def combination_to_json_text(S: Combination) -> str:
    logging.debug(f"exporting combination with {len(S)} terms")
    return dump_json({"kind": S.kind.value, "terms": combination_to_json(S)})


__all__ = [
    "parse_lambda",
    "parse_resource",
    "parse_combination",
    "print_term",
    "combination_to_json",
    "combination_to_json_text",
    "Kind",
]
