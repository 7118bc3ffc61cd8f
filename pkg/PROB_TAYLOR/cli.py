"""Command-line front end.

    prob-taylor <command> [options] [input]

Inputs are read from the positional argument, or from stdin when it is
absent. Exit codes: 0 success, 1 separation found under --expect-equal,
2 usage or input error.
"""

import argparse
import sys
from typing import List, Optional, Sequence

from rich.console import Console
from rich.table import Table
from rich.text import Text
from rich.tree import Tree

from PROB_TAYLOR import __version__
from PROB_TAYLOR.components.bohm import (
    approximant_to_json,
    eval_btt,
    free_heads,
    parse_test,
    print_test,
    pt_approximant,
)
from PROB_TAYLOR.components.operational import TraceNode, head_reductions, reduction_tree
from PROB_TAYLOR.components.resource import coherent, multinomial, normal_form_steps, reduce_one
from PROB_TAYLOR.components.syntax import (
    combination_to_json,
    fresh_name,
    parse_combination,
    parse_lambda,
    parse_resource,
    print_term,
)
from PROB_TAYLOR.components.taylor import explicit_taylor, explicit_taylor_nf, generic_taylor, taylor_nf
from PROB_TAYLOR.components.tts import (
    bisimilarity,
    distinguishing_test_search,
    eval_tts_test,
    format_tts,
    parse_tts,
    parse_tts_test,
    print_tts_test,
    tts_of_terms,
)
from PROB_TAYLOR.entity.combination import Combination
from PROB_TAYLOR.entity.config import EngineConfig, SearchConfig
from PROB_TAYLOR.entity.trees import BohmApprox
from PROB_TAYLOR.exceptions import ProbTaylorException
from PROB_TAYLOR.logger import logging, set_verbosity
from PROB_TAYLOR.pipeline.compare import ComparePipeline
from PROB_TAYLOR.utils.main_utils import dump_json

EXIT_OK, EXIT_SEPARATED, EXIT_USAGE = 0, 1, 2

out = Console()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ProbTaylorException(f"{self.prog}: {message}")


def _options() -> argparse.ArgumentParser:
    defaults = EngineConfig()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--size-bound", type=int, default=defaults.size_bound, help="largest simple-term size kept")
    common.add_argument("--copies", type=int, default=defaults.copies, help="largest bag cardinality")
    common.add_argument("--fuel", type=int, default=defaults.fuel, help="head steps per branch")
    common.add_argument("--depth", type=int, default=defaults.depth, help="Böhm approximant depth")
    common.add_argument("--json", action="store_true", default=defaults.output == "json", help="print JSON")
    common.add_argument("--verbose", action="store_true", help="log progress to stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _options()
    parser = _Parser(prog="prob-taylor", description="Taylor expansion and Böhm trees of probabilistic lambda-terms")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", parents=[common], help="parse and print a term")
    p.add_argument("term", nargs="?")
    p.add_argument("--resource", action="store_true", help="read a resource term or bag")
    p.add_argument("--combination", action="store_true", help="read a combination of resource terms")

    for name, text in (("reduce", "one-step reducts of a combination"), ("normalize", "normal form of a combination")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("term", nargs="?")

    p = sub.add_parser("coherence", parents=[common], help="coherence of two resource terms")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("multinomial", parents=[common], help="multinomial coefficient of a resource term")
    p.add_argument("term", nargs="?")

    p = sub.add_parser("run", parents=[common], help="head reduction with choice sequences")
    p.add_argument("term", nargs="?")
    p.add_argument("--trace", action="store_true", help="print the reduction tree")

    p = sub.add_parser("taylor", parents=[common], help="truncated Taylor expansion")
    p.add_argument("term", nargs="?")
    p.add_argument("--explicit", action="store_true", help="keep choice tags")

    p = sub.add_parser("taylor-nf", parents=[common], help="truncated Taylor normal form")
    p.add_argument("term", nargs="?")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--explicit", action="store_true", help="keep choice tags")
    mode.add_argument("--erased", action="store_true", help="generic normal form (default)")

    p = sub.add_parser("bohm", parents=[common], help="Böhm tree approximant")
    p.add_argument("term", nargs="?")

    p = sub.add_parser("test", parents=[common], help="success probability of a Böhm test")
    p.add_argument("--btt", required=True, help="term test, e.g. 'ev(x(w))'")
    p.add_argument("term", nargs="?")

    p = sub.add_parser("tts", help="tree transition systems")
    tts = p.add_subparsers(dest="tts_command", required=True, parser_class=_Parser)
    q = tts.add_parser("bisim", parents=[common], help="tree bisimilarity classes")
    q.add_argument("file", nargs="?")
    q = tts.add_parser("test", parents=[common], help="evaluate a test on a state")
    q.add_argument("file")
    q.add_argument("state")
    q.add_argument("test")
    q = tts.add_parser("separate", parents=[common], help="search a test separating two states")
    q.add_argument("file")
    q.add_argument("left")
    q.add_argument("right")
    q = tts.add_parser("from-terms", parents=[common], help="unfold the Böhm system of terms")
    q.add_argument("terms", nargs="+")

    p = sub.add_parser("compare", parents=[common], help="compare two terms at the configured budgets")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--expect-equal", action="store_true", help="exit 1 when the terms are separated")
    return parser


# rendering


def _read(value: Optional[str]) -> str:
    return value if value is not None else sys.stdin.read()


def _emit(args, payload: dict, render) -> None:
    if args.json:
        out.print(dump_json(payload), markup=False, highlight=False, soft_wrap=True)
    else:
        render()


def _combination_table(S: Combination, title: str, residual=None) -> Table:
    table = Table(title=title, caption=None if residual is None else f"residual {residual}")
    table.add_column("coefficient", justify="right")
    table.add_column("term")
    for term, c in S.items():
        table.add_row(str(c), Text(print_term(term)))
    return table


def _trace(node: TraceNode, tree: Tree) -> None:
    for child in node.children:
        label = f"--{child.edge}--> {print_term(child.term)}"
        if child.status != "step":
            label += f"  [{child.status}]"
        _trace(child, tree.add(Text(label)))


def _approximant_tree(A: BohmApprox, tree: Tree, scope: Sequence[str] = (), avoid: Optional[set] = None) -> None:
    avoid = free_heads(A) if avoid is None else avoid
    for value, c in A.dist:
        names = list(scope)
        for _ in range(value.binders):
            names.append(fresh_name(set(names) | avoid))
        binders = "".join(f"λ{n}." for n in names[len(scope):])
        branch = tree.add(Text(f"{c}: {binders}{print_term(value.head_var, names)}"))
        for child in value.children:
            _approximant_tree(child, branch.add(f"residual {child.folded_residual()}"), names, avoid)


# commands


def _parse(args, config: EngineConfig) -> int:
    text = _read(args.term)
    if args.combination:
        value = parse_combination(text)
    elif args.resource:
        value = parse_resource(text)
    else:
        value = parse_lambda(text)
    printed = print_term(value)
    _emit(args, {"command": "parse", "term": printed}, lambda: out.print(printed, markup=False, soft_wrap=True))
    return EXIT_OK


def _reduce(args, config: EngineConfig) -> int:
    S = parse_combination(_read(args.term))
    reducts = sorted(reduce_one(S), key=print_term)
    payload = {"command": "reduce", "reducts": [combination_to_json(R) for R in reducts]}

    def render():
        if not reducts:
            out.print("normal", markup=False, soft_wrap=True)
        for R in reducts:
            out.print(print_term(R), markup=False, soft_wrap=True)

    _emit(args, payload, render)
    return EXIT_OK


def _normalize(args, config: EngineConfig) -> int:
    normal, steps = normal_form_steps(parse_combination(_read(args.term)))
    payload = {"command": "normalize", "steps": steps, "terms": combination_to_json(normal)}
    _emit(args, payload, lambda: out.print(_combination_table(normal, f"normal form after {steps} left steps")))
    return EXIT_OK


def _coherence(args, config: EngineConfig) -> int:
    result = coherent(parse_resource(args.left), parse_resource(args.right))
    _emit(args, {"command": "coherence", "coherent": result}, lambda: out.print(str(result).lower()))
    return EXIT_OK


def _multinomial(args, config: EngineConfig) -> int:
    m = multinomial(parse_resource(_read(args.term)))
    _emit(args, {"command": "multinomial", "multinomial": m}, lambda: out.print(m))
    return EXIT_OK


def _run(args, config: EngineConfig) -> int:
    M = parse_lambda(_read(args.term))
    frontier = head_reductions(M, config.fuel)
    resolved = [{"choices": str(rho), "probability": rho.probability(), "hnf": print_term(h.to_term())} for rho, h in frontier.resolved]
    payload = {
        "command": "run",
        "resolved": resolved,
        "converged": frontier.resolved_mass,
        "residual": frontier.unresolved_mass,
    }

    def render():
        if args.trace:
            tree = Tree(Text(print_term(M)))
            _trace(reduction_tree(M, config.fuel), tree)
            out.print(tree)
        table = Table(title=f"head normal forms (fuel {config.fuel})", caption=f"residual {frontier.unresolved_mass}")
        for column in ("choices", "probability", "hnf"):
            table.add_column(column)
        for row in resolved:
            table.add_row(row["choices"], str(row["probability"]), Text(row["hnf"]))
        out.print(table)

    _emit(args, payload, render)
    return EXIT_OK


def _taylor(args, config: EngineConfig) -> int:
    M = parse_lambda(_read(args.term))
    expansion = (explicit_taylor if args.explicit else generic_taylor)(M, config.budget)
    kind = "explicit" if args.explicit else "generic"
    payload = {"command": "taylor", "mode": kind, "terms": combination_to_json(expansion)}
    _emit(args, payload, lambda: out.print(_combination_table(expansion, f"{kind} Taylor expansion, {config.budget}")))
    return EXIT_OK


def _taylor_nf(args, config: EngineConfig) -> int:
    M = parse_lambda(_read(args.term))
    compute = explicit_taylor_nf if args.explicit else taylor_nf
    normal, residual = compute(M, config.budget, config.fuel)
    kind = "explicit" if args.explicit else "generic"
    payload = {"command": "taylor-nf", "mode": kind, "residual": residual, "terms": combination_to_json(normal)}
    title = f"{kind} Taylor normal form, {config.budget}, fuel {config.fuel}"
    _emit(args, payload, lambda: out.print(_combination_table(normal, title, residual)))
    return EXIT_OK


def _bohm(args, config: EngineConfig) -> int:
    A = pt_approximant(parse_lambda(_read(args.term)), config.depth, config.fuel)
    payload = {"command": "bohm", "approximant": approximant_to_json(A)}

    def render():
        tree = Tree(f"depth {A.depth}, residual {A.folded_residual()}")
        _approximant_tree(A, tree)
        out.print(tree)

    _emit(args, payload, render)
    return EXIT_OK


def _test(args, config: EngineConfig) -> int:
    T = parse_test(args.btt)
    lower, upper = eval_btt(T, parse_lambda(_read(args.term)), config.fuel)
    payload = {"command": "test", "test": print_test(T), "lower": lower, "upper": upper}
    _emit(args, payload, lambda: out.print(f"[{lower}, {upper}]", markup=False, soft_wrap=True))
    return EXIT_OK


def _read_system(path: Optional[str]):
    if path is None or path == "-":
        return parse_tts(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_tts(handle.read())
    except OSError as e:
        raise ProbTaylorException(e, sys) from e


def _tts(args, config: EngineConfig) -> int:
    if args.tts_command == "bisim":
        partition = bisimilarity(_read_system(args.file))
        payload = {
            "command": "tts bisim",
            "linear": [sorted(map(str, b)) for b in partition.linear],
            "branching": [sorted(map(str, b)) for b in partition.branching],
        }

        def render():
            for sort, blocks in (("linear", payload["linear"]), ("branching", payload["branching"])):
                for block in blocks:
                    out.print(f"{sort}: {{{', '.join(block)}}}", markup=False, soft_wrap=True)

        _emit(args, payload, render)
        return EXIT_OK
    if args.tts_command == "test":
        system = _read_system(args.file)
        test = parse_tts_test(args.test, linear=args.state not in system.branching_states)
        value = eval_tts_test(system, args.state, test)
        payload = {"command": "tts test", "state": args.state, "test": print_tts_test(test), "value": value}
        _emit(args, payload, lambda: out.print(str(value)))
        return EXIT_OK
    if args.tts_command == "separate":
        system = _read_system(args.file)
        search = SearchConfig.from_yaml()
        test = distinguishing_test_search(system, args.left, args.right, search.test_depth, search)
        printed = None if test is None else print_tts_test(test)
        values = [] if test is None else [eval_tts_test(system, s, test) for s in (args.left, args.right)]
        payload = {"command": "tts separate", "test": printed, "values": values}
        _emit(args, payload, lambda: out.print(printed or "no separating test", markup=False, soft_wrap=True))
        return EXIT_OK
    terms = [parse_lambda(t) for t in args.terms]
    system, names = tts_of_terms(terms, config.depth, config.fuel)
    roots = {text: names[M] for text, M in zip(args.terms, terms)}
    payload = {"command": "tts from-terms", "roots": roots, "system": format_tts(system)}

    def render():
        for text, state in roots.items():
            out.print(f"# {state} = {text}", markup=False, soft_wrap=True)
        out.print(format_tts(system), end="", markup=False, soft_wrap=True)

    _emit(args, payload, render)
    return EXIT_OK


def _compare(args, config: EngineConfig) -> int:
    artifact = ComparePipeline(config).run_pipeline(args.left, args.right)
    payload = {
        "command": "compare",
        "generic_taylor_equal": artifact.generic_taylor_equal,
        "explicit_taylor_equal": artifact.explicit_taylor_equal,
        "taylor_nf": artifact.taylor_nf.value,
        "bohm": artifact.bohm.value,
        "separating_test": artifact.separating_test,
        "separating_values": artifact.separating_values,
    }

    def render():
        table = Table(title=f"compare at {config.budget}, fuel {config.fuel}, depth {config.depth}")
        table.add_column("check")
        table.add_column("result")
        table.add_row("generic Taylor equal", str(artifact.generic_taylor_equal).lower())
        table.add_row("explicit Taylor equal", str(artifact.explicit_taylor_equal).lower())
        table.add_row("Taylor normal forms", artifact.taylor_nf.value)
        table.add_row("Böhm approximants", artifact.bohm.value)
        table.add_row("separating test", Text(artifact.separating_test or "none found"))
        out.print(table)

    _emit(args, payload, render)
    if args.expect_equal and artifact.separated:
        return EXIT_SEPARATED
    return EXIT_OK


COMMANDS = {
    "parse": _parse,
    "reduce": _reduce,
    "normalize": _normalize,
    "coherence": _coherence,
    "multinomial": _multinomial,
    "run": _run,
    "taylor": _taylor,
    "taylor-nf": _taylor_nf,
    "bohm": _bohm,
    "test": _test,
    "tts": _tts,
    "compare": _compare,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        set_verbosity(args.verbose)
        config = EngineConfig(args.size_bound, args.copies, args.fuel, args.depth, "json" if args.json else "pretty")
        return COMMANDS[args.command](args, config)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    except ProbTaylorException as e:
        logging.debug(e.error_message)
        Console(stderr=True).print(f"error: {e}", markup=False, soft_wrap=True)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
