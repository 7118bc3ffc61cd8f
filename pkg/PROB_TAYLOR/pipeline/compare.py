import sys
from itertools import islice
from typing import Optional, Tuple

from PROB_TAYLOR.components.bohm import compare_approximants, enumerate_rbtts, eval_btt, print_test, pt_approximant
from PROB_TAYLOR.components.syntax import parse_lambda
from PROB_TAYLOR.components.taylor import explicit_taylor, generic_taylor, taylor_nf
from PROB_TAYLOR.entity.artifact import ComparisonArtifact, NormalFormArtifact, Verdict
from PROB_TAYLOR.entity.config import EngineConfig, SearchConfig, engine_config
from PROB_TAYLOR.entity.terms import Node, free_names
from PROB_TAYLOR.exceptions import ProbTaylorException
from PROB_TAYLOR.logger import logging


def compare_normal_forms(A: NormalFormArtifact, B: NormalFormArtifact) -> Verdict:
    """EQUAL when both are exact and coincide, DISTINCT when some coefficient
    intervals are disjoint, UNKNOWN otherwise."""
    if A.residual == 0 and B.residual == 0:
        return Verdict.EQUAL if A.combination == B.combination else Verdict.DISTINCT
    for term in set(A.combination.support()) | set(B.combination.support()):
        (a_lo, a_hi), (b_lo, b_hi) = A.interval(term), B.interval(term)
        if a_hi < b_lo or b_hi < a_lo:
            return Verdict.DISTINCT
    return Verdict.UNKNOWN


class ComparePipeline:
    def __init__(self, config: EngineConfig = engine_config, search: Optional[SearchConfig] = None):
        self.config = config
        self.search = search if search is not None else SearchConfig.from_yaml()

    def start_parsing(self, left: str, right: str) -> Tuple[Node, Node]:
        M, N = parse_lambda(left), parse_lambda(right)
        logging.info("Parsed both terms")
        return M, N

    def start_taylor_comparison(self, M: Node, N: Node) -> Tuple[bool, bool]:
        try:
            budget = self.config.budget
            generic_equal = generic_taylor(M, budget) == generic_taylor(N, budget)
            explicit_equal = explicit_taylor(M, budget) == explicit_taylor(N, budget)
            logging.info(f"Taylor truncations at {budget}: generic equal={generic_equal}, explicit equal={explicit_equal}")
            return generic_equal, explicit_equal
        except ProbTaylorException:
            raise
        except Exception as e:
            raise ProbTaylorException(e, sys) from e

    def start_normal_form_comparison(self, M: Node, N: Node) -> Verdict:
        try:
            budget, fuel = self.config.budget, self.config.fuel
            A = NormalFormArtifact(*taylor_nf(M, budget, fuel))
            B = NormalFormArtifact(*taylor_nf(N, budget, fuel))
            verdict = compare_normal_forms(A, B)
            logging.info(f"Taylor normal forms: {verdict.value} (residuals {A.residual}, {B.residual})")
            return verdict
        except ProbTaylorException:
            raise
        except Exception as e:
            raise ProbTaylorException(e, sys) from e

    def start_bohm_comparison(self, M: Node, N: Node) -> Verdict:
        try:
            depth, fuel = self.config.depth, self.config.fuel
            verdict = compare_approximants(pt_approximant(M, depth, fuel), pt_approximant(N, depth, fuel))
            logging.info(f"Böhm approximants at depth {depth}: {verdict.value}")
            return verdict
        except ProbTaylorException:
            raise
        except Exception as e:
            raise ProbTaylorException(e, sys) from e

    def start_test_search(self, M: Node, N: Node) -> Tuple[Optional[str], tuple]:
        """First enumerated resource test whose intervals on M and N are disjoint."""
        try:
            names = sorted(free_names(M) | free_names(N))
            tests = enumerate_rbtts(
                names, self.search.rbtt_depth, self.search.rbtt_binders, self.search.rbtt_arity
            )
            for T in islice(tests, self.search.rbtt_limit):
                (a_lo, a_hi), (b_lo, b_hi) = eval_btt(T, M, self.config.fuel), eval_btt(T, N, self.config.fuel)
                if a_hi < b_lo or b_hi < a_lo:
                    printed = print_test(T)
                    logging.info(f"Separating test found: {printed}")
                    return printed, ((a_lo, a_hi), (b_lo, b_hi))
            logging.info(f"No separating test among the first {self.search.rbtt_limit}")
            return None, ()
        except ProbTaylorException:
            raise
        except Exception as e:
            raise ProbTaylorException(e, sys) from e

    def run_pipeline(self, left: str, right: str) -> ComparisonArtifact:
        try:
            M, N = self.start_parsing(left, right)
            generic_equal, explicit_equal = self.start_taylor_comparison(M, N)
            nf_verdict = self.start_normal_form_comparison(M, N)
            bohm_verdict = self.start_bohm_comparison(M, N)
            test, values = self.start_test_search(M, N)
            return ComparisonArtifact(generic_equal, explicit_equal, nf_verdict, bohm_verdict, test, values)
        except ProbTaylorException:
            raise
        except Exception as e:
            raise ProbTaylorException(e, sys) from e
