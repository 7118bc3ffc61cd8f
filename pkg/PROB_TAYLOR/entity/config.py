"""Configuration dataclasses for the engine.

Centralizes the budgets that bound every infinite object: term size and bag
copies for Taylor expansions, fuel for head reduction, depth for Böhm
approximants, plus the corpus and search bounds read from config/engine.yaml.

Notes:
- Environment-driven defaults are imported from PROB_TAYLOR.constant.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from PROB_TAYLOR.constant import *
from PROB_TAYLOR.exceptions import ProbTaylorException
from PROB_TAYLOR.utils.main_utils import parse_rational, read_yaml_file


def _non_negative(owner: object, *names: str) -> None:
    for name in names:
        value = getattr(owner, name)
        if not isinstance(value, int) or value < 0:
            raise ProbTaylorException(f"{type(owner).__name__}.{name} must be a natural number, got {value!r}")


@dataclass(frozen=True)
class TruncationBudget:
    """Finite window on an infinite Taylor expansion.

    Attributes:
        max_term_size: Largest simple-term size kept.
        max_bag_copies: Largest number of elements in any bag.
    """

    max_term_size: int = DEFAULT_SIZE_BOUND
    max_bag_copies: int = DEFAULT_COPIES

    def __post_init__(self):
        _non_negative(self, "max_term_size", "max_bag_copies")

    def widened(self, max_term_size: int) -> "TruncationBudget":
        return TruncationBudget(max(self.max_term_size, max_term_size), self.max_bag_copies)


@dataclass(frozen=True)
class EngineConfig:
    """Command-line configuration.

    Attributes:
        size_bound: Largest simple-term size in expansions.
        copies: Largest bag cardinality.
        fuel: Head steps explored per branch.
        depth: Böhm approximant depth.
        output: ``pretty`` or ``json``.
    """

    size_bound: int = DEFAULT_SIZE_BOUND
    copies: int = DEFAULT_COPIES
    fuel: int = DEFAULT_FUEL
    depth: int = DEFAULT_DEPTH
    output: str = DEFAULT_OUTPUT

    def __post_init__(self):
        _non_negative(self, "size_bound", "copies", "fuel", "depth")
        if self.output not in OUTPUT_FORMATS:
            raise ProbTaylorException(f"unknown output format {self.output!r}")

    @property
    def budget(self) -> TruncationBudget:
        return TruncationBudget(self.size_bound, self.copies)


@dataclass(frozen=True)
class FamilyBudget:
    """Bounds on the omega-expansion families of Böhm tests.

    Attributes:
        max_binders: Largest n in (λx1..xn.y)(ω^m).
        max_arity: Largest m.
        free_names: Free head variables to try besides bound ones.
    """

    max_binders: int = DEFAULT_FAMILY_BINDERS
    max_arity: int = DEFAULT_FAMILY_ARITY
    free_names: Tuple[str, ...] = ()

    def __post_init__(self):
        _non_negative(self, "max_binders", "max_arity")


@dataclass(frozen=True)
class SearchConfig:
    """Caps for bounded test searches.

    Attributes:
        test_depth: Linear-step nesting explored by distinguishing_test_search.
        max_conjuncts: Conjuncts combined per level.
        pool_cap: Distinct test behaviours kept per level.
        product_cap: Argument tuples tried per branching label.
        rbtt_depth: Nesting depth of enumerated resource Böhm tests.
        rbtt_binders: Binder bound of enumerated head tests.
        rbtt_arity: Argument bound of enumerated head tests.
        rbtt_limit: Number of resource tests tried before giving up.
    """

    test_depth: int = 4
    max_conjuncts: int = MAX_CONJUNCTS
    pool_cap: int = TEST_POOL_CAP
    product_cap: int = TEST_PRODUCT_CAP
    rbtt_depth: int = 2
    rbtt_binders: int = DEFAULT_FAMILY_BINDERS
    rbtt_arity: int = DEFAULT_FAMILY_ARITY
    rbtt_limit: int = 2000

    @classmethod
    def from_yaml(cls, path: str = ENGINE_CONFIG_PATH) -> "SearchConfig":
        return cls(**read_yaml_file(path).get("search", {}))


@dataclass(frozen=True)
class CorpusConfig:
    """Bounds of the generated corpora used by the property suites.

    Attributes:
        seed: Seed for the random generators.
        free_names: Free-variable alphabet.
        probabilities: Choice probabilities drawn by generators.
    """

    seed: int = 0
    free_names: Tuple[str, ...] = ("x", "y", "z")
    probabilities: Tuple[Fraction, ...] = (Fraction(1, 2), Fraction(1, 3))
    substitution_max_size: int = 7
    substitution_max_bag: int = 4
    multinomial_max_size: int = 7
    random_combinations: int = 1000
    random_combination_support: int = 4
    random_combination_size: int = 8
    random_terms: int = 50
    random_term_size: int = 7
    random_systems: int = 200
    max_system_states: int = 10

    @classmethod
    def from_yaml(cls, path: str = ENGINE_CONFIG_PATH) -> "CorpusConfig":
        raw = dict(read_yaml_file(path).get("corpus", {}))
        raw["free_names"] = tuple(raw.get("free_names", cls.free_names))
        raw["probabilities"] = tuple(
            parse_rational(str(p), check_probability=True) for p in raw.get("probabilities", ("1/2",))
        )
        return cls(**raw)


engine_config: EngineConfig = EngineConfig()
