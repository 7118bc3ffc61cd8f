import pytest
from hypothesis import HealthCheck, settings

from PROB_TAYLOR.components.syntax import parse_lambda
from PROB_TAYLOR.entity.config import CorpusConfig, SearchConfig, TruncationBudget

settings.register_profile(
    "prob_taylor",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("prob_taylor")


@pytest.fixture(scope="session")
def corpus_config() -> CorpusConfig:
    return CorpusConfig.from_yaml()


@pytest.fixture(scope="session")
def search_config() -> SearchConfig:
    return SearchConfig.from_yaml()


@pytest.fixture
def budget() -> TruncationBudget:
    return TruncationBudget(8, 3)


@pytest.fixture
def delta_choice():
    """Delta (I (+1/2) Omega), the running example."""
    return parse_lambda("Delta (I (+1/2) Omega)")
