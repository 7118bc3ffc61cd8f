from fractions import Fraction

import pytest

from PROB_TAYLOR.entity.artifact import NormalFormArtifact, Verdict
from PROB_TAYLOR.entity.combination import Combination
from PROB_TAYLOR.entity.config import EngineConfig
from PROB_TAYLOR.entity.terms import Free
from PROB_TAYLOR.exceptions import TermSyntaxError
from PROB_TAYLOR.pipeline.compare import ComparePipeline, compare_normal_forms

x, y = Free("x"), Free("y")
HALF = Fraction(1, 2)


@pytest.fixture
def pipeline(search_config):
    return ComparePipeline(EngineConfig(8, 3, 16, 2), search_config)


def test_commuted_choices_are_not_separated(pipeline):
    artifact = pipeline.run_pipeline("x (+1/2) y", "y (+1/2) x")
    assert artifact.generic_taylor_equal
    assert not artifact.explicit_taylor_equal
    assert artifact.taylor_nf == Verdict.EQUAL
    assert artifact.bohm == Verdict.EQUAL
    assert artifact.separating_test is None
    assert not artifact.separated


def test_distinct_variables_are_separated(pipeline):
    artifact = pipeline.run_pipeline("x", "y")
    assert not artifact.generic_taylor_equal
    assert artifact.taylor_nf == Verdict.DISTINCT
    assert artifact.bohm == Verdict.DISTINCT
    assert artifact.separating_test is not None
    (a_lo, a_hi), (b_lo, b_hi) = artifact.separating_values
    assert a_hi < b_lo or b_hi < a_lo
    assert artifact.separated


def test_parse_errors_propagate(pipeline):
    with pytest.raises(TermSyntaxError):
        pipeline.run_pipeline("(x", "y")


@pytest.mark.parametrize(
    "left, right, verdict",
    [
        (NormalFormArtifact(Combination.of(x, HALF), Fraction(0)), NormalFormArtifact(Combination.of(x, HALF), Fraction(0)), Verdict.EQUAL),
        (NormalFormArtifact(Combination.of(x, HALF), Fraction(0)), NormalFormArtifact(Combination.of(y, HALF), Fraction(0)), Verdict.DISTINCT),
        (NormalFormArtifact(Combination.of(x, HALF), Fraction(1, 4)), NormalFormArtifact(Combination.of(x), Fraction(0)), Verdict.DISTINCT),
        (NormalFormArtifact(Combination.of(x, HALF), HALF), NormalFormArtifact(Combination.of(x), Fraction(0)), Verdict.UNKNOWN),
    ],
)
def test_compare_normal_forms(left, right, verdict):
    assert compare_normal_forms(left, right) == verdict
