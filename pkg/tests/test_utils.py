import json
from fractions import Fraction

import pytest

from PROB_TAYLOR.entity.config import CorpusConfig, EngineConfig, SearchConfig, TruncationBudget
from PROB_TAYLOR.exceptions import ProbabilityRangeError, ProbTaylorException
from PROB_TAYLOR.utils.corpus import random_systems, random_terms
from PROB_TAYLOR.utils.main_utils import dump_json, parse_rational, read_yaml_file, to_plain, write_yaml_file


@pytest.mark.parametrize("text, value", [("1/2", Fraction(1, 2)), ("0.25", Fraction(1, 4)), ("3", 3), (" 2 / 6 ", Fraction(1, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


def test_parse_rational_errors():
    with pytest.raises(ProbTaylorException):
        parse_rational("half")
    with pytest.raises(ProbTaylorException):
        parse_rational("1/0")
    with pytest.raises(ProbabilityRangeError):
        parse_rational("3/2", check_probability=True)


def test_to_plain_and_json():
    content = {"p": Fraction(1, 3), "pair": (Fraction(1), "x"), 2: [Fraction(0)]}
    assert to_plain(content) == {"p": "1/3", "pair": ["1", "x"], "2": ["0"]}
    assert json.loads(dump_json(content)) == to_plain(content)


def test_yaml_round_trip(tmp_path):
    path = str(tmp_path / "nested" / "engine.yaml")
    write_yaml_file(path, {"search": {"test_depth": 2, "pool_cap": 8}})
    assert read_yaml_file(path) == {"search": {"test_depth": 2, "pool_cap": 8}}
    write_yaml_file(path, {"corpus": {"seed": 7}}, replace=True)
    assert read_yaml_file(path) == {"corpus": {"seed": 7}}


def test_read_missing_yaml(tmp_path):
    with pytest.raises(ProbTaylorException):
        read_yaml_file(str(tmp_path / "missing.yaml"))


def test_configs_from_yaml(tmp_path):
    path = str(tmp_path / "engine.yaml")
    write_yaml_file(path, {"search": {"test_depth": 2}, "corpus": {"seed": 3, "probabilities": ["1/3", "0.5"]}})
    assert SearchConfig.from_yaml(path).test_depth == 2
    corpus = CorpusConfig.from_yaml(path)
    assert corpus.seed == 3
    assert corpus.probabilities == (Fraction(1, 3), Fraction(1, 2))


def test_config_rejects_bad_values():
    with pytest.raises(ProbTaylorException):
        TruncationBudget(-1, 2)
    with pytest.raises(ProbTaylorException):
        EngineConfig(output="xml")


def test_corpora_are_reproducible(corpus_config):
    assert random_terms(corpus_config, 10) == random_terms(corpus_config, 10)
    assert random_systems(corpus_config, 5) == random_systems(corpus_config, 5)


def test_random_systems_are_well_formed(corpus_config):
    for tts in random_systems(corpus_config, 30):
        assert tts.size <= corpus_config.max_system_states
        for (q, _), dist in tts.delta.items():
            assert q in tts.linear_states
            assert 0 < sum(dist.values()) <= 1
            assert set(dist) <= tts.branching_states
