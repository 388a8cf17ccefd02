import pytest

from afmpi.config import config
from afmpi.deprivation import evaluate
from afmpi.engine import decompose_indicators, measure, oracle_contributions, oracle_measure, oracle_scores, score
from afmpi.exceptions import TooLarge
from afmpi.schemes import builtin_scheme, exclude_dimension
from afmpi.synthgen import demo_config, generate

from .conftest import population_from_text

SCHEMES = [
    builtin_scheme("khas_household"),
    builtin_scheme("khas_individual"),
    exclude_dimension(builtin_scheme("khas_individual"), "empowerment"),
]


def _vectorised(pop, scheme):
    mat = evaluate(pop, scheme)
    return mat, measure(score(mat, scheme), scheme.poverty_cutoff_k)


def _assert_paths_agree(pop):
    for scheme in SCHEMES:
        mat, result = _vectorised(pop, scheme)
        assert oracle_measure(pop, scheme) == result, scheme.id
        if result.q:
            table = decompose_indicators(result, mat, scheme)
            expected = oracle_contributions(pop, scheme)
            assert {row.indicator_id: row.contribution for row in table.indicators} == expected


def _generated(seed, n_households=120):
    cfg = demo_config().model_copy(update={"seed": seed, "n_households": n_households})
    return population_from_text(*generate(cfg))


def test_oracle_matches_on_fixture(mini_pop):
    _assert_paths_agree(mini_pop)


def test_oracle_scores_on_fixture(mini_pop, expected):
    scores = oracle_scores(mini_pop, builtin_scheme("khas_individual"))
    assert {unit: value * 120 for unit, value in scores.items()} == expected["individual"]["scores_120ths"]


def test_oracle_subset_contributions(mini_pop):
    scheme = builtin_scheme("khas_individual")
    mat, result = _vectorised(mini_pop, scheme)
    table = decompose_indicators(result, mat, scheme, subset={"sex": "female"}, label="female")
    women = oracle_contributions(mini_pop, scheme, subset=lambda hh, person: person.sex.value == "female")
    assert {row.indicator_id: row.contribution for row in table.indicators} == women


@pytest.mark.parametrize("seed", [1, 7, 2024])
def test_oracle_matches_on_generated_populations(seed):
    _assert_paths_agree(_generated(seed))


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_oracle_matches_across_many_seeds(seed):
    _assert_paths_agree(_generated(10_000 + seed, n_households=1000))


def test_oracle_refuses_large_populations(mini_pop, monkeypatch):
    monkeypatch.setattr(config, "ORACLE_MAX_UNITS", 3)
    with pytest.raises(TooLarge):
        oracle_scores(mini_pop, builtin_scheme("khas_household"))


@pytest.mark.parametrize("name", ["khas_household", "khas_individual"])
def test_oracle_matches_when_nobody_is_poor(mini_pop, name):
    scheme = builtin_scheme(name)
    mat = evaluate(mini_pop, scheme)
    result = measure(score(mat, scheme), 1)
    reference = oracle_measure(mini_pop, scheme, 1)
    assert reference == result
    for outcome in (result, reference):
        assert (outcome.q, outcome.H, outcome.M0, outcome.A) == (0, 0, 0, None)
