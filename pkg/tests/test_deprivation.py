from fractions import Fraction

import numpy as np
import pytest

from afmpi.deprivation import (
    DeprivationMatrix,
    deprivation_rates,
    evaluate,
    evaluate_household,
    evaluate_individual,
    evaluator_keys,
    get_evaluator,
    resolve_subset,
)
from afmpi.exceptions import NotFoundError, SchemeMismatch, UsageError
from afmpi.models.records import Unit
from afmpi.synthgen.fixtures import HOUSEHOLDS_CSV, PERSONS_CSV

from .conftest import population_from_text

HOUSEHOLD_ROWS = {
    "H01": [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1],
    "H02": [0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0],
    "H03": [1, 0, 0, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
    "H04": [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1],
    "H05": [0] * 14,
    "H06": [1, 0, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1],
}

EMPOWERMENT = ["travel_market", "travel_health_facility", "travel_natal_home", "travel_outside_village", "health_decision"]


def test_registry():
    keys = evaluator_keys()
    assert len(keys) == 16
    assert get_evaluator("own_schooling").individual_rule is not None
    assert get_evaluator("electricity").propagates
    assert not get_evaluator("travel_market").propagates
    with pytest.raises(NotFoundError):
        get_evaluator("caste")


def test_household_matrix(mini_pop, household_scheme):
    mat = evaluate_household(mini_pop, household_scheme)
    assert mat.unit_level is Unit.HOUSEHOLD
    assert mat.indicator_ids == household_scheme.indicator_ids
    for i, hh_id in enumerate(mat.unit_ids):
        assert mat.cells[i].tolist() == HOUSEHOLD_ROWS[hh_id], hh_id


def test_matrix_is_read_only(mini_pop, household_scheme):
    mat = evaluate(mini_pop, household_scheme)
    with pytest.raises(ValueError):
        mat.cells[0, 0] = 1


def test_household_values_propagate_to_adults(mini_pop, individual_scheme):
    mat = evaluate_individual(mini_pop, individual_scheme)
    assert len(mat) == 11
    assert "H04-3" not in mat.unit_ids
    electricity = dict(zip(mat.unit_ids, mat.column("electricity")))
    assert electricity["H06-1"] == electricity["H06-2"] == 1
    assert electricity["H01-1"] == 0


def test_men_are_never_deprived_in_empowerment(mini_pop, individual_scheme):
    mat = evaluate_individual(mini_pop, individual_scheme)
    men = mat.mask({"sex": "male"})
    for indicator_id in EMPOWERMENT:
        assert mat.column(indicator_id)[men].sum() == 0


def test_adult_women_share_the_respondent_answers(mini_pop, individual_scheme):
    mat = evaluate_individual(mini_pop, individual_scheme)
    row = {unit_id: i for i, unit_id in enumerate(mat.unit_ids)}
    columns = [mat.indicator_ids.index(key) for key in EMPOWERMENT]
    # H04-2 is not the respondent; her mother is
    assert mat.cells[row["H04-2"], columns].tolist() == [0, 0, 0, 1, 1]
    assert mat.cells[row["H04-1"], columns].tolist() == [0, 0, 0, 1, 1]
    assert mat.cells[row["H06-1"], columns].tolist() == [1, 1, 1, 1, 1]


def test_own_schooling_and_assets(mini_pop, individual_scheme):
    mat = evaluate_individual(mini_pop, individual_scheme)
    schooling = dict(zip(mat.unit_ids, mat.column("schooling")))
    assets = dict(zip(mat.unit_ids, mat.column("ind_assets")))
    assert schooling["H01-2"] == 1 and schooling["H01-1"] == 0
    assert assets["H05-1"] == 1 and assets["H05-2"] == 0


def test_attributes(mini_pop, individual_scheme):
    mat = evaluate_individual(mini_pop, individual_scheme)
    first = mat.attributes.iloc[list(mat.unit_ids).index("H04-1")]
    assert first["head_sex"] == "female"
    assert first["marital_status"] == "widowed"
    assert first["age"] == 65


def test_wrong_unit(mini_pop, household_scheme):
    with pytest.raises(SchemeMismatch):
        evaluate_individual(mini_pop, household_scheme)


def test_household_without_respondent_is_not_deprived_in_empowerment(individual_scheme, caplog):
    persons = PERSONS_CSV.replace(
        "H06-1,H06,female,38,currently_married,0,0,0,,1,1,0,0,0,0,with_permission",
        "H06-1,H06,female,38,currently_married,0,0,0,,0,,,,,,",
    )
    pop = population_from_text(HOUSEHOLDS_CSV, persons)
    with caplog.at_level("WARNING", logger="afmpi"):
        mat = evaluate(pop, individual_scheme)
    assert mat.warnings["households_without_female_respondent"] == 2
    assert mat.warnings["adult_females_without_respondent"] == 1
    women = mat.mask({"hh_id": "H06"})
    for indicator_id in EMPOWERMENT:
        assert mat.column(indicator_id)[women].sum() == 0
    assert "no female respondent" in caplog.text


def test_lowest_rank_respondent_is_used(individual_scheme):
    persons = PERSONS_CSV.replace(
        "H04-2,H04,female,18,never_married,10,0,0,,0,,,,,,",
        "H04-2,H04,female,18,never_married,10,0,0,,1,0,1,1,1,1,self",
    )
    pop = population_from_text(HOUSEHOLDS_CSV, persons)
    mat = evaluate(pop, individual_scheme)
    assert mat.warnings["multiple_female_respondents"] == 1
    in_h04 = mat.mask({"hh_id": "H04"})
    for indicator_id in EMPOWERMENT:
        assert mat.column(indicator_id)[in_h04].sum() == 0


def test_deprivation_rates(mini_pop, household_scheme):
    mat = evaluate(mini_pop, household_scheme)
    rates = deprivation_rates(mat)
    assert rates.n == 6
    assert rates.rate("sanitation") == Fraction(1, 2)
    assert rates.rate("electricity") == Fraction(1, 6)

    female_headed = deprivation_rates(mat, {"head_sex": "female"}, "female_headed")
    assert female_headed.n == 2
    assert female_headed.rate("cooking_fuel") == 1

    empty = deprivation_rates(mat, np.zeros(6, dtype=bool))
    assert empty.is_empty
    assert empty.rate("water") is None


def test_subsets(mini_pop, individual_scheme):
    mat = evaluate(mini_pop, individual_scheme)
    assert resolve_subset(mat.attributes, {"sex": ["female", "male"]}).all()
    assert resolve_subset(mat.attributes, lambda a: a["age"] >= 60).sum() == 2
    with pytest.raises(UsageError):
        resolve_subset(mat.attributes, {"district": "north"})
    with pytest.raises(UsageError):
        resolve_subset(mat.attributes, np.ones(3, dtype=bool))

    women = mat.select({"sex": "female"})
    assert len(women) == 6
    assert women.cells.shape == (6, 14)


def test_matrix_csv_round_trip(mini_pop, individual_scheme, tmp_path):
    mat = evaluate(mini_pop, individual_scheme)
    path = tmp_path / "matrix.csv"
    mat.to_csv(path)
    loaded = DeprivationMatrix.from_csv(path)
    assert loaded.unit_ids == mat.unit_ids
    assert loaded.indicator_ids == mat.indicator_ids
    assert np.array_equal(loaded.cells, mat.cells)
    assert loaded.unit_level is Unit.INDIVIDUAL
    assert list(loaded.attributes["sex"]) == list(mat.attributes["sex"])
