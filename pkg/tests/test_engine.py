from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from afmpi.deprivation import evaluate
from afmpi.engine import (
    GroupSummary,
    attach_household_status,
    attributed_headcounts,
    crosstab,
    decompose_indicators,
    decompose_subgroups,
    identify,
    measure,
    measure_groups,
    membership,
    score,
    weighted_scores,
)
from afmpi.exceptions import (
    BadCutoffs,
    EmptyPoorSet,
    EmptyPopulation,
    PartitionError,
    SchemeInvalid,
    SchemeMismatch,
    UsageError,
)
from afmpi.schemes import exclude_dimension


def _run(pop, scheme, k=None):
    mat = evaluate(pop, scheme)
    sv = score(mat, scheme)
    return mat, sv, measure(sv, scheme.poverty_cutoff_k if k is None else k)


@pytest.mark.parametrize("level", ["household", "individual"])
def test_golden_measures(mini_pop, household_scheme, individual_scheme, expected, level):
    scheme = household_scheme if level == "household" else individual_scheme
    golden = expected[level]
    _, sv, result = _run(mini_pop, scheme)

    assert {u: s * 120 for u, s in zip(sv.unit_ids, sv.scores)} == golden["scores_120ths"]
    assert sv.denominator == 120
    assert result.scheme_id == golden["scheme_id"]
    assert result.k == Fraction(golden["k"])
    assert (result.n, result.q) == (golden["n"], golden["q"])
    assert result.H == Fraction(golden["H"])
    assert result.A == Fraction(golden["A"])
    assert result.M0 == Fraction(golden["M0"])
    assert result.H * result.A == result.M0


def test_censored_scores(mini_pop, household_scheme):
    _, sv, result = _run(mini_pop, household_scheme)
    censored = dict(zip(result.unit_ids, result.censored_scores))
    assert censored["H01"] == 0
    assert censored["H06"] == Fraction(75, 120)
    assert result.is_poor("H02") and not result.is_poor("H04")
    assert sv.score_of("H03") == Fraction(1, 3)


def test_groups(mini_pop, household_scheme, individual_scheme, expected):
    mat, sv, _ = _run(mini_pop, household_scheme)
    by_head = measure_groups(sv, household_scheme.poverty_cutoff_k, mat, "head_sex")
    for group, golden in expected["household"]["by_head_sex"].items():
        assert (by_head[group].n, by_head[group].q) == (golden["n"], golden["q"])
        assert by_head[group].M0 == Fraction(golden["M0"])

    mat, sv, _ = _run(mini_pop, individual_scheme)
    by_sex = measure_groups(sv, individual_scheme.poverty_cutoff_k, mat, "sex")
    for group, golden in expected["individual"]["by_sex"].items():
        assert (by_sex[group].n, by_sex[group].q) == (golden["n"], golden["q"])
        assert by_sex[group].M0 == Fraction(golden["M0"])


def test_poverty_cutoff_is_inclusive(mini_pop, individual_scheme):
    # H05-1 scores exactly 3/8
    _, _, at = _run(mini_pop, individual_scheme, Fraction(3, 8))
    _, _, above = _run(mini_pop, individual_scheme, Fraction(3, 8) + Fraction(1, 1000))
    assert at.is_poor("H05-1")
    assert not above.is_poor("H05-1")


def test_dimension_exclusion_rescores(mini_pop, individual_scheme):
    without = exclude_dimension(individual_scheme, "empowerment")
    _, sv, result = _run(mini_pop, without)
    assert sv.score_of("H05-1") == Fraction(1, 2)
    assert result.is_poor("H05-1")


def test_bad_cutoffs(mini_pop, household_scheme):
    _, sv, _ = _run(mini_pop, household_scheme)
    for k in (0, "-1/10", Fraction(11, 10), "abc"):
        with pytest.raises(BadCutoffs):
            measure(sv, k)
    assert identify(sv, 1).sum() == 0


def test_empty_population():
    sv = weighted_scores(np.zeros((0, 2), dtype=np.uint8), [Fraction(1, 2), Fraction(1, 2)])
    with pytest.raises(EmptyPopulation):
        measure(sv, Fraction(1, 3))


def test_nobody_poor():
    sv = weighted_scores(np.zeros((4, 2), dtype=np.uint8), [Fraction(1, 2), Fraction(1, 2)])
    result = measure(sv, Fraction(1, 3))
    assert result.q == 0
    assert result.H == result.M0 == 0
    assert result.A is None


def test_weighted_scores_validation():
    with pytest.raises(SchemeInvalid):
        weighted_scores(np.ones((2, 2), dtype=np.uint8), [Fraction(1), Fraction(0)])
    with pytest.raises(SchemeMismatch):
        weighted_scores(np.ones((2, 3), dtype=np.uint8), [Fraction(1, 2), Fraction(1, 2)])


def test_scheme_mismatch(mini_pop, household_scheme, individual_scheme):
    mat = evaluate(mini_pop, household_scheme)
    with pytest.raises(SchemeMismatch):
        score(mat, individual_scheme)


def test_indicator_decomposition(mini_pop, individual_scheme, expected):
    mat, _, result = _run(mini_pop, individual_scheme)
    table = decompose_indicators(result, mat, individual_scheme)
    golden = expected["individual"]

    assert table.M0 == result.M0
    assert {row.indicator_id: row.deprived_poor for row in table.indicators} == golden["deprived_poor"]
    for dimension_id, value in golden["dimension_contributions"].items():
        assert table.contribution(dimension_id) == Fraction(value)
    assert sum((row.contribution for row in table.indicators), Fraction(0)) == 1
    assert sum((row.contribution for row in table.dimensions), Fraction(0)) == 1
    assert table.censored_headcount("schooling") == Fraction(7, 11)


def test_indicator_decomposition_of_a_subgroup(mini_pop, individual_scheme):
    mat, _, result = _run(mini_pop, individual_scheme)
    women = decompose_indicators(result, mat, individual_scheme, subset={"sex": "female"}, label="female")
    men = decompose_indicators(result, mat, individual_scheme, subset={"sex": "male"}, label="male")
    assert women.M0 == Fraction(73, 180)
    assert men.M0 == Fraction(4, 15)
    assert men.contribution("empowerment") == 0
    assert sum((row.contribution for row in women.indicators), Fraction(0)) == 1


def test_empty_poor_set(mini_pop, household_scheme):
    mat, _, result = _run(mini_pop, household_scheme)
    with pytest.raises(EmptyPoorSet):
        decompose_indicators(result, mat, household_scheme, subset={"hh_id": "H05"}, label="H05")
    with pytest.raises(EmptyPoorSet):
        decompose_indicators(result, mat, household_scheme, subset=np.zeros(6, dtype=bool))


def test_population_share_decomposition(mini_pop, individual_scheme):
    mat, sv, result = _run(mini_pop, individual_scheme)
    groups = measure_groups(sv, result.k, mat, "sex")
    table = decompose_subgroups(groups, total=result)

    assert table.M0 == result.M0
    assert table.row("female").population_share == Fraction(6, 11)
    assert table.row("female").poor_share == Fraction(4, 7)
    assert sum((row.contribution for row in table.rows), Fraction(0)) == 1


def test_subgroup_decomposition_rejects_overlap(mini_pop, individual_scheme):
    mat, sv, result = _run(mini_pop, individual_scheme)
    groups = measure_groups(sv, result.k, mat, "sex")
    with pytest.raises(PartitionError):
        decompose_subgroups({"female": groups["female"], "everyone": result})
    with pytest.raises(PartitionError):
        decompose_subgroups({"female": groups["female"]}, total=result)
    with pytest.raises(PartitionError):
        decompose_subgroups({})


def test_subgroup_decomposition_of_reported_figures():
    table = decompose_subgroups(
        {"women": GroupSummary(n=3, M0=Fraction(1, 3)), "men": GroupSummary(n=1, M0=Fraction(1, 5))}
    )
    assert table.M0 == Fraction(3, 10)
    assert table.row("women").contribution == Fraction(5, 6)
    assert table.row("women").poor_share is None


def test_crosstab(mini_pop, household_scheme, individual_scheme, expected):
    _, _, hh_result = _run(mini_pop, household_scheme)
    ind_mat, _, ind_result = _run(mini_pop, individual_scheme)
    table = crosstab(ind_result, hh_result, ind_mat)

    for individual_status, by_household in expected["crosstab"].items():
        for household_status, count in by_household.items():
            assert table.cell(individual_status, household_status).count == count
    hidden = table.cell("poor", "non_poor")
    assert hidden.column_total == 7
    assert hidden.share == Fraction(3, 7)


def test_crosstab_split_by_sex_and_headship(mini_pop, household_scheme, individual_scheme):
    _, _, hh_result = _run(mini_pop, household_scheme)
    ind_mat, _, ind_result = _run(mini_pop, individual_scheme)
    table = crosstab(ind_result, hh_result, membership(mini_pop), by=("sex", "head_sex"))

    assert table.column_groups == ("all", "female", "male")
    assert table.row_groups == ("all", "female", "male")
    # H01-2 and H04-1 are poor women in non-poor households
    assert table.cell("poor", "non_poor", column_group="female").count == 2
    assert table.cell("poor", "non_poor", column_group="female", row_group="female").count == 1
    with pytest.raises(UsageError):
        crosstab(ind_result, hh_result, ind_mat, by=("marital_status",))


def test_attributed_headcounts(mini_pop, household_scheme, expected):
    _, _, hh_result = _run(mini_pop, household_scheme)
    table = attributed_headcounts(membership(mini_pop), hh_result)
    for sex, golden in expected["household"]["attributed"].items():
        row = table.row(sex=sex)
        assert (row.n, row.poor, row.H) == (golden["n"], golden["poor"], Fraction(golden["H"]))


def test_household_status_attribute(mini_pop, household_scheme, individual_scheme):
    _, _, hh_result = _run(mini_pop, household_scheme)
    ind_mat, _, _ = _run(mini_pop, individual_scheme)
    with_status = attach_household_status(ind_mat, hh_result)
    assert with_status.mask({"household_poor": True}).sum() == 5
    assert ind_mat.attributes["household_poor"].isna().all()


weights_strategy = st.lists(st.integers(1, 12), min_size=1, max_size=6).map(
    lambda raw: [Fraction(w, sum(raw)) for w in raw]
)


@st.composite
def populations(draw):
    weights = draw(weights_strategy)
    n = draw(st.integers(1, 30))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=len(weights), max_size=len(weights)), min_size=n, max_size=n))
    k = draw(st.fractions(min_value=Fraction(1, 100), max_value=1))
    return np.array(rows, dtype=np.uint8), weights, k


@settings(max_examples=60, deadline=None)
@given(populations())
def test_replicating_the_population_changes_nothing(case):
    cells, weights, k = case
    once = measure(weighted_scores(cells, weights), k)
    twice = measure(weighted_scores(np.vstack([cells, cells]), weights), k)
    assert (once.H, once.A, once.M0) == (twice.H, twice.A, twice.M0)


@settings(max_examples=60, deadline=None)
@given(populations(), st.fractions(min_value=0, max_value=1))
def test_measures_fall_as_the_cutoff_rises(case, step):
    cells, weights, k = case
    higher = min(Fraction(1), k + step)
    low = measure(weighted_scores(cells, weights), k)
    high = measure(weighted_scores(cells, weights), higher)
    assert high.H <= low.H
    assert high.M0 <= low.M0
    assert 0 <= low.M0 <= low.H <= 1
    if low.q:
        assert low.H * low.A == low.M0


@pytest.mark.parametrize(
    "k, poor",
    [
        ("0.29999999999999999", [True, True, False]),
        ("0.5", [True, True, False]),
        ("0.50000000000000000000000000001", [True, False, False]),
        ("0.99999999999999999999999999999", [True, False, False]),
        ("1", [True, False, False]),
    ],
)
def test_long_decimal_cutoffs_compare_exactly(k, poor):
    sv = weighted_scores(np.array([[1, 1], [1, 0], [0, 0]], dtype=np.uint8), [Fraction(1, 2), Fraction(1, 2)])
    assert identify(sv, k).tolist() == poor
    result = measure(sv, k)
    assert result.q == sum(poor)
    assert result.M0 == Fraction(sum(s for s, p in zip(sv.scores, poor) if p), 3)


def test_fully_deprived_unit_is_poor_under_a_long_decimal_cutoff(household_scheme):
    cells = np.ones((1, len(household_scheme.indicators)), dtype=np.uint8)
    sv = weighted_scores(cells, household_scheme.weights)
    assert sv.scores == [Fraction(1)]
    result = measure(sv, "0.29999999999999999")
    assert (result.q, result.H, result.A) == (1, 1, 1)


@settings(max_examples=60, deadline=None)
@given(populations(), st.fractions(min_value=Fraction(1, 100), max_value=1))
def test_scaling_weights_and_cutoff_leaves_identification_unchanged(case, c):
    cells, weights, k = case
    base = identify(weighted_scores(cells, weights), k)
    scaled = identify(weighted_scores(cells, [c * w for w in weights]), c * k)
    assert scaled.tolist() == base.tolist()


@settings(max_examples=60, deadline=None)
@given(populations(), st.data())
def test_adding_a_deprivation_never_lowers_a_score(case, data):
    cells, weights, k = case
    row = data.draw(st.integers(0, cells.shape[0] - 1))
    column = data.draw(st.integers(0, cells.shape[1] - 1))
    worse = cells.copy()
    worse[row, column] = 1
    before = weighted_scores(cells, weights).scores
    after = weighted_scores(worse, weights).scores
    assert all(b <= a for b, a in zip(before, after))
    assert identify(weighted_scores(worse, weights), k).sum() >= identify(weighted_scores(cells, weights), k).sum()
