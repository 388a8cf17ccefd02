"""
KHAS deprivation rules. Each rule maps an ``EvaluationContext`` to a boolean
array: household rules over households, individual rules over adults.
"""

import numpy as np
import pandas as pd

from ..microdata.dictionary import NO_DURABLES
from .context import EvaluationContext, as_flags
from .registry import HOUSEHOLD, INDIVIDUAL, evaluator

SCHOOLING_YEARS = 5
MIN_DURABLES = 2

DEPRIVED_TOILETS = ("none", "shared")
SAFE_WATER = ("piped", "borewell", "closed_well", "open_well")
CLEAN_FUELS = ("electricity", "lpg", "biogas")
DEPRIVED_DECISIONS = ("with_permission", "someone_else")


# Education


@evaluator("hh_schooling", applies_to="household")
def hh_schooling(ctx: EvaluationContext) -> np.ndarray:
    """No adult member has completed five years of schooling."""
    adults = ctx.adults
    schooled = (adults["education_years"] >= SCHOOLING_YEARS).to_numpy(dtype=bool, na_value=False)
    return ~ctx.per_household(adults, schooled)


@evaluator("child_enrollment", applies_to="household")
def child_enrollment(ctx: EvaluationContext) -> np.ndarray:
    """A child aged 5 to 9 is not enrolled in school."""
    children = ctx.children()
    not_enrolled = ~as_flags(children["enrolled"], missing=True)
    return ctx.per_household(children, not_enrolled)


@evaluator("own_schooling", applies_to="individual", level=INDIVIDUAL)
def own_schooling(ctx: EvaluationContext) -> np.ndarray:
    """Fewer than five completed years of schooling."""
    return (ctx.adults["education_years"] < SCHOOLING_YEARS).to_numpy(dtype=bool, na_value=False)


# Living standards


@evaluator("electricity")
def electricity(ctx: EvaluationContext) -> np.ndarray:
    """No electricity."""
    return ~as_flags(ctx.households["has_electricity"], missing=True)


@evaluator("floor")
def floor(ctx: EvaluationContext) -> np.ndarray:
    """Earth or mud floor."""
    return (ctx.households["floor_material"] == "earth_mud").to_numpy(dtype=bool, na_value=False)


@evaluator("sanitation")
def sanitation(ctx: EvaluationContext) -> np.ndarray:
    """No toilet, or a shared one."""
    return ctx.households["toilet"].isin(DEPRIVED_TOILETS).to_numpy(dtype=bool, na_value=False)


@evaluator("water")
def water(ctx: EvaluationContext) -> np.ndarray:
    """Drinking water not from a pipe, borewell or well."""
    return ~ctx.households["water_source"].isin(SAFE_WATER).to_numpy(dtype=bool, na_value=False)


@evaluator("cooking_fuel")
def cooking_fuel(ctx: EvaluationContext) -> np.ndarray:
    """Cooks with wood, charcoal, dung or another unclean fuel."""
    return ~ctx.households["cooking_fuel"].isin(CLEAN_FUELS).to_numpy(dtype=bool, na_value=False)


def durables_count(values: pd.Series) -> np.ndarray:
    tokens = values.fillna(NO_DURABLES).astype(str)
    counts = tokens.str.count(";") + 1
    return np.where(tokens == NO_DURABLES, 0, counts).astype(np.int64)


@evaluator("durables")
def durables(ctx: EvaluationContext) -> np.ndarray:
    """Fewer than two listed durables and no four-wheeler."""
    few = durables_count(ctx.households["durables_owned"]) < MIN_DURABLES
    return few & ~as_flags(ctx.households["owns_four_wheeler"])


# Productive assets


@evaluator("hh_productive_assets")
def hh_productive_assets(ctx: EvaluationContext) -> np.ndarray:
    """Household owns neither agricultural land nor its residence."""
    hh = ctx.households
    return ~as_flags(hh["owns_agri_land"]) & ~as_flags(hh["owns_residence"])


@evaluator("individual_productive_assets", applies_to="individual", level=INDIVIDUAL)
def individual_productive_assets(ctx: EvaluationContext) -> np.ndarray:
    """Owns, alone or jointly, neither residence nor agricultural land."""
    adults = ctx.adults
    return ~as_flags(adults["owns_residence_any"]) & ~as_flags(adults["owns_agri_land_any"])


# Empowerment: the household takes its female respondent's answers; at the
# individual level every adult woman shares them and men are non-deprived.


def _not_allowed_alone(ctx: EvaluationContext, column: str) -> np.ndarray:
    answers = ctx.respondent_column(column).astype("boolean")
    return answers.eq(False).to_numpy(dtype=bool, na_value=False)


def _women_share(ctx: EvaluationContext, household_values: np.ndarray) -> np.ndarray:
    adults_of = household_values[ctx.adult_household] if ctx.n_adults else np.zeros(0, dtype=bool)
    return adults_of & ctx.adult_female


@evaluator("travel_market", level=HOUSEHOLD)
def travel_market(ctx: EvaluationContext) -> np.ndarray:
    """Female respondent may not travel to the market alone."""
    return _not_allowed_alone(ctx, "market_alone")


@evaluator("travel_market", level=INDIVIDUAL)
def travel_market_individual(ctx: EvaluationContext) -> np.ndarray:
    return _women_share(ctx, travel_market(ctx))


@evaluator("travel_health_facility", level=HOUSEHOLD)
def travel_health_facility(ctx: EvaluationContext) -> np.ndarray:
    """Female respondent may not travel to a health facility alone."""
    return _not_allowed_alone(ctx, "health_facility_alone")


@evaluator("travel_health_facility", level=INDIVIDUAL)
def travel_health_facility_individual(ctx: EvaluationContext) -> np.ndarray:
    return _women_share(ctx, travel_health_facility(ctx))


@evaluator("travel_natal_home", level=HOUSEHOLD)
def travel_natal_home(ctx: EvaluationContext) -> np.ndarray:
    """Female respondent may not travel to her natal home alone."""
    return _not_allowed_alone(ctx, "natal_home_alone")


@evaluator("travel_natal_home", level=INDIVIDUAL)
def travel_natal_home_individual(ctx: EvaluationContext) -> np.ndarray:
    return _women_share(ctx, travel_natal_home(ctx))


@evaluator("travel_outside_village", level=HOUSEHOLD)
def travel_outside_village(ctx: EvaluationContext) -> np.ndarray:
    """Female respondent may not travel outside the village alone."""
    return _not_allowed_alone(ctx, "outside_village_alone")


@evaluator("travel_outside_village", level=INDIVIDUAL)
def travel_outside_village_individual(ctx: EvaluationContext) -> np.ndarray:
    return _women_share(ctx, travel_outside_village(ctx))


@evaluator("health_decision", level=HOUSEHOLD)
def health_decision(ctx: EvaluationContext) -> np.ndarray:
    """Female respondent needs permission, or someone else decides, on her own health care."""
    decisions = ctx.respondent_column("own_health_decision")
    return decisions.isin(DEPRIVED_DECISIONS).to_numpy(dtype=bool, na_value=False)


@evaluator("health_decision", level=INDIVIDUAL)
def health_decision_individual(ctx: EvaluationContext) -> np.ndarray:
    return _women_share(ctx, health_decision(ctx))


EMPOWERMENT_KEYS = (
    "travel_market",
    "travel_health_facility",
    "travel_natal_home",
    "travel_outside_village",
    "health_decision",
)
