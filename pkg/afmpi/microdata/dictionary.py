"""
Column dictionary for households.csv and persons.csv.

The order of ``HOUSEHOLD_COLUMNS`` followed by ``PERSON_COLUMNS`` is the
dictionary order used to pick a dropped household's reason code.
"""

from typing import NamedTuple

from ..models.records import (
    CookingFuel,
    Durable,
    FloorMaterial,
    HealthDecision,
    MaritalStatus,
    Sex,
    Toilet,
    WaterSource,
)

ID = "id"
BOOL = "bool"
INT = "int"
ENUM = "enum"
SET = "set"

BOOL_TOKENS = {"0": False, "1": True}
NO_DURABLES = "none"
# ASCII digits only, short enough to stay inside Int64
INT_PATTERN = r"[0-9]{1,9}"


def _tokens(enum_cls) -> tuple[str, ...]:
    return tuple(member.value for member in enum_cls)


class Column(NamedTuple):
    name: str
    kind: str
    tokens: tuple[str, ...] = ()
    # blank cell is an ingest error rather than a missing value
    required_value: bool = False
    # header may be absent
    optional_header: bool = False
    default: str | None = None


HOUSEHOLD_COLUMNS: tuple[Column, ...] = (
    Column("hh_id", ID, required_value=True),
    Column("head_sex", ENUM, _tokens(Sex)),
    Column("has_electricity", BOOL),
    Column("floor_material", ENUM, _tokens(FloorMaterial)),
    Column("toilet", ENUM, _tokens(Toilet)),
    Column("water_source", ENUM, _tokens(WaterSource)),
    Column("cooking_fuel", ENUM, _tokens(CookingFuel)),
    Column("durables_owned", SET, _tokens(Durable)),
    Column("owns_four_wheeler", BOOL),
    Column("owns_agri_land", BOOL),
    Column("owns_residence", BOOL),
)

MOBILITY_COLUMNS: tuple[str, ...] = (
    "market_alone",
    "health_facility_alone",
    "natal_home_alone",
    "outside_village_alone",
    "own_health_decision",
)

PERSON_COLUMNS: tuple[Column, ...] = (
    Column("person_id", ID, required_value=True),
    Column("hh_id", ID, required_value=True),
    Column("sex", ENUM, _tokens(Sex), required_value=True),
    Column("age", INT, required_value=True),
    Column("marital_status", ENUM, _tokens(MaritalStatus)),
    Column("education_years", INT),
    Column("owns_residence_any", BOOL),
    Column("owns_agri_land_any", BOOL),
    Column("enrolled", BOOL),
    Column("is_female_respondent", BOOL, default="0"),
    Column("respondent_rank", INT, optional_header=True, default="1"),
    Column("market_alone", BOOL),
    Column("health_facility_alone", BOOL),
    Column("natal_home_alone", BOOL),
    Column("outside_village_alone", BOOL),
    Column("own_health_decision", ENUM, _tokens(HealthDecision)),
)

# person scopes a field can be required in
HOUSEHOLD_SCOPE = "household"
ADULTS = "adults"
CHILDREN_5_9 = "children_5_9"
FEMALE_RESPONDENTS = "female_respondents"

ADULT_AGE = 18
CHILD_AGE_RANGE = (5, 9)


class FieldRef(NamedTuple):
    table: str
    column: str
    scope: str


def _hh(column):
    return FieldRef("households", column, HOUSEHOLD_SCOPE)


def _person(column, scope):
    return FieldRef("persons", column, scope)


EVALUATOR_FIELDS: dict[str, tuple[FieldRef, ...]] = {
    "hh_schooling": (_person("education_years", ADULTS),),
    "child_enrollment": (_person("enrolled", CHILDREN_5_9),),
    "own_schooling": (_person("education_years", ADULTS),),
    "electricity": (_hh("has_electricity"),),
    "floor": (_hh("floor_material"),),
    "sanitation": (_hh("toilet"),),
    "water": (_hh("water_source"),),
    "cooking_fuel": (_hh("cooking_fuel"),),
    "durables": (_hh("durables_owned"), _hh("owns_four_wheeler")),
    "hh_productive_assets": (_hh("owns_agri_land"), _hh("owns_residence")),
    "individual_productive_assets": (
        _person("owns_residence_any", ADULTS),
        _person("owns_agri_land_any", ADULTS),
    ),
    "travel_market": (_person("market_alone", FEMALE_RESPONDENTS),),
    "travel_health_facility": (_person("health_facility_alone", FEMALE_RESPONDENTS),),
    "travel_natal_home": (_person("natal_home_alone", FEMALE_RESPONDENTS),),
    "travel_outside_village": (_person("outside_village_alone", FEMALE_RESPONDENTS),),
    "health_decision": (_person("own_health_decision", FEMALE_RESPONDENTS),),
}

# needed for every headship breakdown regardless of scheme
ALWAYS_IN_SCOPE: tuple[FieldRef, ...] = (_hh("head_sex"),)


def dictionary_order() -> list[FieldRef]:
    """Every nullable field, households first, in column order."""
    refs = []
    for column in HOUSEHOLD_COLUMNS:
        if not column.required_value:
            refs.append(_hh(column.name))
    for column in PERSON_COLUMNS:
        if not column.required_value:
            refs.append(FieldRef("persons", column.name, None))
    return refs


def fields_in_scope(evaluator_keys) -> list[FieldRef]:
    """Fields required by ``evaluator_keys``, ordered by the dictionary."""
    wanted = {ref for ref in ALWAYS_IN_SCOPE}
    for key in evaluator_keys:
        wanted.update(EVALUATOR_FIELDS.get(key, ()))

    ordered = []
    for ref in dictionary_order():
        for field in sorted(wanted, key=lambda f: f.scope or ""):
            if field.table == ref.table and field.column == ref.column and field not in ordered:
                ordered.append(field)
    return ordered
