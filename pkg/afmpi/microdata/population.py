from typing import Any

import pandas as pd

from ..exceptions import NotFoundError
from ..models.records import Child, HouseholdRecord, Mobility, PersonRecord, Sex
from .dictionary import ADULT_AGE, CHILD_AGE_RANGE, MOBILITY_COLUMNS, NO_DURABLES
from .ingest import Provenance


def _value(value: Any):
    if value is pd.NA or value is None:
        return None
    try:
        if pd.isna(value):
            return None
    except (TypeError, ValueError):
        pass
    if hasattr(value, "item"):
        return value.item()
    return value


def _durables(value):
    value = _value(value)
    if value is None:
        return None
    if value == NO_DURABLES:
        return frozenset()
    return frozenset(value.split(";"))


class Population:
    """
    Retained households and persons after ingest.

    ``households`` is sorted by ``hh_id``; ``persons`` by ``(hh_id, person_id)``.
    Both use nullable pandas dtypes; a missing cell is ``pd.NA``. The tables
    are handed out as copies, so callers cannot change a population in place.
    """

    def __init__(self, households: pd.DataFrame, persons: pd.DataFrame, provenance: Provenance):
        self._households = households.reset_index(drop=True)
        self._persons = persons.reset_index(drop=True)
        self.provenance = provenance

    @property
    def households(self) -> pd.DataFrame:
        return self._households.copy()

    @property
    def persons(self) -> pd.DataFrame:
        return self._persons.copy()

    def __repr__(self):
        return f"Population(households={self.n_households}, persons={self.n_persons})"

    @property
    def n_households(self) -> int:
        return len(self._households)

    @property
    def n_persons(self) -> int:
        return len(self._persons)

    @property
    def hh_ids(self) -> tuple[str, ...]:
        return tuple(self._households["hh_id"])

    def adults(self) -> pd.DataFrame:
        return self._persons[self._persons["age"] >= ADULT_AGE].reset_index(drop=True)

    def headship(self, hh_id: str) -> Sex:
        match = self._households.loc[self._households["hh_id"] == hh_id, "head_sex"]
        if match.empty:
            raise NotFoundError(f"Household '{hh_id}' not found", hh_id=hh_id)
        return Sex(match.iloc[0])

    def household(self, hh_id: str) -> HouseholdRecord:
        match = self._households[self._households["hh_id"] == hh_id]
        if match.empty:
            raise NotFoundError(f"Household '{hh_id}' not found", hh_id=hh_id)
        members = self._persons[self._persons["hh_id"] == hh_id]
        return self._household_record(match.iloc[0], members)

    def person(self, person_id: str) -> PersonRecord:
        match = self._persons[self._persons["person_id"] == person_id]
        if match.empty:
            raise NotFoundError(f"Person '{person_id}' not found", person_id=person_id)
        return self._person_record(match.iloc[0])

    def household_records(self) -> list[HouseholdRecord]:
        grouped = dict(tuple(self._persons.groupby("hh_id", sort=False)))
        empty = self._persons.iloc[0:0]
        return [self._household_record(row, grouped.get(row["hh_id"], empty)) for _, row in self._households.iterrows()]

    def person_records(self) -> list[PersonRecord]:
        return [self._person_record(row) for _, row in self._persons.iterrows()]

    @staticmethod
    def _household_record(row: pd.Series, members: pd.DataFrame) -> HouseholdRecord:
        low, high = CHILD_AGE_RANGE
        children = members[(members["age"] >= low) & (members["age"] <= high)]
        return HouseholdRecord(
            hh_id=row["hh_id"],
            head_sex=row["head_sex"],
            has_electricity=_value(row["has_electricity"]),
            floor_material=_value(row["floor_material"]),
            toilet=_value(row["toilet"]),
            water_source=_value(row["water_source"]),
            cooking_fuel=_value(row["cooking_fuel"]),
            durables_owned=_durables(row["durables_owned"]),
            owns_four_wheeler=_value(row["owns_four_wheeler"]),
            owns_agri_land=_value(row["owns_agri_land"]),
            owns_residence=_value(row["owns_residence"]),
            children_5_9=tuple(
                Child(child_id=c["person_id"], enrolled=_value(c["enrolled"])) for _, c in children.iterrows()
            ),
        )

    @staticmethod
    def _person_record(row: pd.Series) -> PersonRecord:
        respondent = bool(row["is_female_respondent"])
        mobility = None
        if respondent:
            mobility = Mobility(**{name: _value(row[name]) for name in MOBILITY_COLUMNS})
        return PersonRecord(
            person_id=row["person_id"],
            hh_id=row["hh_id"],
            sex=row["sex"],
            age=int(row["age"]),
            marital_status=_value(row["marital_status"]),
            education_years=_value(row["education_years"]),
            owns_residence_any=_value(row["owns_residence_any"]),
            owns_agri_land_any=_value(row["owns_agri_land_any"]),
            enrolled=_value(row["enrolled"]),
            is_female_respondent=respondent,
            respondent_rank=int(row["respondent_rank"]),
            mobility=mobility,
        )


def adults(pop: Population) -> pd.DataFrame:
    """Persons aged 18 or over, ordered by (hh_id, person_id)."""
    return pop.adults()


def headship(pop: Population, hh_id: str) -> Sex:
    return pop.headship(hh_id)
