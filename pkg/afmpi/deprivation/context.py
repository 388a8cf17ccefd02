import numpy as np
import pandas as pd

from ..microdata.dictionary import CHILD_AGE_RANGE
from ..microdata.population import Population


def as_flags(series: pd.Series, missing: bool = False) -> np.ndarray:
    """Nullable boolean column to a plain bool array."""
    return series.astype("boolean").to_numpy(dtype=bool, na_value=missing)


class EvaluationContext:
    """
    Read-only view of a population shared by all rules of one evaluation.

    Household arrays follow ``households`` order; adult arrays follow
    ``adults`` order, with ``adult_household`` giving each adult's household
    position.
    """

    def __init__(self, pop: Population):
        self.households = pop.households
        self.persons = pop.persons
        self.adults = pop.adults()
        self.hh_index = pd.Index(self.households["hh_id"])
        self.adult_household = self.hh_index.get_indexer(self.adults["hh_id"])
        self.adult_female = (self.adults["sex"] == "female").to_numpy(dtype=bool, na_value=False)
        self.respondents, self.warnings = self._select_respondents()

    @property
    def n_households(self) -> int:
        return len(self.households)

    @property
    def n_adults(self) -> int:
        return len(self.adults)

    def per_household(self, frame: pd.DataFrame, flags: np.ndarray) -> np.ndarray:
        """True for households where any row of ``frame`` has its flag set."""
        hit = frame.loc[flags, "hh_id"].unique()
        return self.hh_index.isin(hit)

    def children(self) -> pd.DataFrame:
        low, high = CHILD_AGE_RANGE
        age = self.persons["age"]
        return self.persons[(age >= low) & (age <= high)]

    def respondent_column(self, column: str) -> pd.Series:
        """The selected female respondent's answer per household; NA when there is none."""
        return self.respondents[column]

    def _select_respondents(self):
        flagged = self.persons[as_flags(self.persons["is_female_respondent"])]
        ordered = flagged.sort_values(["hh_id", "respondent_rank", "person_id"], kind="mergesort")
        selected = ordered.drop_duplicates("hh_id", keep="first").set_index("hh_id")
        respondents = selected.reindex(self.hh_index)

        has_respondent = self.hh_index.isin(selected.index)
        counts = flagged.groupby("hh_id").size()
        adult_female_without = int((self.adult_female & ~has_respondent[self.adult_household]).sum())
        warnings = {
            "households_without_female_respondent": int((~has_respondent).sum()),
            "adult_females_without_respondent": adult_female_without,
            "multiple_female_respondents": int((counts > 1).sum()),
        }
        return respondents, warnings
