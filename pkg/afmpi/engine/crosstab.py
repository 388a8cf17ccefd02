from fractions import Fraction
from typing import Iterable, Union

import numpy as np
import pandas as pd

from ..deprivation.matrix import DeprivationMatrix
from ..exceptions import IntegrityError, UsageError
from ..microdata.population import Population
from ..models.tables import AttributedRow, AttributedTable, CrossTab, CrossTabCell
from .results import PovertyResult

STATUSES = ("poor", "non_poor")
SEXES = ("female", "male")
CROSSTAB_AXES = ("sex", "head_sex")

Join = Union[DeprivationMatrix, pd.DataFrame]


def membership(pop: Population) -> pd.DataFrame:
    """Adult → household join with the attributes crosstabs split on."""
    adults = pop.adults()
    head_sex = pop.households.set_index("hh_id")["head_sex"]
    return pd.DataFrame(
        {
            "unit_id": adults["person_id"].astype("string"),
            "hh_id": adults["hh_id"].astype("string"),
            "sex": adults["sex"].astype("string"),
            "head_sex": adults["hh_id"].map(head_sex).astype("string"),
        }
    )


def _join_frame(join: Join, unit_ids: tuple[str, ...]) -> pd.DataFrame:
    if isinstance(join, DeprivationMatrix):
        if tuple(join.unit_ids) != tuple(unit_ids):
            raise IntegrityError("Join matrix and individual result cover different units")
        frame = join.attributes[["hh_id", "sex", "head_sex"]].copy()
        frame.insert(0, "unit_id", list(join.unit_ids))
        return frame.reset_index(drop=True)

    indexed = join.set_index("unit_id")
    missing = [u for u in unit_ids if u not in indexed.index]
    if missing:
        raise IntegrityError(f"Person '{missing[0]}' has no household in the join", person_id=missing[0])
    return indexed.loc[list(unit_ids), ["hh_id", "sex", "head_sex"]].reset_index()


def _household_status(frame: pd.DataFrame, household_result: PovertyResult) -> np.ndarray:
    status = household_result.poverty_status()
    unknown = [h for h in frame["hh_id"].unique() if h not in status]
    if unknown:
        raise IntegrityError(f"Household '{unknown[0]}' not in the household result", hh_id=unknown[0])
    return np.array([status[h] for h in frame["hh_id"]], dtype=bool)


def attach_household_status(mat: DeprivationMatrix, household_result: PovertyResult) -> DeprivationMatrix:
    """Copy of ``mat`` whose ``household_poor`` attribute carries the household result."""
    return mat.with_household_status(household_result.poverty_status())


def _groups(frame: pd.DataFrame, column: str, split: bool) -> list[tuple[str, np.ndarray]]:
    everyone = np.ones(len(frame), dtype=bool)
    groups = [("all", everyone)]
    if split:
        values = frame[column].astype("string")
        groups += [(sex, (values == sex).to_numpy(dtype=bool, na_value=False)) for sex in SEXES]
    return groups


def crosstab(
    individual_result: PovertyResult,
    household_result: PovertyResult,
    join: Join,
    by: Iterable[str] = (),
) -> CrossTab:
    """
    Individuals by (own status, household status). Shares are taken within
    each column of individual status, optionally split by sex (columns) and
    head of household sex (rows).
    """
    by = tuple(by)
    unknown = [axis for axis in by if axis not in CROSSTAB_AXES]
    if unknown:
        raise UsageError(f"Cannot cross-tabulate by '{unknown[0]}'", allowed=list(CROSSTAB_AXES))

    frame = _join_frame(join, individual_result.unit_ids)
    household_poor = _household_status(frame, household_result)
    individual_poor = np.asarray(individual_result.poor_flags, dtype=bool)

    columns = _groups(frame, "sex", "sex" in by)
    rows = _groups(frame, "head_sex", "head_sex" in by)
    cells = []
    for individual_status, ind_flag in zip(STATUSES, (True, False)):
        in_status = individual_poor == ind_flag
        for column_group, column_mask in columns:
            column_total = int((in_status & column_mask).sum())
            for row_group, row_mask in rows:
                for household_status, hh_flag in zip(STATUSES, (True, False)):
                    count = int((in_status & column_mask & row_mask & (household_poor == hh_flag)).sum())
                    cells.append(
                        CrossTabCell(
                            row_group=row_group,
                            household_status=household_status,
                            individual_status=individual_status,
                            column_group=column_group,
                            count=count,
                            column_total=column_total,
                            share=Fraction(count, column_total) if column_total else None,
                        )
                    )
    return CrossTab(
        row_groups=tuple(name for name, _ in rows),
        column_groups=tuple(name for name, _ in columns),
        cells=tuple(cells),
    )


def attributed_headcounts(join: Join, household_result: PovertyResult) -> AttributedTable:
    """
    Members counted poor when their household is poor, by head of household
    sex (rows) and member sex (columns).
    """
    frame = join if isinstance(join, pd.DataFrame) else _join_frame(join, join.unit_ids)
    frame = frame.reset_index(drop=True)
    household_poor = _household_status(frame, household_result)

    rows = []
    for head_group, head_mask in _groups(frame, "head_sex", True):
        for sex_group, sex_mask in _groups(frame, "sex", True):
            selected = head_mask & sex_mask
            n = int(selected.sum())
            poor = int((selected & household_poor).sum())
            rows.append(
                AttributedRow(
                    head_sex=head_group,
                    sex=sex_group,
                    n=n,
                    poor=poor,
                    H=Fraction(poor, n) if n else None,
                )
            )
    return AttributedTable(rows=tuple(rows))
