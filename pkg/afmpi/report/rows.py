"""
Flat report rows. Every rational becomes a rounded decimal column plus its
exact ``_num``/``_den`` pair; CSV and JSON writers share these dicts.
"""

from fractions import Fraction
from typing import Iterable, Mapping, Optional

import pandas as pd

from ..deprivation.matrix import DeprivationMatrix
from ..engine.published import PaperCheck
from ..engine.results import PovertyResult, ScoreVector
from ..models.scheme import MeasurementScheme
from ..models.tables import AttributedTable, CrossTab, DecompositionTable, RateTable, SubgroupTable, SweepCurve
from ..utils.rational import rational_columns


def fraction_text(value: Optional[Fraction]) -> Optional[str]:
    if value is None:
        return None
    return f"{value.numerator}/{value.denominator}"


def _measures(H, A, M0) -> dict:
    return {
        **rational_columns("H", H, "pct"),
        **rational_columns("A", A, "pct"),
        **rational_columns("M0", M0, "dec3"),
    }


def summary_rows(results: Mapping[str, PovertyResult], by: Optional[str] = None) -> list[dict]:
    rows = []
    for group, result in results.items():
        rows.append(
            {
                "scheme_id": result.scheme_id,
                "k": fraction_text(result.k),
                "group_by": by if group != "all" else None,
                "group": group,
                "n": result.n,
                "q": result.q,
                **_measures(result.H, result.A, result.M0),
            }
        )
    return rows


def unit_rows(sv: ScoreVector, result: PovertyResult, mat: DeprivationMatrix) -> list[dict]:
    attributes = mat.attributes.reset_index(drop=True)
    rows = []
    for i, (unit_id, score, censored) in enumerate(zip(result.unit_ids, sv.scores, result.censored_scores)):
        row = {"unit_id": unit_id, "hh_id": attributes.at[i, "hh_id"]}
        if mat.unit_level == "individual":
            row["sex"] = attributes.at[i, "sex"]
        row["head_sex"] = attributes.at[i, "head_sex"]
        rows.append(
            {
                **{key: None if pd.isna(value) else str(value) for key, value in row.items()},
                **rational_columns("score", score, "dec4"),
                **rational_columns("censored_score", censored, "dec4"),
                "poor": bool(result.poor_flags[i]),
            }
        )
    return rows


def attributed_rows(table: AttributedTable) -> list[dict]:
    return [
        {"head_sex": row.head_sex, "sex": row.sex, "n": row.n, "poor": row.poor, **rational_columns("H", row.H)}
        for row in table.rows
    ]


def subgroup_rows(table: SubgroupTable, by: str) -> list[dict]:
    return [
        {
            "group_by": by,
            "group": row.group,
            "n": row.n,
            "q": row.q,
            **rational_columns("population_share", row.population_share),
            **rational_columns("poor_share", row.poor_share),
            **_measures(row.H, row.A, row.M0),
            **rational_columns("contribution", row.contribution),
        }
        for row in table.rows
    ]


def decomposition_rows(table: DecompositionTable, group_by: Optional[str] = None) -> list[dict]:
    base = {"group_by": group_by, "group": table.label}
    rows = [
        {
            **base,
            "level": "indicator",
            "id": row.indicator_id,
            "dimension_id": row.dimension_id,
            **rational_columns("weight", row.weight, "dec4"),
            "deprived_poor": row.deprived_poor,
            **rational_columns("censored_headcount", row.censored_headcount),
            **rational_columns("contribution", row.contribution),
        }
        for row in table.indicators
    ]
    rows += [
        {
            **base,
            "level": "dimension",
            "id": row.dimension_id,
            "dimension_id": row.dimension_id,
            **rational_columns("weight", row.weight, "dec4"),
            "deprived_poor": None,
            **rational_columns("censored_headcount", None),
            **rational_columns("contribution", row.contribution),
        }
        for row in table.dimensions
    ]
    return rows


def undefined_decomposition_rows(
    scheme: MeasurementScheme, label: str, n: int, group_by: Optional[str] = None
) -> list[dict]:
    """Rows of a group with nobody poor: weights are known, contributions are not."""
    base = {"group_by": group_by, "group": label}
    headcount = Fraction(0) if n else None
    rows = [
        {
            **base,
            "level": "indicator",
            "id": ind.id,
            "dimension_id": ind.dimension_id,
            **rational_columns("weight", ind.weight, "dec4"),
            "deprived_poor": 0,
            **rational_columns("censored_headcount", headcount),
            **rational_columns("contribution", None),
        }
        for ind in scheme.indicators
    ]
    rows += [
        {
            **base,
            "level": "dimension",
            "id": dim.id,
            "dimension_id": dim.id,
            **rational_columns("weight", scheme.dimension_weight(dim.id), "dec4"),
            "deprived_poor": None,
            **rational_columns("censored_headcount", None),
            **rational_columns("contribution", None),
        }
        for dim in scheme.dimensions
    ]
    return rows


def decomposition_group_row(
    group_by: Optional[str], group: str, n: int, status: str, table: Optional[DecompositionTable] = None
) -> dict:
    if table is not None:
        M0 = table.M0
    else:
        M0 = Fraction(0) if n else None
    return {
        "group_by": group_by,
        "group": group,
        "n": n,
        "q": table.q if table else 0,
        **rational_columns("M0", M0, "dec3"),
        "status": status,
    }


def crosstab_rows(table: CrossTab) -> list[dict]:
    return [
        {
            "row_group": cell.row_group,
            "household_status": cell.household_status,
            "individual_status": cell.individual_status,
            "column_group": cell.column_group,
            "count": cell.count,
            "column_total": cell.column_total,
            **rational_columns("share", cell.share),
        }
        for cell in table.cells
    ]


def sweep_rows(curve: SweepCurve) -> list[dict]:
    return [
        {
            "scheme_id": curve.scheme_id,
            "group_by": curve.group_by if point.group != "all" else None,
            "group": point.group,
            **rational_columns("k", point.cutoff, "dec4"),
            "n": point.n,
            "q": point.q,
            **_measures(point.H, point.A, point.M0),
        }
        for point in curve.points
    ]


def rates_rows(columns: Iterable[tuple[str, RateTable, Optional[Fraction]]]) -> list[dict]:
    """One row per (column, indicator); ``columns`` carry their average age when they hold persons."""
    rows = []
    for column, table, average_age in columns:
        for row in table.rows:
            rows.append(
                {
                    "column": column,
                    "n": table.n,
                    **rational_columns("average_age", average_age, "dec3"),
                    "indicator_id": row.indicator_id,
                    "deprived": row.deprived,
                    **rational_columns("rate", row.rate),
                }
            )
    return rows


def check_rows(check: PaperCheck) -> list[dict]:
    return [
        {
            "name": line.name,
            "kind": line.kind,
            **rational_columns("computed", line.computed, "dec4"),
            **rational_columns("reported", line.reported, "dec4"),
            **rational_columns("tolerance", line.tolerance, "dec4"),
            "status": line.status,
            "note": line.note or None,
        }
        for line in check.lines
    ]

