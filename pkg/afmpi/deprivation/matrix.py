from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np
import pandas as pd

from ..exceptions import IngestError, IntegrityError, SchemeMismatch, UsageError
from ..logger import logger
from ..microdata.population import Population
from ..models.records import Unit
from ..models.scheme import MeasurementScheme
from ..models.tables import RateRow, RateTable
from .context import EvaluationContext
from .registry import get_evaluator
from .rules import EMPOWERMENT_KEYS

ATTRIBUTE_COLUMNS = ("hh_id", "head_sex", "sex", "age", "marital_status", "household_poor")

Subset = Union[None, Callable[[pd.DataFrame], object], Mapping, np.ndarray]


@dataclass(frozen=True, eq=False)
class DeprivationMatrix:
    """
    0/1 deprivation cells, one row per unit and one column per indicator,
    plus the attributes reports group by. Individual matrices hold adults only.
    """

    unit_level: Unit
    unit_ids: tuple[str, ...]
    indicator_ids: tuple[str, ...]
    cells: np.ndarray
    attributes: pd.DataFrame
    warnings: dict[str, int] = field(default_factory=dict)
    scheme_id: Optional[str] = None

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.uint8).reshape(len(self.unit_ids), len(self.indicator_ids))
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    def __len__(self):
        return len(self.unit_ids)

    def __repr__(self):
        return (
            f"DeprivationMatrix({self.unit_level.value}, units={len(self.unit_ids)}, "
            f"indicators={len(self.indicator_ids)})"
        )

    def column(self, indicator_id: str) -> np.ndarray:
        try:
            return self.cells[:, self.indicator_ids.index(indicator_id)]
        except ValueError:
            raise SchemeMismatch(f"Indicator '{indicator_id}' not in matrix", indicator_id=indicator_id)

    def mask(self, subset: Subset = None) -> np.ndarray:
        return resolve_subset(self.attributes, subset)

    def select(self, subset: Subset) -> "DeprivationMatrix":
        keep = self.mask(subset)
        return replace(
            self,
            unit_ids=tuple(np.asarray(self.unit_ids, dtype=object)[keep]),
            cells=self.cells[keep],
            attributes=self.attributes[keep].reset_index(drop=True),
        )

    def with_household_status(self, flags: Mapping[str, bool]) -> "DeprivationMatrix":
        """Copy with ``household_poor`` filled from ``flags`` (hh_id -> poor)."""
        hh_ids = self.attributes["hh_id"]
        unknown = sorted(set(hh_ids) - set(flags))
        if unknown:
            raise IntegrityError(
                f"No household status for '{unknown[0]}'", hh_id=unknown[0], missing=len(unknown)
            )
        attributes = self.attributes.copy()
        attributes["household_poor"] = pd.array([bool(flags[h]) for h in hh_ids], dtype="boolean")
        return replace(self, attributes=attributes)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({"unit_id": list(self.unit_ids), "unit_level": self.unit_level.value})
        for column in ATTRIBUTE_COLUMNS:
            frame[column] = self.attributes[column].array
        for j, indicator_id in enumerate(self.indicator_ids):
            frame[indicator_id] = self.cells[:, j]
        return frame

    def to_csv(self, path) -> None:
        self.to_frame().to_csv(path, index=False, lineterminator="\n", na_rep="")

    @classmethod
    def from_csv(cls, path) -> "DeprivationMatrix":
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
        fixed = ("unit_id", "unit_level") + ATTRIBUTE_COLUMNS
        missing = [c for c in fixed if c not in frame.columns]
        if missing:
            raise IngestError(f"Missing matrix column '{missing[0]}'", row=1, column=missing[0])
        indicator_ids = tuple(c for c in frame.columns if c not in fixed)
        levels = set(frame["unit_level"])
        if len(levels) > 1:
            raise IngestError("Matrix mixes unit levels", column="unit_level")
        level = Unit(levels.pop()) if levels else Unit.HOUSEHOLD

        cells = frame[list(indicator_ids)]
        bad = ~cells.isin(["0", "1"])
        if bad.to_numpy().any():
            row, col = np.argwhere(bad.to_numpy())[0]
            raise IngestError("Matrix cells must be 0 or 1", row=int(row) + 2, column=indicator_ids[col])

        def blank(s):
            return s.mask(s == "")

        attributes = pd.DataFrame(
            {
                "hh_id": frame["hh_id"].astype("string"),
                "head_sex": blank(frame["head_sex"]).astype("string"),
                "sex": blank(frame["sex"]).astype("string"),
                "age": pd.to_numeric(blank(frame["age"])).astype("Int64"),
                "marital_status": blank(frame["marital_status"]).astype("string"),
                "household_poor": blank(frame["household_poor"])
                .map({"True": True, "False": False, "1": True, "0": False})
                .astype("boolean"),
            }
        )
        return cls(
            unit_level=level,
            unit_ids=tuple(frame["unit_id"]),
            indicator_ids=indicator_ids,
            cells=(cells == "1").to_numpy().astype(np.uint8),
            attributes=attributes,
        )


def resolve_subset(attributes: pd.DataFrame, subset: Subset = None) -> np.ndarray:
    """
    Boolean row mask for ``subset``: ``None`` selects everyone, a callable is
    applied to the attribute table, a mapping selects rows whose attribute
    equals the value (or one of the values), and an array is used as is.
    """
    n = len(attributes)
    if subset is None:
        return np.ones(n, dtype=bool)
    if isinstance(subset, Mapping):
        mask = np.ones(n, dtype=bool)
        for name, wanted in subset.items():
            if name not in attributes.columns:
                raise UsageError(f"Unknown attribute '{name}'", attribute=name)
            values = list(wanted) if isinstance(wanted, (list, tuple, set, frozenset)) else [wanted]
            mask &= attributes[name].isin(values).to_numpy(dtype=bool, na_value=False)
        return mask
    if callable(subset):
        subset = subset(attributes)
    mask = np.asarray(subset, dtype=bool)
    if mask.shape != (n,):
        raise UsageError(f"Subset mask has shape {mask.shape}, expected ({n},)")
    return mask


def _check_unit(scheme: MeasurementScheme, unit: Unit):
    if scheme.unit is not unit:
        raise SchemeMismatch(
            f"Scheme '{scheme.id}' is a {scheme.unit.value} scheme, not {unit.value}",
            scheme_id=scheme.id,
            unit=unit.value,
        )


def _log_respondent_warnings(scheme: MeasurementScheme, warnings: dict[str, int]):
    if not any(ind.evaluator_key in EMPOWERMENT_KEYS for ind in scheme.indicators):
        return
    if warnings["households_without_female_respondent"]:
        logger.warning(
            f"{warnings['households_without_female_respondent']} households have no female respondent; "
            "treated as non-deprived in empowerment"
        )
    if warnings["multiple_female_respondents"]:
        logger.warning(
            f"{warnings['multiple_female_respondents']} households have several female respondents; "
            "using the lowest respondent rank"
        )


def evaluate_household(pop: Population, scheme: MeasurementScheme) -> DeprivationMatrix:
    """One row per household, one column per scheme indicator."""
    _check_unit(scheme, Unit.HOUSEHOLD)
    ctx = EvaluationContext(pop)
    columns = []
    for indicator in scheme.indicators:
        rule = get_evaluator(indicator.evaluator_key).household_rule
        columns.append(np.asarray(rule(ctx), dtype=bool))
    cells = np.column_stack(columns) if columns else np.zeros((ctx.n_households, 0))

    hh = ctx.households
    attributes = pd.DataFrame(
        {
            "hh_id": hh["hh_id"].astype("string"),
            "head_sex": hh["head_sex"].astype("string"),
            "sex": pd.array([pd.NA] * len(hh), dtype="string"),
            "age": pd.array([pd.NA] * len(hh), dtype="Int64"),
            "marital_status": pd.array([pd.NA] * len(hh), dtype="string"),
            "household_poor": pd.array([pd.NA] * len(hh), dtype="boolean"),
        }
    ).reset_index(drop=True)
    _log_respondent_warnings(scheme, ctx.warnings)
    return DeprivationMatrix(
        unit_level=Unit.HOUSEHOLD,
        unit_ids=tuple(hh["hh_id"]),
        indicator_ids=scheme.indicator_ids,
        cells=cells,
        attributes=attributes,
        warnings=dict(ctx.warnings),
        scheme_id=scheme.id,
    )


def evaluate_individual(pop: Population, scheme: MeasurementScheme) -> DeprivationMatrix:
    """One row per adult; household-level indicators are copied to every adult member."""
    _check_unit(scheme, Unit.INDIVIDUAL)
    ctx = EvaluationContext(pop)
    columns = []
    for indicator in scheme.indicators:
        entry = get_evaluator(indicator.evaluator_key)
        if entry.individual_rule is not None:
            values = np.asarray(entry.individual_rule(ctx), dtype=bool)
        else:
            values = np.asarray(entry.household_rule(ctx), dtype=bool)[ctx.adult_household]
        columns.append(values)
    cells = np.column_stack(columns) if columns else np.zeros((ctx.n_adults, 0))

    adults = ctx.adults
    head_sex = ctx.households["head_sex"].to_numpy()[ctx.adult_household] if ctx.n_adults else []
    attributes = pd.DataFrame(
        {
            "hh_id": adults["hh_id"].astype("string"),
            "head_sex": pd.array(list(head_sex), dtype="string"),
            "sex": adults["sex"].astype("string"),
            "age": adults["age"].astype("Int64"),
            "marital_status": adults["marital_status"].astype("string"),
            "household_poor": pd.array([pd.NA] * len(adults), dtype="boolean"),
        }
    ).reset_index(drop=True)
    _log_respondent_warnings(scheme, ctx.warnings)
    return DeprivationMatrix(
        unit_level=Unit.INDIVIDUAL,
        unit_ids=tuple(adults["person_id"]),
        indicator_ids=scheme.indicator_ids,
        cells=cells,
        attributes=attributes,
        warnings=dict(ctx.warnings),
        scheme_id=scheme.id,
    )


def evaluate(pop: Population, scheme: MeasurementScheme) -> DeprivationMatrix:
    if scheme.unit is Unit.HOUSEHOLD:
        return evaluate_household(pop, scheme)
    return evaluate_individual(pop, scheme)


def deprivation_rates(mat: DeprivationMatrix, subset: Subset = None, label: str = "all") -> RateTable:
    """Share of the selected units deprived in each indicator, exact."""
    keep = mat.mask(subset)
    n = int(keep.sum())
    if n == 0:
        return RateTable.empty(label, mat.indicator_ids)
    deprived = mat.cells[keep].sum(axis=0, dtype=np.int64)
    return RateTable(
        label=label,
        n=n,
        rows=tuple(
            RateRow(indicator_id=indicator_id, deprived=int(d), rate=Fraction(int(d), n))
            for indicator_id, d in zip(mat.indicator_ids, deprived)
        ),
    )
