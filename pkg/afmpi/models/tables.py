"""Result tables produced by the engine and serialised by the report writers."""

from fractions import Fraction
from typing import Optional

from .base_model import BaseModel
from ..utils.rational import Rational


class RateRow(BaseModel):
    indicator_id: str
    deprived: int
    rate: Optional[Rational] = None


class RateTable(BaseModel):
    label: str
    n: int
    rows: tuple[RateRow, ...]

    @classmethod
    def empty(cls, label: str, indicator_ids) -> "RateTable":
        """Table for a selection with no units: counts 0, rates undefined."""
        return cls(
            label=label,
            n=0,
            rows=tuple(RateRow(indicator_id=i, deprived=0, rate=None) for i in indicator_ids),
        )

    @property
    def is_empty(self) -> bool:
        return self.n == 0

    def rate(self, indicator_id: str) -> Optional[Fraction]:
        for row in self.rows:
            if row.indicator_id == indicator_id:
                return row.rate
        raise KeyError(indicator_id)


class IndicatorRow(BaseModel):
    indicator_id: str
    dimension_id: str
    weight: Rational
    deprived_poor: int
    censored_headcount: Rational
    contribution: Rational


class DimensionRow(BaseModel):
    dimension_id: str
    weight: Rational
    contribution: Rational


class DecompositionTable(BaseModel):
    label: str
    n: int
    q: int
    M0: Rational
    indicators: tuple[IndicatorRow, ...]
    dimensions: tuple[DimensionRow, ...]

    def contribution(self, key: str) -> Fraction:
        """Contribution of an indicator or a dimension, looked up by id."""
        for row in self.indicators:
            if row.indicator_id == key:
                return row.contribution
        for row in self.dimensions:
            if row.dimension_id == key:
                return row.contribution
        raise KeyError(key)

    def censored_headcount(self, indicator_id: str) -> Fraction:
        for row in self.indicators:
            if row.indicator_id == indicator_id:
                return row.censored_headcount
        raise KeyError(indicator_id)


class SubgroupRow(BaseModel):
    group: str
    n: int
    q: Optional[int] = None
    population_share: Rational
    poor_share: Optional[Rational] = None
    H: Optional[Rational] = None
    A: Optional[Rational] = None
    M0: Rational
    contribution: Optional[Rational] = None


class SubgroupTable(BaseModel):
    n: int
    M0: Rational
    rows: tuple[SubgroupRow, ...]

    def row(self, group: str) -> SubgroupRow:
        for row in self.rows:
            if row.group == group:
                return row
        raise KeyError(group)


class CrossTabCell(BaseModel):
    row_group: str
    household_status: str
    individual_status: str
    column_group: str
    count: int
    column_total: int
    share: Optional[Rational] = None


class CrossTab(BaseModel):
    row_groups: tuple[str, ...]
    column_groups: tuple[str, ...]
    cells: tuple[CrossTabCell, ...]

    def cell(self, individual_status: str, household_status: str, column_group: str = "all", row_group: str = "all"):
        for cell in self.cells:
            if (
                cell.individual_status == individual_status
                and cell.household_status == household_status
                and cell.column_group == column_group
                and cell.row_group == row_group
            ):
                return cell
        raise KeyError((individual_status, household_status, column_group, row_group))


class SweepPoint(BaseModel):
    cutoff: Rational
    group: str
    n: int
    q: int
    H: Rational
    A: Optional[Rational] = None
    M0: Rational


class SweepCurve(BaseModel):
    scheme_id: str
    group_by: Optional[str] = None
    cutoffs: tuple[Rational, ...]
    points: tuple[SweepPoint, ...]

    @property
    def groups(self) -> tuple[str, ...]:
        seen = []
        for point in self.points:
            if point.group not in seen:
                seen.append(point.group)
        return tuple(seen)

    def series(self, group: str, metric: str = "H") -> list[Fraction]:
        return [getattr(p, metric) for p in self.points if p.group == group]


class AttributedRow(BaseModel):
    head_sex: str
    sex: str
    n: int
    poor: int
    H: Optional[Rational] = None


class AttributedTable(BaseModel):
    """Household poverty status carried over to members."""

    rows: tuple[AttributedRow, ...]

    def row(self, head_sex: str = "all", sex: str = "all") -> AttributedRow:
        for row in self.rows:
            if row.head_sex == head_sex and row.sex == sex:
                return row
        raise KeyError((head_sex, sex))
