from collections import Counter
from enum import Enum
from fractions import Fraction
import math

from pydantic import model_validator

from ..exceptions import NotFoundError, SchemeInvalid, Violation
from ..utils.rational import Rational
from .base_model import BaseModel
from .records import Unit


class AppliesTo(str, Enum):
    HOUSEHOLD = "household"
    INDIVIDUAL = "individual"
    BOTH = "both"

    def covers(self, unit: Unit) -> bool:
        return self is AppliesTo.BOTH or self.value == unit.value


class IndicatorSpec(BaseModel):
    id: str
    dimension_id: str
    weight: Rational
    evaluator_key: str
    applies_to: AppliesTo = AppliesTo.BOTH


class DimensionSpec(BaseModel):
    id: str
    name: str
    indicator_ids: tuple[str, ...]


class MeasurementScheme(BaseModel):
    """
    Dimensions, indicators and exact weights for one unit of analysis.
    Construction validates every invariant and raises ``SchemeInvalid``
    listing all violations at once.
    """

    id: str
    unit: Unit
    dimensions: tuple[DimensionSpec, ...]
    indicators: tuple[IndicatorSpec, ...]
    poverty_cutoff_k: Rational
    custom: bool = False
    base_id: str | None = None
    excluded: tuple[str, ...] = ()

    @model_validator(mode="after")
    def _validate_invariants(self) -> "MeasurementScheme":
        violations = scheme_violations(self)
        if violations:
            raise SchemeInvalid(violations, scheme_id=self.id)
        return self

    @property
    def indicator_ids(self) -> tuple[str, ...]:
        return tuple(ind.id for ind in self.indicators)

    @property
    def dimension_ids(self) -> tuple[str, ...]:
        return tuple(dim.id for dim in self.dimensions)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(ind.weight for ind in self.indicators)

    @property
    def common_denominator(self) -> int:
        return math.lcm(*(w.denominator for w in self.weights))

    @property
    def integer_weights(self) -> tuple[int, ...]:
        """Weights scaled by the common denominator; scores become integer sums."""
        lcd = self.common_denominator
        return tuple(int(w * lcd) for w in self.weights)

    def indicator(self, indicator_id: str) -> IndicatorSpec:
        for ind in self.indicators:
            if ind.id == indicator_id:
                return ind
        raise NotFoundError(
            f"Indicator '{indicator_id}' not in scheme '{self.id}'",
            scheme_id=self.id,
            indicator_id=indicator_id,
        )

    def dimension(self, dimension_id: str) -> DimensionSpec:
        for dim in self.dimensions:
            if dim.id == dimension_id:
                return dim
        raise NotFoundError(
            f"Dimension '{dimension_id}' not in scheme '{self.id}'",
            scheme_id=self.id,
            dimension_id=dimension_id,
        )

    def dimension_weight(self, dimension_id: str) -> Fraction:
        dim = self.dimension(dimension_id)
        return sum((self.indicator(i).weight for i in dim.indicator_ids), Fraction(0))


def scheme_violations(scheme: MeasurementScheme) -> list[Violation]:
    from ..deprivation.registry import get_registry

    violations: list[Violation] = []
    k = scheme.poverty_cutoff_k
    if not (0 < k <= 1):
        violations.append(Violation("cutoff", f"poverty cutoff must lie in (0, 1], got {k}"))

    if not scheme.dimensions:
        violations.append(Violation("degenerate", "scheme has no dimensions"))

    for dim_id, count in Counter(scheme.dimension_ids).items():
        if count > 1:
            violations.append(Violation("duplicate_id", f"dimension '{dim_id}' listed {count} times"))
    for ind_id, count in Counter(scheme.indicator_ids).items():
        if count > 1:
            violations.append(Violation("duplicate_id", f"indicator '{ind_id}' listed {count} times"))

    membership = {}
    for dim in scheme.dimensions:
        if not dim.indicator_ids:
            violations.append(Violation("degenerate", f"dimension '{dim.id}' has no indicators"))
        for ind_id in dim.indicator_ids:
            membership[ind_id] = dim.id
    known = set(scheme.indicator_ids)
    for ind_id in membership.keys() - known:
        violations.append(Violation("structure", f"dimension lists unknown indicator '{ind_id}'"))

    registry = get_registry()
    for ind in scheme.indicators:
        if membership.get(ind.id) != ind.dimension_id:
            violations.append(
                Violation("structure", f"indicator '{ind.id}' is not listed under dimension '{ind.dimension_id}'")
            )
        if ind.weight <= 0:
            violations.append(Violation("weight_nonpositive", f"indicator '{ind.id}' has weight {ind.weight}"))
        evaluator = registry.get(ind.evaluator_key)
        if evaluator is None:
            violations.append(
                Violation("unknown_evaluator", f"indicator '{ind.id}' uses unknown evaluator '{ind.evaluator_key}'")
            )
        elif not evaluator.applies_to.covers(scheme.unit):
            violations.append(
                Violation(
                    "unit_mismatch",
                    f"evaluator '{ind.evaluator_key}' does not apply to {scheme.unit.value} schemes",
                )
            )

    total = sum(scheme.weights, Fraction(0))
    if total != 1:
        violations.append(Violation("weight_sum", f"weights sum to {total}, expected 1"))

    if not scheme.custom:
        for dim in scheme.dimensions:
            weights = {ind.weight for ind in scheme.indicators if ind.dimension_id == dim.id}
            if len(weights) > 1:
                violations.append(
                    Violation("unequal_weights", f"dimension '{dim.id}' has unequal weights but scheme is not custom")
                )
    return violations
