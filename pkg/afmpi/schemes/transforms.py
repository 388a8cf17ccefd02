"""
Derived schemes. Excluding a dimension gives every remaining dimension the
weight 1/(D-1), split equally over its indicators; excluding an indicator keeps
its dimension's weight and re-splits it over the rest. Both operations leave
the scheme equal-weighted within dimensions, so exclusions commute.
"""

from fractions import Fraction

from ..exceptions import SchemeInvalid
from ..models.scheme import DimensionSpec, IndicatorSpec, MeasurementScheme


def derived_id(base_id: str, excluded) -> str:
    return f"{base_id}-without-{'+'.join(sorted(excluded))}"


def _rebuild(scheme: MeasurementScheme, dimensions, dimension_weights, excluded_id: str) -> MeasurementScheme:
    base_id = scheme.base_id or scheme.id
    excluded = tuple(sorted(set(scheme.excluded) | {excluded_id}))
    indicators = []
    for dim in dimensions:
        share = dimension_weights[dim.id] / len(dim.indicator_ids)
        for ind_id in dim.indicator_ids:
            spec = scheme.indicator(ind_id)
            indicators.append(
                IndicatorSpec(
                    id=spec.id,
                    dimension_id=spec.dimension_id,
                    weight=share,
                    evaluator_key=spec.evaluator_key,
                    applies_to=spec.applies_to,
                )
            )
    return MeasurementScheme(
        id=derived_id(base_id, excluded),
        unit=scheme.unit,
        dimensions=tuple(dimensions),
        indicators=tuple(indicators),
        poverty_cutoff_k=scheme.poverty_cutoff_k,
        custom=False,
        base_id=base_id,
        excluded=excluded,
    )


def exclude_dimension(scheme: MeasurementScheme, dimension_id: str) -> MeasurementScheme:
    scheme.dimension(dimension_id)
    if len(scheme.dimensions) == 1:
        raise SchemeInvalid.single(
            "degenerate", f"cannot exclude '{dimension_id}', the only dimension", scheme_id=scheme.id
        )
    remaining = [dim for dim in scheme.dimensions if dim.id != dimension_id]
    weights = {dim.id: Fraction(1, len(remaining)) for dim in remaining}
    return _rebuild(scheme, remaining, weights, dimension_id)


def exclude_indicator(scheme: MeasurementScheme, indicator_id: str) -> MeasurementScheme:
    spec = scheme.indicator(indicator_id)
    owner = scheme.dimension(spec.dimension_id)
    if len(owner.indicator_ids) == 1:
        raise SchemeInvalid.single(
            "degenerate",
            f"excluding '{indicator_id}' would leave dimension '{owner.id}' empty",
            scheme_id=scheme.id,
        )
    dimensions = []
    for dim in scheme.dimensions:
        if dim.id == owner.id:
            dim = DimensionSpec(
                id=dim.id,
                name=dim.name,
                indicator_ids=tuple(i for i in dim.indicator_ids if i != indicator_id),
            )
        dimensions.append(dim)
    weights = {dim.id: scheme.dimension_weight(dim.id) for dim in scheme.dimensions}
    return _rebuild(scheme, dimensions, weights, indicator_id)
