from collections.abc import Mapping
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from ..deprivation.matrix import DeprivationMatrix, Subset
from ..exceptions import ContractViolation, EmptyPoorSet, EmptyPopulation, PartitionError, SchemeMismatch
from ..models.scheme import MeasurementScheme
from ..models.tables import DecompositionTable, DimensionRow, IndicatorRow, SubgroupRow, SubgroupTable
from .results import GroupSummary, PovertyResult


def decompose_indicators(
    result: PovertyResult,
    mat: DeprivationMatrix,
    scheme: MeasurementScheme,
    subset: Subset = None,
    label: str = "all",
) -> DecompositionTable:
    """
    Censored headcounts and indicator/dimension contributions over ``subset``.

    CH_j is the share of the subset that is poor and deprived in j;
    contribution_j = w_j·CH_j / M0 of the subset.
    """
    if tuple(result.unit_ids) != tuple(mat.unit_ids):
        raise SchemeMismatch("Result and matrix cover different units", label=label)
    if mat.indicator_ids != scheme.indicator_ids:
        raise SchemeMismatch(f"Matrix indicators do not match scheme '{scheme.id}'", scheme_id=scheme.id)

    keep = mat.mask(subset)
    n = int(keep.sum())
    if n == 0:
        raise EmptyPoorSet(f"Subgroup '{label}' is empty", label=label)
    poor = result.poor_flags & keep
    q = int(poor.sum())
    M0 = Fraction(int(sum(int(v) for v in result.censored_numerators[keep])), n * result.denominator)
    if M0 == 0:
        raise EmptyPoorSet(f"Nobody is poor in subgroup '{label}'", label=label, n=n)

    deprived = mat.cells[poor].sum(axis=0, dtype=np.int64)
    rows = []
    for indicator, count in zip(scheme.indicators, deprived):
        headcount = Fraction(int(count), n)
        rows.append(
            IndicatorRow(
                indicator_id=indicator.id,
                dimension_id=indicator.dimension_id,
                weight=indicator.weight,
                deprived_poor=int(count),
                censored_headcount=headcount,
                contribution=indicator.weight * headcount / M0,
            )
        )

    reconstructed = sum((r.weight * r.censored_headcount for r in rows), Fraction(0))
    if reconstructed != M0:
        raise ContractViolation(
            f"Σ w·CH = {reconstructed} differs from M0 = {M0} in subgroup '{label}'", label=label
        )

    dimensions = tuple(
        DimensionRow(
            dimension_id=dim.id,
            weight=scheme.dimension_weight(dim.id),
            contribution=sum((r.contribution for r in rows if r.dimension_id == dim.id), Fraction(0)),
        )
        for dim in scheme.dimensions
    )
    return DecompositionTable(label=label, n=n, q=q, M0=M0, indicators=tuple(rows), dimensions=dimensions)


def _summary(group: Union[PovertyResult, GroupSummary]) -> GroupSummary:
    if isinstance(group, PovertyResult):
        return GroupSummary.from_result(group)
    return group


def decompose_subgroups(
    groups: Mapping[str, Union[PovertyResult, GroupSummary]],
    total: Optional[PovertyResult] = None,
) -> SubgroupTable:
    """Population-share decomposition: M0 = Σ_g (n_g/n)·M0_g."""
    if not groups:
        raise PartitionError("No subgroups given")
    summaries = {label: _summary(group) for label, group in groups.items()}

    seen: set = set()
    for label, summary in summaries.items():
        if summary.unit_ids is None:
            continue
        overlap = seen & summary.unit_ids
        if overlap:
            raise PartitionError(
                f"Subgroup '{label}' overlaps another subgroup", label=label, unit_id=sorted(overlap)[0]
            )
        seen |= summary.unit_ids

    n = sum(summary.n for summary in summaries.values())
    if total is not None:
        if any(summary.unit_ids is None for summary in summaries.values()) or seen != set(total.unit_ids):
            raise PartitionError("Subgroups do not cover the total population", total=total.n, covered=len(seen))
    if n == 0:
        raise EmptyPopulation("Subgroups hold no units")

    M0 = sum((Fraction(summary.n) * summary.M0 for summary in summaries.values()), Fraction(0)) / n
    if total is not None and M0 != total.M0:
        raise ContractViolation(f"Σ (n_g/n)·M0_g = {M0} differs from M0 = {total.M0}")

    qs = [summary.q for summary in summaries.values()]
    total_q = sum(qs) if all(q is not None for q in qs) else None
    rows = tuple(
        SubgroupRow(
            group=label,
            n=summary.n,
            q=summary.q,
            population_share=Fraction(summary.n, n),
            poor_share=Fraction(summary.q, total_q) if total_q else None,
            H=summary.H,
            A=summary.A,
            M0=summary.M0,
            contribution=Fraction(summary.n) * summary.M0 / (n * M0) if M0 else None,
        )
        for label, summary in summaries.items()
    )
    return SubgroupTable(n=n, M0=M0, rows=rows)
