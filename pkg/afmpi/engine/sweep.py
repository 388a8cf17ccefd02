from fractions import Fraction
from typing import Optional, Sequence

from ..deprivation.matrix import DeprivationMatrix
from ..exceptions import BadCutoffs, ContractViolation
from ..models.scheme import MeasurementScheme
from ..models.tables import SweepCurve, SweepPoint
from ..utils.rational import to_fraction
from .measures import group_mask, group_values, measure
from .scoring import score

DEFAULT_CUTOFFS = tuple(Fraction(i, 10) for i in range(1, 11))
METRICS = ("H", "M0")


def check_cutoffs(cutoffs: Sequence) -> tuple[Fraction, ...]:
    try:
        values = tuple(to_fraction(k) for k in cutoffs)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise BadCutoffs(f"Unreadable cutoff: {e}")
    if not values:
        raise BadCutoffs("No cutoffs given")
    outside = [k for k in values if not (0 < k <= 1)]
    if outside:
        raise BadCutoffs(f"Cutoff {outside[0]} outside (0, 1]", cutoff=str(outside[0]))
    for low, high in zip(values, values[1:]):
        if not low < high:
            raise BadCutoffs(f"Cutoffs must be strictly ascending, got {low} before {high}")
    return values


def sweep(
    mat: DeprivationMatrix,
    scheme: MeasurementScheme,
    cutoffs: Optional[Sequence] = None,
    group_by: Optional[str] = "sex",
) -> SweepCurve:
    """H, A and M0 at every cutoff, for everyone and for each value of ``group_by``."""
    cutoffs = check_cutoffs(DEFAULT_CUTOFFS if cutoffs is None else cutoffs)
    if group_by == "none":
        group_by = None
    sv = score(mat, scheme)

    groups = [("all", None)]
    if group_by is not None:
        groups += [(value, group_mask(mat.attributes, group_by, value)) for value in group_values(mat.attributes, group_by)]

    points = []
    for group, mask in groups:
        scores = sv if mask is None else sv.select(mask)
        if not len(scores):
            continue
        series = [measure(scores, k) for k in cutoffs]
        for metric in METRICS:
            values = [getattr(result, metric) for result in series]
            if any(later > earlier for earlier, later in zip(values, values[1:])):
                raise ContractViolation(f"{metric} increases with the cutoff in group '{group}'", group=group)
        points.extend(
            SweepPoint(cutoff=k, group=group, n=r.n, q=r.q, H=r.H, A=r.A, M0=r.M0) for k, r in zip(cutoffs, series)
        )
    return SweepCurve(scheme_id=scheme.id, group_by=group_by, cutoffs=cutoffs, points=tuple(points))


def dominates(curve: SweepCurve, a: str, b: str, metric: str = "H") -> bool:
    """Group ``a``'s curve is weakly above group ``b``'s at every cutoff."""
    series_a = curve.series(a, metric)
    series_b = curve.series(b, metric)
    if len(series_a) != len(curve.cutoffs) or len(series_b) != len(curve.cutoffs):
        return False
    return all(x >= y for x, y in zip(series_a, series_b))
