from fractions import Fraction
from typing import Sequence

import numpy as np

from ..deprivation.matrix import DeprivationMatrix
from ..exceptions import BadCutoffs, SchemeInvalid, SchemeMismatch
from ..models.scheme import MeasurementScheme
from ..utils.rational import common_denominator, to_fraction
from .results import ScoreVector

# numerators beyond this switch to Python integers
INT64_SAFE = 2**62


def weighted_scores(cells, weights: Sequence, unit_ids=None, scheme_id=None) -> ScoreVector:
    """
    Exact Σ_j w_j·g_ij per row of ``cells``.

    Weights are scaled to integers over their common denominator so the sum is
    a single integer matrix product.
    """
    weights = [to_fraction(w) for w in weights]
    for position, weight in enumerate(weights):
        if weight <= 0:
            raise SchemeInvalid.single("weight_nonpositive", f"weight {position} is {weight}")
    cells = np.asarray(cells)
    if cells.ndim != 2 or cells.shape[1] != len(weights):
        raise SchemeMismatch(
            f"Matrix has shape {cells.shape}, expected {len(weights)} indicator columns",
            indicators=len(weights),
        )
    if unit_ids is None:
        unit_ids = tuple(str(i) for i in range(cells.shape[0]))

    lcd = common_denominator(weights) if weights else 1
    integer_weights = [int(w * lcd) for w in weights]
    if sum(integer_weights) < INT64_SAFE:
        numerators = cells.astype(np.int64) @ np.asarray(integer_weights, dtype=np.int64)
    else:
        numerators = cells.astype(object) @ np.asarray(integer_weights, dtype=object)
    return ScoreVector(unit_ids=tuple(unit_ids), numerators=numerators, denominator=lcd, scheme_id=scheme_id)


def score(mat: DeprivationMatrix, scheme: MeasurementScheme) -> ScoreVector:
    if mat.unit_level is not scheme.unit:
        raise SchemeMismatch(
            f"{mat.unit_level.value} matrix scored with {scheme.unit.value} scheme '{scheme.id}'",
            scheme_id=scheme.id,
        )
    if mat.indicator_ids != scheme.indicator_ids:
        raise SchemeMismatch(
            f"Matrix indicators do not match scheme '{scheme.id}'",
            scheme_id=scheme.id,
            matrix=list(mat.indicator_ids),
            scheme=list(scheme.indicator_ids),
        )
    return weighted_scores(mat.cells, scheme.weights, mat.unit_ids, scheme_id=scheme.id)


def check_cutoff(k) -> Fraction:
    try:
        k = to_fraction(k)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise BadCutoffs(f"Unreadable poverty cutoff {k!r}: {e}", k=str(k))
    if not (0 < k <= 1):
        raise BadCutoffs(f"Poverty cutoff must lie in (0, 1], got {k}", k=str(k))
    return k


def poor_mask(sv: ScoreVector, k: Fraction) -> np.ndarray:
    """
    score >= k, compared as integers: num >= ceil(k·den).

    The threshold is formed in Python integers and never exceeds den, so the
    comparison stays inside the numerators' dtype whatever the size of k.den.
    """
    threshold = -((-k.numerator * sv.denominator) // k.denominator)
    return sv.numerators >= threshold


def identify(sv: ScoreVector, k) -> np.ndarray:
    return np.asarray(poor_mask(sv, check_cutoff(k)), dtype=bool)
