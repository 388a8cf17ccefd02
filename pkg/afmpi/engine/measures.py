from fractions import Fraction

import numpy as np
import pandas as pd

from ..deprivation.matrix import DeprivationMatrix
from ..exceptions import ContractViolation, EmptyPopulation, SchemeMismatch
from .results import PovertyResult, ScoreVector
from .scoring import check_cutoff, poor_mask


def _aggregate(sv: ScoreVector, k: Fraction) -> PovertyResult:
    n = len(sv)
    if n == 0:
        raise EmptyPopulation("Cannot measure poverty over zero units", scheme_id=sv.scheme_id)
    poor = np.asarray(poor_mask(sv, k), dtype=bool)
    censored = np.where(poor, sv.numerators, 0)
    q = int(poor.sum())
    total = int(sum(int(v) for v in censored)) if censored.dtype == object else int(censored.sum())

    H = Fraction(q, n)
    M0 = Fraction(total, n * sv.denominator)
    A = Fraction(total, q * sv.denominator) if q else None
    return PovertyResult(
        scheme_id=sv.scheme_id,
        k=k,
        n=n,
        q=q,
        H=H,
        A=A,
        M0=M0,
        unit_ids=sv.unit_ids,
        poor_flags=poor,
        censored_numerators=censored,
        denominator=sv.denominator,
    )


def check_identities(result: PovertyResult):
    if result.q:
        if result.H * result.A != result.M0:
            raise ContractViolation(
                f"H·A = {result.H * result.A} differs from M0 = {result.M0}", scheme_id=result.scheme_id
            )
    elif result.M0 != 0 or result.A is not None:
        raise ContractViolation("M0 must be 0 and A undefined when nobody is poor", scheme_id=result.scheme_id)
    if not (0 <= result.M0 <= result.H <= 1):
        raise ContractViolation(
            f"Expected 0 <= M0 <= H <= 1, got M0={result.M0}, H={result.H}", scheme_id=result.scheme_id
        )


def measure(sv: ScoreVector, k) -> PovertyResult:
    """Headcount ratio H, intensity A and adjusted headcount M0 at cutoff ``k``."""
    result = _aggregate(sv, check_cutoff(k))
    check_identities(result)
    return result


def group_values(attributes: pd.DataFrame, by: str) -> list[str]:
    if by not in attributes.columns:
        raise SchemeMismatch(f"No attribute '{by}' to group by", attribute=by)
    return sorted(str(v) for v in attributes[by].dropna().unique())


def group_mask(attributes: pd.DataFrame, by: str, value: str) -> np.ndarray:
    return (attributes[by].astype("string") == value).to_numpy(dtype=bool, na_value=False)


def measure_groups(sv: ScoreVector, k, mat: DeprivationMatrix, by: str) -> dict[str, PovertyResult]:
    """One result per value of attribute ``by``; units without a value are left out."""
    if tuple(sv.unit_ids) != tuple(mat.unit_ids):
        raise SchemeMismatch("Scores and matrix cover different units")
    return {
        value: measure(sv.select(group_mask(mat.attributes, by, value)), k)
        for value in group_values(mat.attributes, by)
    }
