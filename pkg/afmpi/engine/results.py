from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ..exceptions import NotFoundError


def _frozen(values, dtype) -> np.ndarray:
    array = np.asarray(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """
    Per-unit deprivation scores held as integer numerators over one common
    denominator (the LCD of the scheme weights).
    """

    unit_ids: tuple[str, ...]
    numerators: np.ndarray
    denominator: int
    scheme_id: Optional[str] = None

    def __post_init__(self):
        dtype = self.numerators.dtype if isinstance(self.numerators, np.ndarray) else np.int64
        object.__setattr__(self, "unit_ids", tuple(self.unit_ids))
        object.__setattr__(self, "numerators", _frozen(self.numerators, dtype))

    def __len__(self):
        return len(self.unit_ids)

    @property
    def scores(self) -> list[Fraction]:
        return [Fraction(int(num), self.denominator) for num in self.numerators]

    def score_of(self, unit_id: str) -> Fraction:
        try:
            position = self.unit_ids.index(unit_id)
        except ValueError:
            raise NotFoundError(f"Unit '{unit_id}' not scored", unit_id=unit_id)
        return Fraction(int(self.numerators[position]), self.denominator)

    def select(self, mask: np.ndarray) -> "ScoreVector":
        mask = np.asarray(mask, dtype=bool)
        return ScoreVector(
            unit_ids=tuple(np.asarray(self.unit_ids, dtype=object)[mask]),
            numerators=self.numerators[mask],
            denominator=self.denominator,
            scheme_id=self.scheme_id,
        )

    def __eq__(self, other):
        if not isinstance(other, ScoreVector):
            return NotImplemented
        return self.unit_ids == other.unit_ids and self.scores == other.scores


@dataclass(frozen=True, eq=False)
class PovertyResult:
    """
    Identification and aggregation outcome for one scheme and cutoff.

    ``A`` is ``None`` when nobody is poor; ``M0`` is then 0.
    """

    scheme_id: Optional[str]
    k: Fraction
    n: int
    q: int
    H: Fraction
    A: Optional[Fraction]
    M0: Fraction
    unit_ids: tuple[str, ...]
    poor_flags: np.ndarray
    censored_numerators: np.ndarray
    denominator: int

    def __post_init__(self):
        object.__setattr__(self, "unit_ids", tuple(self.unit_ids))
        object.__setattr__(self, "poor_flags", _frozen(self.poor_flags, bool))
        dtype = self.censored_numerators.dtype if isinstance(self.censored_numerators, np.ndarray) else object
        object.__setattr__(self, "censored_numerators", _frozen(self.censored_numerators, dtype))

    @property
    def censored_scores(self) -> list[Fraction]:
        return [Fraction(int(num), self.denominator) for num in self.censored_numerators]

    def poverty_status(self) -> dict[str, bool]:
        return {unit_id: bool(flag) for unit_id, flag in zip(self.unit_ids, self.poor_flags)}

    def is_poor(self, unit_id: str) -> bool:
        try:
            return bool(self.poor_flags[self.unit_ids.index(unit_id)])
        except ValueError:
            raise NotFoundError(f"Unit '{unit_id}' not in result", unit_id=unit_id)

    def summary(self) -> dict:
        return {"scheme_id": self.scheme_id, "k": self.k, "n": self.n, "q": self.q, "H": self.H, "A": self.A, "M0": self.M0}

    def __eq__(self, other):
        if not isinstance(other, PovertyResult):
            return NotImplemented
        return (
            self.summary() == other.summary()
            and self.unit_ids == other.unit_ids
            and bool(np.array_equal(self.poor_flags, other.poor_flags))
            and self.censored_scores == other.censored_scores
        )

    def __repr__(self):
        return f"PovertyResult(scheme_id={self.scheme_id!r}, k={self.k}, n={self.n}, q={self.q}, M0={self.M0})"


@dataclass(frozen=True)
class GroupSummary:
    """Reported or computed figures of one subgroup, enough for a population-share decomposition."""

    n: int
    M0: Fraction
    q: Optional[int] = None
    H: Optional[Fraction] = None
    A: Optional[Fraction] = None
    unit_ids: Optional[frozenset] = None

    @classmethod
    def from_result(cls, result: PovertyResult) -> "GroupSummary":
        return cls(
            n=result.n,
            M0=result.M0,
            q=result.q,
            H=result.H,
            A=result.A,
            unit_ids=frozenset(result.unit_ids),
        )
