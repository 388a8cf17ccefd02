"""
Consistency checks over the published KHAS-MPI figures: each reported
(H, A, M0) triple must satisfy H·A ≈ M0, and subgroup figures must
reconstruct the reported totals through the population-share decomposition.
"""

from fractions import Fraction
from typing import NamedTuple, Optional

from ..models.base_model import BaseModel
from ..utils.rational import Rational
from .decomposition import decompose_subgroups
from .results import GroupSummary

TRIPLE_TOLERANCE = Fraction("0.005")


class Triple(NamedTuple):
    name: str
    H: str
    A: str
    M0: str
    known_discrepancy: bool = False


PUBLISHED_TRIPLES = (
    Triple("household: all", "0.249", "0.402", "0.10"),
    Triple("household: female-headed", "0.230", "0.410", "0.09"),
    Triple("household: male-headed", "0.254", "0.400", "0.10"),
    Triple("individual: total", "0.494", "0.477", "0.232"),
    Triple("individual: women", "0.683", "0.500", "0.335", known_discrepancy=True),
    Triple("individual: men", "0.295", "0.419", "0.123"),
    Triple("individual without empowerment: total", "0.562", "0.526", "0.298"),
    Triple("individual without empowerment: women", "0.648", "0.548", "0.359"),
    Triple("individual without empowerment: men", "0.468", "0.483", "0.233", known_discrepancy=True),
)

# (name, metric, {group: (n, value)}, reported total, tolerance)
PUBLISHED_PARTITIONS = (
    (
        "individual M0 from sex groups",
        "M0",
        {"women": (5691, "0.335"), "men": (5401, "0.123")},
        "0.232",
        "0.001",
    ),
    (
        "individual M0 without empowerment from sex groups",
        "M0",
        {"women": (5691, "0.359"), "men": (5401, "0.233")},
        "0.298",
        "0.001",
    ),
    (
        "household M0 from headship groups",
        "M0",
        {"female-headed": (699, "0.09"), "male-headed": (2701, "0.10")},
        "0.10",
        "0.005",
    ),
    (
        "household H from headship groups",
        "H",
        {"female-headed": (699, "0.230"), "male-headed": (2701, "0.254")},
        "0.249",
        "0.001",
    ),
)

WOMEN_SHARE_CLAIM = Fraction("0.91")

PASS = "pass"
FAIL = "fail"
KNOWN = "fail (known)"
INFO = "info"


class CheckLine(BaseModel):
    name: str
    kind: str
    computed: Rational
    reported: Rational
    tolerance: Optional[Rational] = None
    status: str
    note: str = ""

    @property
    def difference(self) -> Fraction:
        return abs(self.computed - self.reported)


class PaperCheck(BaseModel):
    lines: tuple[CheckLine, ...]

    @property
    def ok(self) -> bool:
        return all(line.status != FAIL for line in self.lines)


def _status(difference: Fraction, tolerance: Fraction, known: bool) -> str:
    if difference <= tolerance:
        return PASS
    return KNOWN if known else FAIL


def check_paper() -> PaperCheck:
    """Run every triple, partition and contribution check over the published figures."""
    lines = []
    for triple in PUBLISHED_TRIPLES:
        H, A, M0 = Fraction(triple.H), Fraction(triple.A), Fraction(triple.M0)
        product = H * A
        status = _status(abs(product - M0), TRIPLE_TOLERANCE, triple.known_discrepancy)
        lines.append(
            CheckLine(
                name=triple.name,
                kind="triple",
                computed=product,
                reported=M0,
                tolerance=TRIPLE_TOLERANCE,
                status=status,
                note="printed figures do not satisfy H x A = M0" if status == KNOWN else "",
            )
        )

    for name, metric, groups, reported, tolerance in PUBLISHED_PARTITIONS:
        table = decompose_subgroups(
            {label: GroupSummary(n=n, M0=Fraction(value)) for label, (n, value) in groups.items()}
        )
        tolerance = Fraction(tolerance)
        lines.append(
            CheckLine(
                name=name,
                kind=f"partition:{metric}",
                computed=table.M0,
                reported=Fraction(reported),
                tolerance=tolerance,
                status=_status(abs(table.M0 - Fraction(reported)), tolerance, False),
            )
        )

    women, men = PUBLISHED_PARTITIONS[0][2]["women"], PUBLISHED_PARTITIONS[0][2]["men"]
    total_n = women[0] + men[0]
    share = Fraction(women[0]) * Fraction(women[1]) / (total_n * Fraction(PUBLISHED_PARTITIONS[0][3]))
    lines.append(
        CheckLine(
            name="women's contribution to individual M0",
            kind="contribution",
            computed=share,
            reported=WOMEN_SHARE_CLAIM,
            status=INFO,
            note="population-share decomposition of the published group figures; the 91% claim is not reproduced",
        )
    )
    return PaperCheck(lines=tuple(lines))
