"""Exact rational helpers: parsing, integer-arithmetic rounding, report columns."""

import math
from decimal import Decimal
from fractions import Fraction
from typing import Annotated, Any, Iterable

from pydantic import PlainSerializer, PlainValidator


def to_fraction(value: Any) -> Fraction:
    """Coerce a rational literal to a Fraction. Floats are refused."""
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        num, den = value
        if isinstance(num, bool) or isinstance(den, bool):
            raise ValueError("booleans are not rationals")
        if not isinstance(num, int) or not isinstance(den, int):
            raise ValueError(f"rational pair must hold integers, got {value!r}")
        if den <= 0:
            raise ValueError(f"denominator must be positive, got {den}")
        return Fraction(num, den)
    if isinstance(value, dict) and {"num", "den"} <= value.keys():
        return to_fraction([value["num"], value["den"]])
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            return to_fraction([int(num), int(den)])
        return Fraction(text)
    raise ValueError(f"cannot read {value!r} as an exact rational")


def rational_pair(value: Fraction) -> list[int]:
    return [value.numerator, value.denominator]


Rational = Annotated[
    Fraction,
    PlainValidator(to_fraction),
    PlainSerializer(rational_pair, return_type=list, when_used="json"),
]


def common_denominator(values: Iterable[Fraction]) -> int:
    return math.lcm(*(v.denominator for v in values))


def format_fraction(value: Fraction, places: int) -> str:
    """Round half-up on the exact value and render with ``places`` decimals."""
    scaled = Fraction(value) * 10**places
    sign = "-" if scaled < 0 else ""
    whole, remainder = divmod(abs(scaled.numerator), scaled.denominator)
    if 2 * remainder >= scaled.denominator:
        whole += 1
    digits = str(whole).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def as_percent(value: Fraction) -> str:
    return format_fraction(value * 100, 1)


STYLES = {
    "pct": ("_pct", as_percent),
    "dec3": ("", lambda v: format_fraction(v, 3)),
    "dec4": ("", lambda v: format_fraction(v, 4)),
}


def rational_columns(name: str, value: Fraction | None, style: str = "pct") -> dict:
    """Decimal rendering plus the exact num/den pair for one report field."""
    suffix, render = STYLES[style]
    if value is None:
        return {f"{name}{suffix}": None, f"{name}_num": None, f"{name}_den": None}
    return {
        f"{name}{suffix}": render(value),
        f"{name}_num": value.numerator,
        f"{name}_den": value.denominator,
    }
