from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from afmpi.utils.rational import as_percent, format_fraction, rational_columns, to_fraction


@pytest.mark.parametrize(
    "value, expected",
    [
        ("3/10", Fraction(3, 10)),
        ([1, 8], Fraction(1, 8)),
        ({"num": 1, "den": 24}, Fraction(1, 24)),
        ("0.335", Fraction(335, 1000)),
        (Decimal("0.1"), Fraction(1, 10)),
        (1, Fraction(1)),
    ],
)
def test_to_fraction_accepts_exact_forms(value, expected):
    assert to_fraction(value) == expected


@pytest.mark.parametrize("value", [0.3, True, [1, 0], [1.0, 3], "abc"])
def test_to_fraction_rejects_inexact_or_broken_input(value):
    with pytest.raises((ValueError, ZeroDivisionError)):
        to_fraction(value)


def test_format_fraction_rounds_half_up_on_exact_value():
    assert format_fraction(Fraction(2318, 10000), 3) == "0.232"
    assert format_fraction(Fraction(1, 8), 2) == "0.13"
    assert format_fraction(Fraction(-1, 8), 2) == "-0.13"
    assert format_fraction(Fraction(2, 3), 0) == "1"


def test_as_percent_uses_one_decimal():
    assert as_percent(Fraction(7, 11)) == "63.6"
    assert as_percent(Fraction(1, 2)) == "50.0"


def test_rational_columns_keep_exact_pair():
    assert rational_columns("H", Fraction(7, 11)) == {"H_pct": "63.6", "H_num": 7, "H_den": 11}
    assert rational_columns("M0", Fraction(13, 60), "dec3") == {"M0": "0.217", "M0_num": 13, "M0_den": 60}
    assert rational_columns("A", None) == {"A_pct": None, "A_num": None, "A_den": None}


@given(st.fractions(min_value=0, max_value=1), st.integers(min_value=0, max_value=6))
def test_rounded_value_is_within_half_a_unit(value, places):
    rendered = Fraction(format_fraction(value, places))
    assert abs(rendered - value) <= Fraction(1, 2 * 10**places)
