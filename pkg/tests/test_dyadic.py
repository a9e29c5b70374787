"""Exact dyadic-rational arithmetic, cross-checked against fractions.Fraction."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcbias import DyadicRational

dyadics = st.builds(
    DyadicRational,
    st.integers(min_value=-(2**80), max_value=2**80),
    st.integers(min_value=0, max_value=90),
)


def test_canonical_form():
    assert DyadicRational(4, 4) == DyadicRational(1, 2)
    assert DyadicRational(-6, 3) == DyadicRational(-3, 2)
    zero = DyadicRational(0, 17)
    assert zero.numerator == 0 and zero.log2_denominator == 0
    kept = DyadicRational(12, 1)
    assert (kept.numerator, kept.log2_denominator) == (6, 0)


def test_rejects_negative_denominator_and_exponent():
    with pytest.raises(ValueError):
        DyadicRational(1, -1)
    with pytest.raises(ValueError):
        DyadicRational(1, 1) ** -2


@given(dyadics, dyadics)
def test_arithmetic_matches_fraction(a, b):
    assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()
    assert (a - b).as_fraction() == a.as_fraction() - b.as_fraction()
    assert (a * b).as_fraction() == a.as_fraction() * b.as_fraction()
    assert (a < b) == (a.as_fraction() < b.as_fraction())
    assert (a == b) == (a.as_fraction() == b.as_fraction())


@given(dyadics, st.integers(min_value=0, max_value=8))
def test_power_matches_fraction(a, p):
    assert (a**p).as_fraction() == a.as_fraction() ** p


@given(dyadics)
def test_negation_abs_float(a):
    assert (-a).as_fraction() == -a.as_fraction()
    assert abs(a).as_fraction() == abs(a.as_fraction())
    if abs(a.as_fraction()) < 2**60:
        assert float(a) == pytest.approx(float(a.as_fraction()), rel=1e-12, abs=1e-300)


def test_int_coercion_in_arithmetic():
    half = DyadicRational(1, 1)
    assert half + 1 == DyadicRational(3, 1)
    assert 2 * half == DyadicRational(1, 0)
    assert half < 1 and half > 0


def test_log2():
    assert DyadicRational(1, 12).log2() == -12.0
    assert DyadicRational(0).log2() == float("-inf")
    big = DyadicRational(3**100, 200)
    assert big.log2() == pytest.approx(100 * math.log2(3) - 200, rel=1e-12)
    with pytest.raises(ValueError):
        DyadicRational(-1, 1).log2()


def test_huge_values_stay_exact():
    tiny = DyadicRational(1, 1) ** 300
    assert tiny.as_fraction() == Fraction(1, 2**300)
    assert float(tiny) == 0.0 or float(tiny) > 0  # graceful underflow


def test_json_round_trip():
    value = DyadicRational(-(3**40), 77)
    again = DyadicRational.from_json_dict(value.to_json_dict())
    assert again == value
    assert value.to_json_dict()["numerator"] == str(value.numerator)


def test_str_forms():
    assert str(DyadicRational(3, 4)) == "3/16"
    assert str(DyadicRational(5)) == "5"
    assert str(DyadicRational(1, 40)) == "1/2^40"
