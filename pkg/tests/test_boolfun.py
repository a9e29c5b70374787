"""Spectral library: worked examples plus the structural invariants."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcbias import (
    BooleanFunction,
    DyadicRational,
    bias,
    correlation_immunity_order,
    linear_bias,
    plateaued_amplitude,
    resiliency_order,
    restriction_table,
    walsh_transform,
)


@st.composite
def functions(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    packed = draw(st.integers(min_value=0, max_value=(1 << (1 << n)) - 1))
    return BooleanFunction(n, [(packed >> i) & 1 for i in range(1 << n)])


def brute_walsh(f):
    """Independent quadratic-time spectrum for cross-checking."""
    size = 1 << f.n
    return [
        sum(
            (-1) ** (f(x) ^ (bin(a & x).count("1") & 1))
            for x in range(size)
        )
        for a in range(size)
    ]


# -- worked examples ---------------------------------------------------------


def test_bias_examples():
    assert bias(BooleanFunction.constant(2, 0)) == DyadicRational(1)
    assert bias(BooleanFunction.from_anf("x1", 1)) == DyadicRational(0)
    assert bias(BooleanFunction.from_anf("x1*x2", 2)) == DyadicRational(1, 1)


def test_walsh_examples():
    assert list(walsh_transform(BooleanFunction.constant(1, 0)).coeffs) == [2, 0]
    lin = walsh_transform(BooleanFunction.from_anf("x1 + x2", 2))
    assert list(lin.coeffs) == [0, 0, 0, 4]
    assert list(walsh_transform(BooleanFunction.from_anf("x1*x2", 2)).coeffs) == [
        2,
        2,
        2,
        -2,
    ]


def test_linear_bias_examples():
    and2 = BooleanFunction.from_anf("x1*x2", 2).spectrum()
    assert linear_bias(and2, 3) == DyadicRational(-1, 1)
    x1 = BooleanFunction.from_anf("x1", 1).spectrum()
    assert linear_bias(x1, 1) == DyadicRational(1)
    assert linear_bias(x1, 0) == DyadicRational(0)
    with pytest.raises(ValueError):
        linear_bias(x1, 2)


def test_restriction_examples():
    f = BooleanFunction.from_anf("x1 + x2*x3", 3)
    assert restriction_table(f, 1).biases == (
        DyadicRational(1, 1),
        DyadicRational(-1, 1),
    )
    zero = BooleanFunction.constant(3, 0)
    for k in (1, 2, 3):
        assert all(b == DyadicRational(1) for b in restriction_table(zero, k).biases)
    x3 = BooleanFunction.from_anf("x3", 3)
    assert all(b == DyadicRational(0) for b in restriction_table(x3, 2).biases)
    with pytest.raises(ValueError):
        restriction_table(f, 0)
    with pytest.raises(ValueError):
        restriction_table(f, 4)


def test_resiliency_examples():
    assert resiliency_order(BooleanFunction.from_anf("x1 + x2 + x3", 3)) == 2
    assert resiliency_order(BooleanFunction.from_anf("x1*x2", 2)) == -1
    assert resiliency_order(BooleanFunction.from_anf("x1 + x2*x3", 3)) == 0


def test_correlation_immunity():
    # unbalanced but 1st-order immune: xor of two variables plus a constant
    f = BooleanFunction.from_anf("x1 + x2 + 1", 2)
    assert resiliency_order(f) == 1
    assert correlation_immunity_order(f) == 1
    const = BooleanFunction.constant(3, 1)
    assert resiliency_order(const) == -1
    assert correlation_immunity_order(const) == 3


def test_plateaued_examples():
    bent = BooleanFunction.from_anf("x1*x2 + x3*x4", 4)
    assert plateaued_amplitude(bent) == DyadicRational(1, 2)
    assert plateaued_amplitude(BooleanFunction.from_anf("x1", 1)) == DyadicRational(1)
    maj3 = BooleanFunction.from_anf("x1*x2 + x1*x3 + x2*x3", 3)
    assert plateaued_amplitude(maj3) == DyadicRational(1, 1)
    and3 = BooleanFunction.from_anf("x1*x2*x3", 3)
    assert plateaued_amplitude(and3) is None


# -- invariants ---------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(functions())
def test_parseval(f):
    coeffs = f.spectrum().coeffs.astype(np.int64)
    assert int((coeffs * coeffs).sum()) == 1 << (2 * f.n)


@settings(max_examples=80, deadline=None)
@given(functions())
def test_transform_inversion(f):
    from pcbias.boolfun import _fwht_inplace

    work = f.signs().astype(np.int64)
    _fwht_inplace(work)
    _fwht_inplace(work)
    assert np.array_equal(work >> f.n, f.signs().astype(np.int64))


@settings(max_examples=60, deadline=None)
@given(functions())
def test_bias_consistency(f):
    b = bias(f)
    assert b == linear_bias(f.spectrum(), 0)
    for k in range(1, f.n + 1):
        table = restriction_table(f, k)
        total = sum(table.biases, DyadicRational(0))
        assert total * DyadicRational(1, k) == b


@settings(max_examples=60, deadline=None)
@given(functions(max_n=5))
def test_walsh_matches_brute_force(f):
    assert list(f.spectrum().coeffs) == brute_walsh(f)


@settings(max_examples=60, deadline=None)
@given(functions(max_n=5))
def test_resiliency_matches_weight_scan(f):
    coeffs = f.spectrum().coeffs
    weights = [
        bin(a).count("1") for a in range(1 << f.n) if coeffs[a] != 0
    ]
    expected = min(weights) - 1
    assert resiliency_order(f) == expected


@settings(max_examples=60, deadline=None)
@given(functions(max_n=5))
def test_plateaued_parseval_relation(f):
    eps = plateaued_amplitude(f)
    if eps is None:
        return
    support = int(np.count_nonzero(f.spectrum().coeffs))
    assert eps * eps * support == DyadicRational(1)


# -- construction and hygiene --------------------------------------------------


def test_validation_errors():
    with pytest.raises(ValueError):
        BooleanFunction(0, [])
    with pytest.raises(ValueError):
        BooleanFunction(25, [0] * (1 << 25))
    with pytest.raises(ValueError):
        BooleanFunction(2, [0, 1, 1])
    with pytest.raises(ValueError):
        BooleanFunction(1, [0, 2])


def test_immutability():
    f = BooleanFunction.from_anf("x1", 1)
    with pytest.raises(AttributeError):
        f.n = 2
    with pytest.raises(ValueError):
        f.table[0] = 1


def test_xor_and_extend():
    a = BooleanFunction.from_anf("x1", 2)
    b = BooleanFunction.from_anf("x2", 2)
    assert (a ^ b) == BooleanFunction.from_anf("x1 + x2", 2)
    wide = BooleanFunction.from_anf("x1", 1).extend_to(3)
    assert wide == BooleanFunction.from_anf("x1", 3)
    with pytest.raises(ValueError):
        a ^ BooleanFunction.from_anf("x1", 3)


def test_random_is_seeded():
    assert BooleanFunction.random(4, seed=5) == BooleanFunction.random(4, seed=5)
    assert BooleanFunction.random(4, seed=5) != BooleanFunction.random(4, seed=6)


def test_spectrum_cache_flag():
    f = BooleanFunction.from_anf("x1 + x2", 2)
    assert not f.has_cached_spectrum
    f.spectrum()
    assert f.has_cached_spectrum
