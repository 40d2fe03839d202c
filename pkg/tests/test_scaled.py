import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zqspin.scaled import ScaledValue, relative_error, scaled_product

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@given(finite, finite)
def test_normalization(re, im):
    v = ScaledValue.of(complex(re, im))
    if re == 0 and im == 0:
        assert v.is_zero() and v.exponent == 0
    else:
        assert 1 <= abs(v.mantissa) < 2
        assert v.to_complex() == pytest.approx(complex(re, im), rel=1e-15)


@given(finite, finite, finite, finite)
def test_arithmetic_matches_complex(a, b, c, d):
    x, y = complex(a, b), complex(c, d)
    sx, sy = ScaledValue.of(x), ScaledValue.of(y)
    assert (sx * sy).to_complex() == pytest.approx(x * y, rel=1e-14, abs=1e-300)
    assert abs((sx + sy).to_complex() - (x + y)) <= 1e-15 * (abs(x) + abs(y)) + 1e-300


def test_beyond_double_range():
    big = scaled_product([1e300] * 10)
    assert big.log2_abs == pytest.approx(3000 * math.log2(10), rel=1e-14)
    assert big.decimal().startswith("1.00000000000000")
    assert big.decimal().endswith("E+3000")
    tiny = big.__pow__(-1)
    assert (big * tiny).to_complex() == pytest.approx(1.0, rel=1e-13)


def test_relative_error():
    a = ScaledValue.of(1.0, 5000)
    b = ScaledValue.of(1.0 + 1e-12, 5000)
    assert relative_error(b, a) == pytest.approx(1e-12, rel=1e-3)
    assert relative_error(a, a) == 0.0
    assert relative_error(ScaledValue.zero(), ScaledValue.zero()) == 0.0


def test_decimal_rendering():
    # 17 significant digits of the exact binary value
    assert ScaledValue.of(6.172322539260975).decimal() == "6.1723225392609748E+0"
    assert ScaledValue.of(complex(1, -2)).decimal() == "1.0000000000000000E+0-2.0000000000000000E+0j"
    assert ScaledValue.zero().decimal() == "0"


def test_json_round_trip():
    v = ScaledValue.of(complex(-3.25, 0.5), -2000)
    assert ScaledValue.from_json(v.to_json()) == v
