"""Double-double arithmetic: exactness of the error-free transforms and
round-trip behavior of the wrapper classes."""

import math

import numpy as np

from comrade.ddouble import (
    ComplexDD,
    DoubleDouble,
    EPS_DD,
    dd_abs,
    dd_add,
    dd_div,
    dd_mul,
    dd_sqrt,
    dd_sub,
    two_prod,
    two_sum,
)


def test_two_sum_exact():
    # hi + lo reproduces the exact sum of operands that do not fit in one double
    hi, lo = two_sum(1.0, 2.0 ** -60)
    assert hi == 1.0
    assert lo == 2.0 ** -60


def test_two_sum_is_error_free():
    a, b = 0.1, 0.7
    hi, lo = two_sum(a, b)
    assert hi == a + b
    # the error term recovers what the rounded sum lost
    from fractions import Fraction
    exact = Fraction(a) + Fraction(b)
    assert Fraction(hi) + Fraction(lo) == exact


def test_two_prod_recovers_rounding_error():
    from fractions import Fraction
    a, b = 0.1, 0.3
    hi, lo = two_prod(a, b)
    assert hi == a * b
    assert Fraction(hi) + Fraction(lo) == Fraction(a) * Fraction(b)


def test_dd_add_sub_roundtrip():
    x = dd_add((1.0, 0.0), (2.0 ** -70, 0.0))
    y = dd_sub(x, (2.0 ** -70, 0.0))
    assert y[0] == 1.0
    assert abs(y[1]) < 1e-40


def test_dd_mul_div_inverse():
    x = (math.pi, 1.2246467991473532e-16)
    y = dd_div(dd_mul(x, (3.0, 0.0)), (3.0, 0.0))
    err = dd_sub(y, x)
    assert abs(err[0] + err[1]) < 16 * EPS_DD


def test_dd_sqrt_squares_back():
    x = (2.0, 0.0)
    r = dd_sqrt(x)
    sq = dd_mul(r, r)
    err = dd_sub(sq, x)
    assert abs(err[0]) < 4 * EPS_DD


def test_dd_precision_beats_double():
    # (1 + eps_dd-ish perturbation) survives a dd round trip but not a double one
    tiny = 2.0 ** -80
    x = dd_add((1.0, 0.0), (tiny, 0.0))
    assert x[0] == 1.0 and x[1] == tiny
    assert 1.0 + tiny == 1.0  # double would have lost it


def test_doubledouble_from_str():
    x = DoubleDouble.from_str("0.1")
    from fractions import Fraction
    approx = Fraction(x.hi) + Fraction(x.lo)
    assert abs(approx - Fraction(1, 10)) < Fraction(1, 10 ** 32)


def test_doubledouble_operators():
    a = DoubleDouble(1.5)
    b = DoubleDouble(0.25)
    assert float(a + b) == 1.75
    assert float(a - b) == 1.25
    assert float(a * b) == 0.375
    assert float(a / b) == 6.0
    assert float(abs(DoubleDouble(-2.0))) == 2.0


def test_complexdd_arithmetic():
    z = ComplexDD.from_complex(1.0 + 2.0j)
    w = ComplexDD.from_complex(3.0 - 1.0j)
    assert complex(z * w) == (1 + 2j) * (3 - 1j)
    q = (z * w) / w
    assert abs(complex(q) - (1 + 2j)) < 1e-15


def test_complexdd_abs():
    z = ComplexDD.from_complex(3.0 + 4.0j)
    assert abs(float(abs(z)) - 5.0) < 1e-30


def test_dd_abs_sign():
    assert dd_abs((-1.0, 1e-20))[0] == 1.0
    assert dd_abs((1.0, -1e-20))[0] == 1.0
