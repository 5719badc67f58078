"""Recurrence and series evaluation of the polynomial family, plus the
coefficient formulas they share with the pencil construction."""

import numpy as np
import pytest

from comrade import (
    DegenerateRecurrenceError,
    Parameters,
    eval_recurrence,
    eval_series,
    pochhammer,
    recurrence_coefficients,
    scaled_residual,
)


def test_parameters_validation():
    Parameters(n=0, alpha=-1.0, kappa=-1.0)  # boundary values allowed
    with pytest.raises(ValueError):
        Parameters(n=-1, alpha=0.0, kappa=0.0)
    with pytest.raises(ValueError):
        Parameters(n=2, alpha=-1.5, kappa=0.0)
    with pytest.raises(ValueError):
        Parameters(n=2, alpha=0.0, kappa=-2.0)
    with pytest.raises(ValueError):
        Parameters(n=2, alpha=0.0, kappa=0.0, eta=0.0)
    with pytest.raises(ValueError):
        Parameters(n=2, alpha=float("nan"), kappa=0.0)


def test_pochhammer_values():
    assert pochhammer(3.0, 0) == 1.0
    assert pochhammer(3.0, 4) == 3.0 * 4.0 * 5.0 * 6.0
    assert pochhammer(-2.0, 3) == 0.0  # terminates
    assert pochhammer(0.5, 2) == 0.75


def test_coefficient_formulas():
    # i = 2, alpha = 1, kappa = 0.5
    co = recurrence_coefficients(2, 1.0, 0.5)
    assert co.a == -(2 + 1 + 1) * (2 + 0.5 + 1)
    assert co.b == 2 * (4 + 1 + 0.5 + 1) + (2 + 2) * (2 + 1.5)
    assert co.c == -2 * (6 + 1.5)
    assert co.d == 1 * 2
    assert co.e == 3
    assert co.f == -2


def test_coefficient_column_sum():
    # a + b + c + d = (e + f) * lambda-free identity at x = 1:
    # the four x-free coefficients sum to the value that keeps the
    # constant polynomial consistent; check b(0) edge explicitly
    co0 = recurrence_coefficients(0, 0.7, 1.3)
    assert co0.c == 0.0 and co0.d == 0.0
    assert co0.b == (0.7 + 1.0) * (1.3 + 1.0)
    assert co0.a == -co0.b


def test_value_at_zero_is_eta():
    for n in (1, 3, 7):
        p = Parameters(n=n, alpha=0.3, kappa=2.0, eta=2.5)
        v, scale = eval_recurrence(p, 0.0)
        assert v == pytest.approx(2.5, rel=1e-14)
        assert eval_series(p, 0.0) == pytest.approx(2.5, rel=1e-14)


def test_degree_one_closed_form():
    # L_1(x) = eta * (1 - x / ((alpha+1)(kappa+1)))
    p = Parameters(n=1, alpha=1.0, kappa=1.0)
    v, _ = eval_recurrence(p, 4.0)
    assert abs(v) < 1e-15  # x = (alpha+1)(kappa+1) is the zero
    v2, _ = eval_recurrence(p, 2.0)
    assert v2 == pytest.approx(0.5, rel=1e-14)


def test_degree_two_closed_form():
    # alpha = kappa = 0: eta * (1 - 2x + x^2/2)
    p = Parameters(n=2, alpha=0.0, kappa=0.0)
    for x in (0.5, 1.0, 3.0, -2.0):
        want = 1.0 - 2.0 * x + 0.5 * x * x
        v, _ = eval_recurrence(p, x)
        assert v == pytest.approx(want, rel=1e-13)
        assert eval_series(p, x) == pytest.approx(want, rel=1e-13)


def test_series_recurrence_agree_complex():
    p = Parameters(n=30, alpha=0.5, kappa=0.5)
    for x in (1.0, 5.0j, -2.0 + 3.0j):
        vs = eval_series(p, x)
        vr, _ = eval_recurrence(p, x)
        assert abs(vs - vr) <= 1e-12 * max(abs(vs), abs(vr))


def test_degenerate_parameters_raise():
    p = Parameters(n=3, alpha=-1.0, kappa=0.0)
    with pytest.raises(DegenerateRecurrenceError):
        eval_recurrence(p, 1.0)
    with pytest.raises(DegenerateRecurrenceError):
        eval_series(p, 1.0)
    with pytest.raises(DegenerateRecurrenceError):
        scaled_residual(p, np.array([1.0 + 0.0j]))


def test_dd_evaluation_matches_double():
    p = Parameters(n=15, alpha=0.8, kappa=1.7)
    for x in (0.5, 2.0 + 1.0j):
        vd, sd = eval_recurrence(p, x, precision="double")
        vq, sq = eval_recurrence(p, x, precision="dd")
        assert complex(vq) == pytest.approx(complex(vd), rel=1e-12)
        assert sq == pytest.approx(sd, rel=1e-12)


def test_dd_series_matches_dd_recurrence():
    p = Parameters(n=25, alpha=0.5, kappa=1.5)
    x = 3.7
    vq, _ = eval_recurrence(p, x, precision="dd")
    vs = eval_series(p, x, precision="dd")
    diff = vq - vs
    assert float(abs(diff)) < 1e-25 * float(abs(vs))


def test_scaled_residual_exact_root():
    p = Parameters(n=1, alpha=1.0, kappa=1.0)
    assert scaled_residual(p, 4.0) <= 1e-15


def test_scaled_residual_array_batch():
    p = Parameters(n=8, alpha=0.4, kappa=1.1)
    pts = np.array([1.0 + 0.0j, 2.0 + 0.5j, 10.0 + 0.0j])
    batch = scaled_residual(p, pts)
    single = np.array([scaled_residual(p, complex(z)) for z in pts])
    assert np.allclose(batch, single, rtol=1e-13, atol=0)


def test_scaled_residual_bounded_by_one():
    # the scale is the max member magnitude, so the ratio cannot exceed 1
    p = Parameters(n=12, alpha=2.0, kappa=0.3)
    pts = np.linspace(0.1, 40.0, 17).astype(complex)
    assert np.all(scaled_residual(p, pts) <= 1.0)
