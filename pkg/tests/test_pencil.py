"""Banded pencil x*B - A and the closed-form quasi-tridiagonal X = B^{-1}A."""

import numpy as np
import pytest

from comrade import (
    Parameters,
    apply_b_inverse,
    build_pencil,
    build_x,
    x_to_dense,
)


def dense_pencil(params):
    pencil = build_pencil(params)
    return pencil.to_dense()


def test_b_is_unit_lower_bidiagonal_scaled():
    p = Parameters(n=5, alpha=0.3, kappa=1.2)
    _, b = dense_pencil(p)
    assert np.allclose(np.diag(b), np.arange(1, 6))
    assert np.allclose(np.diag(b, -1), -np.arange(1, 5))
    assert np.count_nonzero(np.triu(b, 1)) == 0


def test_b_inverse_roundtrip():
    p = Parameters(n=40, alpha=0.7, kappa=0.1)
    _, b = dense_pencil(p)
    y = np.random.default_rng(7).standard_normal((40, 3))
    z = apply_b_inverse(40, y)
    assert np.max(np.abs(b @ z - y)) <= 1e-14 * np.max(np.abs(y))


def test_b_inverse_identity():
    # B^{-1} applied to the columns of B gives I to near machine precision
    p = Parameters(n=25, alpha=2.0, kappa=0.5)
    _, b = dense_pencil(p)
    approx_eye = apply_b_inverse(25, b)
    assert np.max(np.abs(approx_eye - np.eye(25))) <= 1e-14


def test_a_interior_column_sums_vanish():
    # b_i + a_{i-1} + c_{i+1} + d_{i+2} telescopes to zero in every column
    # that has all four bands present
    for alpha, kappa in [(0.0, 0.0), (1.0, 0.5), (2.5, -0.5), (1.5, 3.0)]:
        p = Parameters(n=12, alpha=alpha, kappa=kappa)
        a, _ = dense_pencil(p)
        sums = a.sum(axis=0)
        assert np.max(np.abs(sums[1:-2])) == 0.0, (alpha, kappa)


def test_x_equals_pencil_quotient():
    # closed-form X must match B^{-1} A computed from the bands
    for n, alpha, kappa in [(6, 0.0, 0.0), (9, 1.3, 0.4), (14, -0.5, 2.5)]:
        p = Parameters(n=n, alpha=alpha, kappa=kappa)
        a, _ = dense_pencil(p)
        want = apply_b_inverse(n, a)
        got = x_to_dense(build_x(p))
        assert np.max(np.abs(got - want)) <= 1e-12 * max(1.0, np.max(np.abs(want)))


def test_x_hand_examples():
    x2 = x_to_dense(build_x(Parameters(n=2, alpha=0.0, kappa=0.0)))
    assert np.allclose(x2, [[1.0, -1.0], [-1.0, 3.0]])

    x3 = x_to_dense(build_x(Parameters(n=3, alpha=0.0, kappa=0.0)))
    assert np.allclose(x3, [[1.0, -1.0, 0.0], [-1.0, 3.0, -2.0], [0.0, -2.0, 5.0]])

    x4 = x_to_dense(build_x(Parameters(n=4, alpha=2.0, kappa=1.0)))
    assert np.trace(x4) == pytest.approx(30.0)


def test_x_spike_and_bands():
    p = Parameters(n=8, alpha=1.5, kappa=0.25)
    x = build_x(p)
    a, k = 1.5, 0.25
    assert x.diag[0] == pytest.approx((a + 1) * (k + 1))
    for i in range(1, 8):
        assert x.diag[i] == pytest.approx(2 * i + 1 + a + k)
    for i in range(7):
        assert x.superdiag[i] == pytest.approx(-(i + 1 + a) * (i + 1 + k) / (i + 1))
    # first column below the diagonal: spike entries
    assert x.spike[1] == pytest.approx(a * k / 2 - 1)
    for i in range(2, 8):
        assert x.spike[i] == pytest.approx(a * k / (i + 1))


def test_char_poly_small_case():
    # n=3, alpha=kappa=0: det(xI - X) = x^3 - 9x^2 + 18x - 6
    x3 = x_to_dense(build_x(Parameters(n=3, alpha=0.0, kappa=0.0)))
    coeffs = np.poly(np.linalg.eigvals(x3))
    assert np.allclose(coeffs, [1.0, -9.0, 18.0, -6.0], atol=1e-10)


def test_pencil_eigenvalues_match_x():
    # generalized problem A v = x B v has the same spectrum as X
    import scipy.linalg

    from conftest import assert_spectra_close

    p = Parameters(n=20, alpha=0.9, kappa=1.8)
    a, b = dense_pencil(p)
    gen = scipy.linalg.eigvals(a, b)
    direct = np.linalg.eigvals(x_to_dense(build_x(p)))
    assert_spectra_close(gen, direct, 1e-9 * max(1.0, np.max(np.abs(direct))))
