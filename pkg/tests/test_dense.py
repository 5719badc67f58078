"""Dense QR reference path: Hessenberg reduction, balancing, the
double-double variant, condition numbers, and the Laguerre oracle."""

import numpy as np
import pytest
import scipy.special

from conftest import assert_spectra_close

from comrade import (
    DDMatrix,
    Parameters,
    balance,
    build_x,
    build_x_dd,
    condition_numbers,
    dense_qr_eigenvalues,
    hessenberg_reduce,
    laguerre_nodes,
    x_to_dense,
)


def random_matrix(n, seed, cplx=False):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n))
    if cplx:
        m = m + 1j * rng.standard_normal((n, n))
    return m


def test_hessenberg_preserves_spectrum():
    m = random_matrix(20, 11, cplx=True)
    h = hessenberg_reduce(m.copy())
    assert np.max(np.abs(np.tril(h, -2))) == 0.0
    assert_spectra_close(np.linalg.eigvals(h), np.linalg.eigvals(m),
                         1e-11 * np.linalg.norm(m))


def test_dense_qr_matches_numpy_real():
    for seed in (0, 1, 2):
        m = random_matrix(25, seed)
        got = dense_qr_eigenvalues(m).eigenvalues
        want = np.linalg.eigvals(m)
        assert_spectra_close(got, want, 1e-10 * max(1.0, np.max(np.abs(want))))


def test_dense_qr_matches_numpy_complex():
    m = random_matrix(18, 5, cplx=True)
    got = dense_qr_eigenvalues(m).eigenvalues
    want = np.linalg.eigvals(m)
    assert_spectra_close(got, want, 1e-10 * max(1.0, np.max(np.abs(want))))


def test_dense_qr_on_polynomial_matrix():
    p = Parameters(n=50, alpha=1.5, kappa=0.5)
    xd = x_to_dense(build_x(p))
    got = dense_qr_eigenvalues(np.ascontiguousarray(xd.T)).eigenvalues
    want = np.linalg.eigvals(xd)
    assert_spectra_close(got, want, 1e-10 * np.linalg.norm(xd))


def test_balance_powers_of_two_and_spectrum():
    a = np.array([[1.0, 1e8, 0.0], [1e-8, 2.0, 1.0], [0.0, 1.0, 3.0]])
    bal, scale = balance(a)
    for s in scale:
        assert s == 2.0 ** round(np.log2(s))
    assert_spectra_close(np.linalg.eigvals(bal), np.linalg.eigvals(a), 1e-10)
    # similarity is exact: D^-1 A D with the returned scale
    rebuilt = np.diag(1.0 / scale) @ a @ np.diag(scale)
    assert np.array_equal(rebuilt, bal)


def test_balance_reduces_norm_spread():
    a = np.array([[1.0, 1e9], [1e-9, 1.0]])
    bal, _ = balance(a)
    assert np.max(np.abs(bal)) < 1e3


def test_balanced_qr_path():
    m = np.array([[1.0, 1e7, 0.0], [1e-7, 2.0, 1e5], [0.0, 1e-5, 3.0]])
    got = dense_qr_eigenvalues(m, balance_first=True).eigenvalues
    want = np.linalg.eigvals(m)
    assert_spectra_close(got, want, 1e-9 * max(1.0, np.max(np.abs(want))))


def test_dd_qr_agrees_with_double():
    p = Parameters(n=30, alpha=0.9, kappa=1.6)
    xd = build_x_dd(p)
    got = dense_qr_eigenvalues(xd, precision="dd").eigenvalues
    want = np.linalg.eigvals(x_to_dense(build_x(p)))
    assert_spectra_close(got, want, 1e-10 * max(1.0, np.max(np.abs(want))))


def test_dd_qr_beats_double_on_perturbation():
    # dd result is a fixed point: rerunning on the dd matrix of a small
    # case reproduces analytic roots beyond double accuracy
    p = Parameters(n=2, alpha=0.0, kappa=0.0)
    got = np.sort(dense_qr_eigenvalues(build_x_dd(p), precision="dd").eigenvalues.real)
    want = np.array([2.0 - np.sqrt(2.0), 2.0 + np.sqrt(2.0)])
    assert np.max(np.abs(got - want)) < 1e-15


def test_build_x_dd_matches_double_construction():
    p = Parameters(n=25, alpha=1.3, kappa=-0.4)
    xd = x_to_dense(build_x(p))
    dd = build_x_dd(p).to_complex()
    assert np.max(np.abs(dd - xd.T)) <= 1e-13 * np.max(np.abs(xd))


def test_ddmatrix_roundtrip():
    m = random_matrix(6, 9, cplx=True)
    dd = DDMatrix.from_array(m)
    assert np.array_equal(dd.to_complex(), m)
    assert dd.n == 6


def test_condition_numbers_defective_vs_normal():
    m = np.array([[1.0, 1e6], [0.0, 2.0]])
    spec = dense_qr_eigenvalues(m)
    cond = condition_numbers(m, spec)
    assert np.all(cond > 1e5)

    sym = np.array([[2.0, 1.0], [1.0, 3.0]])
    cond_sym = condition_numbers(sym, dense_qr_eigenvalues(sym))
    assert np.all(cond_sym <= 1.0 + 1e-8)


def test_laguerre_nodes_against_scipy():
    for n, alpha in [(5, 0.0), (20, 1.5), (50, -0.5), (100, 2.5)]:
        mine = laguerre_nodes(n, alpha)
        ref = scipy.special.roots_genlaguerre(n, alpha)[0]
        assert np.max(np.abs(mine - ref) / ref) <= 1e-13


def test_laguerre_nodes_rejects_alpha_at_minus_one():
    with pytest.raises(ValueError):
        laguerre_nodes(5, -1.0)


def test_nonconvergence_reports_partial(monkeypatch):
    # force the iteration cap to zero sweeps so nothing converges
    from comrade.solver import NonConvergenceError

    m = random_matrix(8, 3)
    with pytest.raises(NonConvergenceError) as info:
        dense_qr_eigenvalues(m, max_sweeps_per_eig=1)
    err = info.value
    assert hasattr(err, "converged")
    assert err.block[0] == 0
