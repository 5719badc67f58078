"""Dense reference eigensolvers and oracles.

Two precisions share one QR policy: complex double (the unstructured
O(n^3) mirror of the fast path) and complex double-double (the ground
truth the other solvers are judged against).  Also here: power-of-two
balancing, Householder/Givens Hessenberg reduction, per-eigenvalue
condition numbers via inverse iteration, and the Laguerre-node oracle
(the kappa=0 reduction of the polynomial family).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import _kernels
from .ddouble import two_sum, dd_add, dd_neg, dd_mul, dd_mul_d, dd_div, dd_sqrt
from .recurrence import Parameters
from .solver import NonConvergenceError, Spectrum, _sorted_spectrum

EPS_DOUBLE = 2.0 ** -52
EPS_DD = 2.0 ** -104


@dataclass
class DDMatrix:
    """Complex double-double matrix as an (n, n, 4) float64 array.

    Component order along the last axis: re_hi, re_lo, im_hi, im_lo.
    """

    data: np.ndarray

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @classmethod
    def zeros(cls, n: int) -> "DDMatrix":
        return cls(np.zeros((n, n, 4)))

    @classmethod
    def from_array(cls, a: np.ndarray) -> "DDMatrix":
        a = np.asarray(a)
        n = a.shape[0]
        data = np.zeros((n, n, 4))
        if np.iscomplexobj(a):
            data[:, :, 0] = a.real
            data[:, :, 2] = a.imag
        else:
            data[:, :, 0] = a
        return cls(data)

    def to_complex(self) -> np.ndarray:
        d = self.data
        return (d[:, :, 0] + d[:, :, 1]) + 1j * (d[:, :, 2] + d[:, :, 3])

    def copy(self) -> "DDMatrix":
        return DDMatrix(self.data.copy())


def frobenius_norm(m) -> float:
    a = m.to_complex() if isinstance(m, DDMatrix) else np.asarray(m)
    return float(np.linalg.norm(a))


def balance(a: np.ndarray):
    """Power-of-two diagonal equilibration (no permutation).

    Returns (balanced, scale) with balanced = D^-1 A D, D = diag(scale).
    Exact similarity: scales are powers of two.
    """
    a = np.array(a, dtype=complex if np.iscomplexobj(a) else float)
    n = a.shape[0]
    scale = np.ones(n)
    work = np.abs(a).astype(float)
    done = False
    while not done:
        done = True
        for i in range(n):
            r = work[i, :].sum() - work[i, i]
            c = work[:, i].sum() - work[i, i]
            if r == 0.0 or c == 0.0:
                continue
            s0 = c + r
            f = 1.0
            # loop variable tracks c * f^2, the would-be column norm
            # times the row shrink factor
            while c < r / 2.0:
                f *= 2.0
                c *= 4.0
            while c > r * 2.0:
                f /= 2.0
                c /= 4.0
            if (c + r) / f < 0.95 * s0:
                done = False
                scale[i] *= f
                a[i, :] /= f
                a[:, i] *= f
                work[i, :] /= f
                work[:, i] *= f
    return a, scale


def _balance_dd(m: DDMatrix) -> DDMatrix:
    # plan on the double shadow; powers of two apply to dd exactly
    shadow = m.data[:, :, 0] + 1j * m.data[:, :, 2]
    _, scale = balance(shadow)
    data = m.data.copy()
    for i in range(m.n):
        if scale[i] != 1.0:
            data[i, :, :] /= scale[i]
            data[:, i, :] *= scale[i]
    return DDMatrix(data)


def _is_hessenberg(a: np.ndarray) -> bool:
    n = a.shape[0]
    for j in range(n - 2):
        if np.any(a[j + 2:, j] != 0):
            return False
    return True


def _householder_hessenberg(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k]
        nx = np.linalg.norm(x)
        if nx == 0.0:
            continue
        v = x.copy()
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v[0] += phase * nx
        nv = np.linalg.norm(v)
        if nv == 0.0:
            continue
        v /= nv
        a[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ a[k + 1:, k:])
        a[:, k + 1:] -= 2.0 * np.outer(a[:, k + 1:] @ v, v.conj())
        a[k + 2:, k] = 0.0
    return a


def hessenberg_reduce(m, balance_first: bool = False):
    """Similar upper Hessenberg matrix; optional balancing pass first.

    Accepts an ndarray (double path) or a DDMatrix (double-double path);
    returns the same kind.
    """
    if isinstance(m, DDMatrix):
        work = _balance_dd(m) if balance_first else m.copy()
        if not (_is_hessenberg(work.data[:, :, 0]) and _is_hessenberg(work.data[:, :, 1])
                and _is_hessenberg(work.data[:, :, 2]) and _is_hessenberg(work.data[:, :, 3])):
            _kernels.hessenberg_reduce_dd(work.data)
        return work
    a = np.array(m, dtype=complex)
    if balance_first:
        a, _ = balance(a)
    if _is_hessenberg(a):
        return a
    return _householder_hessenberg(a)


def dense_qr_eigenvalues(m, precision: str = "double", balance_first: bool = False,
                         tol: float = None, max_sweeps_per_eig: int = 30) -> Spectrum:
    """All eigenvalues by complex single-shift QR with deflation.

    precision "double" runs in complex128; "dd" (or "double-double")
    runs every operation in double-double and is the accuracy oracle
    for everything else.
    """
    if precision in ("dd", "double-double"):
        mat = m if isinstance(m, DDMatrix) else DDMatrix.from_array(m)
        work = hessenberg_reduce(mat, balance_first)
        n = work.n
        if tol is None:
            tol = 1e-30
        eigs4 = np.empty((n, 4))
        iters = np.zeros(n, dtype=np.int64)
        cs = np.empty((n, 4))
        sn = np.empty((n, 4))
        status, stuck, rotations = _kernels.dense_solve_dd(
            work.data, float(tol), int(max_sweeps_per_eig), eigs4, iters, cs, sn)
        eigs = (eigs4[:, 0] + eigs4[:, 1]) + 1j * (eigs4[:, 2] + eigs4[:, 3])
    elif precision == "double":
        a = m.to_complex() if isinstance(m, DDMatrix) else np.asarray(m)
        work = np.ascontiguousarray(hessenberg_reduce(a, balance_first))
        n = work.shape[0]
        if tol is None:
            tol = 1e-15
        eigs = np.empty(n, dtype=complex)
        iters = np.zeros(n, dtype=np.int64)
        cs = np.empty(n, dtype=complex)
        sn = np.empty(n, dtype=complex)
        status, stuck, rotations = _kernels.dense_solve_z(
            work, float(tol), int(max_sweeps_per_eig), eigs, iters, cs, sn)
    else:
        raise ValueError(f"unknown precision {precision!r}")
    if status != 0:
        done = eigs[stuck + 1:]
        order = np.argsort(done.real, kind="stable")
        raise NonConvergenceError(
            f"block [0, {stuck}] did not converge after repeated exceptional shifts",
            converged=done[order].copy(), block=(0, int(stuck)))
    return _sorted_spectrum(eigs, iters, rotations=int(rotations))


def condition_numbers(m, spectrum: Spectrum) -> np.ndarray:
    """1/|y^H x| per eigenvalue, eigenvectors by inverse iteration.

    The shift is always moved off the eigenvalue by 1e-10 * ||M||_F so
    the factorization stays regular; a clustered or defective
    eigenvalue shows up as a large value, never an error.
    """
    a = np.asarray(m.to_complex() if isinstance(m, DDMatrix) else m, dtype=complex)
    n = a.shape[0]
    norm = np.linalg.norm(a)
    shift_eps = 1e-10 * max(norm, 1.0)
    start = np.ones(n, dtype=complex) + 0.25j * np.linspace(0.0, 1.0, n)
    start /= np.linalg.norm(start)
    ident = np.eye(n, dtype=complex)
    out = np.empty(spectrum.eigenvalues.shape[0])
    for idx, lam in enumerate(spectrum.eigenvalues):
        lu = None
        for attempt in range(3):
            mu = lam + shift_eps * (attempt + 1) * (1.0 if attempt % 2 == 0 else 1.0 + 1.0j)
            candidate = scipy.linalg.lu_factor(a - mu * ident, check_finite=False)
            lu = candidate
            if np.all(np.abs(np.diag(candidate[0])) > 0.0):
                break
        x = start.copy()
        y = start.copy()
        for _ in range(2):
            x = scipy.linalg.lu_solve(lu, x, check_finite=False)
            x /= np.linalg.norm(x)
            y = scipy.linalg.lu_solve(lu, y, trans=2, check_finite=False)
            y /= np.linalg.norm(y)
        s = abs(np.vdot(y, x))
        out[idx] = 1.0 / s if s > 0.0 else np.inf
    return out


def laguerre_nodes(n: int, alpha: float) -> np.ndarray:
    """Zeros of the generalized Laguerre polynomial L_n^(alpha).

    Golub-Welsch: eigenvalues of the symmetric Jacobi matrix with
    diagonal 2i+alpha+1 and off-diagonal sqrt(i(i+alpha)), run through
    the double-double tridiagonal QL path, ascending.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if alpha <= -1.0:
        raise ValueError("Laguerre nodes need alpha > -1")
    d = np.zeros((n, 2))
    e = np.zeros((n, 2))
    for i in range(n):
        d[i] = two_sum(2.0 * i + 1.0, alpha)
    for i in range(1, n):
        e[i - 1] = dd_sqrt(dd_mul_d(two_sum(float(i), alpha), float(i)))
    status = _kernels.tridiag_solve_dd(d, e, 60)
    if status != 0:
        raise NonConvergenceError("tridiagonal QL did not converge")
    return np.sort(d[:, 0] + d[:, 1])


def build_x_dd(params: Parameters) -> DDMatrix:
    """Transpose of X = B^-1 A in double-double, ready for the oracle.

    The transpose is upper Hessenberg (the spike becomes row 0), so the
    double-double solver can start iterating without a reduction pass.
    Entries come from the closed forms; sums of two doubles are exact,
    products and quotients are accurate to ~1e-32.
    """
    n = params.n
    if n < 1:
        raise ValueError("X needs degree n >= 1")
    alpha, kappa = params.alpha, params.kappa
    m = DDMatrix.zeros(n)
    data = m.data
    ak = dd_mul((alpha, 0.0), (kappa, 0.0))
    data[0, 0, 0:2] = dd_mul(two_sum(1.0, alpha), two_sum(1.0, kappa))
    for i in range(1, n):
        data[i, i, 0:2] = dd_add(two_sum(2.0 * i + 1.0, alpha), (kappa, 0.0))
    for i in range(n - 1):
        # X[i, i+1] lands at transpose position (i+1, i)
        num = dd_neg(dd_mul(two_sum(i + 1.0, alpha), two_sum(i + 1.0, kappa)))
        data[i + 1, i, 0:2] = dd_div(num, (i + 1.0, 0.0))
    for i in range(2, n):
        # X[i, i-1] = -i lands at (i-1, i)
        data[i - 1, i, 0] = -float(i)
    if n > 1:
        data[0, 1, 0:2] = dd_add(dd_mul_d(ak, 0.5), (-1.0, 0.0))
    for i in range(2, n):
        data[0, i, 0:2] = dd_div(ak, (i + 1.0, 0.0))
    return m
