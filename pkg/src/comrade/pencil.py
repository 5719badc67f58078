"""Linearization of the recurrence as a banded pencil x*B - A.

Collecting the four-term recurrence for degrees 0..n-1 gives square
matrices A (lower bandwidth 2, upper bandwidth 1, built from a, b, c, d)
and B (lower bidiagonal, built from e, f) such that the zeros of L_n are
the eigenvalues of the pencil (A, B).  B is unit-free and invertible:
B = D - N with D = diag(1..n), and B^{-1} = D^{-1} M where M is the
lower-triangular all-ones matrix, so applying B^{-1} is a prefix sum
followed by division by the row index.

X = B^{-1} A collapses to an explicit quasi-tridiagonal matrix plus a
spike in the first column:

    X[0, 0]   = (alpha+1)(kappa+1)
    X[i, i]   = 2i + 1 + alpha + kappa                    i >= 1
    X[i, i+1] = -(i+1+alpha)(i+1+kappa) / (i+1)           i >= 0
    X[i, i-1] = -i                                        i >= 2
    X[i, 0]   = v_i  with v_1 = alpha*kappa/2 - 1,
                v_i = alpha*kappa/(i+1) for i >= 2.

All indices here are 0-based; the entry X[1, 0] belongs to the spike,
not to the tridiagonal part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .recurrence import Parameters, recurrence_coefficients


@dataclass(frozen=True)
class BandedPencil:
    """The pencil x*B - A stored by diagonals.

    a_diag: superdiagonal of A (a_0..a_{n-2})
    b_diag: diagonal of A (b_0..b_{n-1})
    c_diag: first subdiagonal of A (c_1..c_{n-1})
    d_diag: second subdiagonal of A (d_2..d_{n-1})
    e_diag: diagonal of B (e_i = i+1)
    f_diag: subdiagonal of B (f_i = -i)
    """

    n: int
    a_diag: np.ndarray
    b_diag: np.ndarray
    c_diag: np.ndarray
    d_diag: np.ndarray
    e_diag: np.ndarray
    f_diag: np.ndarray

    def to_dense(self):
        """Return (A, B) as dense arrays."""
        n = self.n
        a = np.zeros((n, n))
        b = np.zeros((n, n))
        for i in range(n):
            a[i, i] = self.b_diag[i]
            b[i, i] = self.e_diag[i]
        for i in range(n - 1):
            a[i, i + 1] = self.a_diag[i]
            a[i + 1, i] = self.c_diag[i]
            b[i + 1, i] = self.f_diag[i]
        for i in range(n - 2):
            a[i + 2, i] = self.d_diag[i]
        return a, b


@dataclass(frozen=True)
class SpikedTridiagonal:
    """X = B^{-1} A: tridiagonal part plus a spike in column 0.

    spike[0] and diag[0] are the same entry; the spike proper starts at
    row 1 (spike[1] sits at X[1, 0], replacing a subdiagonal entry).
    """

    n: int
    diag: np.ndarray
    superdiag: np.ndarray
    subdiag: np.ndarray  # X[i, i-1] for i = 2..n-1
    spike: np.ndarray


def build_pencil(params: Parameters) -> BandedPencil:
    """Assemble the banded pencil for degree n >= 1."""
    n = params.n
    if n < 1:
        raise ValueError("pencil needs degree n >= 1")
    a = np.empty(max(n - 1, 0))
    b = np.empty(n)
    c = np.empty(max(n - 1, 0))
    d = np.empty(max(n - 2, 0))
    e = np.empty(n)
    f = np.empty(max(n - 1, 0))
    for i in range(n):
        co = recurrence_coefficients(i, params.alpha, params.kappa)
        b[i] = co.b
        e[i] = co.e
        if i < n - 1:
            a[i] = co.a
        if i >= 1:
            c[i - 1] = co.c
            f[i - 1] = co.f
        if i >= 2:
            d[i - 2] = co.d
    return BandedPencil(n=n, a_diag=a, b_diag=b, c_diag=c, d_diag=d,
                        e_diag=e, f_diag=f)


def apply_b_inverse(n: int, y: np.ndarray) -> np.ndarray:
    """Solve B z = y in O(n): prefix sums divided by the row index."""
    y = np.asarray(y)
    if y.shape[0] != n:
        raise ValueError("vector length does not match the stated order")
    return np.cumsum(y, axis=0) / np.arange(1, n + 1, dtype=float).reshape(
        (-1,) + (1,) * (y.ndim - 1))


def build_x(params: Parameters) -> SpikedTridiagonal:
    """Closed form of X = B^{-1} A."""
    n = params.n
    if n < 1:
        raise ValueError("X needs degree n >= 1")
    alpha, kappa = params.alpha, params.kappa
    diag = np.empty(n)
    diag[0] = (alpha + 1.0) * (kappa + 1.0)
    for i in range(1, n):
        diag[i] = 2.0 * i + 1.0 + alpha + kappa
    superdiag = np.array([-(i + 1.0 + alpha) * (i + 1.0 + kappa) / (i + 1.0)
                          for i in range(n - 1)])
    subdiag = np.array([-float(i) for i in range(2, n)])
    spike = np.empty(n)
    spike[0] = diag[0]
    if n > 1:
        spike[1] = alpha * kappa / 2.0 - 1.0
    for i in range(2, n):
        spike[i] = alpha * kappa / (i + 1.0)
    return SpikedTridiagonal(n=n, diag=diag, superdiag=superdiag,
                             subdiag=subdiag, spike=spike)


def x_to_dense(x: SpikedTridiagonal) -> np.ndarray:
    """Expand the structured X to a dense array."""
    n = x.n
    out = np.zeros((n, n))
    for i in range(n):
        out[i, i] = x.diag[i]
    for i in range(n - 1):
        out[i, i + 1] = x.superdiag[i]
    for i in range(2, n):
        out[i, i - 1] = x.subdiag[i - 2]
    for i in range(1, n):
        out[i, 0] = x.spike[i]
    return out
