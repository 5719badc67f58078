"""Fast eigensolver on the generator form of the comrade matrix.

The iterate is M = F + u v* with F Hermitian and M upper Hessenberg, so
M is determined by its diagonal (gamma), subdiagonal (beta) and the two
rank-one generators: everything at or above the superdiagonal can be
reconstructed in O(1).  A shifted QR step therefore costs O(n) and the
whole spectrum O(n^2).

The comrade matrix C = T + w e_0^T is lower Hessenberg; we iterate on
its transpose (same spectrum) so a single orientation serves throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .matrix import ComradeMatrix


class NonConvergenceError(RuntimeError):
    """QR iteration gave up on a block after repeated exceptional shifts.

    converged: eigenvalues extracted before the failure (sorted).
    block: (lo, hi) index range of the stuck trailing block.
    estimates: current diagonal of the stuck block (rough eigenvalue
        guesses, not certified).
    """

    def __init__(self, message, converged=None, block=None, estimates=None):
        super().__init__(message)
        self.converged = converged
        self.block = block
        self.estimates = estimates


@dataclass
class Spectrum:
    """Eigenvalue multiset plus per-eigenvalue work counters.

    eigenvalues: complex, ascending by (real, imaginary).
    iterations: QR sweeps charged to each eigenvalue's deflation point.
    residuals: optional certification values filled in by callers.
    rotations: total Givens rotations spent over the run.
    """

    eigenvalues: np.ndarray
    iterations: np.ndarray
    residuals: Optional[np.ndarray] = None
    rotations: int = 0


def _sorted_spectrum(eigs, iters, rotations=0):
    """Canonical order: ascending real part, ties broken by imaginary part.

    A conjugate pair's real parts can disagree in the last bits, so a
    bit-exact tie test would order the pair by those meaningless bits.
    Real parts within 1e-12 * max(1, scale) of each other count as tied
    and are ordered by imaginary part instead.
    """
    order = np.lexsort((eigs.imag, eigs.real))
    eigs = eigs[order]
    iters = iters[order]
    n = eigs.shape[0]
    if n > 1:
        tie = 1e-12 * max(1.0, float(np.max(np.abs(eigs))))
        start = 0
        for i in range(1, n + 1):
            if i == n or eigs.real[i] - eigs.real[start] > tie:
                if i - start > 1:
                    sub = np.lexsort((eigs.real[start:i], eigs.imag[start:i]))
                    eigs[start:i] = eigs[start:i][sub]
                    iters[start:i] = iters[start:i][sub]
                start = i
    return Spectrum(eigenvalues=eigs, iterations=iters, rotations=rotations)


class GeneratorHessenberg:
    """O(n) representation of a Hermitian-plus-rank-one Hessenberg matrix."""

    __slots__ = ("gamma", "beta", "u", "v", "lo", "hi", "last_rotations",
                 "total_rotations", "_cs", "_sn", "_rd", "_rs")

    def __init__(self, gamma, beta, u, v):
        gamma = np.asarray(gamma, dtype=complex)
        n = gamma.shape[0]
        beta = np.asarray(beta, dtype=complex)
        if beta.shape[0] != max(n - 1, 0):
            raise ValueError("beta must have length n-1")
        u = np.asarray(u, dtype=complex)
        v = np.asarray(v, dtype=complex)
        if u.shape[0] != n or v.shape[0] != n:
            raise ValueError("generators must have length n")
        self.gamma = gamma.copy()
        self.beta = beta.copy()
        self.u = u.copy()
        self.v = v.copy()
        self.lo = 0
        self.hi = n - 1
        self.last_rotations = 0
        self.total_rotations = 0
        self._cs = np.empty(n, dtype=complex)
        self._sn = np.empty(n, dtype=complex)
        self._rd = np.empty(n, dtype=complex)
        self._rs = np.empty(n, dtype=complex)

    @property
    def n(self) -> int:
        return self.gamma.shape[0]

    def entry(self, i: int, j: int) -> complex:
        """Reconstruct M(i, j) from the generators."""
        n = self.n
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"entry ({i}, {j}) outside order {n}")
        if i > j + 1:
            return 0j
        if i == j + 1:
            return complex(self.beta[j])
        if i == j:
            return complex(self.gamma[i])
        if j == i + 1:
            return complex(np.conj(self.beta[i]) - np.conj(self.u[i + 1]) * self.v[i]
                           + self.u[i] * np.conj(self.v[i + 1]))
        return complex(self.u[i] * np.conj(self.v[j]) - self.v[i] * np.conj(self.u[j]))

    def to_dense(self) -> np.ndarray:
        """Dense expansion, for tests and debugging only (O(n^2))."""
        n = self.n
        out = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for j in range(max(i - 1, 0), n):
                out[i, j] = self.entry(i, j)
        return out


def from_comrade(c: ComradeMatrix) -> GeneratorHessenberg:
    """Generator form of C transposed: T + e_0 w^T, u = e_0, v = w."""
    n = c.n
    u = np.zeros(n, dtype=complex)
    u[0] = 1.0
    return GeneratorHessenberg(gamma=c.diag, beta=c.offdiag, u=u, v=c.spike)


def wilkinson_shift(h: GeneratorHessenberg) -> complex:
    """Trailing-2x2 eigenvalue closest to the trailing diagonal entry."""
    hi = h.hi
    if hi - h.lo < 1:
        raise ValueError("active block must have size >= 2")
    a11 = h.entry(hi - 1, hi - 1)
    a12 = h.entry(hi - 1, hi)
    a21 = h.entry(hi, hi - 1)
    a22 = h.entry(hi, hi)
    r1, r2 = _kernels._eig2(a11, a12, a21, a22)
    return complex(r1 if abs(r1 - a22) <= abs(r2 - a22) else r2)


def qr_step(h: GeneratorHessenberg, shift: complex) -> GeneratorHessenberg:
    """One explicit shifted QR step on the active block, in place."""
    if h.hi - h.lo < 1:
        raise ValueError("active block must have size >= 2")
    if __debug__:
        trace_before = h.gamma.sum()
    count = _kernels.struct_sweep(h.gamma, h.beta, h.u, h.v, h.lo, h.hi,
                                  complex(shift), h._cs, h._sn, h._rd, h._rs)
    h.last_rotations = int(count)
    h.total_rotations += int(count)
    if __debug__:
        trace_after = h.gamma.sum()
        drift = abs(trace_after - trace_before)
        assert drift <= 1e-12 * max(1.0, abs(trace_before)), \
            f"trace moved by {drift} in one QR step"
    return h


def eigenvalues(c: ComradeMatrix, tol: float = 1e-15,
                max_sweeps_per_eig: int = 30) -> Spectrum:
    """All eigenvalues of the comrade matrix, O(n^2) time, O(n) memory."""
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    h = from_comrade(c)
    n = h.n
    eigs = np.empty(n, dtype=complex)
    iters = np.zeros(n, dtype=np.int64)
    status, stuck, rotations = _kernels.struct_solve(
        h.gamma, h.beta, h.u, h.v, float(tol), int(max_sweeps_per_eig),
        eigs, iters, h._cs, h._sn, h._rd, h._rs)
    if status != 0:
        done = eigs[stuck + 1:]
        order = np.argsort(done.real, kind="stable")
        raise NonConvergenceError(
            f"block [0, {stuck}] did not converge after repeated exceptional shifts",
            converged=done[order].copy(),
            block=(0, int(stuck)),
            estimates=h.gamma[:stuck + 1].copy())
    return _sorted_spectrum(eigs, iters, rotations=int(rotations))
