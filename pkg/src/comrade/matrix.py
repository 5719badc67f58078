"""Comrade form: a symmetric tridiagonal matrix plus a rank-one spike.

X = B^{-1} A is similar, via a positive diagonal scaling and a sign flip
S = diag((-1)^i), to

    C = T + w e_0^T

where T is symmetric tridiagonal with positive off-diagonal entries

    offdiag[j] = sqrt((j+1+alpha)(j+1+kappa))      j = 0..n-2

and the same diagonal as X.  The scaling deltas follow the uniform ratio

    scaling[0] = 1,
    scaling[i] = scaling[i-1] * sqrt((i+alpha)(i+kappa)) / i,

which makes every off-diagonal entry of the scaled matrix hit the closed
form above, including the first one.  (Pinning scaling[1] to 1 instead
would leave the (0,1) entry unsymmetrized; the ratio rule is the one
consistent choice.)  Row 1 of the spike absorbs the difference between
the scaled spike entry of X and the symmetric off-diagonal:

    spike[0] = 0
    spike[1] = -scaling[1] * v_1 - offdiag[0]
    spike[i] = (-1)^i * scaling[i] * v_i          i >= 2,

with v_i the spike entries of X and the (-1)^i factors coming from S.

The construction needs (i+alpha)(i+kappa) >= 0 for i = 1..n-1, which
holds for alpha, kappa >= -1.  When alpha or kappa is 0 the spike
vanishes identically and C is exactly symmetric tridiagonal.  When alpha
or kappa is -1 the first off-diagonal and the whole spike vanish, so C
splits into the 1x1 block [0] plus a symmetric tridiagonal block; no
special casing is needed, the zero eigenvalue falls out of the split.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .pencil import SpikedTridiagonal
from .recurrence import Parameters

# switch the delta diagnostics to log space before linear storage
# overflows a double (happens near 1e308, i.e. ~709 in natural logs)
_LOG_SPACE_THRESHOLD = 0.95 * math.log(sys.float_info.max)


@dataclass(frozen=True)
class ComradeMatrix:
    """C = T + spike * e_0^T with T symmetric tridiagonal.

    diag, offdiag: the tridiagonal T (offdiag entries are >= 0).
    spike: the rank-one column; spike[0] == 0 always.
    scaling: the similarity deltas (diagnostic only).  Stored as plain
        values normally; as natural logs with scaling_is_log=True when
        the deltas leave the representable range.
    """

    n: int
    diag: np.ndarray
    offdiag: np.ndarray
    spike: np.ndarray
    scaling: np.ndarray
    scaling_is_log: bool = False

    def to_dense(self) -> np.ndarray:
        n = self.n
        out = np.zeros((n, n))
        for i in range(n):
            out[i, i] = self.diag[i]
        for i in range(n - 1):
            out[i, i + 1] = self.offdiag[i]
            out[i + 1, i] = self.offdiag[i]
        for i in range(1, n):
            out[i, 0] += self.spike[i]
        return out


def _offdiag_value(i: int, alpha: float, kappa: float) -> float:
    # 1-based band index i; the entry sits at (i-1, i)
    prod = (i + alpha) * (i + kappa)
    if prod < 0.0:
        raise ValueError(
            "comrade form needs (i+alpha)(i+kappa) >= 0 for i = 1..n-1; "
            f"failed at i={i} with alpha={alpha}, kappa={kappa}")
    return math.sqrt(prod)


def _scaling_diagnostics(n: int, alpha: float, kappa: float):
    """Delta values for the record; log-space when they would overflow."""
    logs = np.zeros(n)
    acc = 0.0
    degenerate = False
    for i in range(1, n):
        prod = (i + alpha) * (i + kappa)
        if prod <= 0.0:
            # delta hits 0 exactly (alpha or kappa == -1); stays 0 after
            degenerate = True
            break
        acc += 0.5 * math.log(prod) - math.log(i)
        logs[i] = acc
    if not degenerate and np.max(np.abs(logs)) > _LOG_SPACE_THRESHOLD:
        return logs, True
    scaling = np.zeros(n)
    scaling[0] = 1.0
    scl = 1.0
    for i in range(1, n):
        scl = scl * math.sqrt(max((i + alpha) * (i + kappa), 0.0)) / i
        scaling[i] = scl
    return scaling, False


def comrade_direct(params: Parameters) -> ComradeMatrix:
    """Build C straight from alpha, kappa without forming X."""
    n = params.n
    if n < 1:
        raise ValueError("comrade form needs degree n >= 1")
    alpha, kappa = params.alpha, params.kappa
    diag = np.empty(n)
    diag[0] = (alpha + 1.0) * (kappa + 1.0)
    for i in range(1, n):
        diag[i] = 2.0 * i + 1.0 + alpha + kappa
    offdiag = np.array([_offdiag_value(i, alpha, kappa) for i in range(1, n)])
    spike = np.zeros(n)
    scl = 1.0
    for i in range(1, n):
        scl = scl * math.sqrt((i + alpha) * (i + kappa)) / i
        if i == 1:
            v1 = alpha * kappa / 2.0 - 1.0
            spike[1] = -scl * v1 - offdiag[0]
        else:
            sign = -1.0 if i % 2 else 1.0
            spike[i] = sign * scl * (alpha * kappa / (i + 1.0))
    scaling, is_log = _scaling_diagnostics(n, alpha, kappa)
    return ComradeMatrix(n=n, diag=diag, offdiag=offdiag, spike=spike,
                         scaling=scaling, scaling_is_log=is_log)


def symmetrize(x: SpikedTridiagonal, params: Parameters) -> ComradeMatrix:
    """Build C from an assembled X; spike entries are read off X.

    Off-diagonals and deltas come from the closed forms (short, exact
    expressions beat accumulating quotients of X entries); the spike
    column is scaled from x.spike, so this route and comrade_direct
    agree entrywise to rounding.
    """
    n = x.n
    if params.n != n:
        raise ValueError("params and X disagree on the order")
    alpha, kappa = params.alpha, params.kappa
    diag = x.diag.copy()
    offdiag = np.array([_offdiag_value(i, alpha, kappa) for i in range(1, n)])
    spike = np.zeros(n)
    scl = 1.0
    for i in range(1, n):
        scl = scl * math.sqrt((i + alpha) * (i + kappa)) / i
        if i == 1:
            spike[1] = -scl * x.spike[1] - offdiag[0]
        else:
            sign = -1.0 if i % 2 else 1.0
            spike[i] = sign * scl * x.spike[i]
    scaling, is_log = _scaling_diagnostics(n, alpha, kappa)
    return ComradeMatrix(n=n, diag=diag, offdiag=offdiag, spike=spike,
                         scaling=scaling, scaling_is_log=is_log)


def comrade_to_dense(c: ComradeMatrix) -> np.ndarray:
    return c.to_dense()
