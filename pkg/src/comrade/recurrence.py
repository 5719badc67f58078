"""Four-term recurrence and series evaluation for the polynomial family.

The degree-n member of the family is the terminating hypergeometric sum

    L_n(x) = eta * sum_{i=0}^{n} (-n)_i / ((alpha+1)_i (kappa+1)_i) * x^i,

where the (1)_i / i! factor of the underlying 2F2 series cancels.  The
same polynomials satisfy a four-term recurrence

    x (e_i L_i + f_i L_{i-1}) = a_i L_{i+1} + b_i L_i + c_i L_{i-1} + d_i L_{i-2}

with L_{-2} = L_{-1} = 0 and L_0 = eta, which is the basis for the
matrix methods in the rest of the package.  Evaluation through the
recurrence divides by a_i, so it is rejected for alpha or kappa equal
to -1 (a_0 vanishes); the matrix path handles that edge separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ddouble import ComplexDD, DoubleDouble


class DegenerateRecurrenceError(ValueError):
    """Recurrence/series evaluation is undefined at alpha or kappa = -1.

    The leading recurrence coefficient a_0 = -(alpha+1)(kappa+1) vanishes
    there.  Zeros can still be computed through the matrix path, which
    deflates the degenerate leading block explicitly.
    """


@dataclass(frozen=True)
class Parameters:
    """Problem parameters: degree n, family parameters alpha and kappa,
    and the normalization eta of the degree-zero member."""

    n: int
    alpha: float
    kappa: float
    eta: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"degree n must be a nonnegative integer, got {self.n!r}")
        if not (self.alpha >= -1.0):
            raise ValueError(f"alpha must be >= -1, got {self.alpha!r}")
        if not (self.kappa >= -1.0):
            raise ValueError(f"kappa must be >= -1, got {self.kappa!r}")
        if self.eta == 0.0 or not math.isfinite(self.eta):
            raise ValueError(f"eta must be finite and nonzero, got {self.eta!r}")


@dataclass(frozen=True)
class CoefficientSet:
    """Recurrence coefficients at one index i."""

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float


def pochhammer(mu: float, i: int) -> float:
    """Rising factorial (mu)_i = mu (mu+1) ... (mu+i-1), with ()_0 = 1."""
    if i < 0:
        raise ValueError("pochhammer order must be nonnegative")
    out = 1.0
    for k in range(i):
        out *= mu + k
    return out


def recurrence_coefficients(i: int, alpha: float, kappa: float) -> CoefficientSet:
    """Coefficients of the four-term recurrence at index i >= 0.

    a_i = -(i+alpha+1)(i+kappa+1)        e_i = i+1
    b_i = i(2i+alpha+kappa+1) + (i+alpha+1)(i+kappa+1)
    c_i = -i(3i+alpha+kappa)             f_i = -i
    d_i = (i-1)i
    """
    if i < 0:
        raise ValueError("recurrence index must be nonnegative")
    ia = i + alpha + 1.0
    ik = i + kappa + 1.0
    return CoefficientSet(
        a=-ia * ik,
        b=i * (2.0 * i + alpha + kappa + 1.0) + ia * ik,
        c=-i * (3.0 * i + alpha + kappa),
        d=(i - 1.0) * i,
        e=i + 1.0,
        f=-float(i),
    )


def _check_not_degenerate(params: Parameters):
    if params.alpha == -1.0 or params.kappa == -1.0:
        raise DegenerateRecurrenceError(
            "evaluation is undefined at alpha or kappa = -1 (a_0 = 0); "
            "use the matrix path for the zeros"
        )


def eval_recurrence(params: Parameters, x, precision: str = "double"):
    """Evaluate L_n(x) by the four-term recurrence.

    Returns (value, scale) where scale = max_i |L_i(x)| over the members
    encountered, so value/scale is a meaningful relative residual when x
    is near a zero.  precision 'double' works in native floats/complex,
    'dd' in double-double (value is a ComplexDD, scale a float).
    """
    _check_not_degenerate(params)
    if precision == "dd":
        return _eval_recurrence_dd(params, x)
    if precision != "double":
        raise ValueError(f"unknown precision {precision!r}")

    n, alpha, kappa = params.n, params.alpha, params.kappa
    pm2 = 0.0
    pm1 = 0.0
    pc = params.eta * (1.0 + 0.0j) if isinstance(x, complex) else params.eta
    scale = abs(pc)
    # members grow ~exp(|x|/2); exact power-of-two rescaling keeps them
    # representable without touching the value/scale ratio
    big, shrink = 2.0 ** 600, 2.0 ** -600
    for i in range(n):
        co = recurrence_coefficients(i, alpha, kappa)
        pn = (x * (co.e * pc + co.f * pm1) - co.b * pc - co.c * pm1 - co.d * pm2) / co.a
        pm2, pm1, pc = pm1, pc, pn
        mag = abs(pc)
        if mag > scale:
            scale = mag
        if mag > big:
            pm2 *= shrink
            pm1 *= shrink
            pc *= shrink
            scale *= shrink
    return pc, scale


def _batch_recurrence_dd(params: Parameters, xrh, xrl, xih, xil):
    from . import _kernels
    import numpy as np

    m = xrh.shape[0]
    orh = np.empty(m)
    orl = np.empty(m)
    oih = np.empty(m)
    oil = np.empty(m)
    osc = np.empty(m)
    _kernels.recurrence_batch_dd(params.n, params.alpha, params.kappa, params.eta,
                                 xrh, xrl, xih, xil, orh, orl, oih, oil, osc)
    return orh, orl, oih, oil, osc


def _eval_recurrence_dd(params: Parameters, x):
    import numpy as np

    if isinstance(x, ComplexDD):
        xt = x._t()
    elif isinstance(x, DoubleDouble):
        xt = (x.hi, x.lo, 0.0, 0.0)
    else:
        z = complex(x)
        xt = (z.real, 0.0, z.imag, 0.0)
    orh, orl, oih, oil, osc = _batch_recurrence_dd(
        params, np.array([xt[0]]), np.array([xt[1]]),
        np.array([xt[2]]), np.array([xt[3]]))
    value = ComplexDD._raw((orh[0], orl[0], oih[0], oil[0]))
    return value, osc[0]


def eval_series(params: Parameters, x, precision: str = "double"):
    """Evaluate L_n(x) by the terminating series (independent of the
    recurrence; used as a cross-check)."""
    _check_not_degenerate(params)
    n, alpha, kappa = params.n, params.alpha, params.kappa
    if precision == "double":
        term = params.eta * (1.0 + 0.0j) if isinstance(x, complex) else params.eta
        acc = term
        for i in range(n):
            term = term * ((i - n) * x) / ((alpha + 1.0 + i) * (kappa + 1.0 + i))
            acc += term
        return acc
    if precision != "dd":
        raise ValueError(f"unknown precision {precision!r}")
    xdd = x if isinstance(x, ComplexDD) else ComplexDD.from_complex(complex(x))
    term = ComplexDD(params.eta)
    acc = term
    for i in range(n):
        num = xdd * float(i - n)
        den = DoubleDouble(alpha + 1.0) + i
        den2 = DoubleDouble(kappa + 1.0) + i
        term = term * num / (den * den2)
        acc = acc + term
    return acc


def scaled_residual(params: Parameters, x, precision: str = "dd"):
    """|L_n(x)| divided by the largest |L_i(x)| met along the recurrence.

    x may be a scalar (returns a float) or an array of points (returns an
    ndarray); arrays are evaluated in one batch.  Default precision is
    double-double so the result certifies zeros computed in double.
    """
    import numpy as np

    if isinstance(x, np.ndarray):
        if precision != "dd":
            out = np.empty(x.shape)
            flat = x.ravel()
            res = out.ravel()
            for i in range(flat.shape[0]):
                res[i] = scaled_residual(params, flat[i].item(), precision)
            return out
        _check_not_degenerate(params)
        z = np.ascontiguousarray(x, dtype=complex).ravel()
        zero = np.zeros(z.shape[0])
        orh, orl, oih, oil, osc = _batch_recurrence_dd(
            params, np.ascontiguousarray(z.real), zero,
            np.ascontiguousarray(z.imag), zero)
        mag = np.hypot(orh + orl, oih + oil)
        safe = np.where(osc == 0.0, 1.0, osc)
        return np.where(osc == 0.0, mag, mag / safe).reshape(x.shape)

    value, scale = eval_recurrence(params, x, precision)
    mag = float(abs(value))
    if scale == 0.0:
        return mag
    return mag / scale
