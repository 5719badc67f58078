"""Compiled numerical kernels.

Three QR drivers share one deflation/shift policy:

  * struct_solve: the O(n^2) iteration on the generator representation
    of a Hermitian-plus-rank-one upper Hessenberg matrix (gamma, beta,
    u, v), O(n) work and O(1) extra state per step.
  * dense_solve_z: the unstructured O(n^3) mirror on a complex128
    Hessenberg matrix.
  * dense_solve_dd: the same in double-double precision; matrices are
    (n, n, 4) float64 arrays holding (re_hi, re_lo, im_hi, im_lo).

Also here: the double-double symmetric tridiagonal QL solver, the
double-double polynomial recurrence evaluator, and a Givens-based
double-double Hessenberg reduction.

Every kernel is deterministic; nothing here allocates beyond a few
scalars, so peak memory is set by the caller-provided arrays.
"""

import math

import numpy as np
from numba import njit

from .ddouble import (
    two_sum,
    dd_add,
    dd_sub,
    dd_neg,
    dd_mul,
    dd_mul_d,
    dd_div,
    dd_sqrt,
    cdd_add,
    cdd_sub,
    cdd_neg,
    cdd_conj,
    cdd_mul,
    cdd_mul_r,
    cdd_div,
    cdd_div_r,
    cdd_abs2,
    cdd_sqrt,
)

_DD_ZERO = (0.0, 0.0)
_DD_ONE = (1.0, 0.0)
_Z4 = (0.0, 0.0, 0.0, 0.0)
_ONE4 = (1.0, 0.0, 0.0, 0.0)


# ---------------------------------------------------------------------------
# complex128 building blocks

@njit(cache=True)
def _eig2(a11, a12, a21, a22):
    """Eigenvalues of a 2x2, larger-magnitude root first.

    The smaller root comes from det/big (Vieta) so a cancellation in
    mid -/+ disc cannot wash it out.
    """
    mid = 0.5 * (a11 + a22)
    det = a11 * a22 - a12 * a21
    disc = np.sqrt(mid * mid - det)
    r1 = mid + disc
    r2 = mid - disc
    if abs(r2) > abs(r1):
        r1, r2 = r2, r1
    if abs(r1) == 0.0:
        return r1, r2
    return r1, det / r1


@njit(cache=True)
def _superdiag_entry(beta, u, v, i):
    # M(i, i+1) recovered from the generators
    return np.conj(beta[i]) - np.conj(u[i + 1]) * v[i] + u[i] * np.conj(v[i + 1])


@njit(cache=True)
def struct_sweep(gamma, beta, u, v, lo, hi, mu, cs, sn, rd, rs):
    """One explicit-shift QR step on the window [lo, hi] in O(hi-lo).

    Left pass: build the two stored diagonals of R while chasing a
    two-entry working window down the matrix.  Entries more than one
    place right of the working column obey the rank-one far-field
    formula with the already-rotated generators, so no row storage is
    needed.  Right pass: reassemble the new diagonal and subdiagonal
    from R's diagonals and the rotations.  Returns the rotation count.
    """
    if hi - lo < 1:
        return 0
    w1 = gamma[lo] - mu
    w2 = np.conj(beta[lo]) - np.conj(u[lo + 1]) * v[lo] + u[lo] * np.conj(v[lo + 1])
    for k in range(lo, hi):
        bk = beta[k]
        h = math.sqrt(abs(w1) ** 2 + abs(bk) ** 2)
        if h == 0.0:
            c = 1.0 + 0.0j
            s = 0.0 + 0.0j
        else:
            c = w1 / h
            s = bk / h
        rd[k] = h
        g1 = gamma[k + 1] - mu
        rs[k] = np.conj(c) * w2 + np.conj(s) * g1
        w1n = -s * w2 + c * g1
        if k + 2 <= hi:
            # u[k], v[k] already carry the previous rotation; u[k+2],
            # v[k+2] and beta[k+1] are still original, as required
            f12 = u[k] * np.conj(v[k + 2]) - v[k] * np.conj(u[k + 2])
            sd2 = (np.conj(beta[k + 1]) - np.conj(u[k + 2]) * v[k + 1]
                   + u[k + 1] * np.conj(v[k + 2]))
            w2 = -s * f12 + c * sd2
        uk = u[k]
        uk1 = u[k + 1]
        u[k] = np.conj(c) * uk + np.conj(s) * uk1
        u[k + 1] = -s * uk + c * uk1
        vk = v[k]
        vk1 = v[k + 1]
        v[k] = np.conj(c) * vk + np.conj(s) * vk1
        v[k + 1] = -s * vk + c * vk1
        cs[k] = c
        sn[k] = s
        w1 = w1n
    rd[hi] = w1
    cprev = 1.0 + 0.0j
    for k in range(lo, hi):
        gamma[k] = rd[k] * np.conj(cprev) * cs[k] + rs[k] * sn[k] + mu
        beta[k] = sn[k] * rd[k + 1]
        cprev = cs[k]
    gamma[hi] = rd[hi] * np.conj(cprev) + mu
    return hi - lo


@njit(cache=True)
def struct_solve(gamma, beta, u, v, tol, max_sweeps, eigs, iters, cs, sn, rd, rs):
    """Full eigenvalue iteration on the generator representation.

    Returns (status, stuck_hi, total_rotations); status 1 means the
    block ending at stuck_hi refused to converge after three
    exceptional-shift rounds, with eigs[stuck_hi+1:] valid.
    """
    n = gamma.shape[0]
    total_rot = 0
    hi = n - 1
    sweeps_since = 0
    exceptional = 0
    prev_lo = -1
    prev_hi = -1
    while hi >= 0:
        if hi == 0:
            eigs[0] = gamma[0]
            hi = -1
            continue
        lo = hi
        while lo > 0:
            if abs(beta[lo - 1]) <= tol * (abs(gamma[lo - 1]) + abs(gamma[lo])):
                beta[lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs[hi] = gamma[hi]
            hi -= 1
            continue
        if lo == hi - 1:
            a12 = _superdiag_entry(beta, u, v, lo)
            r1, r2 = _eig2(gamma[lo], a12, beta[lo], gamma[hi])
            eigs[lo] = r1
            eigs[hi] = r2
            hi -= 2
            continue
        if lo != prev_lo or hi != prev_hi:
            sweeps_since = 0
            exceptional = 0
            prev_lo = lo
            prev_hi = hi
        if sweeps_since >= max_sweeps:
            exceptional += 1
            if exceptional > 3:
                return 1, hi, total_rot
            mu = gamma[hi] + (0.9 + 0.1j) * abs(beta[hi - 1])
            sweeps_since = 0
        else:
            a12 = _superdiag_entry(beta, u, v, hi - 1)
            r1, r2 = _eig2(gamma[hi - 1], a12, beta[hi - 1], gamma[hi])
            if abs(r1 - gamma[hi]) <= abs(r2 - gamma[hi]):
                mu = r1
            else:
                mu = r2
        total_rot += struct_sweep(gamma, beta, u, v, lo, hi, mu, cs, sn, rd, rs)
        sweeps_since += 1
        iters[hi] += 1
    return 0, -1, total_rot


# ---------------------------------------------------------------------------
# dense complex128 mirror

@njit(cache=True)
def dense_sweep_z(h, lo, hi, mu, cs, sn):
    """Explicit-shift QR step on a dense Hessenberg block, O(window^2)."""
    for j in range(lo, hi + 1):
        h[j, j] -= mu
    for k in range(lo, hi):
        w1 = h[k, k]
        bk = h[k + 1, k]
        r = math.sqrt(abs(w1) ** 2 + abs(bk) ** 2)
        if r == 0.0:
            c = 1.0 + 0.0j
            s = 0.0 + 0.0j
        else:
            c = w1 / r
            s = bk / r
        cs[k] = c
        sn[k] = s
        cc = np.conj(c)
        sc = np.conj(s)
        for j in range(k, hi + 1):
            t1 = h[k, j]
            t2 = h[k + 1, j]
            h[k, j] = cc * t1 + sc * t2
            h[k + 1, j] = -s * t1 + c * t2
        h[k + 1, k] = 0.0 + 0.0j
    for k in range(lo, hi):
        c = cs[k]
        s = sn[k]
        cc = np.conj(c)
        sc = np.conj(s)
        for i in range(lo, k + 2):
            t1 = h[i, k]
            t2 = h[i, k + 1]
            h[i, k] = c * t1 + s * t2
            h[i, k + 1] = -sc * t1 + cc * t2
    for j in range(lo, hi + 1):
        h[j, j] += mu
    return hi - lo


@njit(cache=True)
def dense_solve_z(h, tol, max_sweeps, eigs, iters, cs, sn):
    """Unstructured QR driver; same policy as struct_solve."""
    n = h.shape[0]
    total_rot = 0
    hi = n - 1
    sweeps_since = 0
    exceptional = 0
    prev_lo = -1
    prev_hi = -1
    while hi >= 0:
        if hi == 0:
            eigs[0] = h[0, 0]
            hi = -1
            continue
        lo = hi
        while lo > 0:
            if abs(h[lo, lo - 1]) <= tol * (abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])):
                h[lo, lo - 1] = 0.0 + 0.0j
                break
            lo -= 1
        if lo == hi:
            eigs[hi] = h[hi, hi]
            hi -= 1
            continue
        if lo == hi - 1:
            r1, r2 = _eig2(h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi])
            eigs[lo] = r1
            eigs[hi] = r2
            hi -= 2
            continue
        if lo != prev_lo or hi != prev_hi:
            sweeps_since = 0
            exceptional = 0
            prev_lo = lo
            prev_hi = hi
        if sweeps_since >= max_sweeps:
            exceptional += 1
            if exceptional > 3:
                return 1, hi, total_rot
            mu = h[hi, hi] + (0.9 + 0.1j) * abs(h[hi, hi - 1])
            sweeps_since = 0
        else:
            r1, r2 = _eig2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
            if abs(r1 - h[hi, hi]) <= abs(r2 - h[hi, hi]):
                mu = r1
            else:
                mu = r2
        total_rot += dense_sweep_z(h, lo, hi, mu, cs, sn)
        sweeps_since += 1
        iters[hi] += 1
    return 0, -1, total_rot


# ---------------------------------------------------------------------------
# double-double dense path; matrices are (n, n, 4) float64

@njit(cache=True)
def _get4(h, i, j):
    return h[i, j, 0], h[i, j, 1], h[i, j, 2], h[i, j, 3]


@njit(cache=True)
def _set4(h, i, j, t):
    h[i, j, 0] = t[0]
    h[i, j, 1] = t[1]
    h[i, j, 2] = t[2]
    h[i, j, 3] = t[3]


@njit(cache=True)
def _getv4(a, i):
    return a[i, 0], a[i, 1], a[i, 2], a[i, 3]


@njit(cache=True)
def _setv4(a, i, t):
    a[i, 0] = t[0]
    a[i, 1] = t[1]
    a[i, 2] = t[2]
    a[i, 3] = t[3]


@njit(cache=True)
def _abs_approx(t):
    # double-precision magnitude of a complex dd; plenty for tests/pivots
    return math.sqrt((t[0] + t[1]) ** 2 + (t[2] + t[3]) ** 2)


@njit(cache=True)
def _eig2_dd(a11, a12, a21, a22):
    mid = cdd_mul_r(cdd_add(a11, a22), (0.5, 0.0))
    det = cdd_sub(cdd_mul(a11, a22), cdd_mul(a12, a21))
    disc = cdd_sqrt(cdd_sub(cdd_mul(mid, mid), det))
    r1 = cdd_add(mid, disc)
    r2 = cdd_sub(mid, disc)
    if _abs_approx(r2) > _abs_approx(r1):
        r1, r2 = r2, r1
    if _abs_approx(r1) == 0.0:
        return r1, r2
    return r1, cdd_div(det, r1)


@njit(cache=True)
def dense_sweep_dd(h, lo, hi, mu, cs, sn):
    for j in range(lo, hi + 1):
        _set4(h, j, j, cdd_sub(_get4(h, j, j), mu))
    for k in range(lo, hi):
        w1 = _get4(h, k, k)
        bk = _get4(h, k + 1, k)
        mag2 = dd_add(cdd_abs2(w1), cdd_abs2(bk))
        if mag2[0] == 0.0:
            c = _ONE4
            s = _Z4
        else:
            r = dd_sqrt(mag2)
            c = cdd_div_r(w1, r)
            s = cdd_div_r(bk, r)
        _setv4(cs, k, c)
        _setv4(sn, k, s)
        cc = cdd_conj(c)
        sc = cdd_conj(s)
        for j in range(k, hi + 1):
            t1 = _get4(h, k, j)
            t2 = _get4(h, k + 1, j)
            _set4(h, k, j, cdd_add(cdd_mul(cc, t1), cdd_mul(sc, t2)))
            _set4(h, k + 1, j, cdd_sub(cdd_mul(c, t2), cdd_mul(s, t1)))
        _set4(h, k + 1, k, _Z4)
    for k in range(lo, hi):
        c = _getv4(cs, k)
        s = _getv4(sn, k)
        cc = cdd_conj(c)
        sc = cdd_conj(s)
        for i in range(lo, k + 2):
            t1 = _get4(h, i, k)
            t2 = _get4(h, i, k + 1)
            _set4(h, i, k, cdd_add(cdd_mul(t1, c), cdd_mul(t2, s)))
            _set4(h, i, k + 1, cdd_sub(cdd_mul(t2, cc), cdd_mul(t1, sc)))
    for j in range(lo, hi + 1):
        _set4(h, j, j, cdd_add(_get4(h, j, j), mu))
    return hi - lo


@njit(cache=True)
def dense_solve_dd(h, tol, max_sweeps, eigs, iters, cs, sn):
    """Double-double QR driver; eigs is (n, 4).

    Deflation thresholds compare double approximations of dd
    magnitudes — the quantities themselves are well inside double
    range even at tol near 1e-30.
    """
    n = h.shape[0]
    total_rot = 0
    hi = n - 1
    sweeps_since = 0
    exceptional = 0
    prev_lo = -1
    prev_hi = -1
    while hi >= 0:
        if hi == 0:
            _setv4(eigs, 0, _get4(h, 0, 0))
            hi = -1
            continue
        lo = hi
        while lo > 0:
            bmag = _abs_approx(_get4(h, lo, lo - 1))
            gmag = _abs_approx(_get4(h, lo - 1, lo - 1)) + _abs_approx(_get4(h, lo, lo))
            if bmag <= tol * gmag:
                _set4(h, lo, lo - 1, _Z4)
                break
            lo -= 1
        if lo == hi:
            _setv4(eigs, hi, _get4(h, hi, hi))
            hi -= 1
            continue
        if lo == hi - 1:
            r1, r2 = _eig2_dd(_get4(h, lo, lo), _get4(h, lo, hi),
                              _get4(h, hi, lo), _get4(h, hi, hi))
            _setv4(eigs, lo, r1)
            _setv4(eigs, hi, r2)
            hi -= 2
            continue
        if lo != prev_lo or hi != prev_hi:
            sweeps_since = 0
            exceptional = 0
            prev_lo = lo
            prev_hi = hi
        if sweeps_since >= max_sweeps:
            exceptional += 1
            if exceptional > 3:
                return 1, hi, total_rot
            bmag = _abs_approx(_get4(h, hi, hi - 1))
            mu = cdd_add(_get4(h, hi, hi), (0.9 * bmag, 0.0, 0.1 * bmag, 0.0))
            sweeps_since = 0
        else:
            r1, r2 = _eig2_dd(_get4(h, hi - 1, hi - 1), _get4(h, hi - 1, hi),
                              _get4(h, hi, hi - 1), _get4(h, hi, hi))
            g = _get4(h, hi, hi)
            if _abs_approx(cdd_sub(r1, g)) <= _abs_approx(cdd_sub(r2, g)):
                mu = r1
            else:
                mu = r2
        total_rot += dense_sweep_dd(h, lo, hi, mu, cs, sn)
        sweeps_since += 1
        iters[hi] += 1
    return 0, -1, total_rot


@njit(cache=True)
def hessenberg_reduce_dd(h):
    """In-place Givens reduction to upper Hessenberg form (dd)."""
    n = h.shape[0]
    for j in range(n - 2):
        for i in range(n - 1, j + 1, -1):
            b = _get4(h, i, j)
            if b[0] == 0.0 and b[1] == 0.0 and b[2] == 0.0 and b[3] == 0.0:
                continue
            a = _get4(h, i - 1, j)
            r = dd_sqrt(dd_add(cdd_abs2(a), cdd_abs2(b)))
            c = cdd_div_r(a, r)
            s = cdd_div_r(b, r)
            cc = cdd_conj(c)
            sc = cdd_conj(s)
            for col in range(j, n):
                t1 = _get4(h, i - 1, col)
                t2 = _get4(h, i, col)
                _set4(h, i - 1, col, cdd_add(cdd_mul(cc, t1), cdd_mul(sc, t2)))
                _set4(h, i, col, cdd_sub(cdd_mul(c, t2), cdd_mul(s, t1)))
            _set4(h, i, j, _Z4)
            for row in range(n):
                t1 = _get4(h, row, i - 1)
                t2 = _get4(h, row, i)
                _set4(h, row, i - 1, cdd_add(cdd_mul(t1, c), cdd_mul(t2, s)))
                _set4(h, row, i, cdd_sub(cdd_mul(t2, cc), cdd_mul(t1, sc)))


# ---------------------------------------------------------------------------
# double-double symmetric tridiagonal QL (real arithmetic throughout)

@njit(cache=True)
def _get2(a, i):
    return a[i, 0], a[i, 1]


@njit(cache=True)
def _set2(a, i, t):
    a[i, 0] = t[0]
    a[i, 1] = t[1]


@njit(cache=True)
def tridiag_solve_dd(d, e, max_iter):
    """Implicit-shift QL on a symmetric tridiagonal in double-double.

    d: (n, 2) diagonal, overwritten with eigenvalues (unsorted).
    e: (n, 2) off-diagonal in e[0..n-2], destroyed.
    Returns 0, or 1 if some eigenvalue needed more than max_iter sweeps.
    """
    n = d.shape[0]
    if n == 1:
        return 0
    _set2(e, n - 1, _DD_ZERO)
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n - 1:
                dmag = abs(d[m, 0]) + abs(d[m + 1, 0])
                if abs(e[m, 0]) <= 1.0e-31 * dmag:
                    break
                m += 1
            if m == l:
                break
            iters += 1
            if iters > max_iter:
                return 1
            el = _get2(e, l)
            g = dd_div(dd_sub(_get2(d, l + 1), _get2(d, l)), dd_mul_d(el, 2.0))
            r = dd_sqrt(dd_add(dd_mul(g, g), _DD_ONE))
            if g[0] >= 0.0:
                den = dd_add(g, r)
            else:
                den = dd_sub(g, r)
            g = dd_add(dd_sub(_get2(d, m), _get2(d, l)), dd_div(el, den))
            s = _DD_ONE
            c = _DD_ONE
            p = _DD_ZERO
            underflow = False
            for i in range(m - 1, l - 1, -1):
                ei = _get2(e, i)
                f = dd_mul(s, ei)
                b = dd_mul(c, ei)
                r = dd_sqrt(dd_add(dd_mul(f, f), dd_mul(g, g)))
                _set2(e, i + 1, r)
                if r[0] == 0.0:
                    _set2(d, i + 1, dd_sub(_get2(d, i + 1), p))
                    _set2(e, m, _DD_ZERO)
                    underflow = True
                    break
                s = dd_div(f, r)
                c = dd_div(g, r)
                g = dd_sub(_get2(d, i + 1), p)
                r = dd_add(dd_mul(dd_sub(_get2(d, i), g), s),
                           dd_mul(dd_mul_d(c, 2.0), b))
                p = dd_mul(s, r)
                _set2(d, i + 1, dd_add(g, p))
                g = dd_sub(dd_mul(c, r), b)
            if not underflow:
                _set2(d, l, dd_sub(_get2(d, l), p))
                _set2(e, l, g)
                _set2(e, m, _DD_ZERO)
    return 0


# ---------------------------------------------------------------------------
# double-double recurrence evaluation

@njit(cache=True)
def recurrence_batch_dd(n, alpha, kappa, eta, xrh, xrl, xih, xil,
                        orh, orl, oih, oil, osc):
    """Run the 4-term recurrence to degree n at each point (dd).

    Coefficients are rebuilt exactly per step: sums like i+alpha+1 of
    two doubles are exact dd values via two_sum.  Outputs the final
    polynomial value and the running max magnitude (residual scale).

    Member magnitudes grow roughly like exp(|x|/2) and overflow doubles
    for large degrees, so the carried members and the running max are
    jointly rescaled by exact powers of two; value/scale is unaffected
    and both outputs land in the final common units.
    """
    big = 2.0 ** 600
    shrink = 2.0 ** -600
    m = xrh.shape[0]
    for j in range(m):
        x = (xrh[j], xrl[j], xih[j], xil[j])
        pm2 = _Z4
        pm1 = _Z4
        pc = (eta, 0.0, 0.0, 0.0)
        scale = abs(eta)
        for i in range(n):
            fi = float(i)
            ia = two_sum(fi + 1.0, alpha)
            ik = two_sum(fi + 1.0, kappa)
            prod = dd_mul(ia, ik)
            a = dd_neg(prod)
            t = dd_add(two_sum(2.0 * fi + 1.0, alpha), (kappa, 0.0))
            b = dd_add(dd_mul_d(t, fi), prod)
            t = dd_add(two_sum(3.0 * fi, alpha), (kappa, 0.0))
            c = dd_neg(dd_mul_d(t, fi))
            dco = ((fi - 1.0) * fi, 0.0)
            e = (fi + 1.0, 0.0)
            f = (-fi, 0.0)
            acc = cdd_add(cdd_mul_r(pc, e), cdd_mul_r(pm1, f))
            acc = cdd_mul(x, acc)
            acc = cdd_sub(acc, cdd_mul_r(pc, b))
            acc = cdd_sub(acc, cdd_mul_r(pm1, c))
            acc = cdd_sub(acc, cdd_mul_r(pm2, dco))
            pn = cdd_div_r(acc, a)
            pm2 = pm1
            pm1 = pc
            pc = pn
            mag = math.sqrt((pc[0] + pc[1]) ** 2 + (pc[2] + pc[3]) ** 2)
            if mag > scale:
                scale = mag
            if mag > big:
                pm2 = (pm2[0] * shrink, pm2[1] * shrink,
                       pm2[2] * shrink, pm2[3] * shrink)
                pm1 = (pm1[0] * shrink, pm1[1] * shrink,
                       pm1[2] * shrink, pm1[3] * shrink)
                pc = (pc[0] * shrink, pc[1] * shrink,
                      pc[2] * shrink, pc[3] * shrink)
                scale *= shrink
        orh[j] = pc[0]
        orl[j] = pc[1]
        oih[j] = pc[2]
        oil[j] = pc[3]
        osc[j] = scale
