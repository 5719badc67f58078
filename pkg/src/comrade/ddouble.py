"""Double-double arithmetic: unevaluated sums of two floats.

A value is represented as a pair (hi, lo) with hi = fl(hi + lo) and
|lo| <= ulp(hi)/2, giving roughly 32 significant decimal digits.  The
primitive error-free transformations (two_sum, two_prod) follow the
classical Dekker/Knuth constructions; products are split multiplications
so no fused multiply-add hardware is assumed.

The module exposes two layers:

* plain functions on (hi, lo) tuples, compiled with numba so the heavy
  kernels can call them at machine speed, and
* a small ``DoubleDouble`` wrapper class (plus ``ComplexDD``) for code
  that prefers operator syntax, used by tests and matrix assembly.

Complex double-double scalars are 4-tuples (re_hi, re_lo, im_hi, im_lo).
"""

from __future__ import annotations

import math
from fractions import Fraction

from numba import njit

# unit roundoffs used in error-bound formulas
EPS_DOUBLE = 2.0 ** -52
EPS_DD = 2.0 ** -104

_SPLITTER = 134217729.0  # 2**27 + 1


# ---------------------------------------------------------------------------
# error-free transformations
# ---------------------------------------------------------------------------

@njit(cache=True)
def two_sum(a, b):
    """Exact sum: returns (s, e) with s = fl(a+b) and a + b = s + e."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit(cache=True)
def quick_two_sum(a, b):
    """Exact sum assuming |a| >= |b|."""
    s = a + b
    return s, b - (s - a)


@njit(cache=True)
def two_prod(a, b):
    """Exact product: returns (p, e) with p = fl(a*b) and a*b = p + e."""
    p = a * b
    ta = _SPLITTER * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLITTER * b
    bhi = tb - (tb - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


# ---------------------------------------------------------------------------
# real double-double operations on (hi, lo) tuples
# ---------------------------------------------------------------------------

@njit(cache=True)
def dd_renorm(hi, lo):
    return quick_two_sum(hi, lo)


@njit(cache=True)
def dd_add(a, b):
    s1, s2 = two_sum(a[0], b[0])
    t1, t2 = two_sum(a[1], b[1])
    s2 += t1
    s1, s2 = quick_two_sum(s1, s2)
    s2 += t2
    return quick_two_sum(s1, s2)


@njit(cache=True)
def dd_neg(a):
    return -a[0], -a[1]


@njit(cache=True)
def dd_sub(a, b):
    return dd_add(a, (-b[0], -b[1]))


@njit(cache=True)
def dd_mul(a, b):
    p1, p2 = two_prod(a[0], b[0])
    p2 += a[0] * b[1] + a[1] * b[0]
    return quick_two_sum(p1, p2)


@njit(cache=True)
def dd_mul_d(a, b):
    """Multiply a double-double by a plain double."""
    p1, p2 = two_prod(a[0], b)
    p2 += a[1] * b
    return quick_two_sum(p1, p2)


@njit(cache=True)
def dd_div(a, b):
    q1 = a[0] / b[0]
    r = dd_sub(a, dd_mul_d(b, q1))
    q2 = r[0] / b[0]
    r = dd_sub(r, dd_mul_d(b, q2))
    q3 = r[0] / b[0]
    s, e = quick_two_sum(q1, q2)
    return quick_two_sum(s, e + q3)


@njit(cache=True)
def dd_sqrt(a):
    """Square root by one Newton correction of the double estimate."""
    if a[0] == 0.0 and a[1] == 0.0:
        return 0.0, 0.0
    r = math.sqrt(a[0])
    p1, p2 = two_prod(r, r)
    res = dd_sub(a, (p1, p2))
    corr = (res[0] + res[1]) / (2.0 * r)
    return quick_two_sum(r, corr)


@njit(cache=True)
def dd_abs(a):
    if a[0] < 0.0 or (a[0] == 0.0 and a[1] < 0.0):
        return -a[0], -a[1]
    return a[0], a[1]


# ---------------------------------------------------------------------------
# complex double-double operations on 4-tuples
# ---------------------------------------------------------------------------

@njit(cache=True)
def cdd_add(a, b):
    re = dd_add((a[0], a[1]), (b[0], b[1]))
    im = dd_add((a[2], a[3]), (b[2], b[3]))
    return re[0], re[1], im[0], im[1]


@njit(cache=True)
def cdd_sub(a, b):
    re = dd_sub((a[0], a[1]), (b[0], b[1]))
    im = dd_sub((a[2], a[3]), (b[2], b[3]))
    return re[0], re[1], im[0], im[1]


@njit(cache=True)
def cdd_neg(a):
    return -a[0], -a[1], -a[2], -a[3]


@njit(cache=True)
def cdd_conj(a):
    return a[0], a[1], -a[2], -a[3]


@njit(cache=True)
def cdd_mul(a, b):
    ar = (a[0], a[1])
    ai = (a[2], a[3])
    br = (b[0], b[1])
    bi = (b[2], b[3])
    re = dd_sub(dd_mul(ar, br), dd_mul(ai, bi))
    im = dd_add(dd_mul(ar, bi), dd_mul(ai, br))
    return re[0], re[1], im[0], im[1]


@njit(cache=True)
def cdd_mul_r(a, r):
    """Complex double-double times real double-double."""
    re = dd_mul((a[0], a[1]), r)
    im = dd_mul((a[2], a[3]), r)
    return re[0], re[1], im[0], im[1]


@njit(cache=True)
def cdd_mul_d(a, d):
    re = dd_mul_d((a[0], a[1]), d)
    im = dd_mul_d((a[2], a[3]), d)
    return re[0], re[1], im[0], im[1]


@njit(cache=True)
def cdd_div_r(a, r):
    re = dd_div((a[0], a[1]), r)
    im = dd_div((a[2], a[3]), r)
    return re[0], re[1], im[0], im[1]


@njit(cache=True)
def cdd_abs2(a):
    """|z|^2 as a real double-double."""
    return dd_add(dd_mul((a[0], a[1]), (a[0], a[1])),
                  dd_mul((a[2], a[3]), (a[2], a[3])))


@njit(cache=True)
def cdd_div(a, b):
    num = cdd_mul(a, cdd_conj(b))
    den = cdd_abs2(b)
    return cdd_div_r(num, den)


@njit(cache=True)
def cdd_sqrt(a):
    """Principal square root of a complex double-double."""
    x = (a[0], a[1])
    y = (a[2], a[3])
    if x[0] == 0.0 and x[1] == 0.0 and y[0] == 0.0 and y[1] == 0.0:
        return 0.0, 0.0, 0.0, 0.0
    hyp = dd_sqrt(dd_add(dd_mul(x, x), dd_mul(y, y)))
    if x[0] >= 0.0:
        t = dd_sqrt(dd_mul_d(dd_add(hyp, x), 0.5))
        im = dd_div(y, dd_mul_d(t, 2.0))
        return t[0], t[1], im[0], im[1]
    t = dd_sqrt(dd_mul_d(dd_sub(hyp, x), 0.5))
    re = dd_div(dd_abs(y), dd_mul_d(t, 2.0))
    if y[0] < 0.0 or (y[0] == 0.0 and y[1] < 0.0):
        return re[0], re[1], -t[0], -t[1]
    return re[0], re[1], t[0], t[1]


# ---------------------------------------------------------------------------
# wrapper classes
# ---------------------------------------------------------------------------

class DoubleDouble:
    """A double-double scalar with operator syntax.

    Construction from a float is exact.  Decimal strings go through
    ``from_str`` which rounds the exact rational to the nearest pair,
    so inputs like '0.1' carry about 32 correct digits.
    """

    __slots__ = ("hi", "lo")

    def __init__(self, hi=0.0, lo=0.0):
        hi, lo = quick_two_sum(float(hi), float(lo))
        self.hi = hi
        self.lo = lo

    @classmethod
    def from_str(cls, s: str) -> "DoubleDouble":
        fr = Fraction(s)
        hi = float(fr)
        lo = float(fr - Fraction(hi))
        return cls(hi, lo)

    @classmethod
    def _raw(cls, t) -> "DoubleDouble":
        out = cls.__new__(cls)
        out.hi, out.lo = t
        return out

    def _t(self):
        return self.hi, self.lo

    @staticmethod
    def _coerce(other):
        if isinstance(other, DoubleDouble):
            return other._t()
        return float(other), 0.0

    def __add__(self, other):
        return DoubleDouble._raw(dd_add(self._t(), self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return DoubleDouble._raw(dd_sub(self._t(), self._coerce(other)))

    def __rsub__(self, other):
        return DoubleDouble._raw(dd_sub(self._coerce(other), self._t()))

    def __mul__(self, other):
        return DoubleDouble._raw(dd_mul(self._t(), self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return DoubleDouble._raw(dd_div(self._t(), self._coerce(other)))

    def __rtruediv__(self, other):
        return DoubleDouble._raw(dd_div(self._coerce(other), self._t()))

    def __neg__(self):
        return DoubleDouble._raw((-self.hi, -self.lo))

    def __abs__(self):
        return DoubleDouble._raw(dd_abs(self._t()))

    def sqrt(self):
        return DoubleDouble._raw(dd_sqrt(self._t()))

    def __float__(self):
        return float(self.hi + self.lo)

    def __eq__(self, other):
        o = self._coerce(other)
        return self.hi == o[0] and self.lo == o[1]

    def __lt__(self, other):
        o = self._coerce(other)
        return (self.hi, self.lo) < o

    def __le__(self, other):
        return self == other or self < other

    def __repr__(self):
        return f"DoubleDouble({self.hi!r}, {self.lo!r})"


class ComplexDD:
    """A complex scalar with double-double real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0.0, im=0.0):
        self.re = re if isinstance(re, DoubleDouble) else DoubleDouble(re)
        self.im = im if isinstance(im, DoubleDouble) else DoubleDouble(im)

    @classmethod
    def _raw(cls, t) -> "ComplexDD":
        out = cls.__new__(cls)
        out.re = DoubleDouble._raw((t[0], t[1]))
        out.im = DoubleDouble._raw((t[2], t[3]))
        return out

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexDD":
        return cls(float(z.real), float(z.imag))

    def _t(self):
        return self.re.hi, self.re.lo, self.im.hi, self.im.lo

    @staticmethod
    def _coerce(other):
        if isinstance(other, ComplexDD):
            return other._t()
        if isinstance(other, DoubleDouble):
            return other.hi, other.lo, 0.0, 0.0
        z = complex(other)
        return z.real, 0.0, z.imag, 0.0

    def __add__(self, other):
        return ComplexDD._raw(cdd_add(self._t(), self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return ComplexDD._raw(cdd_sub(self._t(), self._coerce(other)))

    def __rsub__(self, other):
        return ComplexDD._raw(cdd_sub(self._coerce(other), self._t()))

    def __mul__(self, other):
        return ComplexDD._raw(cdd_mul(self._t(), self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return ComplexDD._raw(cdd_div(self._t(), self._coerce(other)))

    def __neg__(self):
        return ComplexDD._raw(cdd_neg(self._t()))

    def conjugate(self):
        return ComplexDD._raw(cdd_conj(self._t()))

    def sqrt(self):
        return ComplexDD._raw(cdd_sqrt(self._t()))

    def abs2(self) -> DoubleDouble:
        return DoubleDouble._raw(cdd_abs2(self._t()))

    def __abs__(self) -> DoubleDouble:
        return DoubleDouble._raw(dd_sqrt(cdd_abs2(self._t())))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        return self._t() == self._coerce(other)

    def __repr__(self):
        return f"ComplexDD({self.re!r}, {self.im!r})"
