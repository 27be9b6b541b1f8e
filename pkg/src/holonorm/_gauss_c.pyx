# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of holonorm._gauss: same surface, faster inner loops.

Coefficients stay arbitrary-precision Python ints; the win comes from
static dispatch and inlined rational arithmetic in the series kernel.
"""

from fractions import Fraction
from math import gcd


cdef tuple _reduce(object n, object d):
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    if d < 0:
        n, d = -n, -d
    if n == 0:
        return 0, 1
    g = gcd(n, d)
    return n // g, d // g


cdef class GaussRational:
    """Exact complex scalar with rational real and imaginary parts."""

    cdef readonly object rn
    cdef readonly object rd
    cdef readonly object imn
    cdef readonly object imd

    def __init__(self, re=0, im=0):
        rn, rd = _as_ratio(re)
        imn, imd = _as_ratio(im)
        self.rn, self.rd = _reduce(rn, rd)
        self.imn, self.imd = _reduce(imn, imd)

    @staticmethod
    def _raw(rn, rd, imn, imd):
        return _raw(rn, rd, imn, imd)

    @property
    def re(self):
        return Fraction(self.rn, self.rd)

    @property
    def im(self):
        return Fraction(self.imn, self.imd)

    cpdef bint is_zero(self):
        return self.rn == 0 and self.imn == 0

    def is_real(self):
        return self.imn == 0

    def is_imaginary(self):
        return self.rn == 0

    def is_rational_integer(self):
        return self.imn == 0 and self.rd == 1

    def conjugate(self):
        return _raw(self.rn, self.rd, -self.imn, self.imd)

    def modulus_squared(self):
        return Fraction(self.rn * self.rn, self.rd * self.rd) + Fraction(
            self.imn * self.imn, self.imd * self.imd
        )

    def __bool__(self):
        return not (self.rn == 0 and self.imn == 0)

    def __add__(self, other):
        cdef GaussRational o = _coerce(other)
        if o is None:
            return NotImplemented
        if not isinstance(self, GaussRational):
            return _coerce(self).__add__(other)
        return _add(<GaussRational>self, o)

    def __radd__(self, other):
        cdef GaussRational o = _coerce(other)
        if o is None:
            return NotImplemented
        return _add(o, self)

    def __neg__(self):
        return _raw(-self.rn, self.rd, -self.imn, self.imd)

    def __sub__(self, other):
        cdef GaussRational o = _coerce(other)
        if o is None:
            return NotImplemented
        return _add(<GaussRational>self, _raw(-o.rn, o.rd, -o.imn, o.imd))

    def __rsub__(self, other):
        cdef GaussRational o = _coerce(other)
        if o is None:
            return NotImplemented
        return _add(o, _raw(-self.rn, self.rd, -self.imn, self.imd))

    def __mul__(self, other):
        cdef GaussRational o = _coerce(other)
        if o is None:
            return NotImplemented
        if not isinstance(self, GaussRational):
            return _mul(o, _coerce(self))
        return _mul(<GaussRational>self, o)

    def __rmul__(self, other):
        cdef GaussRational o = _coerce(other)
        if o is None:
            return NotImplemented
        return _mul(o, self)

    def __truediv__(self, other):
        cdef GaussRational o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.rn == 0 and o.imn == 0:
            raise ZeroDivisionError("division by zero GaussRational")
        m2 = o.modulus_squared()
        inv = _raw(
            o.rn * m2.denominator,
            o.rd * m2.numerator,
            -o.imn * m2.denominator,
            o.imd * m2.numerator,
        )
        return _mul(<GaussRational>self, <GaussRational>inv)

    def __rtruediv__(self, other):
        cdef GaussRational o = _coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, n, mod):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = _raw(1, 1, 0, 1)
        base = self
        while n:
            if n & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            n >>= 1
        return result

    def __richcmp__(self, other, int op):
        cdef GaussRational o = _coerce(other)
        if o is None:
            return NotImplemented
        eq = (
            self.rn == o.rn
            and self.rd == o.rd
            and self.imn == o.imn
            and self.imd == o.imd
        )
        if op == 2:
            return eq
        if op == 3:
            return not eq
        return NotImplemented

    def __hash__(self):
        return hash((self.rn, self.rd, self.imn, self.imd))

    def __repr__(self):
        return f"GaussRational({self.rn}/{self.rd}, {self.imn}/{self.imd})"

    def __str__(self):
        return f"({self.rn}/{self.rd},{self.imn}/{self.imd})"


cdef GaussRational _raw(object rn, object rd, object imn, object imd):
    cdef GaussRational self = GaussRational.__new__(GaussRational)
    self.rn, self.rd = _reduce(rn, rd)
    self.imn, self.imd = _reduce(imn, imd)
    return self


cdef GaussRational _add(GaussRational a, GaussRational b):
    return _raw(
        a.rn * b.rd + b.rn * a.rd,
        a.rd * b.rd,
        a.imn * b.imd + b.imn * a.imd,
        a.imd * b.imd,
    )


cdef GaussRational _mul(GaussRational a, GaussRational b):
    return _raw(
        a.rn * b.rn * a.imd * b.imd - a.imn * b.imn * a.rd * b.rd,
        a.rd * b.rd * a.imd * b.imd,
        a.rn * b.imn * a.imd * b.rd + a.imn * b.rn * a.rd * b.imd,
        a.rd * b.imd * a.imd * b.rd,
    )


cdef GaussRational _coerce(object value):
    if isinstance(value, GaussRational):
        return <GaussRational>value
    if isinstance(value, (int, Fraction)):
        return GaussRational(value)
    return None


def _as_ratio(value):
    if isinstance(value, int):
        return value, 1
    if isinstance(value, Fraction):
        return value.numerator, value.denominator
    if isinstance(value, GaussRational):
        if value.imn != 0:
            raise ValueError("non-real GaussRational used as a rational part")
        return value.rn, value.rd
    raise TypeError(f"cannot build a rational part from {value!r}")


def as_gauss(value):
    """Coerce ints, Fractions and GaussRationals; None when impossible."""
    return _coerce(value)


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)


def series_add(dict a, dict b):
    cdef dict out = dict(a)
    cdef GaussRational s
    for exps, coeff in b.items():
        cur = out.get(exps)
        if cur is None:
            out[exps] = coeff
        else:
            s = _add(<GaussRational>cur, <GaussRational>coeff)
            if s.rn == 0 and s.imn == 0:
                del out[exps]
            else:
                out[exps] = s
    return out


def series_neg(dict a):
    cdef dict out = {}
    cdef GaussRational c
    for exps, coeff in a.items():
        c = <GaussRational>coeff
        out[exps] = _raw(-c.rn, c.rd, -c.imn, c.imd)
    return out


def series_scale(dict a, GaussRational c):
    cdef dict out = {}
    if c.rn == 0 and c.imn == 0:
        return out
    for exps, coeff in a.items():
        out[exps] = _mul(<GaussRational>coeff, c)
    return out


def series_mul(dict a, dict b, int cap):
    """Sparse product of exponent-dicts, dropping total degree > cap."""
    cdef dict out = {}
    cdef list bitems = []
    cdef int da, db, rem, i, n
    cdef tuple ea, eb, exps
    cdef GaussRational ca, cb, c, s
    if len(a) > len(b):
        a, b = b, a
    for eb, coeff in b.items():
        db = 0
        for x in eb:
            db += <int>x
        bitems.append((eb, db, coeff))
    for ea, acoeff in a.items():
        ca = <GaussRational>acoeff
        da = 0
        for x in ea:
            da += <int>x
        rem = cap - da
        n = len(ea)
        for eb, db, bcoeff in bitems:
            if <int>db > rem:
                continue
            cb = <GaussRational>bcoeff
            exps = tuple(ea[i] + eb[i] for i in range(n))
            c = _mul(ca, cb)
            cur = out.get(exps)
            if cur is None:
                if not (c.rn == 0 and c.imn == 0):
                    out[exps] = c
            else:
                s = _add(<GaussRational>cur, c)
                if s.rn == 0 and s.imn == 0:
                    del out[exps]
                else:
                    out[exps] = s
    return out
