# cython: language_level=3
# cython: boundscheck=False
"""Compiled arithmetic kernels.

Same contract as ``_kernels_py``: exact rationals in, exact rationals out.
Products and sums are accumulated as integer numerator/denominator pairs
(cross-multiplied additions, occasional gcd reduction to cap growth) and
normalized once per output coordinate through ``Fraction``.
"""

from fractions import Fraction
from math import gcd

BACKEND = "cython"

cdef object _Fraction = Fraction
cdef object _gcd = gcd


def build_table(pair_rows):
    """Structure constants as (k, numerator, denominator) int triples."""
    return tuple(
        tuple(
            tuple((k, c.numerator, c.denominator) for k, c in cell)
            for cell in row
        )
        for row in pair_rows
    )


cdef inline void _acc_add(list num, list den, Py_ssize_t k, object qn, object qd):
    cdef object n0 = num[k]
    cdef object d0 = den[k]
    cdef object g
    if d0 == qd:
        num[k] = n0 + qn
        return
    n0 = n0 * qd + qn * d0
    d0 = d0 * qd
    if (<object>d0).bit_length() > 128:
        g = _gcd(n0, d0)
        if g > 1:
            n0 //= g
            d0 //= g
    num[k] = n0
    den[k] = d0


cdef void _contract(tuple ca, tuple cb, tuple table, Py_ssize_t dim,
                    list num, list den):
    cdef Py_ssize_t i, j, k
    cdef object a, b, an, ad, bn, bd, pn, pd
    cdef tuple row, cell, trip
    for i in range(dim):
        a = ca[i]
        if not a:
            continue
        an = a.numerator
        ad = a.denominator
        row = <tuple>table[i]
        for j in range(dim):
            b = cb[j]
            if not b:
                continue
            cell = <tuple>row[j]
            if len(cell) == 0:
                continue
            bn = b.numerator
            bd = b.denominator
            pn = an * bn
            pd = ad * bd
            for trip in cell:
                k = <Py_ssize_t>trip[0]
                _acc_add(num, den, k, pn * trip[1], pd * trip[2])


def ael_mul(ca, cb, table, Py_ssize_t dim):
    """Multiply two coordinate vectors through the structure constants."""
    cdef list num = [0] * dim
    cdef list den = [1] * dim
    _contract(tuple(ca), tuple(cb), <tuple>table, dim, num, den)
    cdef Py_ssize_t k
    return [_Fraction(num[k], den[k]) for k in range(dim)]


def apoly_mul_terms(terms_a, terms_b, table, Py_ssize_t dim):
    """Convolve two term maps ``{exponent tuple: coordinate tuple}``."""
    cdef dict acc = {}
    cdef tuple ea, eb, key
    cdef object ca, cb, pair
    cdef list num, den
    cdef Py_ssize_t k
    for ea, ca in terms_a.items():
        for eb, cb in terms_b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            pair = acc.get(key)
            if pair is None:
                num = [0] * dim
                den = [1] * dim
                acc[key] = (num, den)
            else:
                num = <list>(<tuple>pair)[0]
                den = <list>(<tuple>pair)[1]
            _contract(<tuple>ca, <tuple>cb, <tuple>table, dim, num, den)
    cdef dict out = {}
    for key, pair in acc.items():
        num = <list>(<tuple>pair)[0]
        den = <list>(<tuple>pair)[1]
        coords = tuple(_Fraction(num[k], den[k]) for k in range(dim))
        if any(coords):
            out[key] = coords
    return out
