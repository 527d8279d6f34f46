# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_pykernels``."""

from fractions import Fraction

import array

from libc.stdint cimport int64_t


cpdef void axpy(dict target, dict source, object scale):
    cdef object k, x, v
    if not scale:
        return
    for k, x in source.items():
        v = target.get(k)
        if v is None:
            target[k] = x * scale
        else:
            v = v + x * scale
            if v:
                target[k] = v
            else:
                del target[k]


cpdef dict reduce_vector(dict rows, object vec):
    cdef dict r = {}
    cdef object k, x, c, row
    for k, x in vec.items():
        if x:
            r[k] = Fraction(x)
    for k in list(r):
        row = rows.get(k)
        if row is not None:
            c = r.get(k)
            if c:
                axpy(r, <dict>row, -c)
    return r


cdef inline int64_t _height(int64_t key, int64_t radix):
    cdef int64_t h = 0
    while key:
        h += key % radix
        key //= radix
    return h


cpdef dict series_mul(dict a, dict b, long radix, long bound):
    if not a or not b:
        return {}
    cdef object v, amax = 0, bmax = 0
    for v in a.values():
        if abs(v) > amax:
            amax = abs(v)
    for v in b.values():
        if abs(v) > bmax:
            bmax = abs(v)
    top = max(a) + max(b) + 1
    # int64 dense path only when no partial sum can overflow
    if amax * bmax * min(len(a), len(b)) >= (1 << 62) or top > (1 << 22):
        from ._pykernels import series_mul as slow
        return slow(a, b, radix, bound)
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef int64_t[:] ka = array.array("q", list(a.keys()))
    cdef int64_t[:] kb = array.array("q", list(b.keys()))
    cdef int64_t[:] xa = array.array("q", list(a.values()))
    cdef int64_t[:] xb = array.array("q", list(b.values()))
    cdef int64_t[:] ha = array.array("q", [0] * na)
    cdef int64_t[:] hb = array.array("q", [0] * nb)
    cdef int64_t[:] acc = array.array("q", bytes(8 * top))
    for i in range(na):
        ha[i] = _height(ka[i], radix)
    for j in range(nb):
        hb[j] = _height(kb[j], radix)
    for i in range(na):
        for j in range(nb):
            if ha[i] + hb[j] <= bound:
                acc[ka[i] + kb[j]] += xa[i] * xb[j]
    cdef dict out = {}
    cdef Py_ssize_t k
    for k in range(top):
        if acc[k] != 0:
            out[k] = acc[k]
    return out
