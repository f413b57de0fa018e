# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled truncated product kernel.

Same contract as ``heatjet._pykernels.mul_many``.  Products are accumulated
in a dense array indexed by the mixed-radix code ``sum e_i (maxdeg+1)^i``,
which is additive under monomial multiplication.
"""
from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport uint64_t, int64_t

from heatjet import _pykernels

SLOT_BITS = 12
NAME = "cython"

cdef enum:
    SLOT = 12
    MASK = 4095
    # larger accumulators would waste memory on sparse inputs
    MAX_DENSE = 4194304


cdef int _decode(list keys, int d, int64_t base, uint64_t *raw,
                 int64_t *idx, int *deg) except -1:
    cdef Py_ssize_t n = len(keys), t
    cdef int i
    cdef uint64_t k
    cdef int64_t code, mult
    for t in range(n):
        k = keys[t]
        raw[t] = k
        deg[t] = <int>(k >> (SLOT * d))
        code = 0
        mult = 1
        for i in range(d):
            code += <int64_t>((k >> (SLOT * i)) & MASK) * mult
            mult *= base
        idx[t] = code
    return 0


def mul_many(list pairs, int d, int maxdeg):
    cdef int64_t base = maxdeg + 1
    cdef int64_t size = 1
    cdef int i
    for i in range(d):
        size *= base
        if size > MAX_DENSE:
            return _pykernels.mul_many(pairs, d, maxdeg)
    if SLOT * (d + 1) > 63:
        return _pykernels.mul_many(pairs, d, maxdeg)

    cdef list acc = [0] * size
    cdef uint64_t *keyof = <uint64_t *> malloc(size * sizeof(uint64_t))
    cdef char *seen = <char *> calloc(size, 1)
    cdef int64_t *touched = <int64_t *> malloc(size * sizeof(int64_t))
    cdef int64_t ntouched = 0
    cdef uint64_t *ra = NULL
    cdef uint64_t *rb = NULL
    cdef int64_t *ia = NULL
    cdef int64_t *ib = NULL
    cdef int *da = NULL
    cdef int *db = NULL
    cdef Py_ssize_t na, nb, x, y
    cdef int lim
    cdef int64_t t
    cdef list ka, ca, kb, cb
    cdef object cx
    if keyof == NULL or seen == NULL or touched == NULL:
        free(keyof); free(seen); free(touched)
        raise MemoryError()
    try:
        for pair in pairs:
            ka, ca, kb, cb = pair
            na = len(ka)
            nb = len(kb)
            if na == 0 or nb == 0:
                continue
            ra = <uint64_t *> malloc(na * sizeof(uint64_t))
            rb = <uint64_t *> malloc(nb * sizeof(uint64_t))
            ia = <int64_t *> malloc(na * sizeof(int64_t))
            ib = <int64_t *> malloc(nb * sizeof(int64_t))
            da = <int *> malloc(na * sizeof(int))
            db = <int *> malloc(nb * sizeof(int))
            if not (ra and rb and ia and ib and da and db):
                raise MemoryError()
            _decode(ka, d, base, ra, ia, da)
            _decode(kb, d, base, rb, ib, db)
            for x in range(na):
                lim = maxdeg - da[x]
                if lim < db[0]:
                    break
                cx = ca[x]
                for y in range(nb):
                    if db[y] > lim:
                        break
                    t = ia[x] + ib[y]
                    acc[t] = acc[t] + cx * cb[y]
                    if not seen[t]:
                        seen[t] = 1
                        keyof[t] = ra[x] + rb[y]
                        touched[ntouched] = t
                        ntouched += 1
            free(ra); free(rb); free(ia); free(ib); free(da); free(db)
            ra = rb = NULL
            ia = ib = NULL
            da = db = NULL

        out = {}
        for x in range(ntouched):
            t = touched[x]
            v = acc[t]
            if v:
                out[keyof[t]] = v
        return out
    finally:
        free(ra); free(rb); free(ia); free(ib); free(da); free(db)
        free(keyof); free(seen); free(touched)
