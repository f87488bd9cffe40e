# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same API and results as ``_pykernels``."""

from cpython.dict cimport PyDict_GetItem
from cpython.ref cimport PyObject

from gmpy2 cimport (GMPy_MPQ_New, MPQ_Check, import_gmpy2, mpq, mpq_ptr,
                    mpq_srcptr)

import heapq

cdef extern from "gmp.h":
    void mpq_mul(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_sub(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_add(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_neg(mpq_ptr, mpq_srcptr)
    int mpq_sgn(mpq_srcptr)

import_gmpy2()

__all__ = ["reduce_vec", "axpy", "mode_word", "clear_mode_cache"]


cdef inline object _sub_mul(object t, object c, object v):
    """t - c*v, through GMP when all three are mpq."""
    cdef mpq r
    if MPQ_Check(t) and MPQ_Check(c) and MPQ_Check(v):
        r = GMPy_MPQ_New(NULL)
        mpq_mul(r.q, (<mpq>c).q, (<mpq>v).q)
        mpq_sub(r.q, (<mpq>t).q, r.q)
        return r
    return t - c * v


cdef inline object _neg_mul(object c, object v):
    cdef mpq r
    if MPQ_Check(c) and MPQ_Check(v):
        r = GMPy_MPQ_New(NULL)
        mpq_mul(r.q, (<mpq>c).q, (<mpq>v).q)
        mpq_neg(r.q, r.q)
        return r
    return -c * v


cpdef axpy(dict x, a, dict y):
    """In place ``x += a*y``; entries that cancel are deleted."""
    cdef PyObject* p
    if not a:
        return
    for k, v in y.items():
        p = PyDict_GetItem(x, k)
        if p is NULL:
            x[k] = a * v
        else:
            t = <object>p + a * v
            if t:
                x[k] = t
            else:
                del x[k]


cpdef dict reduce_vec(x, dict pivots):
    """Return a copy of ``x`` with every pivot key eliminated (largest pivot first)."""
    cdef dict out = dict(x)
    cdef PyObject* p
    cdef list heap
    cdef object k, last, c, row, kk, v, t
    if not pivots or not out:
        return out
    heap = [-kk for kk in out if kk in pivots]
    if not heap:
        return out
    heapq.heapify(heap)
    last = None
    while heap:
        k = -heapq.heappop(heap)
        if k == last:
            continue
        last = k
        p = PyDict_GetItem(out, k)
        if p is NULL:
            continue
        c = <object>p
        row = pivots[k]
        for kk, v in (<dict>row).items():
            p = PyDict_GetItem(out, kk)
            if p is NULL:
                out[kk] = _neg_mul(c, v)
                if kk != k and kk in pivots:
                    heapq.heappush(heap, -kk)
            else:
                t = _sub_mul(<object>p, c, v)
                if t:
                    out[kk] = t
                else:
                    del out[kk]
    return out


# --- Heisenberg Fock space ---------------------------------------------------

cdef dict _MODE_CACHE = {}


def clear_mode_cache():
    _MODE_CACHE.clear()


cdef tuple _insert(tuple w, long k):
    cdef Py_ssize_t i = 0, n = len(w)
    while i < n and <long>w[i] >= k:
        i += 1
    return w[:i] + (k,) + w[i:]


cdef tuple _remove(tuple w, long k):
    cdef Py_ssize_t i = w.index(k)
    return w[:i] + w[i + 1:]


cdef object _binom_int(long n, long k):
    cdef object r = 1
    cdef long j
    for j in range(k):
        r = r * (n - j) // (j + 1)
    return r


cdef long _wsum(tuple w):
    cdef long s = 0
    for x in w:
        s += <long>x
    return s


cpdef tuple mode_word(tuple u, long q, tuple w):
    """u_q w for Fock words, as a sorted tuple of (word, int) pairs."""
    key = (u, q, w)
    cdef PyObject* p = PyDict_GetItem(_MODE_CACHE, key)
    if p is not NULL:
        return <tuple>p
    cdef tuple res
    if not u:
        res = ((w, 1),) if q == -1 else ()
        _MODE_CACHE[key] = res
        return res
    cdef long wt_w = _wsum(w)
    cdef tuple rest = u[1:]
    cdef long wt_rest = _wsum(rest)
    cdef long m = u[0]
    if q > wt_rest + m + wt_w - 1:
        _MODE_CACHE[key] = ()
        return ()
    cdef dict acc = {}
    cdef long i, top = wt_rest + wt_w - 1 - q
    cdef object c
    for i in range(0, top + 1):
        c = _binom_int(m + i - 1, i)
        for x, cx in mode_word(rest, q + i, w):
            y = _insert(x, m + i)
            acc[y] = acc.get(y, 0) + c * cx
    cdef long sign = -1 if m % 2 == 0 else 1
    cdef set seen = set()
    cdef long mult
    for ii in w:
        i = ii
        if i in seen:
            continue
        seen.add(i)
        mult = w.count(i)
        c = sign * _binom_int(m + i - 1, i) * i * mult
        y0 = _remove(w, i)
        for x, cx in mode_word(rest, q - m - i, y0):
            acc[x] = acc.get(x, 0) + c * cx
    cdef list items = []
    for kk, vv in sorted(acc.items()):
        if vv:
            items.append((kk, vv))
    res = tuple(items)
    _MODE_CACHE[key] = res
    return res
