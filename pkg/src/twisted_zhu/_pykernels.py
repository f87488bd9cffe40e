"""Pure-Python hot kernels.

This module is the fallback for ``_ckernels`` (the Cython build of the same
functions).  Both must produce identical results; ``kernels`` picks one at
import time.

Sparse vectors are plain dicts ``key -> nonzero scalar``.  An echelon table
is a dict ``pivot_key -> row`` where each row has coefficient 1 at its pivot
and the pivot is the row's largest key.
"""

from heapq import heapify, heappop, heappush

__all__ = ["reduce_vec", "axpy", "mode_word", "clear_mode_cache"]


def axpy(x, a, y):
    """In place ``x += a*y``; entries that cancel are deleted."""
    if not a:
        return
    for k, v in y.items():
        t = x.get(k)
        if t is None:
            x[k] = a * v
        else:
            t = t + a * v
            if t:
                x[k] = t
            else:
                del x[k]


def reduce_vec(x, pivots):
    """Return a copy of ``x`` with every pivot key eliminated.

    Pivots are processed largest first; subtracting a row only introduces
    keys smaller than its pivot, so a max-heap of candidate keys suffices.
    """
    x = dict(x)
    if not pivots or not x:
        return x
    heap = [-k for k in x if k in pivots]
    if not heap:
        return x
    heapify(heap)
    last = None
    while heap:
        k = -heappop(heap)
        if k == last:
            continue
        last = k
        c = x.get(k)
        if c is None:
            continue
        row = pivots[k]
        for kk, v in row.items():
            t = x.get(kk)
            if t is None:
                x[kk] = -c * v
                if kk != k and kk in pivots:
                    heappush(heap, -kk)
            else:
                t = t - c * v
                if t:
                    x[kk] = t
                else:
                    del x[kk]
    return x


# --- Heisenberg Fock space -------------------------------------------------
#
# Words are weakly decreasing tuples of positive ints; (n1, ..., nk) is
# h(-n1)...h(-nk)1.  mode_word(u, q, w) returns u_q w as a tuple of
# (word, int) pairs: with this basis normalisation all structure constants
# are integers.

_MODE_CACHE = {}


def clear_mode_cache():
    _MODE_CACHE.clear()


def _insert(w, k):
    i = 0
    n = len(w)
    while i < n and w[i] >= k:
        i += 1
    return w[:i] + (k,) + w[i:]


def _remove(w, k):
    i = w.index(k)
    return w[:i] + w[i + 1 :]


def _binom_int(n, k):
    # n >= 0 here
    r = 1
    for j in range(k):
        r = r * (n - j) // (j + 1)
    return r


def mode_word(u, q, w):
    key = (u, q, w)
    hit = _MODE_CACHE.get(key)
    if hit is not None:
        return hit
    if not u:
        res = ((w, 1),) if q == -1 else ()
        _MODE_CACHE[key] = res
        return res
    wt_w = sum(w)
    rest = u[1:]
    wt_rest = sum(rest)
    if q > wt_rest + u[0] + wt_w - 1:
        _MODE_CACHE[key] = ()
        return ()
    m = u[0]
    acc = {}
    # creation part: sum_i C(m+i-1, i) h(-m-i) rest_{q+i} w
    top = wt_rest + wt_w - 1 - q
    for i in range(0, top + 1):
        c = _binom_int(m + i - 1, i)
        for x, cx in mode_word(rest, q + i, w):
            y = _insert(x, m + i)
            acc[y] = acc.get(y, 0) + c * cx
    # annihilation part: -(-1)^m sum_{i>=1} C(m+i-1, i) rest_{q-m-i} h(i) w
    sign = -1 if m % 2 == 0 else 1
    seen = set()
    for i in w:
        if i in seen:
            continue
        seen.add(i)
        mult = w.count(i)
        c = sign * _binom_int(m + i - 1, i) * i * mult
        y0 = _remove(w, i)
        for x, cx in mode_word(rest, q - m - i, y0):
            acc[x] = acc.get(x, 0) + c * cx
    res = tuple((k, v) for k, v in sorted(acc.items()) if v)
    _MODE_CACHE[key] = res
    return res
