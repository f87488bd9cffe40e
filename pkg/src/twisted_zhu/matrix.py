"""Small dense matrices over the rationals (lists of rows)."""

from __future__ import annotations

from typing import List, Sequence

from .scalar import ONE, ZERO, Scalar

Matrix = List[List[Scalar]]

__all__ = ["Matrix", "zeros", "identity", "matmul", "matadd", "matscale", "transpose", "is_zero", "nullspace", "rank", "from_strings"]


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def shape(a: Matrix, cols: int = None):
    return len(a), (len(a[0]) if a else (cols or 0))


def matmul(a: Matrix, b: Matrix, inner: int = None) -> Matrix:
    """a @ b; ``inner`` disambiguates empty operands."""
    rows = len(a)
    n = len(b) if inner is None else inner
    cols = len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(n):
            c = ai[k]
            if c:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += c * bk[j]
    return out


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(a: Matrix, c) -> Matrix:
    c = Scalar(c)
    return [[c * x for x in r] for r in a]


def transpose(a: Matrix, cols: int = 0) -> Matrix:
    if not a:
        return [[] for _ in range(cols)]
    return [list(r) for r in zip(*a)]


def is_zero(a: Matrix) -> bool:
    return all(not x for r in a for x in r)


def _rref(a: Matrix, cols: int):
    m = [list(r) for r in a]
    pivots = []
    row = 0
    for col in range(cols):
        sel = next((i for i in range(row, len(m)) if m[i][col]), None)
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        inv = ONE / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    return m[:row], pivots


def rank(a: Matrix, cols: int = None) -> int:
    if cols is None:
        cols = len(a[0]) if a else 0
    return len(_rref(a, cols)[1])


def nullspace(a: Matrix, cols: int) -> List[List[Scalar]]:
    """Basis of {x : a x = 0} as a list of column vectors."""
    red, pivots = _rref(a, cols)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * cols
        x[f] = ONE
        for r, pc in zip(red, pivots):
            x[pc] = -r[f]
        basis.append(x)
    return basis


def from_strings(rows: Sequence[Sequence]) -> Matrix:
    from .scalar import Q

    return [[Q(x) for x in r] for r in rows]
