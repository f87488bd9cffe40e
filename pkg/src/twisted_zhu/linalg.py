"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping an ordered key to a nonzero scalar.  A row's
*pivot* is its largest key.  :class:`SpanBasis` is the reduced row-echelon
form with respect to that convention: every pivot has coefficient 1 and
appears in no other row.  Because the echelon form is canonical, the
certificates and coordinates below are reproducible bit for bit.

Taking the pivot to be the largest key has a useful consequence when keys
are ordered by weight first: the rows whose pivot has weight <= W are a
basis of the intersection of the span with the weight-<=W subspace.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence

from .kernels import axpy, reduce_vec
from .scalar import Scalar

__all__ = [
    "SparseVec",
    "SpanBasis",
    "EchelonBuilder",
    "reduce_span",
    "membership_certificate",
    "quotient_coordinates",
    "intersect_spans",
    "NotInAmbientError",
    "vec_clean",
    "vec_add",
    "vec_scale",
    "vec_lincomb",
    "complement_keys",
]

SparseVec = dict


def vec_clean(x: Mapping) -> dict:
    """Copy with exact scalars and no stored zeros."""
    out = {}
    for k, v in x.items():
        if v:
            out[k] = Scalar(v)
    return out


def vec_add(x: Mapping, y: Mapping) -> dict:
    out = dict(x)
    axpy(out, Scalar(1), y)
    return out


def vec_scale(x: Mapping, a) -> dict:
    a = Scalar(a)
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def vec_lincomb(coeffs: Sequence, vecs: Sequence[Mapping]) -> dict:
    out: dict = {}
    for c, v in zip(coeffs, vecs):
        if c:
            axpy(out, Scalar(c), v)
    return out


class NotInAmbientError(ValueError):
    """Raised by :func:`quotient_coordinates` when x lies outside the ambient span."""


class EchelonBuilder:
    """Mutable row-echelon table that absorbs vectors one at a time.

    Rows are kept in semi-reduced form (pivot = max key, coefficient 1)
    until :meth:`basis` produces the canonical reduced form.
    """

    __slots__ = ("table",)

    def __init__(self, rows: Iterable[Mapping] = ()):
        self.table: dict = {}
        for r in rows:
            self.add(r)

    def __len__(self) -> int:
        return len(self.table)

    @property
    def rank(self) -> int:
        return len(self.table)

    def add(self, vec: Mapping) -> bool:
        """Absorb ``vec``; return True when the rank grew."""
        r = reduce_vec(vec, self.table)
        if not r:
            return False
        piv = max(r)
        lead = r[piv]
        if lead != 1:
            inv = 1 / Scalar(lead)
            r = {k: v * inv for k, v in r.items()}
        self.table[piv] = r
        return True

    def reduce(self, vec: Mapping) -> dict:
        return reduce_vec(vec, self.table)

    def contains(self, vec: Mapping) -> bool:
        return not reduce_vec(vec, self.table)

    def copy(self) -> "EchelonBuilder":
        b = EchelonBuilder()
        b.table = dict(self.table)
        return b

    def basis(self) -> "SpanBasis":
        reduced: dict = {}
        for piv in sorted(self.table):
            row = self.table[piv]
            # rows with smaller pivots are already fully reduced
            reduced[piv] = reduce_vec(row, reduced) if reduced else dict(row)
        return SpanBasis._from_table(reduced)


class SpanBasis:
    """Reduced row-echelon basis of a subspace.

    ``rows`` are ordered by decreasing pivot; ``pivots`` is ascending.
    Instances are treated as immutable.
    """

    __slots__ = ("_table", "_pivots", "_rows")

    def __init__(self, rows: Iterable[Mapping] = ()):
        b = EchelonBuilder(rows).basis()
        self._table = b._table
        self._pivots = b._pivots
        self._rows = b._rows

    @classmethod
    def _from_table(cls, table: dict) -> "SpanBasis":
        self = object.__new__(cls)
        self._table = table
        self._pivots = tuple(sorted(table))
        self._rows = tuple(table[p] for p in reversed(self._pivots))
        return self

    @classmethod
    def coordinate(cls, keys: Iterable[Hashable]) -> "SpanBasis":
        """Span of the unit vectors at ``keys``."""
        return cls._from_table({k: {k: Scalar(1)} for k in keys})

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def pivots(self) -> tuple:
        return self._pivots

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def table(self) -> dict:
        return self._table

    def __len__(self) -> int:
        return len(self._pivots)

    def __contains__(self, vec) -> bool:
        return not reduce_vec(vec, self._table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpanBasis):
            return NotImplemented
        return self._table == other._table

    def __hash__(self):
        return hash(self._pivots)

    def __repr__(self) -> str:
        return f"SpanBasis(rank={self.rank})"

    def reduce(self, vec: Mapping) -> dict:
        return reduce_vec(vec, self._table)

    def restrict(self, keep: Callable[[Hashable], bool]) -> "SpanBasis":
        """Rows whose pivot satisfies ``keep``.

        When ``keep`` selects a down-closed set of keys this is exactly the
        intersection with the coordinate subspace on that set.
        """
        return SpanBasis._from_table({p: r for p, r in self._table.items() if keep(p)})

    def builder(self) -> EchelonBuilder:
        b = EchelonBuilder()
        b.table = dict(self._table)
        return b


def reduce_span(generators: Iterable[Mapping]) -> SpanBasis:
    """Reduced row-echelon basis of the span of ``generators``."""
    return EchelonBuilder(generators).basis()


def membership_certificate(x: Mapping, s: SpanBasis) -> Optional[list]:
    """Coefficients c with sum(c_i * s.rows[i]) == x, or None if x is not in the span.

    In reduced echelon form the coefficient of the row with pivot p is x[p].
    """
    coeffs = [Scalar(x.get(p, 0)) for p in reversed(s.pivots)]
    resid = dict(x)
    for c, row in zip(coeffs, s.rows):
        if c:
            axpy(resid, -c, row)
    if resid:
        return None
    if not x:
        return []
    return coeffs


def quotient_coordinates(x: Mapping, ambient: SpanBasis, sub: SpanBasis) -> list:
    """Coordinates of x + span(sub) in span(ambient)/span(sub).

    The complement basis is indexed by the ambient pivots that are not
    pivots of ``sub`` (ascending key order); the coordinate at such a key is
    the entry of x after reduction by ``sub``.
    """
    if ambient.reduce(x):
        raise NotInAmbientError("vector is not in the ambient span")
    y = sub.reduce(x)
    sub_piv = sub.table
    return [Scalar(y.get(k, 0)) for k in ambient.pivots if k not in sub_piv]


def complement_keys(ambient: SpanBasis, sub: SpanBasis) -> list:
    return [k for k in ambient.pivots if k not in sub.table]


def intersect_spans(a: SpanBasis, b: SpanBasis) -> SpanBasis:
    """Basis of span(a) ∩ span(b).

    Stacks ``[a | a]`` over ``[b | 0]`` in a doubled key space whose left
    copy sorts above the right copy, then eliminates; rows whose pivot lands
    in the right copy are the intersection (the kernel of the stacked map).
    """
    if a.rank == 0 or b.rank == 0:
        return SpanBasis()
    # keys are ints (the kernels negate them); shift the left copy above every key
    hi = max(max(r) for r in a.rows + b.rows)
    off = 1 + hi - min(min(r) for r in a.rows + b.rows)
    builder = EchelonBuilder()
    for row in a.rows:
        v = {k + off: c for k, c in row.items()}
        v.update(row)
        builder.add(v)
    for row in b.rows:
        builder.add({k + off: c for k, c in row.items()})
    inter = []
    for piv, row in builder.table.items():
        if piv <= hi:
            inter.append(dict(row))
    return reduce_span(inter)
