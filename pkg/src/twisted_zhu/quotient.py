"""Filtered images of A_{g,n,m}(V) = V/O_{g,n,m}(V).

The relation span is generated by :class:`~twisted_zhu.products.OGenerator`
up to total constituent weight B.  Since echelon pivots are the largest keys
and keys are ordered by weight first, the relation rows with pivot weight
<= W form a basis of O ∩ V_{<=W}; the coset representatives are the
remaining words of weight <= W.

Relation spans are cached per (automorphism, m, n, level, P) and extended in
place when a larger B is requested.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .fock import Element, Word
from .grades import GradeIndex
from .linalg import EchelonBuilder, SpanBasis
from .products import OGenerator, star_n
from .scalar import ZERO, Scalar

__all__ = [
    "TruncationError",
    "NotStabilizedError",
    "FilteredQuotient",
    "filtered_quotient",
    "relation_span",
    "relation_table",
    "algebra_structure",
    "StructureTable",
    "clear_relation_cache",
]


class TruncationError(RuntimeError):
    """A result depends on data beyond the computed weight or generator caps."""


class NotStabilizedError(RuntimeError):
    pass


class _RelationState:
    """Incrementally grown relation span for one (voa, m, n, level, P)."""

    def __init__(self, voa, m, n, level, P):
        self.args = (voa, m, n, level, P)
        self.lock = threading.Lock()
        self._reset()

    def _reset(self) -> None:
        self.gen = OGenerator(*self.args)
        self.builder = EchelonBuilder()
        # rank_at[t] = rank after layer t; pivots_at[t] = sorted pivot keys after layer t
        self.rank_at: List[int] = []
        self.pivots_at: List[Tuple[int, ...]] = []
        # rows are never mutated once stored, so shallow table copies are snapshots
        self.tables_at: List[dict] = []
        self.basis_at: Dict[int, SpanBasis] = {}

    def extend(self, B: int) -> None:
        with self.lock:
            done = len(self.rank_at)
            try:
                self._grow(B)
            except BaseException:
                # a half-absorbed layer cannot be resumed; rebuild the finished ones
                self._reset()
                self._grow(done - 1)
                raise

    def _grow(self, B: int) -> None:
        while len(self.rank_at) <= B:
            t = len(self.rank_at)
            for v in self.gen.layer(t):
                self.builder.add(v)
            self.rank_at.append(self.builder.rank)
            self.pivots_at.append(tuple(sorted(self.builder.table)))
            self.tables_at.append(dict(self.builder.table))

    def basis(self, B: int) -> SpanBasis:
        self.extend(B)
        with self.lock:
            hit = self.basis_at.get(B)
            if hit is None:
                b = EchelonBuilder()
                b.table = self.tables_at[B]
                hit = b.basis()
                self.basis_at[B] = hit
            return hit


_STATES: Dict[tuple, _RelationState] = {}
_STATES_LOCK = threading.Lock()


def clear_relation_cache() -> None:
    with _STATES_LOCK:
        _STATES.clear()
        _COMBINED.clear()


def _state(voa, m, n, level, P) -> _RelationState:
    if P is None:
        P = GradeIndex.from_value(m.value + n.value + 2, voa.T)
    key = (getattr(voa, "cache_key", id(voa)), m, n, level, P)
    with _STATES_LOCK:
        st = _STATES.get(key)
        if st is None:
            st = _STATES[key] = _RelationState(voa, m, n, level, P)
    return st


_COMBINED: Dict[tuple, SpanBasis] = {}


def _combined(voa, m, n, level, P, B, B_extra) -> SpanBasis:
    key = (getattr(voa, "cache_key", id(voa)), m, n, level, P, B, B_extra)
    with _STATES_LOCK:
        hit = _COMBINED.get(key)
    if hit is not None:
        return hit
    b = EchelonBuilder()
    b.table = dict(relation_table(voa, m, n, B, level, P))
    for row in relation_table(voa, m, n, B_extra, "prime", P).values():
        b.add(row)
    hit = b.basis()
    with _STATES_LOCK:
        _COMBINED[key] = hit
    return hit


def relation_table(voa, m: GradeIndex, n: GradeIndex, B: int, level: str = "full", P: Optional[GradeIndex] = None) -> dict:
    """Semi-reduced echelon table (pivot -> row) of the relation span at B; cheap membership tests."""
    st = _state(voa, m, n, level, P)
    st.extend(B)
    return st.tables_at[B]


def relation_span(voa, m: GradeIndex, n: GradeIndex, B: int, level: str = "full", P: Optional[GradeIndex] = None) -> SpanBasis:
    """Reduced basis of the span of generate_O(m, n, level, B, P)."""
    return _state(voa, m, n, level, P).basis(B)


@dataclass
class FilteredQuotient:
    """Image of V_{<=W} in V/O_{g,n,m}(V), computed with generators up to B."""

    voa: object
    m: GradeIndex
    n: GradeIndex
    W: int
    B: int
    P: GradeIndex
    level: str
    relations: SpanBasis
    log: List[Tuple[int, int]]
    reps: List[Word] = field(default_factory=list)

    @property
    def ambient(self) -> SpanBasis:
        return SpanBasis.coordinate(range(self.voa.key_bound(self.W)))

    @property
    def bound(self) -> int:
        return self.voa.key_bound(self.W)

    @property
    def restricted(self) -> SpanBasis:
        """O ∩ V_{<=W}."""
        bound = self.bound
        return self.relations.restrict(lambda k: k < bound)

    @property
    def dim(self) -> int:
        return len(self.reps)

    @property
    def stable(self) -> bool:
        """Two consecutive B increments left rank(O ∩ V_{<=W}) unchanged."""
        if len(self.log) < 3:
            return False
        return self.log[-1][1] == self.log[-2][1] == self.log[-3][1]

    @property
    def status(self) -> str:
        return "stable" if self.stable else "provisional"

    def normal_form(self, x: Element) -> dict:
        """Key-indexed reduction of x modulo the relation span."""
        return self.relations.reduce(x.to_vec() if isinstance(x, Element) else x)

    def coordinates(self, x) -> List[Scalar]:
        """Coordinates of x + O in the coset basis ``reps``.

        Raises TruncationError if x has components that the computed
        relations cannot bring down to weight <= W.
        """
        y = self.normal_form(x)
        bound = self.bound
        over = [k for k in y if k >= bound]
        if over:
            words = [self.voa.word_of(k) for k in sorted(over)[:3]]
            raise TruncationError(
                f"element does not reduce into V_(<={self.W}) with B={self.B}; leftover words {words}"
            )
        return [y.get(self.voa.key(w), ZERO) for w in self.reps]

    def rep_element(self, i: int) -> Element:
        return Element.word(self.reps[i])

    def element_of(self, coords: Sequence) -> Element:
        out = Element()
        for c, w in zip(coords, self.reps):
            if c:
                out = out + Element.word(w, c)
        return out


def filtered_quotient(
    voa,
    m: GradeIndex,
    n: GradeIndex,
    W: int,
    B: int,
    P: Optional[GradeIndex] = None,
    level: str = "full",
    B_extra: Optional[int] = None,
) -> FilteredQuotient:
    """Image of V_{<=W} in V/O_{g,n,m}(V).

    With ``B_extra`` the relation span also contains the O' generators up to
    B_extra (O' lies in O, so this only sharpens reductions of heavy
    elements); ``log`` and ``stable`` still describe the level-``level`` run.
    """
    if W < 0:
        raise ValueError("W must be nonnegative")
    if B < W:
        raise ValueError(f"B={B} must be at least W={W}")
    if P is None:
        P = GradeIndex.from_value(m.value + n.value + 2, voa.T)
    st = _state(voa, m, n, level, P)
    st.extend(B)
    rel = st.basis(B)
    if B_extra is not None and (B_extra > B or level != "prime"):
        rel = _combined(voa, m, n, level, P, B, B_extra)
    bound = voa.key_bound(W)
    log = []
    for b in range(W, B + 1):
        log.append((b, sum(1 for p in st.pivots_at[b] if p < bound)))
    pivots = rel.table
    reps = [voa.word_of(k) for k in range(bound) if k not in pivots]
    return FilteredQuotient(voa, m, n, W, B, P, level, rel, log, reps)


@dataclass
class StructureTable:
    n: GradeIndex
    reps: List[Word]
    # products[(i, j)] = coordinates of e_i * e_j
    products: Dict[Tuple[int, int], List[Scalar]]
    associative: bool
    failures: List[Tuple[int, int, int]]


def algebra_structure(voa, n: GradeIndex, W: int, B: int, P: Optional[GradeIndex] = None, level: str = "full",
                      require_stable: bool = True) -> StructureTable:
    """Structure constants of the filtered A_{g,n}(V) for reps with wt e_i + wt e_j <= W.

    Associativity is checked on every triple whose weights sum to at most W.
    """
    fq = filtered_quotient(voa, n, n, W, B, P, level)
    if require_stable and not fq.stable:
        raise NotStabilizedError(f"filtered quotient at n={n}, W={W}, B={B} is provisional: log {fq.log}")
    reps = fq.reps
    wts = [voa.weight(w) for w in reps]
    elems = [Element.word(w) for w in reps]
    products = {}
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            if wts[i] + wts[j] <= W:
                products[(i, j)] = fq.coordinates(star_n(voa, a, b, n))
    failures = []
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            for k, c in enumerate(elems):
                if wts[i] + wts[j] + wts[k] > W:
                    continue
                lhs = star_n(voa, star_n(voa, a, b, n), c, n)
                rhs = star_n(voa, a, star_n(voa, b, c, n), n)
                if fq.coordinates(lhs) != fq.coordinates(rhs):
                    failures.append((i, j, k))
    return StructureTable(n, list(reps), products, not failures, failures)
