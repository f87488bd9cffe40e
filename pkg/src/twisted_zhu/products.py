"""Twisted residue products and the generators of O_{g,n,m}(V).

All products are finite mode sums.  For a word u in V^r and a grade
m = l1 + i1/T the exponents involve the indicator delta_i(r) (1 when
i >= r and r != T) and fractional shifts r/T; they are kept as exact
rationals throughout.

Argument order follows the notation u *^n_{g,m,p} v: ``star_nmp(voa, u, v,
m=m, p=p, n=n)``.  ``u`` and ``v`` may be any elements; the products are
extended linearly from basis words, which are homogeneous in weight and
eigenspace.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .fock import Element, Word
from .grades import GradeIndex, grades_up_to
from .kernels import axpy
from .linalg import EchelonBuilder
from .scalar import ONE, ZERO, Scalar

__all__ = [
    "delta_fn",
    "epsilon_fn",
    "rbinom",
    "residue_product",
    "circ_nm",
    "star_nmp",
    "star_bar",
    "star_right",
    "star_n",
    "l_relation",
    "OGenerator",
    "generate_O",
    "element_vec",
]


def delta_fn(i: int, r: int, T: int) -> int:
    if not 0 <= i <= T - 1 or not 0 <= r <= T:
        raise ValueError(f"delta index out of range: i={i}, r={r}, T={T}")
    return 1 if (i >= r and r != T) else 0


def epsilon_fn(i1: int, i2: int, i3: int, T: int) -> int:
    for x in (i1, i2, i3):
        if not 0 <= x <= T - 1:
            raise ValueError(f"epsilon index out of range: {(i1, i2, i3)}, T={T}")
    s = i1 + i3 - i2
    if s >= T:
        return 1
    if s >= 0:
        return 0
    return -1


@lru_cache(maxsize=None)
def _rbinom(alpha, j: int):
    num = ONE
    for k in range(j):
        num *= alpha - k
    fact = 1
    for k in range(2, j + 1):
        fact *= k
    return num / fact


def rbinom(alpha, j: int):
    """alpha (alpha-1) ... (alpha-j+1) / j!."""
    if j < 0:
        return ZERO
    return _rbinom(Scalar(alpha), j)


def _cache(voa, kind: str) -> dict:
    caches = getattr(voa, "_product_cache", None)
    if caches is None:
        caches = voa._product_cache = {}
    c = caches.get(kind)
    if c is None:
        c = caches[kind] = {}
    return c


def _residue_word(voa, u: Word, v: Word, alpha, beta: int) -> dict:
    key = (u, v, alpha, beta)
    cache = _cache(voa, "res")
    hit = cache.get(key)
    if hit is not None:
        return hit
    top = voa.weight(u) + voa.weight(v) + beta - 1
    acc: dict = {}
    for j in range(0, top + 1):
        c = rbinom(alpha, j)
        if not c:
            continue
        for x, cx in voa.mode(u, j - beta, v):
            t = acc.get(x, ZERO) + c * cx
            if t:
                acc[x] = t
            else:
                del acc[x]
    cache[key] = acc
    return acc


def _lift(voa, u: Element, v: Element, word_fn) -> Element:
    out: dict = {}
    for wu, cu in u.terms.items():
        for wv, cv in v.terms.items():
            res = word_fn(wu, wv)
            if res:
                axpy(out, cu * cv, res)
    return Element._raw(out)


def residue_product(voa, u: Element, v: Element, alpha, beta: int) -> Element:
    """sum_{j>=0} binom(alpha, j) u_{j-beta} v."""
    alpha = Scalar(alpha)
    if int(beta) != beta:
        raise ValueError("beta must be an integer")
    beta = int(beta)
    return _lift(voa, u, v, lambda a, b: _residue_word(voa, a, b, alpha, beta))


def _circ_params(voa, u: Word, m: GradeIndex, n: GradeIndex):
    T = voa.T
    r = voa.residue(u)
    d1 = delta_fn(m.i, r, T)
    d3 = delta_fn(n.i, T - r, T)
    alpha = Scalar(voa.weight(u) - 1 + d1 + m.l) + Scalar(r) / T
    beta = m.l + n.l + d1 + d3 + 1
    return alpha, beta


def _circ_word(voa, u: Word, v: Word, m: GradeIndex, n: GradeIndex) -> dict:
    alpha, beta = _circ_params(voa, u, m, n)
    return _residue_word(voa, u, v, alpha, beta)


def circ_nm(voa, u: Element, v: Element, m: GradeIndex, n: GradeIndex) -> Element:
    """u o^n_{g,m} v = Res_z (1+z)^{wt u-1+d_{i1}(r)+l1+r/T} z^{-(l1+l3+d_{i1}(r)+d_{i3}(T-r)+1)} Y(u,z)v."""
    _check_T(voa, m, n)
    return _lift(voa, u, v, lambda a, b: _circ_word(voa, a, b, m, n))


def _star_table(voa, m: GradeIndex, p: GradeIndex, n: GradeIndex) -> dict:
    """Per-(m, p, n) memo of word-level products, keyed by (u, v)."""
    caches = _cache(voa, "star")
    key = (m.numerator, p.numerator, n.numerator)
    table = caches.get(key)
    if table is None:
        table = caches[key] = {}
    return table


def _star_compute(voa, u: Word, v: Word, m: GradeIndex, p: GradeIndex, n: GradeIndex) -> dict:
    T = voa.T
    r = voa.residue(u)
    if (p.i - n.i - r) % T:
        return {}
    d1 = delta_fn(m.i, r, T)
    d3 = delta_fn(n.i, T - r, T)
    base = m.l + n.l - p.l + d1 + d3
    alpha = Scalar(voa.weight(u) - 1 + m.l + d1) + Scalar(r) / T
    acc: dict = {}
    for i in range(p.l + 1):
        c = rbinom(base - 1 + i, i)
        if not c:
            continue
        if i % 2:
            c = -c
        res = _residue_word(voa, u, v, alpha, base + i)
        if res:
            axpy(acc, c, res)
    return acc


def _star_word(voa, u: Word, v: Word, m: GradeIndex, p: GradeIndex, n: GradeIndex) -> dict:
    table = _star_table(voa, m, p, n)
    hit = table.get((u, v))
    if hit is None:
        hit = table[(u, v)] = _star_compute(voa, u, v, m, p, n)
    return hit


def _check_T(voa, *grades):
    for g in grades:
        if g.T != voa.T:
            raise ValueError(f"grade {g} has T={g.T} but the automorphism has T={voa.T}")


def star_nmp(voa, u: Element, v: Element, m: GradeIndex, p: GradeIndex, n: GradeIndex) -> Element:
    """u *^n_{g,m,p} v; zero on the words of u whose residue r has i2 - i3 != r mod T."""
    _check_T(voa, m, p, n)
    return _lift(voa, u, v, lambda a, b: _star_word(voa, a, b, m, p, n))


def star_bar(voa, u, v, m, n):
    """u *bar^n_{g,m} v (the case p = n): the left action of A_{g,n}(V)."""
    return star_nmp(voa, u, v, m, n, n)


def star_right(voa, u, v, m, n):
    """u *^n_{g,m} v (the case p = m): the right action of A_{g,m}(V)."""
    return star_nmp(voa, u, v, m, m, n)


def star_n(voa, u, v, n):
    """The algebra product *_{g,n} (m = p = n); zero when u has residue r > 0."""
    return star_nmp(voa, u, v, n, n, n)


def l_relation(voa, u: Element, m: GradeIndex, n: GradeIndex) -> Element:
    """(L(-1) + L(0) + m - n) u."""
    _check_T(voa, m, n)
    shift = m.value - n.value
    out: dict = {}
    for w, c in u.terms.items():
        res = _lrel_word(voa, w, shift)
        if res:
            axpy(out, c, res)
    return Element._raw(out)


def _lrel_word(voa, w: Word, shift) -> dict:
    key = (w, shift)
    cache = _cache(voa, "lrel")
    hit = cache.get(key)
    if hit is not None:
        return hit
    acc: dict = {}
    omega = voa.omega()
    for wo, co in omega.terms.items():
        for x, cx in voa.mode(wo, 0, w):  # L(-1) = omega_0
            acc[x] = acc.get(x, ZERO) + co * cx
    c0 = Scalar(voa.weight(w)) + shift
    if c0:
        acc[w] = acc.get(w, ZERO) + c0
    acc = {k: v for k, v in acc.items() if v}
    cache[key] = acc
    return acc


# --- generator enumeration ----------------------------------------------------


def element_vec(voa, terms: dict) -> dict:
    key = voa.key
    return {key(w): c for w, c in terms.items()}


class _LayeredSpan:
    """Incremental span whose new rows are tracked per constituent-weight layer."""

    def __init__(self):
        self.builder = EchelonBuilder()
        self.layers: List[List[dict]] = []

    def push_layer(self, vecs: Iterable[dict]) -> List[dict]:
        new = []
        table = self.builder.table
        for v in vecs:
            r = self.builder.reduce(v)
            if r:
                piv = max(r)
                lead = r[piv]
                if lead != 1:
                    inv = ONE / lead
                    r = {k: c * inv for k, c in r.items()}
                table[piv] = r
                new.append(r)
        self.layers.append(new)
        return new


class OGenerator:
    """Layered generators of O'_{g,n,m}(V) (level "prime") or of
    O' + O'' + O''' (level "full").

    ``layer(t)`` returns sparse vectors (keyed by ``voa.key``) for the
    generators whose constituents have total weight exactly t; layers must be
    requested in order 0, 1, 2, ...  Internal grades p, p1, p2, p3 range over
    the grades <= P.

    For O'' and O''' the innermost spans are built incrementally and only
    their new basis rows are multiplied further.  The products are
    multilinear, so this spans the same space as the raw generators with the
    same total-weight bound while skipping linearly dependent work.
    """

    def __init__(self, voa, m: GradeIndex, n: GradeIndex, level: str = "prime", P: Optional[GradeIndex] = None):
        _check_T(voa, m, n)
        if level not in ("prime", "full"):
            raise ValueError(f"level must be 'prime' or 'full', got {level!r}")
        self.voa = voa
        self.m = m
        self.n = n
        self.level = level
        if P is None:
            P = GradeIndex.from_value(m.value + n.value + 2, voa.T)
        self.P = P
        self.next_layer = 0
        if level == "full":
            self._grades = grades_up_to(P, voa.T)
            self._oprime: Dict[Tuple[GradeIndex, GradeIndex], _LayeredSpan] = {}
            self._left: Dict[Tuple[GradeIndex, GradeIndex], _LayeredSpan] = {}
            self._assoc: Dict[Tuple[GradeIndex, GradeIndex, GradeIndex], _LayeredSpan] = {}

    # prime generators ------------------------------------------------------

    @staticmethod
    def prime_layer_words(voa, m, n, t: int) -> List[dict]:
        """O' generators with wt u + wt v == t (circ) and wt u == t (L-relation), as word dicts."""
        out = []
        for a in range(t + 1):
            for u in voa.basis_of_weight(a):
                for v in voa.basis_of_weight(t - a):
                    res = _circ_word(voa, u, v, m, n)
                    if res:
                        out.append(res)
        shift = m.value - n.value
        for u in voa.basis_of_weight(t):
            res = _lrel_word(voa, u, shift)
            if res:
                out.append(res)
        return out

    def _prime_vecs(self, m, n, t):
        return [element_vec(self.voa, d) for d in OGenerator.prime_layer_words(self.voa, m, n, t)]

    def layer(self, t: int) -> List[dict]:
        if t != self.next_layer:
            raise ValueError(f"layers must be requested in order; expected {self.next_layer}, got {t}")
        self.next_layer += 1
        out = self._prime_vecs(self.m, self.n, t)
        if self.level == "full":
            out.extend(self._o3_layer(t))
            out.extend(self._o2_layer(t))
        return out

    # O''' = sum_{p1,p2} (V *^n_{p1,p2} O'_{p2,p1}) *^n_{m,p1} V -------------

    def _o3_layer(self, t: int) -> List[dict]:
        voa, m, n = self.voa, self.m, self.n
        out = []
        for p1 in self._grades:
            for p2 in self._grades:
                key = (p1, p2)
                sp = self._oprime.get(key)
                if sp is None:
                    sp = self._oprime[key] = _LayeredSpan()
                    self._left[key] = _LayeredSpan()
                sp.push_layer(self._prime_vecs(p1, p2, t))
                left = self._left[key]
                # u *^n_{p1,p2} s with wt u + layer(s) == t
                cand = []
                for k, rows in enumerate(sp.layers):
                    if not rows:
                        continue
                    for u in voa.basis_of_weight(t - k):
                        for s in rows:
                            x = _star_vec(voa, u, s, p1, p2, n)
                            if x:
                                cand.append(x)
                left.push_layer(cand)
                # y *^n_{m,p1} v with layer(y) + wt v == t
                for k, rows in enumerate(left.layers):
                    if not rows:
                        continue
                    for v in voa.basis_of_weight(t - k):
                        vv = {voa.key(v): ONE}
                        for y in rows:
                            x = _star_vec_right(voa, y, vv, m, p1, n)
                            if x:
                                out.append(x)
        return out

    # O'' = span u *^n_{m,p3} ((a *^{p3}_{p1,p2} b) *^{p3}_{m,p1} c - a *^{p3}_{m,p2} (b *^{p2}_{m,p1} c))

    def _o2_layer(self, t: int) -> List[dict]:
        voa, m, n, T = self.voa, self.m, self.n, self.voa.T
        out = []
        for p1, p2, p3 in iproduct(self._grades, repeat=3):
            key = (p1, p2, p3)
            sp = self._assoc.get(key)
            if sp is None:
                sp = self._assoc[key] = _LayeredSpan()
            ra = (p2.i - p3.i) % T
            rb = (p1.i - p2.i) % T
            cand = []
            for wa in range(t + 1):
                for a in voa.basis_of_weight(wa):
                    if voa.residue(a) != ra:
                        continue
                    for wb in range(t - wa + 1):
                        for b in voa.basis_of_weight(wb):
                            if voa.residue(b) != rb:
                                continue
                            ab = _star_word(voa, a, b, p1, p2, p3)
                            for c in voa.basis_of_weight(t - wa - wb):
                                lhs = _star_dict_left(voa, ab, c, m, p1, p3)
                                bc = _star_word(voa, b, c, m, p1, p2)
                                rhs = _star_dict_right(voa, a, bc, m, p2, p3)
                                x = dict(lhs)
                                axpy(x, -ONE, rhs)
                                if x:
                                    cand.append(element_vec(voa, x))
            sp.push_layer(cand)
            ru = (p3.i - n.i) % T
            for k, rows in enumerate(sp.layers):
                if not rows:
                    continue
                for u in voa.basis_of_weight(t - k):
                    if voa.residue(u) != ru:
                        continue
                    for s in rows:
                        x = _star_vec(voa, u, s, m, p3, n)
                        if x:
                            out.append(x)
        return out


def _star_dict_left(voa, x: dict, c: Word, m, p, n) -> dict:
    """(sum x_w w) *^n_{m,p} c for a word dict x."""
    table = _star_table(voa, m, p, n)
    acc: dict = {}
    for w, cw in x.items():
        res = table.get((w, c))
        if res is None:
            res = table[(w, c)] = _star_compute(voa, w, c, m, p, n)
        if res:
            axpy(acc, cw, res)
    return acc


def _star_dict_right(voa, a: Word, x: dict, m, p, n) -> dict:
    table = _star_table(voa, m, p, n)
    acc: dict = {}
    for w, cw in x.items():
        res = table.get((a, w))
        if res is None:
            res = table[(a, w)] = _star_compute(voa, a, w, m, p, n)
        if res:
            axpy(acc, cw, res)
    return acc


def _star_vec(voa, u: Word, s: dict, m, p, n) -> dict:
    """u * s for a key-indexed vector s; result key-indexed."""
    word_of, key = voa.word_of, voa.key
    table = _star_table(voa, m, p, n)
    acc: dict = {}
    for k, c in s.items():
        w = word_of(k)
        res = table.get((u, w))
        if res is None:
            res = table[(u, w)] = _star_compute(voa, u, w, m, p, n)
        if res:
            axpy(acc, c, res)
    return {key(w): c for w, c in acc.items()}


def _star_vec_right(voa, y: dict, v: dict, m, p, n) -> dict:
    word_of, key = voa.word_of, voa.key
    table = _star_table(voa, m, p, n)
    acc: dict = {}
    for k, c in y.items():
        w = word_of(k)
        for kv, cv in v.items():
            wv = word_of(kv)
            res = table.get((w, wv))
            if res is None:
                res = table[(w, wv)] = _star_compute(voa, w, wv, m, p, n)
            if res:
                axpy(acc, c * cv, res)
    return {key(w): c for w, c in acc.items()}


def generate_O(voa, m: GradeIndex, n: GradeIndex, level: str, B: int, P: Optional[GradeIndex] = None) -> List[Element]:
    """Generators of O'_{g,n,m}(V) (``level="prime"``) or of the full O_{g,n,m}(V)
    with constituent weights summing to at most B, in canonical order."""
    if B < 0:
        raise ValueError("B must be nonnegative")
    gen = OGenerator(voa, m, n, level, P)
    out = []
    for t in range(B + 1):
        for vec in gen.layer(t):
            out.append(Element._raw({voa.word_of(k): c for k, c in vec.items()}))
    return out
