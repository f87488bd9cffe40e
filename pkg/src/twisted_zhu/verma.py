"""Verma-type twisted modules M(U) = sum_n A_{g,n,m}(V) (x)_{A_{g,m}(V)} U.

Level n is the filtered image of A_{g,n,m}(V) tensored with U over the
filtered A_{g,m}(V): coordinates are pairs (coset rep k, U basis index b),
flattened to the key k*dim(U) + b, modulo the span of
(v *^n_{g,m} a) (x) w - v (x) (a.w).  Modes act by

    u_p (v (x) w) = (u *^{n'}_{g,m,n} v) (x) w,   n' = n + wt u - p - 1,

and vanish when n' < 0 or p is not in Z + r/T.  Everything is exact; a
request that leaves the computed range raises :class:`TruncationError`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .fock import Element, Word, nth_product
from .grades import GradeError, GradeIndex, parse_grade
from .linalg import EchelonBuilder, SpanBasis
from .matrix import Matrix, identity, is_zero, matadd, matmul, matscale, rank, transpose, zeros
from .products import delta_fn, rbinom, star_n, star_nmp, star_right
from .quotient import FilteredQuotient, NotStabilizedError, TruncationError, filtered_quotient
from .scalar import ONE, ZERO, Q, Scalar, to_str

__all__ = [
    "ModuleSpecError",
    "AModuleSpec",
    "VermaLevel",
    "VermaModule",
    "CheckResult",
    "split_homogeneous",
    "commutator_check",
    "associativity_check",
    "omega_containment_check",
    "corrupted_mode",
    "factorization_check",
    "relation_kill_check",
    "well_defined_check",
]


class ModuleSpecError(ValueError):
    """The action matrices do not define a module over the filtered algebra."""


def split_homogeneous(voa, u: Element) -> Dict[Tuple[int, int], Element]:
    """Components of u keyed by (weight, residue)."""
    parts: Dict[Tuple[int, int], dict] = {}
    for w, c in u.terms.items():
        parts.setdefault((voa.weight(w), voa.residue(w)), {})[w] = c
    return {k: Element._raw(v) for k, v in sorted(parts.items())}


# --- A_{g,m}(V)-modules ------------------------------------------------------


@dataclass
class AModuleSpec:
    """A finite-dimensional module over the filtered A_{g,m}(V).

    ``action`` maps coset-rep words to dim x dim matrices acting on column
    vectors.  ``twist`` is "g" or "g^-1": which automorphism the algebra is
    built from (the shipped automorphisms are involutions, so both tags use
    the same engine).
    """

    m: GradeIndex
    dim: int
    action: Dict[Word, Matrix]
    twist: str = "g"

    @classmethod
    def from_json(cls, data, T: int) -> "AModuleSpec":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            m = parse_grade(str(data["m"]), T)
            dim = int(data["dim"])
            entries = data["action"]
            if dim < 0:
                raise ModuleSpecError("dim must be nonnegative")
            action: Dict[Word, Matrix] = {}
            for ent in entries:
                word = tuple(sorted((int(x) for x in ent["word"]), reverse=True))
                if any(x < 1 for x in word):
                    raise ModuleSpecError(f"bad word {ent['word']}")
                mat = [[Q(str(x)) for x in row] for row in ent["matrix"]]
                if len(mat) != dim or any(len(row) != dim for row in mat):
                    raise ModuleSpecError(f"matrix for word {list(word)} is not {dim}x{dim}")
                if word in action:
                    raise ModuleSpecError(f"word {list(word)} listed twice")
                action[word] = mat
        except KeyError as e:
            raise ModuleSpecError(f"module file lacks field {e}") from None
        except (GradeError, ValueError, TypeError) as e:
            if isinstance(e, ModuleSpecError):
                raise
            raise ModuleSpecError(f"malformed module file: {e}") from None
        return cls(m, dim, action, data.get("twist", "g"))

    @classmethod
    def load(cls, path, T: int) -> "AModuleSpec":
        with open(path) as fh:
            return cls.from_json(json.load(fh), T)

    def to_json(self) -> dict:
        return {
            "m": str(self.m),
            "dim": self.dim,
            "twist": self.twist,
            "action": [
                {"word": list(w), "matrix": [[to_str(x) for x in row] for row in mat]}
                for w, mat in sorted(self.action.items())
            ],
        }

    def act(self, coords: Sequence, reps: Sequence[Word]) -> Matrix:
        """Matrix of sum_k coords[k] e_k."""
        out = zeros(self.dim, self.dim)
        for c, w in zip(coords, reps):
            if c:
                out = matadd(out, matscale(self.action[w], c))
        return out

    def validate(self, voa, algebra: FilteredQuotient) -> None:
        """Raise ModuleSpecError unless the matrices represent the filtered algebra.

        Checked: every coset rep has a matrix; extra words act as their
        coset; the identity coset acts as the identity; products of reps
        with weights summing to at most W act as the product of matrices.
        """
        if algebra.m != self.m or algebra.n != self.m:
            raise ModuleSpecError(f"algebra grade {algebra.m} does not match module grade {self.m}")
        reps = algebra.reps
        missing = [list(w) for w in reps if w not in self.action]
        if missing:
            raise ModuleSpecError(f"no matrix for coset reps {missing}")
        for w, mat in sorted(self.action.items()):
            if w in reps:
                continue
            if voa.weight(w) > algebra.W:
                raise ModuleSpecError(f"word {list(w)} exceeds the weight budget W={algebra.W}")
            if self.act(algebra.coordinates(Element.word(w)), reps) != mat:
                raise ModuleSpecError(f"matrix for {list(w)} disagrees with its coset")
        one = self.act(algebra.coordinates(Element.word(())), reps)
        if one != identity(self.dim):
            raise ModuleSpecError("identity coset [1] does not act as the identity matrix")
        wts = [voa.weight(w) for w in reps]
        for i, a in enumerate(reps):
            for j, b in enumerate(reps):
                if wts[i] + wts[j] > algebra.W:
                    continue
                prod = star_n(voa, Element.word(a), Element.word(b), self.m)
                lhs = self.act(algebra.coordinates(prod), reps)
                rhs = matmul(self.action[a], self.action[b], self.dim)
                if lhs != rhs:
                    raise ModuleSpecError(f"action fails on the product [{list(a)}] * [{list(b)}]")

    def dual(self, voa, algebra: FilteredQuotient, dual_algebra: FilteredQuotient) -> "AModuleSpec":
        """U* over A_{g^-1,m}(V): (u.f)(x) = f(phi(u).x), i.e. the transpose of phi(u)'s matrix."""
        from .fock import phi_map

        action = {}
        for w in dual_algebra.reps:
            mat = self.act(algebra.coordinates(phi_map(Element.word(w))), algebra.reps)
            action[w] = transpose(mat, self.dim)
        return AModuleSpec(self.m, self.dim, action, "g^-1" if self.twist == "g" else "g")


# --- levels -------------------------------------------------------------------


@dataclass
class VermaLevel:
    n: GradeIndex
    quotient: Optional[FilteredQuotient]
    dim_u: int
    relations: SpanBasis
    basis: List[int]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def status(self) -> str:
        return self.quotient.status if self.quotient is not None else "stable"

    def pairs(self) -> List[Tuple[Word, int]]:
        """(coset rep word, U index) for each basis vector."""
        d = self.dim_u
        return [(self.quotient.reps[k // d], k % d) for k in self.basis]

    def reduce_tensor(self, vec: dict) -> List[Scalar]:
        """Level coordinates of a flattened tensor vector."""
        y = self.relations.reduce(vec)
        return [y.get(k, ZERO) for k in self.basis]

    def tensor_vec(self, x: Element, u: Sequence) -> dict:
        """Flattened x (x) u, with x reduced into the coset basis."""
        if self.quotient is None or not self.dim_u:
            return {}
        coords = self.quotient.coordinates(x)
        d = self.dim_u
        out = {}
        for k, c in enumerate(coords):
            if not c:
                continue
            for b, ub in enumerate(u):
                if ub:
                    out[k * d + b] = out.get(k * d + b, ZERO) + c * ub
        return {k: v for k, v in out.items() if v}

    def coordinates(self, x: Element, u: Sequence) -> List[Scalar]:
        return self.reduce_tensor(self.tensor_vec(x, u))


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int
    skipped: int = 0
    failures: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": self.failures[:10],
        }


def _unit(d: int, b: int) -> List[Scalar]:
    return [ONE if i == b else ZERO for i in range(d)]


class VermaModule:
    """Levels 0 <= n <= n_max of M(U), built lazily and cached.

    Each level uses ``filtered_quotient(voa, m, n, W, B, P, level,
    B_extra=B_reduce)``; the extra O' generators let heavy products reduce
    into V_{<=W}.
    """

    def __init__(self, voa, U: AModuleSpec, W: int = 4, B: Optional[int] = None, P: Optional[GradeIndex] = None,
                 level: str = "full", B_reduce: int = 12, n_max=Fraction(2), require_stable: bool = True):
        self.voa = voa
        self.U = U
        self.m = U.m
        self.W = W
        self.B = W + 2 if B is None else B
        self.P = P
        self.level_kind = level
        self.B_reduce = max(B_reduce, self.B)
        self.n_max = GradeIndex.from_value(Fraction(n_max), voa.T)
        self.require_stable = require_stable
        self.algebra = self._quotient(self.m, self.m)
        U.validate(voa, self.algebra)
        self._levels: Dict[int, VermaLevel] = {}

    # construction

    def _quotient(self, m: GradeIndex, n: GradeIndex) -> FilteredQuotient:
        fq = filtered_quotient(self.voa, m, n, self.W, self.B, self.P, self.level_kind, B_extra=self.B_reduce)
        if self.require_stable and not fq.stable:
            raise NotStabilizedError(f"A_(n={n},m={m}) filtered image is provisional: log {fq.log}")
        return fq

    def grade(self, value) -> GradeIndex:
        if isinstance(value, GradeIndex):
            return value
        return GradeIndex.from_value(Fraction(value), self.voa.T)

    def levels(self) -> List[GradeIndex]:
        return [GradeIndex.from_value(Fraction(k, self.voa.T), self.voa.T) for k in range(self.n_max.numerator + 1)]

    def level(self, n) -> VermaLevel:
        n = self.grade(n)
        if n > self.n_max:
            raise TruncationError(f"level {n} exceeds the computed range n <= {self.n_max}")
        hit = self._levels.get(n.numerator)
        if hit is None:
            hit = self._levels[n.numerator] = self._build_level(n)
        return hit

    def _build_level(self, n: GradeIndex) -> VermaLevel:
        d = self.U.dim
        if not d:
            return VermaLevel(n, None, 0, SpanBasis(), [])
        fq = self._quotient(self.m, n)
        alg = self.algebra
        lvl = VermaLevel(n, fq, d, SpanBasis(), [])
        rows = EchelonBuilder()
        for v in fq.reps:
            ve = Element.word(v)
            for a in alg.reps:
                mat = self.U.action[a]
                prod = star_right(self.voa, ve, Element.word(a), self.m, n)
                for b in range(d):
                    # (v * a) (x) e_b - v (x) (a . e_b)
                    row = lvl.tensor_vec(prod, _unit(d, b))
                    k = fq.reps.index(v)
                    for c in range(d):
                        if mat[c][b]:
                            row[k * d + c] = row.get(k * d + c, ZERO) - mat[c][b]
                    rows.add({kk: vv for kk, vv in row.items() if vv})
        lvl.relations = rows.basis()
        piv = lvl.relations.table
        lvl.basis = [k for k in range(len(fq.reps) * d) if k not in piv]
        return lvl

    # operators

    def target(self, u_weight: int, p, n: GradeIndex) -> Optional[GradeIndex]:
        """Level n + wt u - p - 1, or None when negative."""
        t = n.value + u_weight - Scalar(p) - 1
        if t < 0:
            return None
        return GradeIndex.from_value(Fraction(int(t.numerator), int(t.denominator)), self.voa.T)

    def _raw_mode(self, part: Element, r: int, p, n: GradeIndex, dst: GradeIndex) -> Matrix:
        src = self.level(n)
        out_lvl = self.level(dst)
        cols = []
        for word, b in src.pairs():
            prod = star_nmp(self.voa, part, Element.word(word), self.m, n, dst)
            cols.append(out_lvl.coordinates(prod, _unit(self.U.dim, b)))
        return transpose(cols, out_lvl.dim) if cols else zeros(out_lvl.dim, 0)

    def _admissible(self, r: int, p) -> bool:
        return (Scalar(p) - Scalar(r) / self.voa.T).denominator == 1

    def mode_op(self, u: Element, p, n) -> Matrix:
        """Matrix of u_p from level n to level n + wt u - p - 1 (shape 0 x dim when negative)."""
        n = self.grade(n)
        src = self.level(n)
        parts = split_homogeneous(self.voa, u)
        weights = {w for w, _ in parts}
        if len(weights) > 1:
            raise ValueError("mode_op needs u homogeneous in weight")
        if not parts:
            raise ValueError("mode_op of the zero vector has no target level")
        wt = weights.pop()
        dst = self.target(wt, p, n)
        if dst is None:
            return []
        out = zeros(self.level(dst).dim, src.dim)
        for (_, r), part in parts.items():
            if self._admissible(r, p):
                out = matadd(out, self._raw_mode(part, r, p, n, dst))
        return out

    def o_op(self, u: Element, src, dst) -> Matrix:
        """o_{g,dst,src}(u) = sum over weight pieces of u_{wt u + src - dst - 1}: M(src) -> M(dst)."""
        src = self.grade(src)
        dst = self.grade(dst)
        out = zeros(self.level(dst).dim, self.level(src).dim)
        for (wt, r), part in split_homogeneous(self.voa, u).items():
            p = Scalar(wt) + src.value - dst.value - 1
            if self._admissible(r, p):
                out = matadd(out, self._raw_mode(part, r, p, src, dst))
        return out

    def apply(self, u: Element, p, n, vec: Sequence) -> List[Scalar]:
        mat = self.mode_op(u, p, n)
        return [sum((row[j] * vec[j] for j in range(len(vec))), ZERO) for row in mat]

    def embedding_rank(self) -> int:
        """Rank of U -> M(U)(m), u |-> [1] (x) u."""
        lvl = self.level(self.m)
        cols = [lvl.coordinates(Element.word(()), _unit(self.U.dim, b)) for b in range(self.U.dim)]
        return rank(cols, lvl.dim)

    def report(self) -> dict:
        return {
            "m": str(self.m),
            "W": self.W,
            "B": self.B,
            "B_reduce": self.B_reduce,
            "P": None if self.P is None else str(self.P),
            "n_max": str(self.n_max),
            "levels": [
                {"n": str(n), "dim": self.level(n).dim, "status": self.level(n).status,
                 "bimodule_dim": self.level(n).quotient.dim if self.level(n).quotient else 0}
                for n in self.levels()
            ],
        }


# --- operator identities -------------------------------------------------------


def _mode_weight(voa, u: Element) -> int:
    ws = {voa.weight(w) for w in u.terms}
    if len(ws) != 1:
        raise ValueError("element must be homogeneous in weight")
    return ws.pop()


def _residue(voa, u: Element) -> int:
    rs = {voa.residue(w) for w in u.terms}
    if len(rs) != 1:
        raise ValueError("element must lie in one eigenspace")
    return rs.pop()


def _level_or_none(M: VermaModule, value) -> Optional[GradeIndex]:
    if value < 0:
        return None
    return GradeIndex.from_value(Fraction(int(Scalar(value).numerator), int(Scalar(value).denominator)), M.voa.T)


def _in_range(M: VermaModule, value) -> bool:
    return value < 0 or value <= M.n_max.value


def _op(M: VermaModule, u: Element, p, n: GradeIndex, rows_dim: Optional[int] = None) -> Matrix:
    """mode_op, with a zero matrix of the right shape for a zero u or a negative target."""
    src = M.level(n).dim
    if not u:
        return zeros(rows_dim or 0, src)
    mat = M.mode_op(u, p, n)
    if not mat and rows_dim is not None:
        return zeros(rows_dim, src)
    return mat


def _compose(M: VermaModule, ops: Sequence[Tuple[Element, Scalar]], n: GradeIndex) -> Tuple[Matrix, Optional[GradeIndex]]:
    """Matrix of ops[0] ops[1] ... applied to level n (rightmost first); None target means zero."""
    cur = n
    mat = identity(M.level(n).dim)
    for u, p in reversed(ops):
        dst = M.target(_mode_weight(M.voa, u), p, cur)
        if dst is None:
            return [], None
        step = M.mode_op(u, p, cur)
        mat = matmul(step, mat, M.level(cur).dim)
        cur = dst
    return mat, cur


def commutator_check(M: VermaModule, a: Element, b: Element, p, q, n) -> CheckResult:
    """[a_p, b_q] = sum_i binom(p, i) (a_i b)_{p+q-i} on level n."""
    n = M.grade(n)
    p, q = Scalar(p), Scalar(q)
    wa, wb = _mode_weight(M.voa, a), _mode_weight(M.voa, b)
    name = f"commutator a={a!r} b={b!r} p={to_str(p)} q={to_str(q)} n={n}"
    dst_val = n.value + wa + wb - p - q - 2
    for lv in (n.value + wb - q - 1, n.value + wa - p - 1, dst_val):
        if not _in_range(M, lv):
            return CheckResult(name, True, 0, 1)
    dst = _level_or_none(M, dst_val)
    rows = M.level(dst).dim if dst is not None else 0
    src = M.level(n).dim
    ab, _ = _compose(M, [(a, p), (b, q)], n)
    ba, _ = _compose(M, [(b, q), (a, p)], n)
    lhs = matadd(ab or zeros(rows, src), matscale(ba or zeros(rows, src), -1))
    rhs = zeros(rows, src)
    top = wa + wb
    # a_i b = 0 for i >= wt a + wt b; the sum stops there
    assert not nth_product(a, top, b), "a_i b does not vanish at i = wt a + wt b"
    for i in range(top):
        c = nth_product(a, i, b)
        coeff = rbinom(p, i)
        if not c or not coeff:
            continue
        rhs = matadd(rhs, matscale(_op(M, c, p + q - i, n, rows), coeff))
    ok = lhs == rhs
    return CheckResult(name, ok, 1, 0, [] if ok else [name])


def associativity_check(M: VermaModule, a: Element, b: Element, n, L: int = 2) -> CheckResult:
    """Coefficients of (z2+z0)^K Y(Y(a,z0)b,z2) = (z0+z2)^K Y(a,z0+z2)Y(b,z2) on level n.

    K = wt a + q with q = -1 + l3 + delta_{i3}(r) + r/T for n = l3 + i3/T.
    The z0^k coefficient for -L <= k <= L and every z2 power whose target
    level and intermediate levels lie in the computed range are compared:

        sum_j C(K, j) (a_{j-k-1} b)_{K-j-1-E}  =  sum_i C(k+i, i) a_{K-1-k-i} b_{i-1-E}.
    """
    n = M.grade(n)
    voa, T = M.voa, M.voa.T
    wa, wb = _mode_weight(voa, a), _mode_weight(voa, b)
    r = _residue(voa, a)
    q = Scalar(-1 + n.l + delta_fn(n.i, r, T)) + Scalar(r) / T
    K = Scalar(wa) + q
    name = f"associativity a={a!r} b={b!r} n={n} L={L}"
    src = M.level(n).dim
    checked = skipped = 0
    failures = []
    products = {}
    i = -1
    # a_i b for every index touched: i = j - k - 1 >= -L - 1
    for i in range(-L - 1, wa + wb + 1):
        products[i] = nth_product(a, i, b)
    assert not products[wa + wb]
    for k in range(-L, L + 1):
        for tnum in range(M.n_max.numerator + 1):
            tval = Scalar(tnum) / T
            # target = n + wa + wb + k - K + E
            E = tval - n.value - wa - wb - k + K
            tgt = GradeIndex(tnum // T, tnum % T, T)
            rows = M.level(tgt).dim
            # intermediate b-levels n + wb - i + E for i >= 0 with b_{i-1-E} nonzero on level n
            imax = int(n.value + wb + E)
            if n.value + wb + E > M.n_max.value:
                skipped += 1
                continue
            lhs = zeros(rows, src)
            for j in range(0, wa + wb + k + 2):
                idx = j - k - 1
                c = products.get(idx)
                if c is None:
                    c = products[idx] = nth_product(a, idx, b)
                coeff = rbinom(K, j)
                if not c or not coeff:
                    continue
                lhs = matadd(lhs, matscale(_op(M, c, K - j - 1 - E, n, rows), coeff))
            rhs = zeros(rows, src)
            for ii in range(0, max(imax, -1) + 1):
                coeff = rbinom(Scalar(k + ii), ii)
                if not coeff:
                    continue
                mat, end = _compose(M, [(a, K - 1 - k - ii), (b, Scalar(ii) - 1 - E)], n)
                if end is None:
                    continue
                rhs = matadd(rhs, matscale(mat, coeff))
            checked += 1
            if lhs != rhs:
                failures.append(f"k={k} target={tgt}")
    return CheckResult(name, not failures, checked, skipped, failures)


def omega_containment_check(M: VermaModule, j, words: Sequence[Word], cap: int = 2,
                            mode: Optional[Callable] = None) -> CheckResult:
    """u_{wt u - 1 + k} kills level j for every word u and k in (1/T)Z with j < k <= j + cap.

    ``mode(u, p, n)`` defaults to ``M.mode_op``; a substitute lets the
    harness be tested against a corrupted action.
    """
    j = M.grade(j)
    mode = mode or M.mode_op
    T = M.voa.T
    checked = 0
    failures = []
    for w in words:
        u = Element.word(w)
        wt = M.voa.weight(w)
        for s in range(1, cap * T + 1):
            k = j.value + Scalar(s) / T
            p = Scalar(wt) - 1 + k
            mat = mode(u, p, j)
            checked += 1
            if not is_zero(mat):
                failures.append(f"u={list(w)} k={to_str(k)}")
    return CheckResult(f"omega_containment j={j}", not failures, checked, 0, failures)


def corrupted_mode(M: VermaModule) -> Callable:
    """A deliberately wrong action that sends negative targets to level 0 (negative control)."""

    def mode(u: Element, p, n):
        n = M.grade(n)
        wt = _mode_weight(M.voa, u)
        dst = M.target(wt, p, n) or GradeIndex(0, 0, M.voa.T)
        out = zeros(M.level(dst).dim, M.level(n).dim)
        for (_, r), part in split_homogeneous(M.voa, u).items():
            out = matadd(out, M._raw_mode(part, r, p, n, dst))
        return out

    return mode


def factorization_check(M: VermaModule, a: Element, b: Element, src, mid, dst) -> CheckResult:
    """o_{dst,src}(a *^{dst}_{src,mid} b) = o_{dst,mid}(a) o_{mid,src}(b)."""
    src, mid, dst = M.grade(src), M.grade(mid), M.grade(dst)
    name = f"factorization a={a!r} b={b!r} {src}->{mid}->{dst}"
    prod = star_nmp(M.voa, a, b, src, mid, dst)
    lhs = M.o_op(prod, src, dst)
    rhs = matmul(M.o_op(a, mid, dst), M.o_op(b, src, mid), M.level(mid).dim)
    ok = lhs == rhs
    return CheckResult(name, ok, 1, 0, [] if ok else [name])


def relation_kill_check(M: VermaModule, relations: Sequence[Element], src, dst) -> CheckResult:
    """o_{dst,src}(x) = 0 for x in O_{g,dst,src}(V)."""
    src, dst = M.grade(src), M.grade(dst)
    failures = []
    for x in relations:
        if not is_zero(M.o_op(x, src, dst)):
            failures.append(repr(x))
    return CheckResult(f"o kills O src={src} dst={dst}", not failures, len(relations), 0, failures)


def well_defined_check(M: VermaModule, u: Element, p, n, relations: Sequence[Element]) -> CheckResult:
    """u_p is independent of the representative: relation elements and tensor relations map to 0."""
    n = M.grade(n)
    wt = _mode_weight(M.voa, u)
    dst = M.target(wt, p, n)
    name = f"well_defined u={u!r} p={to_str(Scalar(p))} n={n}"
    if dst is None:
        return CheckResult(name, True, 0, 1)
    out = M.level(dst)
    d = M.U.dim
    r = _residue(M.voa, u)
    if not M._admissible(r, p):
        return CheckResult(name, True, 0, 1)
    failures = []
    checked = 0
    for x in relations:
        prod = star_nmp(M.voa, u, x, M.m, n, dst)
        for b in range(d):
            checked += 1
            if any(out.coordinates(prod, _unit(d, b))):
                failures.append(f"relation {x!r}")
    lvl = M.level(n)
    for v in (lvl.quotient.reps if lvl.quotient else []):
        ve = Element.word(v)
        for a in M.algebra.reps:
            mat = M.U.action[a]
            left = star_nmp(M.voa, u, star_right(M.voa, ve, Element.word(a), M.m, n), M.m, n, dst)
            right = star_nmp(M.voa, u, ve, M.m, n, dst)
            for b in range(d):
                checked += 1
                lhs = out.coordinates(left, _unit(d, b))
                rhs = out.coordinates(right, [mat[c][b] for c in range(d)])
                if lhs != rhs:
                    failures.append(f"tensor relation v={list(v)} a={list(a)} b={b}")
    return CheckResult(name, not failures, checked, 0, failures)
