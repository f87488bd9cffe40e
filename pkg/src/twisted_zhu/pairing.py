"""The invariant pairing between M(U*) and M(U) and its radical.

On level n the pairing of x (x) f in M(U*)(n) with y (x) u in M(U)(n) is
f([phi(x) *^m_{g,m,n} y] . u); different levels pair to zero.  The right
kernel of each level matrix is the radical J(U) on that level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .fock import Element, phi_map, virasoro_mode
from .grades import GradeIndex
from .matrix import Matrix, matadd, matmul, matscale, nullspace, rank, transpose, zeros
from .products import star_nmp
from .scalar import ONE, Scalar, to_str
from .verma import AModuleSpec, CheckResult, VermaModule, split_homogeneous

__all__ = ["PairingMatrix", "Pairing", "build_pairing", "dual_module", "invariance_check"]


@dataclass
class PairingMatrix:
    n: GradeIndex
    matrix: Matrix
    rows: int
    cols: int
    radical: List[List[Scalar]] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return rank(self.matrix, self.cols)

    def to_json(self) -> dict:
        return {
            "n": str(self.n),
            "shape": [self.rows, self.cols],
            "matrix": [[to_str(x) for x in row] for row in self.matrix],
            "rank": self.rank,
            "radical_dim": len(self.radical),
        }


@dataclass
class Pairing:
    module: VermaModule
    dual: VermaModule
    levels: Dict[int, PairingMatrix]

    def between(self, p, n) -> Matrix:
        """Pairing of M(U*)(p) against M(U)(n); zero unless p = n."""
        p, n = self.module.grade(p), self.module.grade(n)
        if p != n:
            return zeros(self.dual.level(p).dim, self.module.level(n).dim)
        return self.levels[n.numerator].matrix


def dual_module(M: VermaModule) -> VermaModule:
    """M(U*) over the g^-1 engine, with the same truncation caps as M."""
    voa_inv = M.voa.inverse
    from .quotient import filtered_quotient

    dual_alg = filtered_quotient(voa_inv, M.m, M.m, M.W, M.B, M.P, M.level_kind, B_extra=M.B_reduce)
    U_star = M.U.dual(M.voa, M.algebra, dual_alg)
    return VermaModule(voa_inv, U_star, M.W, M.B, M.P, M.level_kind, M.B_reduce, M.n_max.value, M.require_stable)


def _level_matrix(M: VermaModule, D: VermaModule, n: GradeIndex) -> PairingMatrix:
    left = D.level(n)
    right = M.level(n)
    alg = M.algebra
    rows = []
    for xw, a in left.pairs():
        px = phi_map(Element.word(xw))
        row = []
        for yw, b in right.pairs():
            prod = star_nmp(M.voa, px, Element.word(yw), M.m, n, M.m)
            mat = M.U.act(alg.coordinates(prod), alg.reps)
            row.append(mat[a][b])
        rows.append(row)
    return PairingMatrix(n, rows, left.dim, right.dim, nullspace(rows, right.dim))


def build_pairing(M: VermaModule, D: Optional[VermaModule] = None, levels: Optional[Sequence] = None) -> Pairing:
    D = D or dual_module(M)
    grades = [M.grade(n) for n in levels] if levels is not None else M.levels()
    return Pairing(M, D, {n.numerator: _level_matrix(M, D, n) for n in grades})


def _l1_terms(u: Element) -> List[Element]:
    """L(1)^j u / j! for j = 0, 1, ... until zero."""
    out = [u]
    term = u
    j = 0
    while True:
        j += 1
        term = virasoro_mode(1, term) * (ONE / j)
        if not term:
            return out
        out.append(term)


def invariance_check(pairing: Pairing, u: Element, n, qs: Sequence) -> CheckResult:
    """(u_q w', w) = (w', sum_j (-1)^k ((L(1)^j u/j!)_{2k-j-q-2}) w) for u of weight k.

    w' runs over M(U*)(n) and w over M(U)(t) with t = n + k - q - 1; pairs
    of (n, q) whose levels leave the computed range are skipped.
    """
    M, D = pairing.module, pairing.dual
    n = M.grade(n)
    parts = split_homogeneous(M.voa, u)
    weights = {w for w, _ in parts}
    if len(weights) != 1:
        raise ValueError("u must be homogeneous in weight")
    k = weights.pop()
    sign = -1 if k % 2 else 1
    terms = _l1_terms(u)
    checked = skipped = 0
    failures = []
    for q in qs:
        q = Scalar(q)
        t_val = n.value + k - q - 1
        if t_val < 0 or t_val > M.n_max.value:
            skipped += 1
            continue
        t = D.target(k, q, n)
        A = D.mode_op(u, q, n)  # M(U*)(n) -> M(U*)(t)
        lhs = matmul(transpose(A, D.level(n).dim), pairing.between(t, t), D.level(t).dim)
        Bm = zeros(M.level(n).dim, M.level(t).dim)
        for j, uj in enumerate(terms):
            p = Scalar(2 * k - j) - q - 2
            mat = M.mode_op(uj, p, t)
            if mat:
                Bm = matadd(Bm, matscale(mat, sign))
        rhs = matmul(pairing.between(n, n), Bm, M.level(n).dim)
        checked += 1
        if lhs != rhs:
            failures.append(f"q={to_str(q)}")
    return CheckResult(f"invariance u={u!r} n={n}", not failures, checked, skipped, failures)
