"""Sampled operator-identity and pairing suites over a Verma module.

Each suite returns plain JSON-ready dicts whose content depends only on the
module, the caps and the seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, Optional, Sequence

from .fock import Element, h_vec, omega_vec
from .grades import GradeIndex
from .matrix import identity, is_zero
from .pairing import Pairing, build_pairing, invariance_check
from .quotient import relation_span
from .scalar import Scalar, to_str
from .verma import (
    CheckResult,
    VermaModule,
    associativity_check,
    commutator_check,
    corrupted_mode,
    factorization_check,
    omega_containment_check,
    relation_kill_check,
    well_defined_check,
)

__all__ = ["verma_suite", "pairing_suite", "sample_commutators"]


def _subsample(items: list, cap: Optional[int], seed: int, label: str) -> list:
    if cap is None or len(items) <= cap:
        return items
    rng = random.Random(f"{seed}:{label}")
    return [items[i] for i in sorted(rng.sample(range(len(items)), cap))]


def _summary(results: Sequence[CheckResult]) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "checked": sum(r.checked for r in results),
        "skipped": sum(r.skipped for r in results),
        "failures": [f for r in results for f in r.failures][:10],
        "cases": len(results),
    }


def sample_commutators(M: VermaModule, weight_bound: int = 3, cap: Optional[int] = 40, seed: int = 0) -> list:
    """(a, b, p, q, n) with every touched level inside 0..n_max (or negative)."""
    voa, T = M.voa, M.voa.T
    top = M.n_max.value
    words = list(voa.basis_up_to(weight_bound))
    out = []
    for n in M.levels():
        for a, b in iproduct(words, words):
            wa, wb = voa.weight(a), voa.weight(b)
            ra, rb = voa.residue(a), voa.residue(b)
            # modes whose single-step target lies in [-1/T, n_max]
            def modes(w, r):
                lo = Scalar(w) - 1 + n.value - top
                res = []
                k = (lo - Scalar(r) / T)
                k = int(k) - 1
                while True:
                    p = Scalar(k) + Scalar(r) / T
                    tgt = n.value + w - p - 1
                    if tgt < -Scalar(1) / T:
                        break
                    if tgt <= top:
                        res.append(p)
                    k += 1
                return res

            for p in modes(wa, ra):
                for q in modes(wb, rb):
                    lv = [n.value + wb - q - 1, n.value + wa - p - 1, n.value + wa + wb - p - q - 2]
                    if all(x <= top for x in lv) and lv[2] >= 0:
                        out.append((a, b, p, q, n))
    return _subsample(out, cap, seed, "commutator")


def verma_suite(M: VermaModule, L: int = 2, samples: Optional[int] = 40, seed: int = 0,
                weight_bound: int = 3, relation_B: int = 4) -> Dict[str, dict]:
    voa = M.voa
    levels = M.levels()
    words = list(voa.basis_up_to(weight_bound))
    one = Element.word(())
    report: Dict[str, dict] = {}

    # Y(1, z) = id: 1_{-1} is the identity and every other mode vanishes
    res = []
    for n in levels:
        d = M.level(n).dim
        ok = M.mode_op(one, -1, n) == identity(d)
        for p in range(0, 3):
            ok = ok and (M.mode_op(one, p, n) == [] or is_zero(M.mode_op(one, p, n)))
        for p in range(-1 - M.n_max.numerator // voa.T, -1):
            if n.value - p - 1 <= M.n_max.value:
                ok = ok and is_zero(M.mode_op(one, p, n))
        res.append(CheckResult(f"vacuum n={n}", ok, 1, 0, [] if ok else [f"n={n}"]))
    report["vacuum_identity"] = _summary(res)

    # commutator formula
    res = [commutator_check(M, Element.word(a), Element.word(b), p, q, n)
           for a, b, p, q, n in sample_commutators(M, weight_bound, samples, seed)]
    report["commutator"] = _summary(res)

    # associativity, pairs of weight <= 2 plus omega
    small = [w for w in words if voa.weight(w) <= 2]
    elems = [Element.word(w) for w in small] + [omega_vec()]
    cases = [(a, b, n) for a, b in iproduct(range(len(elems)), range(len(elems))) for n in levels]
    cases = _subsample(cases, samples, seed, "associativity")
    res = [associativity_check(M, elems[a], elems[b], n, L) for a, b, n in cases]
    report["associativity"] = _summary(res)

    # Omega containment: positive-shift modes kill every level
    res = [omega_containment_check(M, j, words) for j in levels]
    report["omega_containment"] = _summary(res)
    control = omega_containment_check(M, levels[0], words, mode=corrupted_mode(M))
    report["omega_negative_control"] = {"detected": not control.passed, "failures": len(control.failures)}

    # o_{dst,src} kills O_{g,dst,src}
    res = []
    bound = voa.key_bound(weight_bound)
    for src, dst in iproduct(levels, levels):
        span = relation_span(voa, src, dst, max(relation_B, weight_bound), "full", M.P)
        rel = [Element.from_vec(row) for k, row in sorted(span.table.items()) if k < bound]
        res.append(relation_kill_check(M, rel, src, dst))
    report["o_kills_relations"] = _summary(res)

    # o(a *^{dst}_{src,mid} b) = o(a) o(b)
    fwords = [w for w in words if voa.weight(w) <= 2]
    cases = [(a, b, s, mid, d) for a, b in iproduct(fwords, fwords) for s, mid, d in iproduct(levels, levels, levels)]
    cases = _subsample(cases, samples, seed, "factorization")
    res = [factorization_check(M, Element.word(a), Element.word(b), s, mid, d) for a, b, s, mid, d in cases]
    report["factorization"] = _summary(res)

    # well-definedness of u_p on representatives
    res = []
    for n in levels:
        span = relation_span(voa, M.m, n, max(relation_B, weight_bound), "full", M.P)
        rel = [Element.from_vec(row) for k, row in sorted(span.table.items()) if k < bound][:8]
        for w in [x for x in words if voa.weight(x) <= 2]:
            u = Element.word(w)
            for s in range(0, 3 * voa.T):
                p = Scalar(voa.weight(w)) - 1 + n.value - M.n_max.value + Scalar(s) / voa.T
                tgt = n.value + voa.weight(w) - p - 1
                if 0 <= tgt <= M.n_max.value:
                    res.append(well_defined_check(M, u, p, n, rel))
    report["well_defined"] = _summary(res)

    # universal property: U embeds in M(U)(m); M(U)(0) != 0 when U is nonzero
    emb = M.embedding_rank()
    report["universal"] = {
        "passed": emb == M.U.dim and (M.U.dim == 0 or M.level(0).dim > 0),
        "embedding_rank": emb,
        "dim_U": M.U.dim,
        "level0_dim": M.level(0).dim,
    }
    return report


def pairing_suite(M: VermaModule, pairing: Optional[Pairing] = None, q_span: int = 3) -> Dict[str, object]:
    pairing = pairing or build_pairing(M)
    levels = M.levels()
    T = M.voa.T
    out: Dict[str, object] = {"levels": [pairing.levels[n.numerator].to_json() for n in levels]}
    blocks = all(
        is_zero(pairing.between(p, n)) for p, n in iproduct(levels, levels) if p != n
    )
    out["block_diagonal"] = blocks
    qs = [Fraction(k, T) for k in range(-q_span * T, q_span * T + 1)]
    res = []
    for name, u in (("1", Element.word(())), ("h", h_vec()), ("omega", omega_vec())):
        for n in levels:
            res.append(invariance_check(pairing, u, n, qs))
    out["invariance"] = _summary(res)
    radical = {str(n): len(pairing.levels[n.numerator].radical) for n in levels}
    out["radical_dims"] = radical
    out["radical_zero"] = all(v == 0 for v in radical.values())
    # bimodule dimension against level dimension times dim U* (single irreducible U)
    rows = []
    for n in levels:
        lvl = M.level(n)
        bim = lvl.quotient.dim if lvl.quotient is not None else 0
        rows.append({"n": str(n), "bimodule_dim": bim, "level_dim": lvl.dim, "dim_U": M.U.dim,
                     "equal": bim == lvl.dim * M.U.dim})
    out["bimodule_decomposition"] = rows
    return out
