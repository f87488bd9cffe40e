"""Certificate-backed checks of the congruences satisfied by the twisted products.

Each identity id names a family of elements that must lie in a relation
space O'_{g,n,m}(V) or O_{g,n,m}(V).  For a sample the harness forms those
elements exactly and searches for membership certificates, raising the
generator bound B until they appear or the cap is reached.  A miss is
reported as "not found at B", never as a refutation.

Ids:

========  ===================================================================
L3.1      V^r lies in O'_{g,n,m} when i1 - i3 != r mod T
L3.3      shifted residues (1+z)^{alpha+s} / z^{beta+k}, k >= s >= 0, lie in O'
L3.4      u *_{m,p}^n v - v *_{m,m+n-p}^n u - Res (1+z)^{wt u-1+p-n} Y(u,z)v in O'
C3.5      u *_{g,m}^n 1 - u in O'
L3.6      V *bar O' and O' * V lie in O'
L3.7      (a *bar b) * c - a *bar (b * c) in O'
L3.8      V *_{m,p}^n O_{g,p,m} and O_{g,n,p} *_{m,p}^n V lie in O_{g,n,m}
P4.2      phi(O'_{g,n,m}) in O'_{g^-1,m,n}; phi(u * v) - phi(v) * phi(u) in O'_{g^-1,m,n}
P4.3      O_{g,n,m} lies in O_{g,n-1/T,m-1/T}
E4.3      u *^{p3}_{p1,p2} v - u *^{p3-1/T}_{p1-1/T,p2-1/T} v in O'_{g,p3-1/T,p1-1/T}
L5.8      the two boundary cases m + n - p < 0 <= p and p < 0 <= m + n - p
========  ===================================================================
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, Optional, Sequence, Tuple

from .fock import Element, Word, phi_map
from .grades import GradeIndex, grades_up_to
from .kernels import reduce_vec
from .linalg import membership_certificate
from .products import (
    _circ_params,
    circ_nm,
    l_relation,
    residue_product,
    star_bar,
    star_nmp,
    star_right,
)
from .quotient import relation_span, relation_table
from .scalar import ONE, Scalar, to_str

__all__ = [
    "IDENTITY_IDS",
    "HypothesisError",
    "UnknownIdentityError",
    "Sample",
    "IdentityReport",
    "verify_identity",
    "default_samples",
    "run_suite",
]

IDENTITY_IDS = ("L3.1", "L3.3", "L3.4", "C3.5", "L3.6", "L3.7", "L3.8", "P4.2", "P4.3", "E4.3", "L5.8")


class HypothesisError(ValueError):
    """A sample violates the preconditions of the identity it was given to."""


class UnknownIdentityError(KeyError):
    pass


@dataclass(frozen=True)
class Sample:
    """Inputs for one identity check.

    ``elements`` are the vectors named by the identity (u, v, ...; or a
    relation element), ``grades`` the grade parameters by name as exact
    fractions (L5.8 allows a negative p), ``ints`` any integer parameters.
    """

    elements: Tuple[Element, ...]
    grades: Tuple[Tuple[str, Fraction], ...]
    ints: Tuple[Tuple[str, int], ...] = ()
    tag: str = ""

    def grade(self, name: str) -> Fraction:
        return dict(self.grades)[name]

    def int(self, name: str) -> int:
        return dict(self.ints)[name]

    def to_json(self) -> dict:
        out = {
            "elements": [
                [[list(w), to_str(c)] for w, c in sorted(e.terms.items(), key=lambda t: (sum(t[0]), t[0]))]
                for e in self.elements
            ],
            "grades": {k: _frac_str(v) for k, v in self.grades},
        }
        if self.ints:
            out["ints"] = dict(self.ints)
        if self.tag:
            out["tag"] = self.tag
        return out


def _frac_str(f: Fraction) -> str:
    f = Fraction(f)
    return f"{f.numerator}/{f.denominator}"


@dataclass
class IdentityReport:
    id: str
    sample: Sample
    found: bool
    B: int
    P: str
    millis: float = 0.0
    certificate_terms: int = 0
    certificate_digest: str = ""
    checked: int = 0

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "id": self.id,
            "sample": self.sample.to_json(),
            "found": self.found,
            "B": self.B,
            "P": self.P,
            "elements_checked": self.checked,
            "certificate_terms": self.certificate_terms,
            "certificate_digest": self.certificate_digest,
        }
        if not self.found:
            out["outcome"] = f"not found at B={self.B}"
        if timing:
            out["millis"] = round(self.millis, 3)
        return out


# --- helpers ------------------------------------------------------------------


def _g(voa, value) -> GradeIndex:
    return GradeIndex.from_value(value, voa.T)


def _li(value: Fraction, T: int) -> Tuple[int, int]:
    """(l, i) with value = l + i/T, 0 <= i < T; l may be negative."""
    k = Fraction(value) * T
    if k.denominator != 1:
        raise HypothesisError(f"{value} is not in (1/{T})Z")
    k = int(k)
    return k // T, k % T


def _residue_of(voa, e: Element) -> int:
    rs = {voa.residue(w) for w in e.terms}
    if len(rs) > 1:
        raise HypothesisError("sample element is not homogeneous in the eigenspace decomposition")
    return rs.pop() if rs else 0


def _weight_of(voa, e: Element) -> int:
    ws = {voa.weight(w) for w in e.terms}
    if len(ws) > 1:
        raise HypothesisError("sample element is not homogeneous in weight")
    return ws.pop() if ws else 0


# a target is (m-slot, n-slot, level): the relation space O_{g,n,m} at that level
Target = Tuple[GradeIndex, GradeIndex, str]


def _members(voa, ident: str, s: Sample) -> Tuple[List[Element], Target]:
    T = voa.T
    E = s.elements
    if ident == "L3.1":
        (u,) = E
        m, n = _g(voa, s.grade("m")), _g(voa, s.grade("n"))
        r = _residue_of(voa, u)
        if (m.i - n.i - r) % T == 0:
            raise HypothesisError(f"L3.1 needs i1 - i3 != r mod T (i1={m.i}, i3={n.i}, r={r})")
        return [u], (m, n, "prime")
    if ident == "L3.3":
        u, v = E
        m, n = _g(voa, s.grade("m")), _g(voa, s.grade("n"))
        k, sh = s.int("k"), s.int("s")
        if not k >= sh >= 0:
            raise HypothesisError("L3.3 needs integers k >= s >= 0")
        _residue_of(voa, u)
        out = []
        for wu, cu in u.terms.items():
            alpha, beta = _circ_params(voa, wu, m, n)
            out.append(residue_product(voa, Element.word(wu, cu), v, alpha + sh, beta + k))
        return [sum(out, Element())], (m, n, "prime")
    if ident == "L3.4":
        u, v = E
        m, p, n = (_g(voa, s.grade(x)) for x in ("m", "p", "n"))
        r, sv = _residue_of(voa, u), _residue_of(voa, v)
        if (p.i - n.i - r) % T or (m.i - p.i - sv) % T:
            raise HypothesisError("L3.4 needs i2 - i3 = r and i1 - i2 = s mod T")
        q = m.value + n.value - p.value
        if q < 0:
            raise HypothesisError("L3.4 needs m + n - p >= 0")
        q = _g(voa, Fraction(q.numerator, q.denominator))
        wu = _weight_of(voa, u)
        x = star_nmp(voa, u, v, m, p, n) - star_nmp(voa, v, u, m, q, n)
        x = x - residue_product(voa, u, v, Scalar(wu - 1) + p.value - n.value, 0)
        return [x], (m, n, "prime")
    if ident == "C3.5":
        (u,) = E
        m, n = _g(voa, s.grade("m")), _g(voa, s.grade("n"))
        _residue_of(voa, u)
        return [star_right(voa, u, Element.word(()), m, n) - u], (m, n, "prime")
    if ident == "L3.6":
        u, v, w = E
        m, n = _g(voa, s.grade("m")), _g(voa, s.grade("n"))
        o1 = circ_nm(voa, v, w, m, n)
        o2 = l_relation(voa, v, m, n)
        xs = [star_bar(voa, u, o1, m, n), star_right(voa, o1, u, m, n),
              star_bar(voa, u, o2, m, n), star_right(voa, o2, u, m, n)]
        return xs, (m, n, "prime")
    if ident == "L3.7":
        a, b, c = E
        m, n = _g(voa, s.grade("m")), _g(voa, s.grade("n"))
        x = star_right(voa, star_bar(voa, a, b, m, n), c, m, n) - star_bar(voa, a, star_right(voa, b, c, m, n), m, n)
        return [x], (m, n, "prime")
    if ident == "L3.8":
        u, x = E
        m, p, n = (_g(voa, s.grade(k)) for k in ("m", "p", "n"))
        side = s.tag
        if side == "left":  # x in O_{g,p,m}
            return [star_nmp(voa, u, x, m, p, n)], (m, n, "full")
        if side == "right":  # x in O_{g,n,p}
            return [star_nmp(voa, x, u, m, p, n)], (m, n, "full")
        raise HypothesisError("L3.8 sample tag must be 'left' or 'right'")
    if ident == "P4.2":
        inv = voa.inverse
        if s.tag == "image":
            (x,) = E
            m, n = _g(voa, s.grade("m")), _g(voa, s.grade("n"))
            return [phi_map(x)], (n, m, "prime")
        if s.tag == "product":
            u, v = E
            m, p, n = (_g(voa, s.grade(k)) for k in ("m", "p", "n"))
            _residue_of(voa, u)
            _residue_of(voa, v)
            lhs = phi_map(star_nmp(voa, u, v, m, p, n))
            rhs = star_nmp(inv, phi_map(v), phi_map(u), n, p, m)
            return [lhs - rhs], (n, m, "prime")
        raise HypothesisError("P4.2 sample tag must be 'image' or 'product'")
    if ident == "P4.3":
        (x,) = E
        m, n = _g(voa, s.grade("m")), _g(voa, s.grade("n"))
        if m.numerator < 1 or n.numerator < 1:
            raise HypothesisError("P4.3 needs m, n >= 1/T")
        level = s.tag or "full"
        return [x], (m.shift(-1), n.shift(-1), level)
    if ident == "E4.3":
        u, v = E
        p1, p2, p3 = (_g(voa, s.grade(k)) for k in ("p1", "p2", "p3"))
        if min(p1.numerator, p2.numerator, p3.numerator) < 1:
            raise HypothesisError("E4.3 needs p1, p2, p3 >= 1/T")
        r, sv = _residue_of(voa, u), _residue_of(voa, v)
        if (p2.i - p3.i - r) % T or (p1.i - p2.i - sv) % T:
            raise HypothesisError("E4.3 needs j2 - j3 = r and j1 - j2 = s mod T")
        x = star_nmp(voa, u, v, p1, p2, p3) - star_nmp(voa, u, v, p1.shift(-1), p2.shift(-1), p3.shift(-1))
        return [x], (p1.shift(-1), p3.shift(-1), "prime")
    if ident == "L5.8":
        u, v = E
        m, n = _g(voa, s.grade("m")), _g(voa, s.grade("n"))
        pv = Fraction(s.grade("p"))
        _l2, i2 = _li(pv, T)
        r, sv = _residue_of(voa, u), _residue_of(voa, v)
        if (i2 - n.i - r) % T or (m.i - i2 - sv) % T:
            raise HypothesisError("L5.8 needs i2 - i3 = r and i1 - i2 = s mod T")
        wu = _weight_of(voa, u)
        q = Fraction(m.value.numerator, m.value.denominator) + Fraction(n.value.numerator, n.value.denominator) - pv
        res = residue_product(voa, u, v, Scalar(wu - 1) + Scalar(pv) - n.value, 0)
        if pv >= 0 and q < 0:
            return [star_nmp(voa, u, v, m, _g(voa, pv), n) - res], (m, n, "prime")
        if pv < 0 and q >= 0:
            return [-star_nmp(voa, v, u, m, _g(voa, q), n) - res], (m, n, "prime")
        raise HypothesisError("L5.8 needs p >= 0 > m + n - p or p < 0 <= m + n - p")
    raise UnknownIdentityError(ident)


def _certify(voa, x: Element, target: Target, B: int, P) -> Optional[list]:
    m, n, level = target
    vec = x.to_vec()
    if not vec:
        return []
    if reduce_vec(vec, relation_table(voa, m, n, B, level, P)):
        return None
    return membership_certificate(vec, relation_span(voa, m, n, B, level, P))


def _digest(certs: Sequence[list]) -> str:
    h = hashlib.sha256()
    for c in certs:
        h.update(("|".join(to_str(x) for x in c) + ";").encode())
    return h.hexdigest()[:16]


def verify_identity(
    voa,
    identity_id: str,
    samples: Sequence[Sample],
    B: int,
    P: Optional[GradeIndex] = None,
    B_start: Optional[int] = None,
) -> List[IdentityReport]:
    """One report per sample; B is the cap for the internal search."""
    if identity_id not in IDENTITY_IDS:
        raise UnknownIdentityError(identity_id)
    reports = []
    for s in samples:
        t0 = time.perf_counter()
        xs, target = _members(voa, identity_id, s)
        Pt = P if P is not None else GradeIndex.from_value(target[0].value + target[1].value + 2, voa.T)
        top = max((e.top_weight() for e in xs), default=0)
        b = max(0, top) if B_start is None else B_start
        b = min(b, B)
        found = False
        certs: list = []
        while True:
            certs = []
            for x in xs:
                c = _certify(voa, x, target, b, Pt)
                if c is None:
                    break
                certs.append(c)
            else:
                found = True
            if found or b >= B:
                break
            b += 1
        terms = sum(1 for c in certs for a in c if a) if found else 0
        reports.append(IdentityReport(
            identity_id, s, found, b, str(Pt), (time.perf_counter() - t0) * 1000, terms,
            _digest(certs) if found else "", len(xs),
        ))
    return reports


# --- default sample sets --------------------------------------------------------


def _words(voa, wmax: int) -> List[Word]:
    return list(voa.basis_up_to(wmax))


def _E(w: Word) -> Element:
    return Element.word(w)


def _F(g) -> Fraction:
    return Fraction(g.numerator, g.T)


def default_samples(
    voa,
    identity_id: str,
    grade_bound=Fraction(3, 2),
    weight_bound: int = 4,
    cap: int = 12,
    seed: int = 0,
    grades: Optional[Sequence[Tuple[str, object]]] = None,
    P: Optional[GradeIndex] = None,
) -> List[Sample]:
    """Every admissible sample within the budgets, or a seeded subsample of size ``cap``.

    ``grades`` pins named grade values (e.g. [("m", 0), ("n", Fraction(1, 2))]).
    Relation elements for L3.8 and P4.3 are taken from spans built with the
    internal grade bound ``P``.
    """
    T = voa.T
    gs = grades_up_to(Fraction(grade_bound), T)
    pins = {k: Fraction(v) for k, v in (grades or [])}

    def ok(**kw):
        return all(kw[k] == v for k, v in pins.items() if k in kw)

    words = _words(voa, weight_bound)
    res = voa.residue
    wt = voa.weight
    out: List[Sample] = []
    ident = identity_id
    if ident not in IDENTITY_IDS:
        raise UnknownIdentityError(ident)

    if ident in ("L3.1", "C3.5"):
        for m, n in iproduct(gs, gs):
            if not ok(m=_F(m), n=_F(n)):
                continue
            for u in words:
                if ident == "L3.1" and (m.i - n.i - res(u)) % T == 0:
                    continue
                out.append(Sample((_E(u),), (("m", _F(m)), ("n", _F(n)))))
    elif ident == "L3.3":
        for m, n in iproduct(gs, gs):
            if not ok(m=_F(m), n=_F(n)):
                continue
            for u in words:
                for v in words:
                    if wt(u) + wt(v) > weight_bound:
                        continue
                    for k in range(3):
                        for sh in range(k + 1):
                            out.append(Sample((_E(u), _E(v)), (("m", _F(m)), ("n", _F(n))), (("k", k), ("s", sh))))
    elif ident in ("L3.4", "E4.3", "L5.8") or (ident == "P4.2"):
        if ident == "L5.8":
            pvals = [Fraction(k, T) for k in range(-int(Fraction(grade_bound) * T), 2 * int(Fraction(grade_bound) * T) + 2)]
        for m, n in iproduct(gs, gs):
            plist = gs if ident != "L5.8" else pvals
            for p in plist:
                pv = _F(p) if isinstance(p, GradeIndex) else p
                if ident == "E4.3":
                    names = (("p1", _F(m)), ("p2", pv), ("p3", _F(n)))
                    if not ok(p1=_F(m), p2=pv, p3=_F(n)):
                        continue
                    if min(m.numerator, n.numerator, p.numerator) < 1:
                        continue
                else:
                    names = (("m", _F(m)), ("p", pv), ("n", _F(n)))
                    if not ok(m=_F(m), p=pv, n=_F(n)):
                        continue
                q = _F(m) + _F(n) - pv
                if ident == "L3.4" and q < 0:
                    continue
                if ident == "L5.8" and not ((pv >= 0 and q < 0) or (pv < 0 and q >= 0)):
                    continue
                _l2, i2 = _li(pv, T)
                for u in words:
                    for v in words:
                        if wt(u) + wt(v) > weight_bound:
                            continue
                        if ident != "P4.2":
                            if (i2 - n.i - res(u)) % T or (m.i - i2 - res(v)) % T:
                                continue
                        tag = "product" if ident == "P4.2" else ""
                        out.append(Sample((_E(u), _E(v)), names, (), tag))
        if ident == "P4.2":
            for m, n in iproduct(gs, gs):
                if not ok(m=_F(m), n=_F(n)):
                    continue
                for u in words:
                    for v in words:
                        if wt(u) + wt(v) <= weight_bound:
                            x = circ_nm(voa, _E(u), _E(v), m, n)
                            if x:
                                out.append(Sample((x,), (("m", _F(m)), ("n", _F(n))), (), "image"))
                    x = l_relation(voa, _E(u), m, n)
                    if x:
                        out.append(Sample((x,), (("m", _F(m)), ("n", _F(n))), (), "image"))
    elif ident in ("L3.6", "L3.7"):
        for m, n in iproduct(gs, gs):
            if not ok(m=_F(m), n=_F(n)):
                continue
            for a in words:
                for b in words:
                    for c in words:
                        if wt(a) + wt(b) + wt(c) <= weight_bound:
                            out.append(Sample((_E(a), _E(b), _E(c)), (("m", _F(m)), ("n", _F(n)))))
    elif ident == "L3.8":
        for m, p, n in iproduct(gs, gs, gs):
            if not ok(m=_F(m), p=_F(p), n=_F(n)):
                continue
            names = (("m", _F(m)), ("p", _F(p)), ("n", _F(n)))
            # relation_span takes (m-slot, n-slot): O_{g,p,m} is (m, p), O_{g,n,p} is (p, n)
            for side, (a, b) in (("left", (m, p)), ("right", (p, n))):
                rel = _relation_elements(voa, a, b, weight_bound, P)
                for u in words:
                    for x in rel:
                        if wt(u) + x.top_weight() <= weight_bound:
                            out.append(Sample((_E(u), x), names, (), side))
    elif ident == "P4.3":
        for m, n in iproduct(gs, gs):
            if min(m.numerator, n.numerator) < 1 or not ok(m=_F(m), n=_F(n)):
                continue
            names = (("m", _F(m)), ("n", _F(n)))
            for x in _relation_elements(voa, m, n, weight_bound, P):
                out.append(Sample((x,), names, (), "full"))
            for u in words:
                for v in words:
                    if wt(u) + wt(v) <= weight_bound:
                        x = circ_nm(voa, _E(u), _E(v), m, n)
                        if x:
                            out.append(Sample((x,), names, (), "prime"))
    if cap is not None and len(out) > cap:
        rng = random.Random(f"{seed}:{ident}")
        keep = sorted(rng.sample(range(len(out)), cap))
        out = [out[i] for i in keep]
    return out


def _relation_elements(voa, m: GradeIndex, n: GradeIndex, weight_bound: int, P=None) -> List[Element]:
    """Rows of the full relation span O_{g,n,m} whose weight is at most ``weight_bound``."""
    span = relation_span(voa, m, n, weight_bound, "full", P)
    bound = voa.key_bound(weight_bound)
    return [Element.from_vec(row) for p, row in sorted(span.table.items()) if p < bound]


def run_suite(voa, ids: Sequence[str], B: int, P=None, grade_bound=Fraction(3, 2), weight_bound: int = 4,
              cap: int = 12, seed: int = 0) -> Dict[str, List[IdentityReport]]:
    out = {}
    for ident in ids:
        samples = default_samples(voa, ident, grade_bound, weight_bound, cap, seed, P=P)
        out[ident] = verify_identity(voa, ident, samples, B, P)
    return out
