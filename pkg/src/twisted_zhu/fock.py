"""The rank-1 Heisenberg vertex operator algebra M(1).

Basis words are weakly decreasing tuples of positive integers; the word
``(n1, ..., nk)`` stands for h(-n1)...h(-nk)1 and has weight n1+...+nk.
The empty tuple is the vacuum.  Conventions: <h, h> = 1, the conformal
vector is omega = 1/2 h(-1)^2 1 and the central charge is 1.

Two automorphisms ship: the identity (T = 1) and theta: h -> -h (T = 2),
under which a word lies in the eigenspace V^(k mod 2), k = number of parts.

An :class:`Element` is a sparse rational combination of words.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Tuple

from .kernels import mode_word
from .scalar import ONE, Scalar

__all__ = [
    "Word",
    "Element",
    "VoaContext",
    "FockVOA",
    "VACUUM",
    "word_weight",
    "word_key",
    "key_word",
    "partitions",
    "words_up_to",
    "heis_mode",
    "nth_product",
    "virasoro_mode",
    "phi_map",
    "eigen_project",
    "h_vec",
    "omega_vec",
]

Word = Tuple[int, ...]
VACUUM: Word = ()


# --- partitions and the global key order ------------------------------------


@lru_cache(maxsize=None)
def partitions(n: int) -> Tuple[Word, ...]:
    """Partitions of n as decreasing tuples, in ascending lexicographic order."""
    if n == 0:
        return ((),)
    out = []

    def rec(rem, cap, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for k in range(min(rem, cap), 0, -1):
            acc.append(k)
            rec(rem - k, k, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(sorted(out))


_OFFSETS = [0]
_INDEX: Dict[Word, int] = {}
_WORDS: list = []


def _grow(weight: int) -> None:
    while len(_OFFSETS) <= weight + 1:
        w = len(_OFFSETS) - 1
        for p in partitions(w):
            _INDEX[p] = len(_WORDS)
            _WORDS.append(p)
        _OFFSETS.append(len(_WORDS))


def word_weight(w: Word) -> int:
    return sum(w)


def word_key(w: Word) -> int:
    """Position of w in the order (weight, partition lexicographic)."""
    k = _INDEX.get(w)
    if k is None:
        _grow(sum(w))
        k = _INDEX[w]
    return k


def key_word(k: int) -> Word:
    while k >= len(_WORDS):
        _grow(len(_OFFSETS) - 1)
    return _WORDS[k]


def key_weight_bound(weight: int) -> int:
    """Smallest key of weight > ``weight``; keys below it have weight <= ``weight``."""
    _grow(weight + 1)
    return _OFFSETS[weight + 1]


def words_up_to(weight: int) -> Tuple[Word, ...]:
    _grow(weight)
    return tuple(_WORDS[: _OFFSETS[weight + 1]])


def words_of_weight(weight: int) -> Tuple[Word, ...]:
    return partitions(weight)


# --- elements ---------------------------------------------------------------


class Element:
    """Sparse rational combination of basis words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms: Dict[Word, Scalar] = {}
        elif isinstance(terms, Element):
            self.terms = dict(terms.terms)
        else:
            self.terms = {tuple(k): Scalar(v) for k, v in dict(terms).items() if v}

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        e = object.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def word(cls, w: Iterable[int], coeff=1) -> "Element":
        w = tuple(sorted(w, reverse=True))
        if any(p <= 0 for p in w):
            raise ValueError(f"word parts must be positive: {w}")
        return cls._raw({w: Scalar(coeff)} if coeff else {})

    def __iter__(self) -> Iterator[Tuple[Word, Scalar]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for k, v in other.terms.items():
            t = out.get(k, 0) + v
            if t:
                out[k] = t
            else:
                out.pop(k, None)
        return Element._raw(out)

    def __neg__(self) -> "Element":
        return Element._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, c) -> "Element":
        c = Scalar(c)
        if not c:
            return Element()
        return Element._raw({k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=word_key):
            c = self.terms[w]
            name = "1" if not w else "".join(f"h({-p})" for p in w) + "1"
            parts.append(f"{c}*{name}")
        return " + ".join(parts)

    def weights(self) -> set:
        return {sum(w) for w in self.terms}

    def top_weight(self) -> int:
        return max((sum(w) for w in self.terms), default=-1)

    def by_weight(self) -> Dict[int, "Element"]:
        out: Dict[int, dict] = {}
        for w, c in self.terms.items():
            out.setdefault(sum(w), {})[w] = c
        return {k: Element._raw(v) for k, v in sorted(out.items())}

    def to_vec(self) -> dict:
        """Sparse vector keyed by :func:`word_key`."""
        return {word_key(w): c for w, c in self.terms.items()}

    @classmethod
    def from_vec(cls, vec: dict) -> "Element":
        return cls._raw({key_word(k): Scalar(c) for k, c in vec.items() if c})


def h_vec() -> Element:
    return Element.word((1,))


def omega_vec() -> Element:
    return Element.word((1, 1), Scalar(1) / 2)


# --- the VOA ----------------------------------------------------------------


@dataclass(frozen=True)
class VoaContext:
    """Automorphism data: ``tag`` is "trivial" (T = 1) or "theta" (T = 2)."""

    tag: str = "trivial"
    central_charge: Scalar = Scalar(1)

    def __post_init__(self):
        if self.tag not in ("trivial", "theta"):
            raise ValueError(f"unknown automorphism {self.tag!r}")

    @property
    def T(self) -> int:
        return 1 if self.tag == "trivial" else 2

    def inverse(self) -> "VoaContext":
        # both shipped automorphisms are involutions
        return self

    def residue(self, w: Word) -> int:
        return len(w) % 2 if self.tag == "theta" else 0


class FockVOA:
    """M(1) with a chosen automorphism; the engine used by every other module.

    Implements the small protocol the product layer relies on: ``weight``,
    ``residue``, ``key``/``word_of``, ``basis_up_to``, ``mode`` on words and
    the Virasoro operators on elements.
    """

    name = "M(1)"

    def __init__(self, aut: str = "trivial"):
        self.ctx = VoaContext(aut)
        self.T = self.ctx.T
        self.vacuum = VACUUM

    def __repr__(self):
        return f"FockVOA({self.ctx.tag!r})"

    @property
    def cache_key(self):
        return ("M(1)", self.ctx.tag)

    @property
    def inverse(self) -> "FockVOA":
        return self

    # basis
    weight = staticmethod(word_weight)
    key = staticmethod(word_key)
    word_of = staticmethod(key_word)

    def residue(self, w: Word) -> int:
        return len(w) % 2 if self.T == 2 else 0

    def basis_up_to(self, weight: int) -> Tuple[Word, ...]:
        return words_up_to(weight)

    def basis_of_weight(self, weight: int) -> Tuple[Word, ...]:
        return partitions(weight)

    def key_bound(self, weight: int) -> int:
        return key_weight_bound(weight)

    # products
    def mode(self, u: Word, n: int, v: Word):
        """u_n v for basis words, as (word, int) pairs."""
        return mode_word(u, n, v)

    def omega(self) -> Element:
        return omega_vec()


_DEFAULT = FockVOA("trivial")


def heis_mode(n: int, v: Element) -> Element:
    """Action of h(n) on the Fock space."""
    out: Dict[Word, Scalar] = {}
    for w, c in v.terms.items():
        if n < 0:
            y = tuple(sorted(w + (-n,), reverse=True))
            out[y] = out.get(y, 0) + c
        elif n > 0:
            mult = w.count(n)
            if mult:
                i = w.index(n)
                y = w[:i] + w[i + 1 :]
                out[y] = out.get(y, 0) + c * n * mult
    return Element._raw({k: v for k, v in out.items() if v})


def nth_product(u: Element, n: int, v: Element) -> Element:
    """u_n v, bilinear in u and v."""
    out: Dict[Word, Scalar] = {}
    for wu, cu in u.terms.items():
        for wv, cv in v.terms.items():
            c = cu * cv
            for x, cx in mode_word(wu, n, wv):
                t = out.get(x, 0) + c * cx
                if t:
                    out[x] = t
                else:
                    out.pop(x, None)
    return Element._raw(out)


def _omega_mode(k: int, v: Element) -> Element:
    # omega_k v = 1/2 (h(-1)^2 1)_k v
    half = Scalar(1) / 2
    out: Dict[Word, Scalar] = {}
    for wv, cv in v.terms.items():
        c = half * cv
        for x, cx in mode_word((1, 1), k, wv):
            t = out.get(x, 0) + c * cx
            if t:
                out[x] = t
            else:
                out.pop(x, None)
    return Element._raw(out)


def virasoro_mode(n: int, v: Element) -> Element:
    """L(n) v = omega_{n+1} v."""
    return _omega_mode(n + 1, v)


def phi_map(u: Element) -> Element:
    """e^{L(1)} (-1)^{L(0)} u."""
    signed = Element._raw({w: (c if sum(w) % 2 == 0 else -c) for w, c in u.terms.items()})
    out = Element(signed)
    term = signed
    j = 0
    while term:
        j += 1
        term = virasoro_mode(1, term) * (ONE / j)
        out = out + term
    return out


def eigen_project(r: int, v: Element, aut: str = "theta") -> Element:
    """Projection onto V^r for the given automorphism."""
    T = VoaContext(aut).T
    if not 0 <= r < T:
        raise ValueError(f"residue {r} out of range for T={T}")
    if T == 1:
        return Element(v)
    return Element._raw({w: c for w, c in v.terms.items() if len(w) % 2 == r})
