"""Finite structure-constant tables for u_n v on the Fock word basis.

A table lists records (u-word, n, v-word, result) for every product whose
inputs and output have weight at most ``weight_cap``; omitted products
inside the cap are zero.  The loader rejects records that break the grading
law wt(u_n v) = wt u + wt v - n - 1.  :class:`TableVOA` plugs a table into
the product layer in place of the built-in M(1) modes.

JSON layout::

    {"weight_cap": 4, "automorphism": "theta",
     "records": [{"u": [1], "n": 1, "v": [1], "result": [[[], "1/1"]]}, ...]}
"""

from __future__ import annotations

import hashlib
import json
from typing import Dict, List, Tuple

from .fock import FockVOA, Word, words_up_to, word_weight
from .quotient import TruncationError
from .scalar import Q, to_str

__all__ = ["TableError", "ModeTable", "TableVOA", "dump_table"]


class TableError(ValueError):
    pass


def _word(x) -> Word:
    w = tuple(int(a) for a in x)
    if any(a < 1 for a in w) or list(w) != sorted(w, reverse=True):
        raise TableError(f"not a weakly decreasing word of positive parts: {x}")
    return w


class ModeTable:
    def __init__(self, weight_cap: int, entries: Dict[Tuple[Word, int, Word], tuple]):
        self.weight_cap = weight_cap
        self.entries = entries

    @classmethod
    def from_json(cls, data) -> "ModeTable":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            cap = int(data["weight_cap"])
            records = data["records"]
        except KeyError as e:
            raise TableError(f"table lacks field {e}") from None
        entries: Dict[Tuple[Word, int, Word], tuple] = {}
        for rec in records:
            u, v, n = _word(rec["u"]), _word(rec["v"]), int(rec["n"])
            expect = word_weight(u) + word_weight(v) - n - 1
            if word_weight(u) + word_weight(v) > cap or expect > cap:
                raise TableError(f"record u={list(u)} n={n} v={list(v)} exceeds weight cap {cap}")
            result = []
            for w, c in rec["result"]:
                w = _word(w)
                if word_weight(w) != expect:
                    raise TableError(
                        f"grading law fails: u={list(u)} n={n} v={list(v)} gives weight {word_weight(w)}, expected {expect}"
                    )
                c = Q(str(c))
                if c:
                    result.append((w, c))
            key = (u, n, v)
            if key in entries:
                raise TableError(f"duplicate record u={list(u)} n={n} v={list(v)}")
            entries[key] = tuple(sorted(result))
        return cls(cap, entries)

    @classmethod
    def load(cls, path) -> "ModeTable":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {
            "weight_cap": self.weight_cap,
            "records": [
                {"u": list(u), "n": n, "v": list(v), "result": [[list(w), to_str(c)] for w, c in res]}
                for (u, n, v), res in sorted(self.entries.items())
            ],
        }

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode()).hexdigest()[:16]

    def mode(self, u: Word, n: int, v: Word):
        wu, wv = word_weight(u), word_weight(v)
        out_wt = wu + wv - n - 1
        if out_wt < 0:
            return ()
        if wu + wv > self.weight_cap or out_wt > self.weight_cap:
            raise TruncationError(f"u_n v with u={list(u)} n={n} v={list(v)} lies beyond the table cap {self.weight_cap}")
        return self.entries.get((u, n, v), ())


def dump_table(voa: FockVOA, weight_cap: int) -> ModeTable:
    """Tabulate voa.mode for all inputs and outputs of weight <= weight_cap."""
    words = words_up_to(weight_cap)
    entries = {}
    for u in words:
        for v in words:
            s = word_weight(u) + word_weight(v)
            if s > weight_cap:
                continue
            for n in range(s - 1 - weight_cap, s):
                res = tuple((w, Q(c)) for w, c in voa.mode(u, n, v) if c)
                if res:
                    entries[(u, n, v)] = tuple(sorted(res))
    return ModeTable(weight_cap, entries)


class TableVOA(FockVOA):
    """FockVOA whose n-th products come from a finite table."""

    def __init__(self, table: ModeTable, aut: str = "trivial"):
        super().__init__(aut)
        self.table = table

    def __repr__(self):
        return f"TableVOA(cap={self.table.weight_cap}, {self.ctx.tag!r})"

    @property
    def cache_key(self):
        return ("table", self.table.digest(), self.ctx.tag)

    @property
    def inverse(self) -> "TableVOA":
        return self

    def mode(self, u: Word, n: int, v: Word):
        return self.table.mode(u, n, v)
