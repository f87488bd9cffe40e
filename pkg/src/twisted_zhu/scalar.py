"""Exact rational scalars.

Everything in the package is computed over the rationals.  ``Scalar`` is
``gmpy2.mpq`` when gmpy2 is importable and :class:`fractions.Fraction`
otherwise; both are exact and interoperate with Python ints.
"""

from __future__ import annotations

import re
from fractions import Fraction

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as Scalar

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    Scalar = Fraction
    HAVE_GMPY2 = False

__all__ = ["Scalar", "HAVE_GMPY2", "Q", "ZERO", "ONE", "to_str", "parse", "is_integer"]

ZERO = Scalar(0)
ONE = Scalar(1)

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def Q(num, den=1):
    """Build an exact rational from ints, Fractions, mpqs or "p/q" strings."""
    if isinstance(num, str):
        if den != 1:
            raise TypeError("string numerator cannot take a separate denominator")
        return parse(num)
    if isinstance(num, float):
        raise TypeError("floats are not accepted as exact scalars")
    if den == 1:
        return Scalar(num)
    return Scalar(num) / Scalar(den)


def parse(text: str):
    """Parse ``"p/q"`` or ``"p"``; raises ``ValueError`` on anything else."""
    m = _FRACTION_RE.match(text)
    if not m:
        raise ValueError(f"not an exact fraction: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Scalar(num) / Scalar(den)


def to_str(x) -> str:
    """Serialize as ``"p/q"`` (always with a denominator, lowest terms)."""
    x = Scalar(x)
    return f"{int(x.numerator)}/{int(x.denominator)}"


def is_integer(x) -> bool:
    return Scalar(x).denominator == 1
