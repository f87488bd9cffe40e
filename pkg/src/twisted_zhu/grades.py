"""Grades m = l + i/T in (1/T)Z_+."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List

from .scalar import Scalar

__all__ = ["GradeIndex", "parse_grade", "grades_up_to", "GradeError"]


class GradeError(ValueError):
    pass


@dataclass(frozen=True, order=False)
class GradeIndex:
    l: int
    i: int
    T: int

    def __post_init__(self):
        if self.T < 1:
            raise GradeError(f"T must be positive, got {self.T}")
        if self.l < 0 or not 0 <= self.i < self.T:
            raise GradeError(f"bad grade l={self.l}, i={self.i}, T={self.T}")

    @classmethod
    def from_value(cls, value, T: int) -> "GradeIndex":
        v = Fraction(value)
        k = v * T
        if k.denominator != 1 or k < 0:
            raise GradeError(f"{value} is not in (1/{T})Z_+")
        k = int(k)
        return cls(k // T, k % T, T)

    @property
    def value(self) -> Scalar:
        return Scalar(self.l) + Scalar(self.i) / self.T

    @cached_property
    def numerator(self) -> int:
        """The grade times T."""
        return self.l * self.T + self.i

    def shift(self, steps: int) -> "GradeIndex":
        """Grade plus steps/T."""
        return GradeIndex.from_value(Fraction(self.numerator + steps, self.T), self.T)

    def __add__(self, other):
        if isinstance(other, GradeIndex):
            if other.T != self.T:
                raise GradeError("mixed T")
            return GradeIndex.from_value(Fraction(self.numerator + other.numerator, self.T), self.T)
        return NotImplemented

    def _cmp(self, other):
        if isinstance(other, GradeIndex):
            return Fraction(self.numerator, self.T) - Fraction(other.numerator, other.T)
        return Fraction(self.numerator, self.T) - Fraction(other)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __str__(self) -> str:
        f = Fraction(self.numerator, self.T)
        return str(f)

    def __repr__(self) -> str:
        return f"GradeIndex({self})"


_GRADE_RE = re.compile(r"^\s*(\d+)\s*(?:\+\s*(\d+)\s*/\s*(\d+))?\s*$|^\s*(\d+)\s*/\s*(\d+)\s*$")


def parse_grade(text, T: int) -> GradeIndex:
    """Parse "l", "l+i/T" or "p/q" into a grade for the given T."""
    if isinstance(text, GradeIndex):
        if text.T != T:
            raise GradeError(f"grade {text} has T={text.T}, expected {T}")
        return text
    if isinstance(text, (int, Fraction)):
        return GradeIndex.from_value(text, T)
    m = _GRADE_RE.match(str(text))
    if not m:
        raise GradeError(f"malformed grade {text!r}")
    if m.group(4) is not None:
        den = int(m.group(5))
        if den == 0:
            raise GradeError(f"malformed grade {text!r}")
        value = Fraction(int(m.group(4)), den)
    else:
        value = Fraction(int(m.group(1)))
        if m.group(2) is not None:
            den = int(m.group(3))
            if den == 0:
                raise GradeError(f"malformed grade {text!r}")
            value += Fraction(int(m.group(2)), den)
    return GradeIndex.from_value(value, T)


def grades_up_to(bound, T: int) -> List[GradeIndex]:
    """All grades with value <= bound, ascending."""
    top = Fraction(bound) if not isinstance(bound, GradeIndex) else Fraction(bound.numerator, T)
    k = int(top * T)
    return [GradeIndex(j // T, j % T, T) for j in range(k + 1)]
