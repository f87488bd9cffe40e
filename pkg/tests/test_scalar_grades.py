from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twisted_zhu.grades import GradeError, GradeIndex, grades_up_to, parse_grade
from twisted_zhu.scalar import Q, Scalar, parse, to_str


def test_parse_and_serialize_fraction():
    assert parse("3/6") == Scalar(1, 2)
    assert to_str(Q(-4, 6)) == "-2/3"
    assert to_str(Q(5)) == "5/1"


@pytest.mark.parametrize("bad", ["x/2", "1/0", "1.5", ""])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse(bad)


def test_floats_are_refused():
    with pytest.raises(TypeError):
        Q(0.5)


@given(st.fractions())
def test_serialization_round_trip(f):
    assert parse(to_str(Q(f.numerator, f.denominator))) == Q(f.numerator, f.denominator)


def test_grade_parsing_forms():
    assert parse_grade("1+1/2", 2) == GradeIndex(1, 1, 2)
    assert parse_grade("3/2", 2) == GradeIndex(1, 1, 2)
    assert parse_grade("2", 1) == GradeIndex(2, 0, 1)
    assert str(GradeIndex(1, 1, 2)) in ("1+1/2", "3/2")


@pytest.mark.parametrize("text,T", [("x/2", 2), ("1/3", 2), ("1/2", 1), ("-1", 2)])
def test_grade_errors(text, T):
    with pytest.raises(GradeError):
        parse_grade(text, T)


def test_grades_up_to_and_shift():
    gs = grades_up_to(Fraction(3, 2), 2)
    assert [g.value for g in gs] == [0, Fraction(1, 2), 1, Fraction(3, 2)]
    assert gs[1].shift(1) == gs[2]
    assert gs[0] < gs[1] <= gs[1]


@given(st.integers(0, 40), st.integers(1, 6))
def test_grade_value_numerator(k, T):
    g = GradeIndex.from_value(Fraction(k, T), T)
    assert g.numerator == k and g.l * T + g.i == k
