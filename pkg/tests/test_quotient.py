from itertools import product

import pytest

from twisted_zhu.fock import Element, h_vec, omega_vec, words_up_to
from twisted_zhu.grades import parse_grade
from twisted_zhu.products import circ_nm, l_relation, star_bar, star_right
from twisted_zhu.quotient import (
    NotStabilizedError,
    TruncationError,
    algebra_structure,
    filtered_quotient,
    relation_span,
)
from twisted_zhu.scalar import Q

ONE = Element.word(())


def G(x, T=2):
    return parse_grade(x, T)


@pytest.mark.parametrize("W", range(4))
def test_trivial_dims_are_polynomial(trivial, W):
    g = G("0", 1)
    fq = filtered_quotient(trivial, g, g, W, W + 2)
    assert fq.stable and fq.status == "stable"
    assert fq.dim == W + 1
    # A(M(1)) is C[[h]]: the reps are the powers h(-1)^k 1
    assert fq.reps == [(1,) * k for k in range(W + 1)]


@pytest.mark.parametrize("W", range(4))
def test_theta_dims_collapse(theta, W):
    g = G("0")
    fq = filtered_quotient(theta, g, g, W, W + 2)
    assert fq.stable and fq.dim == 1 and fq.reps == [()]


def test_theta_hh_relation(theta):
    g = G("0")
    fq = filtered_quotient(theta, g, g, 2, 4)
    assert fq.coordinates(Element.word((1, 1))) == [Q(1, 8)]
    assert fq.coordinates(omega_vec()) == [Q(1, 16)]
    # the generating relation itself
    rel = circ_nm(theta, h_vec(), h_vec(), g, g)
    assert fq.coordinates(rel) == [0]


def test_log_monotone_and_b_guard(theta):
    g = G("1/2")
    fq = filtered_quotient(theta, G("0"), g, 2, 6)
    ranks = [r for _, r in fq.log]
    assert ranks == sorted(ranks)
    assert [b for b, _ in fq.log] == list(range(2, 7))
    with pytest.raises(ValueError):
        filtered_quotient(theta, g, g, 3, 2)


def test_relation_span_monotone_in_B(theta):
    m, n = G("0"), G("1/2")
    spans = [relation_span(theta, m, n, b, "prime") for b in range(1, 5)]
    for small, big in zip(spans, spans[1:]):
        assert all(row in big for row in small.rows)


def test_prime_is_inside_full(theta):
    m, n = G("1/2"), G("0")
    prime = relation_span(theta, m, n, 4, "prime")
    full = relation_span(theta, m, n, 4, "full")
    assert all(row in full for row in prime.rows)


def test_prime_full_delta_zero_on_examples(theta):
    for m, n in ((G("0"), G("0")), (G("0"), G("1/2")), (G("1/2"), G("1"))):
        a = filtered_quotient(theta, m, n, 2, 4, level="prime")
        b = filtered_quotient(theta, m, n, 2, 4, level="full")
        assert a.dim == b.dim


def test_truncated_coordinates_raise(theta):
    g = G("0")
    fq = filtered_quotient(theta, g, g, 1, 1)
    with pytest.raises(TruncationError):
        fq.coordinates(Element.word((5, 4, 3)))


def test_algebra_structure_theta(theta):
    st = algebra_structure(theta, G("0"), 3, 5)
    assert st.reps == [()]
    assert st.products[(0, 0)] == [1]
    assert st.associative


def test_algebra_structure_trivial(trivial):
    g = G("0", 1)
    st = algebra_structure(trivial, g, 2, 4)
    i = st.reps.index((1,))
    # [h] * [h] = [h(-1)^2 1]
    coords = st.products[(i, i)]
    assert coords == [1 if w == (1, 1) else 0 for w in st.reps]
    assert st.associative and not st.failures


def test_unstabilized_structure_refused(theta):
    with pytest.raises(NotStabilizedError):
        algebra_structure(theta, G("0"), 2, 2)


def test_bimodule_action_well_defined(theta):
    # a *bar o and o * a lie in the relation span for o in O'
    m, n = G("0"), G("1/2")
    span = relation_span(theta, m, n, 6, "prime")
    rels = [circ_nm(theta, Element.word(v), Element.word(w), m, n)
            for v, w in product(words_up_to(1), words_up_to(1))]
    rels += [l_relation(theta, Element.word(v), m, n) for v in words_up_to(2)]
    for o in rels:
        for a in words_up_to(1):
            x = Element.word(a)
            assert star_bar(theta, x, o, m, n).to_vec() in span
            assert star_right(theta, o, x, m, n).to_vec() in span
