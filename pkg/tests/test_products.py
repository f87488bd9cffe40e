from fractions import Fraction
from itertools import product

import pytest

from twisted_zhu.fock import Element, FockVOA, h_vec, nth_product, words_up_to
from twisted_zhu.grades import GradeIndex, grades_up_to, parse_grade
from twisted_zhu.identities import Sample, verify_identity
from twisted_zhu.products import (
    circ_nm,
    delta_fn,
    epsilon_fn,
    generate_O,
    l_relation,
    rbinom,
    residue_product,
    star_bar,
    star_n,
    star_nmp,
    star_right,
)
from twisted_zhu.quotient import relation_span
from twisted_zhu.scalar import Q

ONE = Element.word(())
H = h_vec()
HH = Element.word((1, 1))


def G(x, T=2):
    return parse_grade(x, T)


def test_delta_examples():
    assert delta_fn(0, 0, 2) == 1
    assert delta_fn(0, 1, 2) == 0
    assert delta_fn(1, 2, 2) == 0
    with pytest.raises(ValueError):
        delta_fn(2, 0, 2)


def test_epsilon_examples():
    assert epsilon_fn(1, 0, 1, 2) == 1
    assert epsilon_fn(0, 1, 0, 2) == -1
    for T in range(1, 5):
        assert epsilon_fn(0, 0, 0, T) == 0


def test_rbinom_examples():
    assert rbinom(Q(7, 3), 0) == 1
    assert rbinom(Q(1, 2), 2) == Q(-1, 8)
    assert rbinom(3, 5) == 0
    assert rbinom(-1, 3) == -1


def test_residue_product_examples(trivial, theta):
    for w in words_up_to(3):
        v = Element.word(w)
        # only 1_{-1} v survives, which is the j = 0 term when beta = 1
        assert residue_product(trivial, ONE, v, Q(5, 3), 1) == v
        assert residue_product(trivial, ONE, v, Q(5, 3), 0) == Element()
    assert residue_product(trivial, H, H, 1, 1) == HH
    assert residue_product(theta, H, H, Q(1, 2), 1) == HH - ONE * Q(1, 8)


def test_residue_product_matches_mode_expansion(trivial):
    for a, b in product(words_up_to(2), words_up_to(2)):
        u, v = Element.word(a), Element.word(b)
        for alpha, beta in ((Q(1, 2), 1), (Q(3), 2), (Q(-1, 2), 0)):
            top = sum(a) + sum(b) + beta
            ref = Element()
            for j in range(top):
                ref = ref + nth_product(u, j - beta, v) * rbinom(alpha, j)
            assert residue_product(trivial, u, v, alpha, beta) == ref


def test_circ_examples(trivial, theta):
    g0 = G("0", 1)
    assert circ_nm(trivial, H, H, g0, g0) == Element.word((2, 1)) + HH
    assert circ_nm(theta, H, H, G("0"), G("0")) == HH - ONE * Q(1, 8)


def test_circ_vacuum_vacuum(theta):
    # 1_{j-beta} 1 is nonzero only at j = beta - 1
    for m, n in product(grades_up_to(2, 2), repeat=2):
        out = circ_nm(theta, ONE, ONE, m, n)
        assert out.weights() <= {0}


def test_circ_equals_corrected_exponent_when_m_eq_n(theta):
    T = 2
    for n in grades_up_to(2, T):
        l, i = n.l, n.i
        for w in words_up_to(3):
            r = len(w) % 2
            u = Element.word(w)
            alpha = Q(sum(w) - 1 + delta_fn(i, r, T) + l) + Q(r, T)
            beta = 2 * l + delta_fn(i, r, T) + delta_fn(i, T - r, T) + 1
            for b in words_up_to(2):
                v = Element.word(b)
                assert circ_nm(theta, u, v, n, n) == residue_product(theta, u, v, alpha, beta)


def test_circ_weight_bookkeeping(theta):
    for m, n in product(grades_up_to(1, 2), repeat=2):
        for a, b in product(words_up_to(3), words_up_to(2)):
            out = circ_nm(theta, Element.word(a), Element.word(b), m, n)
            assert all(wt <= sum(a) + sum(b) + 2 * (m.l + n.l) + 2 for wt in out.weights())


def test_star_examples(trivial, theta):
    g0 = G("0", 1)
    assert star_nmp(trivial, H, H, g0, g0, g0) == HH
    for m, n in product(grades_up_to(1, 2), repeat=2):
        assert star_bar(theta, ONE, HH, m, n) == HH
        # residue r = 1 and p = n: zero
        assert star_bar(theta, H, Element.word((2,)), m, n) == Element()
    assert star_n(theta, H, H, G("0")) == Element()


def test_residue_condition_vanishing(theta):
    grades = grades_up_to(Fraction(5, 2), 2)
    for m, p, n in product(grades, repeat=3):
        for w in ((), (1,), (1, 1), (2, 1)):
            r = len(w) % 2
            out = star_nmp(theta, Element.word(w), H, m, p, n)
            if (p.i - n.i - r) % 2:
                assert out == Element()


def test_identity_element_small(theta, trivial):
    for voa in (theta, trivial):
        T = voa.T
        for m, n in product(grades_up_to(1, T), repeat=2):
            for w in words_up_to(3):
                u = Element.word(w)
                assert star_bar(voa, ONE, u, m, n) == u


def test_star_right_vacuum_is_identity_modulo_relations(theta):
    # u *_{m}^n 1 - u lies in O'
    m = n = G("0")
    span = relation_span(theta, m, n, 6, "prime")
    for w in words_up_to(3):
        u = Element.word(w)
        assert (star_right(theta, u, ONE, m, n) - u).to_vec() in span


def test_l_relation_examples(theta):
    for m in grades_up_to(2, 2):
        assert l_relation(theta, ONE, m, m) == Element()
    assert l_relation(theta, H, G("0"), G("0")) == Element.word((2,)) + H
    assert l_relation(theta, H, G("0"), G("1/2")) == Element.word((2,)) + H * Q(1, 2)


def test_generate_O_examples(trivial, theta):
    g0 = G("0", 1)
    gens = generate_O(trivial, g0, g0, "prime", 0)
    assert all(not g for g in gens)
    small = generate_O(theta, G("0"), G("1/2"), "prime", 2)
    span = relation_span(theta, G("0"), G("1/2"), 4, "prime")
    assert all(g.to_vec() in span for g in small)


def test_shifted_residue_family_certifies(theta):
    g0 = G("0")
    samples = [
        Sample((H, ONE), (("m", Fraction(0)), ("n", Fraction(0))), (("k", k), ("s", s)))
        for k in range(3) for s in range(k + 1)
    ]
    reps = verify_identity(theta, "L3.3", samples, 4)
    assert all(r.found for r in reps)
