import json
from fractions import Fraction

import pytest

from twisted_zhu.fock import Element, h_vec, omega_vec, words_up_to
from twisted_zhu.matrix import identity, is_zero, matadd, matmul, matscale, zeros
from twisted_zhu.products import generate_O
from twisted_zhu.quotient import TruncationError
from twisted_zhu.scalar import Q
from twisted_zhu.verma import (
    AModuleSpec,
    ModuleSpecError,
    VermaModule,
    associativity_check,
    commutator_check,
    corrupted_mode,
    factorization_check,
    omega_containment_check,
    relation_kill_check,
)

ONE = Element.word(())
H = h_vec()
F = Fraction


def _twisted_character(k_max):
    """Coefficients of prod_k (1 - q^{k - 1/2})^{-1} in powers of q^{1/2}."""
    coeffs = [1] + [0] * k_max
    for part in range(1, k_max + 1, 2):  # half-odd parts, in units of 1/2
        for i in range(part, k_max + 1):
            coeffs[i] += coeffs[i - part]
    return coeffs


def test_level_dims_match_twisted_character(theta_module):
    M = theta_module
    dims = [M.level(n).dim for n in M.levels()]
    assert dims == _twisted_character(3) == [1, 1, 1, 2]
    assert all(M.level(n).status == "stable" for n in M.levels())


def test_vacuum_acts_as_identity(theta_module):
    M = theta_module
    for n in M.levels():
        d = M.level(n).dim
        assert M.mode_op(ONE, -1, n) == identity(d)
        assert M.o_op(ONE, n, n) == identity(d)
        assert M.mode_op(ONE, 0, n) == [] or is_zero(M.mode_op(ONE, 0, n))


def test_negative_target_is_zero(theta_module):
    assert theta_module.mode_op(H, F(1, 2), 0) == []
    assert theta_module.mode_op(Element.word((2,)), F(5, 2), F(1, 2)) == []


def test_inadmissible_mode_vanishes(theta_module):
    # h lies in V^1, so h_p = 0 for integral p
    assert is_zero(theta_module.mode_op(H, 0, 0))
    assert is_zero(theta_module.mode_op(H, -1, F(1, 2)))


def test_L0_is_conformal_weight(theta_module):
    M = theta_module
    for n in M.levels():
        d = M.level(n).dim
        assert M.mode_op(omega_vec(), 1, n) == matscale(identity(d), Q(1, 16) + n.value)


def test_twisted_heisenberg(theta_module):
    M = theta_module
    halves = [F(k, 2) for k in range(-3, 4, 2)]
    for n in M.levels():
        for p in halves:
            for q in halves:
                lv = [n.value - q, n.value - p, n.value - p - q]
                if any(x > F(3, 2) for x in lv) or lv[2] < 0:
                    continue
                d, t = M.level(n).dim, M.level(n.value - p - q).dim
                ab = matmul(M.mode_op(H, p, n.value - q), M.mode_op(H, q, n), M.level(n.value - q).dim) if lv[0] >= 0 else zeros(t, d)
                ba = matmul(M.mode_op(H, q, n.value - p), M.mode_op(H, p, n), M.level(n.value - p).dim) if lv[1] >= 0 else zeros(t, d)
                comm = matadd(ab, matscale(ba, -1))
                expect = matscale(identity(d), p) if p + q == 0 else zeros(t, d)
                assert comm == expect, (n, p, q)


def test_commutator_examples(theta_module):
    M = theta_module
    assert commutator_check(M, ONE, ONE, -1, -1, 0).passed
    r = commutator_check(M, H, H, F(1, 2), F(-1, 2), 0)
    assert r.passed and r.checked == 1
    for p in (0, 1, 2):
        for q in (F(-1, 2), F(1, 2)):
            assert commutator_check(M, omega_vec(), H, p, q, F(1, 2)).passed


def test_associativity_examples(theta_module):
    M = theta_module
    for a, b in ((ONE, H), (H, H), (H, omega_vec())):
        r = associativity_check(M, a, b, 0, 2)
        assert r.passed and r.checked > 0


def test_omega_containment_and_control(theta_module):
    M = theta_module
    words = words_up_to(3)
    assert omega_containment_check(M, 0, words).passed
    assert omega_containment_check(M, F(1, 2), words).passed
    assert not omega_containment_check(M, 0, words, mode=corrupted_mode(M)).passed


def test_o_kills_relations(theta_module, theta):
    M = theta_module
    for src, dst in ((0, F(1, 2)), (F(1, 2), 0), (F(1, 2), F(1, 2))):
        gens = generate_O(theta, M.grade(src), M.grade(dst), "full", 2, M.grade(F(1, 2)))
        gens = [g for g in gens if g and g.top_weight() <= 3]
        assert gens
        assert relation_kill_check(M, gens, src, dst).passed


def test_o_factorizes(theta_module):
    M = theta_module
    for a in ((1,), (1, 1), (2,)):
        for b in ((1,), (2, 1)):
            assert factorization_check(M, Element.word(a), Element.word(b), 0, F(1, 2), 1).passed


def test_truncation_beyond_range(theta_module):
    with pytest.raises(TruncationError):
        theta_module.level(2)


def test_embedding_of_U(theta_module):
    assert theta_module.embedding_rank() == 1


def test_zero_module(theta):
    U = AModuleSpec.from_json({"m": "0", "dim": 0, "action": [{"word": [], "matrix": []}]}, 2)
    M = VermaModule(theta, U, W=3, n_max=1)
    assert [M.level(n).dim for n in M.levels()] == [0, 0, 0]


def test_bad_identity_matrix(theta):
    U = AModuleSpec.from_json({"m": "0", "dim": 1, "action": [{"word": [], "matrix": [["2/1"]]}]}, 2)
    with pytest.raises(ModuleSpecError, match="identity"):
        VermaModule(theta, U, W=2)


def test_module_file_round_trip():
    data = {"m": "0", "dim": 1, "twist": "g", "action": [{"word": [], "matrix": [["1/1"]]}]}
    U = AModuleSpec.from_json(data, 2)
    assert AModuleSpec.from_json(json.loads(json.dumps(U.to_json())), 2).to_json() == U.to_json()


@pytest.mark.parametrize("bad", [{"dim": 1}, {"m": "x", "dim": 1, "action": []}, {"m": "0", "dim": 1, "action": [{"word": [], "matrix": [["1/1", "0/1"]]}]}])
def test_malformed_module_files(bad):
    with pytest.raises(ModuleSpecError):
        AModuleSpec.from_json(bad, 2)
