import copy
from fractions import Fraction

from twisted_zhu.fock import Element, h_vec, omega_vec
from twisted_zhu.matrix import is_zero
from twisted_zhu.pairing import Pairing, PairingMatrix, invariance_check

QS = [Fraction(k, 2) for k in range(-6, 7)]


def test_level_zero_is_nonzero_scalar(theta_pairing):
    P0 = theta_pairing.levels[0]
    assert (P0.rows, P0.cols) == (1, 1)
    assert P0.matrix == [[1]]


def test_block_diagonal(theta_pairing, theta_module):
    for p in theta_module.levels():
        for n in theta_module.levels():
            if p != n:
                assert is_zero(theta_pairing.between(p, n))


def test_radical_vanishes(theta_pairing):
    for lvl in theta_pairing.levels.values():
        assert lvl.radical == [] and lvl.rank == lvl.cols == lvl.rows


def test_invariance(theta_pairing, theta_module):
    for u in (Element.word(()), h_vec(), omega_vec()):
        for n in theta_module.levels():
            r = invariance_check(theta_pairing, u, n, QS)
            assert r.passed, r.failures
            assert r.checked > 0


def test_invariance_detects_perturbation(theta_pairing, theta_module):
    levels = copy.deepcopy(theta_pairing.levels)
    m = levels[1].matrix
    m[0][0] = m[0][0] + 1
    bad = Pairing(theta_pairing.module, theta_pairing.dual, levels)
    assert not invariance_check(bad, h_vec(), 0, QS).passed


def test_json_shape(theta_pairing):
    d = theta_pairing.levels[3].to_json()
    assert d["shape"] == [2, 2] and d["radical_dim"] == 0
    assert all("/" in x for row in d["matrix"] for x in row)
