import pytest
from hypothesis import given, strategies as st

from twisted_zhu import kernels
from twisted_zhu.fock import partitions, words_up_to
from twisted_zhu.scalar import Q

PY = kernels.load("py")
C = kernels.load("c")

vectors = st.dictionaries(st.integers(0, 30), st.integers(-4, 4), max_size=8).map(
    lambda d: {k: Q(v) for k, v in d.items() if v}
)


def _table(rows):
    t = {}
    for r in rows:
        r = PY.reduce_vec(r, t)
        if r:
            p = max(r)
            t[p] = {k: v / r[p] for k, v in r.items()}
    return t


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@given(st.lists(vectors, max_size=8), vectors)
def test_reduce_vec_equivalent(rows, x):
    t = _table(rows)
    assert PY.reduce_vec(x, t) == C.reduce_vec(x, t)


@given(vectors, st.integers(-3, 3), vectors)
def test_axpy_equivalent(x, a, y):
    x1, x2 = dict(x), dict(x)
    PY.axpy(x1, Q(a), y)
    C.axpy(x2, Q(a), y)
    assert x1 == x2
    assert all(v for v in x1.values())


def test_mode_word_equivalent():
    words = words_up_to(5)
    for u in words:
        for v in words:
            if sum(u) + sum(v) > 5:
                continue
            for n in range(-3, sum(u) + sum(v) + 1):
                assert PY.mode_word(u, n, v) == C.mode_word(u, n, v)


def test_reduce_leaves_no_pivots():
    t = _table([{5: Q(1), 2: Q(3)}, {2: Q(1), 0: Q(1)}])
    r = PY.reduce_vec({5: Q(2), 4: Q(1)}, t)
    assert not set(r) & set(t)


def test_pure_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, TWISTED_ZHU_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import twisted_zhu.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
