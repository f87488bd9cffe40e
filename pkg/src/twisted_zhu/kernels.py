"""Select the compiled kernels when available, else the pure-Python ones.

Set ``TWISTED_ZHU_PURE=1`` to force the fallback (the benchmark and the
kernel-equivalence tests do this per call via :func:`load`).
"""

import importlib
import os

__all__ = ["BACKEND", "reduce_vec", "axpy", "mode_word", "clear_mode_cache", "load"]


def load(name=None):
    """Return the kernel module ``name`` ("c" or "py"); default per environment."""
    if name is None:
        name = "py" if os.environ.get("TWISTED_ZHU_PURE") else "c"
    if name == "c":
        try:
            return importlib.import_module("twisted_zhu._ckernels")
        except ImportError:
            if os.environ.get("TWISTED_ZHU_REQUIRE_C"):
                raise
            name = "py"
    return importlib.import_module("twisted_zhu._pykernels")


_mod = load()
BACKEND = "cython" if _mod.__name__.endswith("_ckernels") else "python"

reduce_vec = _mod.reduce_vec
axpy = _mod.axpy
mode_word = _mod.mode_word
clear_mode_cache = _mod.clear_mode_cache
