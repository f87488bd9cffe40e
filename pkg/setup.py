"""Build the optional compiled kernels; the package works without them."""

import os

from setuptools import Extension, setup


def _gmpy2_include():
    try:
        import gmpy2
    except ImportError:
        return []
    return [os.path.dirname(gmpy2.__file__)]


ext_modules = []
if not os.environ.get("TWISTED_ZHU_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "twisted_zhu._ckernels",
                    ["src/twisted_zhu/_ckernels.pyx"],
                    include_dirs=_gmpy2_include(),
                    libraries=["gmp"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
