"""Twisted Zhu algebras A_{g,n}(V), bimodules A_{g,n,m}(V) and Verma-type
twisted modules for the rank-1 free boson, computed in exact arithmetic."""

from .fock import Element, FockVOA, phi_map
from .grades import GradeIndex, parse_grade
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["Element", "FockVOA", "GradeIndex", "parse_grade", "phi_map", "BACKEND", "__version__"]
