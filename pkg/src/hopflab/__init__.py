"""Exact computations with finite-dimensional Hopf algebras over GF(p)."""

from .errors import AxiomFailure, HopfLabError, InvalidInput, PreconditionError, UnsupportedClass
from .formats import dumps, load, loads, save
from .gfp import FieldSpec, Subspace
from .hopf import HopfAlgebra, dual, verify_axioms
from .locality import analyze, corollary_b_check, is_local, theorem_a_check

__version__ = "0.1.0"

__all__ = [
    "AxiomFailure",
    "FieldSpec",
    "HopfAlgebra",
    "HopfLabError",
    "InvalidInput",
    "PreconditionError",
    "Subspace",
    "UnsupportedClass",
    "analyze",
    "corollary_b_check",
    "dual",
    "dumps",
    "is_local",
    "load",
    "loads",
    "save",
    "theorem_a_check",
    "verify_axioms",
]
