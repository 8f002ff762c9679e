"""Exact tools for set-pair and subspace-pair systems over finite fields."""

__version__ = "0.1.0"

from .exactnum import q_binomial, q_binomial_poly, q_factorial, q_int
from .gfq import make_field
from .subspace import Subspace, enumerate_subspaces, intersect, rref
from .pairsystems import SetPairSystem, SubspacePairSystem, VerificationReport

__all__ = [
    "q_int",
    "q_factorial",
    "q_binomial",
    "q_binomial_poly",
    "make_field",
    "Subspace",
    "rref",
    "intersect",
    "enumerate_subspaces",
    "SetPairSystem",
    "SubspacePairSystem",
    "VerificationReport",
]
