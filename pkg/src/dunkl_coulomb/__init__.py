"""Exact operators, spectra and eigenfunctions of the planar Dunkl-Coulomb system."""

from .operators import ModelParams, named_operator
from .spectra import QuantumNumbers, energy, enumerate_level
from .term_algebra import FunctionExpr, normalize, term
from .wavefunctions import full_wavefunction, inner_product

__all__ = [
    "FunctionExpr",
    "ModelParams",
    "QuantumNumbers",
    "energy",
    "enumerate_level",
    "full_wavefunction",
    "inner_product",
    "named_operator",
    "normalize",
    "term",
]
