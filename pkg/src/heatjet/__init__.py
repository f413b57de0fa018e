"""Exact heat invariants of Riemannian metric jets and KdV hierarchy polynomials."""
from fractions import Fraction

from .combinatorics import HalfInteger, binomial_general, binomial_symmetric, multi_indices
from .jet import Jet, monomial, radius_squared_power
from .kernels import backend_name

__all__ = [
    "Fraction",
    "HalfInteger",
    "Jet",
    "backend_name",
    "binomial_general",
    "binomial_symmetric",
    "monomial",
    "multi_indices",
    "radius_squared_power",
]

__version__ = "0.1.0"
