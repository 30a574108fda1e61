"""Exact quantum-logic toolkit: subspace lattices, truth valuations, determinate sublattices and KS colouring."""

from contextua.errors import ContextuaError, DimensionError, DomainError, ParseError, UnknownNameError
from contextua.exactlin import Mat, Scalar, Vect, inner, kernel, projector_onto, scalar
from contextua.lattice import Subspace, from_projector, join, leq, meet, ortho, ray, to_projector
from contextua.valuation import State, TruthValue, born_probability, check_homomorphism, classify

__version__ = "0.1.0"

__all__ = [
    "ContextuaError", "DimensionError", "DomainError", "ParseError", "UnknownNameError",
    "Mat", "Scalar", "Vect", "inner", "kernel", "projector_onto", "scalar",
    "Subspace", "from_projector", "join", "leq", "meet", "ortho", "ray", "to_projector",
    "State", "TruthValue", "born_probability", "check_homomorphism", "classify",
]
