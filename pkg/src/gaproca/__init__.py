"""Spacetime-algebra toolkit for massive electrodynamics with magnetic monopoles."""
from .algebra import (
    EUCLIDEAN,
    MINKOWSKI,
    AlgebraSignature,
    Multivector,
    SignatureMismatch,
    SpacetimeSplit,
    adjoint,
    duality_rotor,
    geometric_product,
    grade,
    inner,
    outer,
    pseudoscalar,
    pseudoscalar_commutation,
    reverse,
    spacetime_split,
)

__version__ = "0.1.0"
