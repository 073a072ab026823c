"""Quadratic field densities, each taken from an actual multivector product.

No 1/(8 pi) prefactors are applied: ``lagrangian_density`` is ``<F F>_0 = E^2 - B^2``
and ``hamiltonian_density`` is ``<F F^adj>_0 = E^2 + B^2``. Only ``poynting``
carries the physical factor ``c / (8 pi)``.
"""
from __future__ import annotations

import numpy as np

from ..algebra import Multivector
from .equations import _need_minkowski, relative_components
from .mvfield import MultivectorField, product


def lagrangian_density(F: MultivectorField) -> np.ndarray:
    return product(F, F).data[0].copy()


def hamiltonian_density(F: MultivectorField) -> np.ndarray:
    return product(F, F.adjoint()).data[0].copy()


def pseudoscalar_invariant(F: MultivectorField) -> np.ndarray:
    """Coefficient of i in ``F F`` (equals ``2 E.B`` in Cl(1,3))."""
    return product(F, F).data[F.alg.full_mask].copy()


def poynting_bivector(F: MultivectorField) -> MultivectorField:
    """``<F F^adj>_2``; its relative-vector reading is ``2 E x B``."""
    return product(F, F.adjoint()).grade(2)


def poynting(F: MultivectorField, c: float = 1.0) -> np.ndarray:
    """``S = (c / 8 pi) <F F^adj>_2`` on sigma_1..3, i.e. ``(c / 4 pi) E x B``."""
    _need_minkowski(F)
    return (c / (8 * np.pi)) * relative_components(poynting_bivector(F))


def energy_momentum(F: MultivectorField, a: Multivector) -> MultivectorField:
    """``T(a) = -1/2 <F a F>_1`` for a constant vector ``a``."""
    if not isinstance(a, Multivector) or a.grades() - {1} or not a.grades():
        raise ValueError("energy_momentum needs a nonzero grade-1 vector")
    return product(product(F, a), F).grade(1).scale(-0.5)
