"""Duality rotations, boosts and gauge transformations of grid fields."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..algebra import MINKOWSKI, boost_rotor, duality_rotor, reverse
from .equations import (
    _need_minkowski, divergence4, faraday_from_potential, nabla, potential_vector,
)
from .grid import GridSpec, norms
from .mvfield import MultivectorField, product
from .state import FieldState, smooth_scalar


def duality_rotate(F: MultivectorField, alpha: float) -> MultivectorField:
    """``F exp(-i alpha)``; at alpha = pi/2 the reading (E, B) becomes (B, -E)."""
    _need_minkowski(F)
    return product(F, duality_rotor(F.alg, alpha))


def euclidean_duality_swap(E: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Discrete Euclidean duality: (E, B) -> (B, E)."""
    return np.array(B, copy=True), np.array(E, copy=True)


def rotor_boost(F: MultivectorField, rapidity: float, axis: int) -> MultivectorField:
    """``R F ~R`` with ``R = cosh(b/2) - sinh(b/2) g_axis g0``."""
    _need_minkowski(F)
    R = boost_rotor(rapidity, axis, MINKOWSKI)
    return product(product(R, F), reverse(R))


@dataclass(frozen=True)
class GaugeField:
    """Scalar gauge function with its first two time derivatives (``None`` = 0)."""

    chi: np.ndarray
    chi_t: np.ndarray | None = None
    chi_tt: np.ndarray | None = None

    def part(self, name: str) -> np.ndarray:
        v = getattr(self, name)
        return np.zeros_like(self.chi) if v is None else v


def random_gauge(grid: GridSpec, seed=None, max_mode: int = 2) -> GaugeField:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return GaugeField(*(smooth_scalar(grid, rng, max_mode) for _ in range(3)))


def gauge_gradient(grid: GridSpec, g: GaugeField, c: float = 1.0, rate: bool = False) -> MultivectorField:
    """``nabla chi`` (or ``nabla dchi/dt`` when ``rate``) with the shared discrete nabla."""
    f, ft = (g.part("chi_t"), g.part("chi_tt")) if rate else (g.chi, g.part("chi_t"))
    scalar = MultivectorField.from_components(grid, {0: f})
    dscalar = MultivectorField.from_components(grid, {0: ft})
    return nabla(scalar, dscalar, c=c)


def _split_vector(V: MultivectorField) -> tuple[np.ndarray, np.ndarray]:
    return V.data[1], np.stack([V.data[1 << k] for k in (1, 2, 3)])


def gauge_transform(state: FieldState, g: GaugeField) -> FieldState:
    """``A -> A + nabla chi``; E, B and sources are untouched."""
    grid, c = state.grid, state.c
    A = potential_vector(state) + gauge_gradient(grid, g, c)
    A0, Avec = _split_vector(A)
    rates = state.rates
    if rates is not None:
        dA = potential_vector(state, rates=True) + gauge_gradient(grid, g, c, rate=True)
        dA0, dAvec = _split_vector(dA)
        rates = replace(rates, A0=dA0, Avec=dAvec)
    return state.replace(A0=A0, Avec=Avec, rates=rates)


@dataclass
class GaugeReport:
    scheme: str
    field_change: float      # max |F(A') - F(A)|
    expansion_error: float   # max |A'.A' - (A^2 + (nabla chi)^2 + 2 div(chi A) - 2 chi div A)|
    expansion_scale: float   # max |A'.A'|, for context
    witness: dict            # norms of (nabla chi)^2

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _square(V: MultivectorField) -> np.ndarray:
    return product(V, V, "inner").data[0]


def gauge_report(state: FieldState, g: GaugeField) -> GaugeReport:
    grid, c = state.grid, state.c
    after = gauge_transform(state, g)
    F0 = faraday_from_potential(state)
    F1 = faraday_from_potential(after)

    A = potential_vector(state)
    dA = potential_vector(state, rates=True)
    grad = gauge_gradient(grid, g, c)
    chi, chi_t = g.chi, g.part("chi_t")
    chiA = A.scale(chi)
    d_chiA = A.scale(chi_t) + dA.scale(chi)
    lhs = _square(potential_vector(after))
    grad2 = _square(grad)
    rhs = _square(A) + grad2 + 2 * divergence4(chiA, d_chiA, c) - 2 * chi * divergence4(A, dA, c)
    return GaugeReport(
        scheme=grid.scheme,
        field_change=(F1 - F0).max_abs(),
        expansion_error=float(np.max(np.abs(lhs - rhs))),
        expansion_scale=float(np.max(np.abs(lhs))),
        witness=norms(grad2, grid.cell_volume),
    )
