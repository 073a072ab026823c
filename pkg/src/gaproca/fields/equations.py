"""The unified field equation, its vector-calculus form, and conservation laws.

In Cl(1,3) the unified equation reads

    R = nabla F - (4 pi / c) (J_e - i J_m) + m^2 A = 0

where ``F = E + i B`` and ``J_e = c rho_e g0 + j_e^k g_k`` (``J_m`` likewise),
and ``A = A0 g0 + A^k g_k``. Multiplying by g0 from the left splits R into
the four vector-form residuals::

    g0 R = r22 - r25 + i r23 + i r24

Here r22 and r24 are scalars and r23, r25 are relative vectors::

    r22 = div E - 4 pi rho_e + m^2 A0
    r23 = curl E + dB/dt / c + (4 pi / c) j_m
    r24 = div B - 4 pi rho_m
    r25 = curl B - (4 pi / c) j_e - dE/dt / c + m^2 Avec
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ..algebra import MINKOWSKI, pseudoscalar
from .grid import GridSpec, norms
from .mvfield import MultivectorField, product
from .state import FieldState, MissingTimeDerivative

ALG = MINKOWSKI
I = pseudoscalar(ALG)
G0 = ALG.gen(0)


def _single_blade(mv) -> tuple[int, float]:
    (m, c), = mv.items()
    return m, float(c)


# sigma_k = g_k g0 and i sigma_k as (mask, sign) on stored blades
REL = tuple(_single_blade(ALG.gen(k) * G0) for k in (1, 2, 3))
IREL = tuple(_single_blade(I * ALG.gen(k) * G0) for k in (1, 2, 3))


def _need_minkowski(F: MultivectorField):
    if F.alg != MINKOWSKI:
        raise ValueError(f"expected a Cl(1,3) field, got {F.alg}")


def faraday(grid: GridSpec, E: np.ndarray, B: np.ndarray) -> MultivectorField:
    """``F = E^k g_k g0 + B^k i g_k g0`` per cell."""
    data = np.zeros((ALG.dim,) + grid.shape)
    for k in range(3):
        m, s = REL[k]
        data[m] += s * E[k]
        m, s = IREL[k]
        data[m] += s * B[k]
    return MultivectorField(grid, data, ALG)


def assemble_faraday(state: FieldState) -> MultivectorField:
    return faraday(state.grid, state.E, state.B)


def relative_components(X: MultivectorField) -> np.ndarray:
    """Coefficients of X on sigma_1..sigma_3."""
    return np.stack([s * X.data[m] for m, s in REL])


def relative_bivector_components(X: MultivectorField) -> np.ndarray:
    """Coefficients of X on i sigma_1..i sigma_3."""
    return np.stack([s * X.data[m] for m, s in IREL])


def read_faraday(F: MultivectorField) -> tuple[np.ndarray, np.ndarray]:
    """(E, B) such that ``faraday(E, B) == F`` on the bivector part."""
    _need_minkowski(F)
    return relative_components(F), relative_bivector_components(F)


def spacetime_vector(grid: GridSpec, time: np.ndarray, space: np.ndarray) -> MultivectorField:
    """``time g0 + space^k g_k``."""
    data = np.zeros((ALG.dim,) + grid.shape)
    data[1] = time
    for k in range(3):
        data[1 << (k + 1)] = space[k]
    return MultivectorField(grid, data, ALG)


def current_vector(state: FieldState, which: str = "e", rates: bool = False) -> MultivectorField:
    get = state.rate if rates else (lambda n: getattr(state, n))
    return spacetime_vector(state.grid, state.c * get(f"rho_{which}"), get(f"j_{which}"))


def potential_vector(state: FieldState, rates: bool = False) -> MultivectorField:
    get = state.rate if rates else (lambda n: getattr(state, n))
    return spacetime_vector(state.grid, get("A0"), get("Avec"))


# derivative ----------------------------------------------------------------------
def _raised(mu: int):
    """gamma^mu for the diag(+,-,-,-) metric."""
    return ALG.gen(mu) * ALG.metric(mu)


def nabla(F: MultivectorField, dt=None, *, c: float = 1.0, static: bool = False) -> MultivectorField:
    """``g^mu d_mu F`` with the grid's spatial derivative.

    ``dt`` is the time derivative of ``F``, given as a field or as a callable
    taking ``F``. Pass ``static=True`` for a time-independent field instead.
    """
    _need_minkowski(F)
    if dt is None and not static:
        raise MissingTimeDerivative("nabla needs the time derivative (or static=True)")
    if callable(dt) and not isinstance(dt, MultivectorField):
        dt = dt(F)
    grid = F.grid
    out = None
    if dt is not None:
        out = product(_raised(0), dt.scale(1.0 / c))
    for axis in range(3):
        dF = MultivectorField(grid, grid.derivative(F.data, axis), ALG)
        term = product(_raised(axis + 1), dF)
        out = term if out is None else out + term
    return out


# reports -------------------------------------------------------------------------
@dataclass
class ResidualReport:
    kind: str
    grades: dict = field(default_factory=dict)     # "1" -> {"linf", "l2"}
    equations: dict = field(default_factory=dict)  # "gauss_e" -> {"linf", "l2"}
    grids: dict = field(default_factory=dict, repr=False)

    def max_linf(self) -> float:
        vals = [v["linf"] for v in (*self.grades.values(), *self.equations.values())]
        return max(vals, default=0.0)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "grades": self.grades, "equations": self.equations}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)


def unified_residual(state: FieldState) -> MultivectorField:
    """The multivector R per cell."""
    grid, c = state.grid, state.c
    F = assemble_faraday(state)
    dF = faraday(grid, state.rate("E"), state.rate("B"))
    Je = current_vector(state, "e")
    Jm = current_vector(state, "m")
    source = (Je - product(I, Jm)).scale(4 * np.pi / c)
    R = nabla(F, dF, c=c) - source
    if state.m_gamma:
        R = R + potential_vector(state).scale(state.m_gamma ** 2)
    return R


def residual_unified(state: FieldState) -> ResidualReport:
    R = unified_residual(state)
    dv = state.grid.cell_volume
    rep = ResidualReport("unified", grids={"R": R})
    for k in (1, 3):
        rep.grades[str(k)] = norms(R.grade(k).data, dv)
    stray = np.concatenate([R.grade(k).data for k in (0, 2, 4)])
    rep.grades["other"] = norms(stray, dv)
    return rep


def vector_form_grids(state: FieldState) -> dict[str, np.ndarray]:
    g, c, m2 = state.grid, state.c, state.m_gamma ** 2
    four_pi = 4 * np.pi
    return {
        "gauss_e": g.divergence(state.E) - four_pi * state.rho_e + m2 * state.A0,
        "faraday": g.curl(state.E) + state.rate("B") / c + (four_pi / c) * state.j_m,
        "gauss_m": g.divergence(state.B) - four_pi * state.rho_m,
        "ampere": g.curl(state.B) - (four_pi / c) * state.j_e - state.rate("E") / c + m2 * state.Avec,
    }


def residual_vector_form(state: FieldState) -> ResidualReport:
    grids = vector_form_grids(state)
    dv = state.grid.cell_volume
    rep = ResidualReport("vector", grids=grids)
    for name, g in grids.items():
        rep.equations[name] = norms(g, dv)
    return rep


def split_unified(R: MultivectorField) -> dict[str, np.ndarray]:
    """Read the four vector-form residuals back out of R."""
    P = product(G0, R.grade(1))
    Q = product(-I, product(G0, R.grade(3)))
    return {
        "gauss_e": P.data[0],
        "faraday": relative_components(Q),
        "gauss_m": Q.data[0],
        "ampere": -relative_components(P),
    }


def equivalence_deviation(state: FieldState) -> dict[str, float]:
    """Max per-cell |split(R) - vector form| for each equation."""
    split = split_unified(unified_residual(state))
    vec = vector_form_grids(state)
    return {k: float(np.max(np.abs(split[k] - vec[k]))) for k in sorted(vec)}


# conservation --------------------------------------------------------------------
def divergence4(V: MultivectorField, dV: MultivectorField | None, c: float) -> np.ndarray:
    """Spacetime divergence, the scalar part of nabla V."""
    return nabla(V, dV, c=c, static=dV is None).data[0]


def conservation_report(state: FieldState) -> ResidualReport:
    """Norms of ``div j_e - (c/4pi) m^2 div A``, ``div j_m`` and the Lorenz residual ``div A``."""
    c = state.c
    div_je = divergence4(current_vector(state, "e"), current_vector(state, "e", rates=True), c)
    div_jm = divergence4(current_vector(state, "m"), current_vector(state, "m", rates=True), c)
    div_A = divergence4(potential_vector(state), potential_vector(state, rates=True), c)
    grids = {
        "continuity_e": div_je - (c / (4 * np.pi)) * state.m_gamma ** 2 * div_A,
        "continuity_m": div_jm,
        "lorenz": div_A,
    }
    dv = state.grid.cell_volume
    rep = ResidualReport("conservation", grids=grids)
    for k, g in grids.items():
        rep.equations[k] = norms(g, dv)
    return rep


def faraday_from_potential(state: FieldState) -> MultivectorField:
    """``<nabla A>_2``, the field strength of the potential."""
    A = potential_vector(state)
    dA = potential_vector(state, rates=True)
    return nabla(A, dA, c=state.c).grade(2)
