"""Störmer-Verlet time stepping of the Maxwell-Proca system with monopole sources.

The evolution laws, with A0 closed by the Lorenz condition, are::

    dE/dt    =  c curl B - 4 pi j_e + c m^2 Avec
    dA0/dt   = -c div Avec
    dB/dt    = -c curl E - 4 pi j_m
    dAvec/dt = -c (E + grad A0)

(E, A0) get half kicks around a full drift of (B, Avec), so all fields are
synchronized at integer steps. The Gauss constraints are monitored and never
projected out.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..fields.densities import hamiltonian_density, lagrangian_density
from ..fields.equations import assemble_faraday, conservation_report
from ..fields.state import FieldState, bracketed
from .config import SimConfig

Sources = Callable[[float], dict]
SOURCE_NAMES = ("rho_e", "j_e", "rho_m", "j_m")


class SimulationError(RuntimeError):
    pass


def _sources_at(state: FieldState, sources: Sources | None, t: float) -> dict:
    if sources is None:
        return {n: getattr(state, n) for n in SOURCE_NAMES}
    given = sources(t)
    return {n: given.get(n, getattr(state, n)) for n in SOURCE_NAMES}


def step(state: FieldState, cfg: SimConfig, sources: Sources | None = None) -> FieldState:
    """Advance one time step; ``sources(t)`` may prescribe time-dependent charges/currents."""
    if cfg.signature != "minkowski":
        raise SimulationError("time stepping is only defined for the Minkowski signature; "
                              "the Euclidean problem is elliptic (use euclidean_evanescence)")
    g, c, dt = state.grid, state.c, cfg.dt
    m2 = state.m_gamma ** 2
    half = 0.5 * dt
    four_pi = 4 * math.pi
    t0 = state.t
    s0 = _sources_at(state, sources, t0)
    smid = _sources_at(state, sources, t0 + half)
    s1 = _sources_at(state, sources, t0 + dt)

    E = state.E + half * (c * g.curl(state.B) - four_pi * s0["j_e"] + c * m2 * state.Avec)
    A0 = state.A0 - half * c * g.divergence(state.Avec)
    B = state.B + dt * (-c * g.curl(E) - four_pi * smid["j_m"])
    Avec = state.Avec - dt * c * (E + g.gradient(A0))
    E = E + half * (c * g.curl(B) - four_pi * s1["j_e"] + c * m2 * Avec)
    A0 = A0 - half * c * g.divergence(Avec)

    if not (np.isfinite(np.sum(E)) and np.isfinite(np.sum(B))):
        raise SimulationError(f"non-finite field after step at t = {t0 + dt:g} "
                              f"(Courant {cfg.courant:.3g}, m c dt {state.m_gamma * c * dt:.3g})")
    return state.replace(E=E, B=B, A0=A0, Avec=Avec, t=t0 + dt, rates=None, **s1)


SERIES_COLUMNS = ("step", "t", "L", "H", "gauss_e", "gauss_m", "lorenz", "continuity_e", "continuity_m")


@dataclass
class RunResult:
    final: FieldState
    series: list = field(default_factory=list)     # dict rows keyed by SERIES_COLUMNS
    snapshots: list = field(default_factory=list)  # (step, FieldState)

    def column(self, name: str) -> np.ndarray:
        return np.array([np.nan if r[name] is None else r[name] for r in self.series], dtype=float)

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(SERIES_COLUMNS)
            for r in self.series:
                w.writerow(["" if r[k] is None else (r[k] if k == "step" else f"{r[k]:.17g}")
                            for k in SERIES_COLUMNS])


def diagnostics(state: FieldState, n: int, before: FieldState | None = None,
                after: FieldState | None = None) -> dict:
    """One series row. Rate-based columns need both bracketing states, else None."""
    g = state.grid
    F = assemble_faraday(state)
    row = {
        "step": n,
        "t": state.t,
        "L": g.integrate(lagrangian_density(F)),
        "H": g.integrate(hamiltonian_density(F)),
        "gauss_e": float(np.max(np.abs(g.divergence(state.E) - 4 * math.pi * state.rho_e
                                       + state.m_gamma ** 2 * state.A0))),
        "gauss_m": float(np.max(np.abs(g.divergence(state.B) - 4 * math.pi * state.rho_m))),
        "lorenz": None, "continuity_e": None, "continuity_m": None,
    }
    if before is not None and after is not None:
        rep = conservation_report(bracketed(before, state, after))
        for k in ("lorenz", "continuity_e", "continuity_m"):
            row[k] = rep.equations[k]["linf"]
    return row


def run(cfg: SimConfig, state: FieldState | None = None, sources: Sources | None = None) -> RunResult:
    """Evolve ``cfg.n_steps`` steps, logging a row every ``diagnostics_every`` steps."""
    from .initial import initial_state

    if state is None:
        state = initial_state(cfg)
    if sources is not None:
        state = state.replace(**_sources_at(state, sources, state.t))
    every, snap_every = cfg.diagnostics_every, cfg.snapshot_every
    result = RunResult(final=state)
    prev, cur = None, state
    if snap_every:
        result.snapshots.append((0, cur))
    for n in range(cfg.n_steps + 1):
        nxt = step(cur, cfg, sources) if n < cfg.n_steps else None
        if n % every == 0 or n == cfg.n_steps:
            result.series.append(diagnostics(cur, n, prev, nxt))
        if snap_every and n > 0 and n % snap_every == 0:
            result.snapshots.append((n, cur))
        if nxt is None:
            break
        prev, cur = cur, nxt
    result.final = cur
    return result


@dataclass(frozen=True)
class OscillatingCharge:
    """Conserved manufactured source: rho = r0 sin(kx) sin(wt), j_x = r0 (w/k) cos(kx) cos(wt)."""

    grid: object
    rho0: float
    mode: int
    omega: float

    def __post_init__(self):
        k = 2 * math.pi * self.mode / self.grid.length[0]
        x = self.grid.coords()[0]
        object.__setattr__(self, "_k", k)
        object.__setattr__(self, "_sin", np.sin(k * x))
        object.__setattr__(self, "_cos", np.cos(k * x))

    def __call__(self, t: float) -> dict:
        rho = self.rho0 * math.sin(self.omega * t) * self._sin
        j = np.zeros((3,) + self.grid.shape)
        j[0] = self.rho0 * (self.omega / self._k) * math.cos(self.omega * t) * self._cos
        return {"rho_e": rho, "j_e": j}
