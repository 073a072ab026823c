"""Duality time series and the conservation convergence study."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass


from ..fields.densities import (
    hamiltonian_density, lagrangian_density, poynting, pseudoscalar_invariant,
)
from ..fields.equations import assemble_faraday, conservation_report
from ..fields.grid import GridSpec
from ..fields.state import FieldState, STATIC
from ..fields.transforms import duality_rotate
from .config import SimConfig
from .initial import initial_state
from .leapfrog import OscillatingCharge, run

DUALITY_COLUMNS = ("step", "t", "L", "L_rot", "H", "H_rot", "P", "P_rot",
                   "Sx", "Sx_rot", "Sy", "Sy_rot", "Sz", "Sz_rot")


def duality_row(state: FieldState, step: int = 0, alpha: float = math.pi / 2) -> dict:
    """Integrated densities of F and of F rotated by ``alpha``."""
    g = state.grid
    F = assemble_faraday(state)
    Fr = duality_rotate(F, alpha)
    row = {"step": step, "t": state.t}
    for tag, X in (("", F), ("_rot", Fr)):
        row["L" + tag] = g.integrate(lagrangian_density(X))
        row["H" + tag] = g.integrate(hamiltonian_density(X))
        row["P" + tag] = g.integrate(pseudoscalar_invariant(X))
        S = poynting(X, state.c)
        for a, name in enumerate("xyz"):
            row[f"S{name}{tag}"] = g.integrate(S[a])
    return row


def duality_timeseries(snapshots, alpha: float = math.pi / 2) -> list[dict]:
    """One row per (step, state) snapshot."""
    return [duality_row(st, n, alpha) for n, st in snapshots]


def duality_summary(rows) -> dict:
    """Sign-flip / invariance table over all rows."""
    def worst(a, b, sign):
        return max((abs(r[b] - sign * r[a]) for r in rows), default=0.0)

    return {
        "L_negated_exactly": all(r["L_rot"] == -r["L"] for r in rows),
        "H_max_change": worst("H", "H_rot", 1),
        "P_max_change_if_negated": worst("P", "P_rot", -1),
        "S_max_change": max(worst(f"S{a}", f"S{a}_rot", 1) for a in "xyz"),
    }


def write_rows_csv(rows, columns, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([r[c] if isinstance(r[c], int) else f"{r[c]:.17g}" for c in columns])


# conservation ---------------------------------------------------------------------
@dataclass(frozen=True)
class ConservationResult:
    n_cells: int
    steps: int
    continuity_e_linf: float   # max over the run
    lorenz_linf: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def massive_conservation_run(n_cells: int, *, steps: int = 10_000, m_gamma: float = 2.0,
                             L: float = 1.0, c: float = 1.0, courant: float = 0.4, rho0: float = 1.0,
                             omega: float | None = None, diagnostics_every: int = 500) -> ConservationResult:
    """Drive a massive field (zero, Lorenz-gauge initial data) with a conserved oscillating charge."""
    grid = GridSpec.slab(n_cells, L)
    dt = courant * grid.h[0] / c
    if omega is None:
        omega = 0.5 * c * 2 * math.pi / L
    cfg = SimConfig(grid=grid, m_gamma=m_gamma, c=c, dt=dt, n_steps=steps,
                    diagnostics_every=diagnostics_every)
    res = run(cfg, sources=OscillatingCharge(grid, rho0, 1, omega))
    continuity_e = [r["continuity_e"] for r in res.series if r["continuity_e"] is not None]
    lor = [r["lorenz"] for r in res.series if r["lorenz"] is not None]
    return ConservationResult(n_cells, steps, float(max(continuity_e)), float(max(lor)))


def static_monopole_divergence(n_cells: int = 32, steps: int = 20, charge: float = 1.0) -> float:
    """Max |div j_m| (spacetime) over a run with a static, neutral monopole pair."""
    grid = GridSpec.cube(n_cells)
    cfg = SimConfig(grid=grid, n_steps=steps, diagnostics_every=1,
                    initial={"kind": "gaussian-monopole", "charge": charge,
                             "width": 4 * grid.h[0], "separation": 0.5})
    res = run(cfg, initial_state(cfg))
    vals = [r["continuity_m"] for r in res.series if r["continuity_m"] is not None]
    return float(max(vals))


def static_divergence(state: FieldState) -> float:
    """``div j_m`` for a state declared time independent."""
    return conservation_report(state.replace(rates=STATIC)).equations["continuity_m"]["linf"]
