"""Physical field state on a grid, plus its time derivatives."""
from __future__ import annotations

from dataclasses import dataclass, fields, replace

import numpy as np

from .grid import GridSpec

_VECTOR = ("E", "B", "Avec", "j_e", "j_m")
_SCALAR = ("A0", "rho_e", "rho_m")
GRID_NAMES = ("E", "B", "A0", "Avec", "rho_e", "rho_m", "j_e", "j_m")


class MissingTimeDerivative(ValueError):
    """A time-dependent operator was asked for without rates."""


@dataclass(frozen=True)
class Rates:
    """Time derivatives of the state grids; ``None`` means identically zero."""

    E: np.ndarray | None = None
    B: np.ndarray | None = None
    A0: np.ndarray | None = None
    Avec: np.ndarray | None = None
    rho_e: np.ndarray | None = None
    rho_m: np.ndarray | None = None
    j_e: np.ndarray | None = None
    j_m: np.ndarray | None = None

    def get(self, name: str, grid: GridSpec) -> np.ndarray:
        v = getattr(self, name)
        if v is None:
            return grid.zeros(3) if name in _VECTOR else grid.zeros()
        return v


STATIC = Rates()


@dataclass(frozen=True)
class FieldState:
    """Fields, potentials and sources on one grid (cgs-Gaussian units).

    ``rates`` carries the time derivatives used by residual checks. Use
    :data:`STATIC` for a time-independent state, and leave it ``None`` when
    they are unknown; time-dependent checks then refuse to run.
    """

    grid: GridSpec
    E: np.ndarray
    B: np.ndarray
    A0: np.ndarray
    Avec: np.ndarray
    rho_e: np.ndarray
    rho_m: np.ndarray
    j_e: np.ndarray
    j_m: np.ndarray
    m_gamma: float = 0.0
    c: float = 1.0
    t: float = 0.0
    rates: Rates | None = None

    def __post_init__(self):
        if self.m_gamma < 0:
            raise ValueError(f"m_gamma must be >= 0, got {self.m_gamma}")
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c}")
        for name in GRID_NAMES:
            want = ((3,) if name in _VECTOR else ()) + self.grid.shape
            if np.shape(getattr(self, name)) != want:
                raise ValueError(f"{name} has shape {np.shape(getattr(self, name))}, expected {want}")
        if self.rates is not None:
            for f in fields(Rates):
                v = getattr(self.rates, f.name)
                want = ((3,) if f.name in _VECTOR else ()) + self.grid.shape
                if v is not None and np.shape(v) != want:
                    raise ValueError(f"rate of {f.name} has shape {np.shape(v)}, expected {want}")

    @classmethod
    def zeros(cls, grid: GridSpec, **kw) -> "FieldState":
        base = {n: (grid.zeros(3) if n in _VECTOR else grid.zeros()) for n in GRID_NAMES}
        base.update(kw)
        return cls(grid=grid, **base)

    def replace(self, **kw) -> "FieldState":
        return replace(self, **kw)

    def rate(self, name: str) -> np.ndarray:
        if self.rates is None:
            raise MissingTimeDerivative(
                "time derivatives unavailable: attach Rates (analytic or from snapshots) or STATIC")
        return self.rates.get(name, self.grid)


def rates_from_snapshots(before: FieldState, after: FieldState) -> Rates:
    """Central difference ``(after - before) / (t_after - t_before)``."""
    dt = after.t - before.t
    if dt <= 0:
        raise ValueError("snapshots must be in increasing time order")
    if before.grid != after.grid:
        raise ValueError("snapshots live on different grids")
    return Rates(**{n: (getattr(after, n) - getattr(before, n)) / dt for n in GRID_NAMES})


def bracketed(before: FieldState, middle: FieldState, after: FieldState) -> FieldState:
    """``middle`` with rates taken from the two bracketing snapshots."""
    return middle.replace(rates=rates_from_snapshots(before, after))


# seeded smooth states ------------------------------------------------------------
def smooth_scalar(grid: GridSpec, rng: np.random.Generator, max_mode: int = 2, n_modes: int = 4,
                  amplitude: float = 1.0) -> np.ndarray:
    """Sum of a few periodic Fourier modes with integer wavenumbers |n_i| <= max_mode."""
    axes = [np.arange(n) / n for n in grid.shape]
    out = grid.zeros()
    for _ in range(n_modes):
        n = rng.integers(-max_mode, max_mode + 1, size=3)
        a, b = rng.normal(size=2) * amplitude
        ex, ey, ez = (np.exp(2j * np.pi * n[k] * axes[k]) for k in range(3))
        # Re[(a - ib) e^{i phase}] = a cos(phase) + b sin(phase)
        out += ((a - 1j * b) * ex[:, None, None] * ey[None, :, None] * ez[None, None, :]).real
    return out


def random_state(grid: GridSpec, seed=None, *, m_gamma: float | None = None, c: float = 1.0,
                 max_mode: int = 2, with_rates: bool = True) -> FieldState:
    """Band-limited random state: every grid and every rate is an independent smooth field.

    Same ``seed`` and grid give the same state. Unless ``m_gamma`` is given,
    it is drawn uniformly from [0, 2).
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    def one(name):
        if name in _VECTOR:
            return np.stack([smooth_scalar(grid, rng, max_mode) for _ in range(3)])
        return smooth_scalar(grid, rng, max_mode)

    vals = {n: one(n) for n in GRID_NAMES}
    rates = Rates(**{n: one(n) for n in GRID_NAMES}) if with_rates else None
    m = float(rng.uniform(0, 2)) if m_gamma is None else m_gamma
    return FieldState(grid=grid, m_gamma=m, c=c, rates=rates, **vals)
