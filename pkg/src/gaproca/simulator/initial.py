"""Initial states: plane waves, Gaussian charges, snapshots."""
from __future__ import annotations

import numpy as np

from ..fields.grid import GridSpec
from ..fields.io import read_snapshot
from ..fields.state import FieldState

MIN_BLOB_CELLS = 3.0


def gaussian_blob(grid: GridSpec, charge: float, width: float, center=None) -> np.ndarray:
    """Gaussian density with total ``charge``, no periodic images; width >= 3h enforced."""
    if width < MIN_BLOB_CELLS * max(grid.h):
        raise ValueError(f"blob width {width:g} is below {MIN_BLOB_CELLS:g} cells")
    center = [L / 2 for L in grid.length] if center is None else center
    X = grid.coords()
    r2 = sum((X[a] - center[a]) ** 2 for a in range(3))
    return charge * np.exp(-r2 / (2 * width ** 2)) / ((2 * np.pi) ** 1.5 * width ** 3)


def screened_potential(grid: GridSpec, rho: np.ndarray, mass: float = 0.0, symbol: str = "discrete") -> np.ndarray:
    """Periodic solve of ``(-lap + mass^2) phi = 4 pi rho`` by FFT.

    ``symbol="discrete"`` inverts the Laplacian built from two central
    first differences (so ``-div grad phi`` on the grid reproduces the source
    to rounding, apart from its Nyquist content, which that operator cannot see). ``"exact"`` uses ``-k^2`` instead. For ``mass == 0`` the
    source must be neutral.
    """
    if mass == 0 and abs(float(np.mean(rho))) > 1e-12 * max(1.0, float(np.max(np.abs(rho)))):
        raise ValueError("massless periodic solve needs a neutral source")
    k2 = np.zeros(grid.shape)
    for a in range(3):
        k = 2 * np.pi * np.fft.fftfreq(grid.shape[a], d=grid.h[a])
        kk = (np.sin(k * grid.h[a]) / grid.h[a]) ** 2 if symbol == "discrete" else k ** 2
        shape = [1, 1, 1]
        shape[a] = -1
        k2 = k2 + kk.reshape(shape)
    denom = k2 + mass ** 2
    spec = np.fft.fftn(4 * np.pi * rho)
    # the wide central stencil also annihilates the Nyquist modes (sin(k h) = 0 up to rounding)
    zero = denom <= 1e-12 * np.max(denom)
    spec = np.where(zero, 0.0, spec / np.where(zero, 1.0, denom))
    return np.real(np.fft.ifftn(spec))


def plane_wave(grid: GridSpec, mode, polarization, amplitude: float, m_gamma: float, c: float) -> FieldState:
    """Transverse Proca wave ``A = a e cos(k.x)`` moving along ``+k``, in Lorenz gauge (A0 = 0)."""
    mode = np.asarray(mode, dtype=float)
    pol = np.asarray(polarization, dtype=float)
    kvec = 2 * np.pi * mode / np.asarray(grid.length)
    if not np.any(kvec):
        raise ValueError("plane wave needs a nonzero mode vector")
    if abs(pol @ kvec) > 1e-12 * np.linalg.norm(kvec) * np.linalg.norm(pol):
        raise ValueError("polarization must be transverse to the wave vector")
    pol = pol / np.linalg.norm(pol)
    omega = c * np.sqrt(kvec @ kvec + m_gamma ** 2)
    X = grid.coords()
    phase = sum(kvec[a] * X[a] for a in range(3))
    Avec = np.stack([amplitude * pol[a] * np.cos(phase) for a in range(3)])
    E = np.stack([-(amplitude * omega / c) * pol[a] * np.sin(phase) for a in range(3)])
    B = grid.curl(Avec)  # discrete curl keeps B - curl A = 0 exactly
    return FieldState.zeros(grid, E=E, B=B, Avec=Avec, m_gamma=m_gamma, c=c)


def _density(grid: GridSpec, params: dict) -> np.ndarray:
    charge = params.get("charge", 1.0)
    width = params.get("width", 4 * max(grid.h))
    center = params.get("center")
    center = [L / 2 for L in grid.length] if center is None else center
    sep = params.get("separation")
    if sep:
        a = [center[0] - sep / 2, center[1], center[2]]
        b = [center[0] + sep / 2, center[1], center[2]]
        rho = gaussian_blob(grid, charge, width, a) - gaussian_blob(grid, charge, width, b)
    else:
        rho = gaussian_blob(grid, charge, width, center)
    return rho - np.mean(rho)  # uniform neutralizing background on the periodic box


def initial_state(cfg) -> FieldState:
    p = dict(cfg.initial)
    kind = p.pop("kind")
    grid, m, c = cfg.grid, cfg.m_gamma, cfg.c
    if kind == "zero":
        return FieldState.zeros(grid, m_gamma=m, c=c)
    if kind == "plane-wave":
        return plane_wave(grid, p.get("mode", [1, 0, 0]), p.get("polarization", [0, 1, 0]),
                          p.get("amplitude", 1.0), m, c)
    if kind == "gaussian-monopole":
        rho_m = _density(grid, p)
        psi = screened_potential(grid, rho_m)
        return FieldState.zeros(grid, B=-grid.gradient(psi), rho_m=rho_m, m_gamma=m, c=c)
    if kind == "gaussian-electric-charge":
        rho_e = _density(grid, p)
        A0 = screened_potential(grid, rho_e, mass=m)
        return FieldState.zeros(grid, E=-grid.gradient(A0), A0=A0, rho_e=rho_e, m_gamma=m, c=c)
    if kind == "snapshot":
        st = read_snapshot(p["path"])
        if st.grid.shape != grid.shape:
            raise ValueError(f"snapshot grid {st.grid.shape} does not match config grid {grid.shape}")
        return st.replace(grid=grid, m_gamma=m, c=c)
    raise ValueError(f"unknown initial condition {kind!r}")
