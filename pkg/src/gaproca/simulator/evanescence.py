"""Driven steady state of the Euclidean-signature field equations on a 1D slab.

With the Euclidean wave operator, a field driven as exp(i w t) at the plane
x = 0 obeys ``E'' = (w / c)^2 E`` instead of the Helmholtz equation. The
solution decays or grows in space rather than propagating. This is solved
as a boundary-value problem, because the Euclidean initial-value problem is
ill-posed.

Discretization:
- Nodes are x_j = j h for j = 0..N, with the three-point Laplacian.
- E(0) is the drive amplitude.
- A perfect-magnetic-conductor end gives E'(Ls) = 0 through a mirror ghost
  node, so w = 0 gives a uniform profile.

``signature="minkowski"`` flips the sign of the w^2 term, which gives the
oscillatory, propagating contrast case.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded


class FitError(RuntimeError):
    pass


@dataclass(frozen=True)
class EvanescenceReport:
    omega: float
    kappa_fit: float
    kappa_expected: float
    rel_error: float
    far_amplitude: float    # max |E| / |E0| beyond 10 decay lengths
    phase_gradient: float   # max |d arg E / dx|; zero means no travelling phase
    n_cells: int
    slab_length: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def solve_profile(omega: float, n_cells: int, slab_length: float, c: float = 1.0,
                  drive: complex = 1.0, signature: str = "euclidean") -> tuple[np.ndarray, np.ndarray]:
    """(x, E) on the N + 1 nodes of the slab."""
    if signature not in ("euclidean", "minkowski"):
        raise ValueError(f"unknown signature {signature!r}")
    h = slab_length / n_cells
    s = 1.0 if signature == "euclidean" else -1.0
    q = s * (omega / c) ** 2 * h * h
    n = n_cells  # unknowns E_1..E_N
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = 1.0            # super-diagonal
    ab[1, :] = -(2.0 + q)      # diagonal
    ab[2, :-1] = 1.0           # sub-diagonal
    ab[2, n - 2] = 2.0         # mirror ghost: E_{N+1} = E_{N-1}
    rhs = np.zeros(n, dtype=complex)
    rhs[0] = -drive
    E = np.concatenate([[drive], solve_banded((1, 1), ab, rhs)])
    return np.arange(n_cells + 1) * h, E


def euclidean_evanescence(omega: float, *, n_cells: int = 128, L: float = 1.0, slab_lengths: float = 3.0,
                          c: float = 1.0, drive: float = 1.0) -> EvanescenceReport:
    """Fit E ~ exp(-kappa x) over x < 5/kappa and check nothing reaches 10/kappa."""
    Ls = slab_lengths * L
    x, E = solve_profile(omega, n_cells, Ls, c, drive)
    mag = np.abs(E)
    kappa_exp = omega / c
    if np.any(np.diff(mag) > 1e-14 * mag[0]):
        raise FitError("profile is not monotonically decaying; cannot fit an exponential")
    if kappa_exp == 0:
        slope = np.polyfit(x, np.log(mag), 1)[0]
        kappa = -slope
    else:
        window_end = min(5.0 / kappa_exp, Ls)
        sel = x <= window_end
        if sel.sum() < 4:
            raise FitError("fewer than 4 nodes inside the fit window; refine the grid")
        kappa = -np.polyfit(x[sel], np.log(mag[sel]), 1)[0]
    far = x >= 10.0 / kappa_exp if kappa_exp > 0 else np.zeros_like(x, dtype=bool)
    far_amp = float(np.max(mag[far]) / abs(drive)) if far.any() else 0.0
    phase = np.unwrap(np.angle(E))
    grad = float(np.max(np.abs(np.diff(phase))) / (x[1] - x[0]))
    rel = abs(kappa - kappa_exp) / kappa_exp if kappa_exp > 0 else abs(kappa)
    return EvanescenceReport(omega, float(kappa), kappa_exp, float(rel), far_amp, grad, n_cells, Ls)
