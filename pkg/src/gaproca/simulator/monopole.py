"""Static magnetic Gauss law around a Gaussian monopole.

``lap psi = -4 pi rho_m`` is solved on the nodes of a cube with psi = 0 on
the faces, using red-black successive over-relaxation. Then ``B = -grad psi``,
and the flux is summed through the faces of cubic boxes centered on the
charge. Face values are one-sided differences across the face, so the
discrete divergence theorem holds exactly for the 7-point Laplacian.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class FluxReport:
    charge: float
    width: float
    n_cells: int
    iterations: int
    residual: float
    flux: dict          # half-width in cells -> flux
    ratio: dict         # half-width in cells -> flux / (4 pi e_m), None when e_m = 0
    box_spread: float   # relative difference between the box fluxes

    def as_dict(self) -> dict:
        return {**self.__dict__, "flux": {str(k): v for k, v in self.flux.items()},
                "ratio": {str(k): v for k, v in self.ratio.items()}}


def _laplacian(psi: np.ndarray, h: float) -> np.ndarray:
    out = np.zeros_like(psi)
    c = psi[1:-1, 1:-1, 1:-1]
    out[1:-1, 1:-1, 1:-1] = (
        psi[2:, 1:-1, 1:-1] + psi[:-2, 1:-1, 1:-1] + psi[1:-1, 2:, 1:-1] + psi[1:-1, :-2, 1:-1]
        + psi[1:-1, 1:-1, 2:] + psi[1:-1, 1:-1, :-2] - 6 * c
    ) / (h * h)
    return out


def sor_poisson(f: np.ndarray, h: float, tol: float = 1e-10, max_iter: int = 20000,
                omega: float | None = None) -> tuple[np.ndarray, int, float]:
    """Solve ``lap psi = f`` (psi = 0 on the boundary) to relative residual ``tol``."""
    n = f.shape[0] - 1
    if omega is None:
        omega = 2.0 / (1.0 + math.sin(math.pi / n))
    psi = np.zeros_like(f)
    norm_f = float(np.max(np.abs(f[1:-1, 1:-1, 1:-1])))
    if norm_f == 0:
        return psi, 0, 0.0
    idx = np.indices(f.shape).sum(axis=0)
    inner = np.zeros(f.shape, dtype=bool)
    inner[1:-1, 1:-1, 1:-1] = True
    colors = [inner & (idx % 2 == p) for p in (0, 1)]
    h2 = h * h
    res = math.inf
    for it in range(1, max_iter + 1):
        for mask in colors:
            nb = (np.roll(psi, 1, 0) + np.roll(psi, -1, 0) + np.roll(psi, 1, 1)
                  + np.roll(psi, -1, 1) + np.roll(psi, 1, 2) + np.roll(psi, -1, 2))
            gs = (nb - h2 * f) / 6.0
            psi[mask] += omega * (gs[mask] - psi[mask])
        if it % 10 == 0:
            res = float(np.max(np.abs(_laplacian(psi, h) - f)[1:-1, 1:-1, 1:-1])) / norm_f
            if res <= tol:
                return psi, it, res
    raise ConvergenceError(f"SOR did not reach {tol:g} after {max_iter} iterations (residual {res:.3g})")


def box_flux(psi: np.ndarray, h: float, center: int, half: int) -> float:
    """Outward flux of ``B = -grad psi`` through the cube of nodes center +- half."""
    lo, hi = center - half, center + half
    s = slice(lo, hi + 1)
    flux = 0.0
    for axis in range(3):
        def face(i):
            sl = [s, s, s]
            sl[axis] = i
            return psi[tuple(sl)]
        flux += -np.sum(face(hi + 1) - face(hi)) * h   # (-dpsi/h) * h^2 through the + face
        flux += -np.sum(face(lo - 1) - face(lo)) * h   # outward normal on the - face
    return float(flux)


def monopole_gauss_check(charge: float = 1.0, *, n_cells: int = 64, L: float = 1.0, width_cells: float = 4.0,
                         boxes=None, tol: float = 1e-10, max_iter: int = 20000) -> FluxReport:
    """Solve for the potential of a Gaussian monopole and compare box fluxes with 4 pi e_m.

    ``boxes`` are cube half-widths in cells; the default (3N/8, 7N/16) is (24, 28) at N = 64.
    """
    if boxes is None:
        boxes = (3 * n_cells // 8, 7 * n_cells // 16)
    h = L / n_cells
    sigma = width_cells * h
    center = n_cells // 2
    for half in boxes:
        if half * h < 5 * sigma:
            raise ValueError(f"box half-width {half} cells is within 5 widths of the charge")
        if center + half + 1 > n_cells:
            raise ValueError(f"box half-width {half} cells does not fit in the domain")
    x = (np.arange(n_cells + 1) - center) * h
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    rho = charge * np.exp(-(X * X + Y * Y + Z * Z) / (2 * sigma ** 2)) / ((2 * np.pi) ** 1.5 * sigma ** 3)
    psi, iters, res = sor_poisson(-4 * np.pi * rho, h, tol, max_iter)
    flux = {b: box_flux(psi, h, center, b) for b in boxes}
    target = 4 * np.pi * charge
    ratio = {b: (f / target if charge else None) for b, f in flux.items()}
    vals = list(flux.values())
    scale = max(abs(v) for v in vals)
    spread = (max(vals) - min(vals)) / scale if scale > 0 else 0.0
    return FluxReport(charge, sigma, n_cells, iters, res, flux, ratio, float(spread))
