"""Periodic collocated grid and its discrete spatial derivative."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

SCHEMES = ("central", "spectral")


@dataclass(frozen=True)
class GridSpec:
    """Periodic box of ``shape`` cells with edge lengths ``length``.

    ``scheme`` picks the one spatial derivative every operator shares:
    ``"central"`` (second-order central differences) or ``"spectral"``
    (exact for band-limited fields; obeys the product rule when products
    stay below the Nyquist mode).
    """

    shape: tuple[int, int, int]
    length: tuple[float, float, float]
    scheme: str = "central"

    def __post_init__(self):
        if len(self.shape) != 3 or len(self.length) != 3:
            raise ValueError("grid needs three axes")
        if any(n < 8 for n in self.shape):
            raise ValueError(f"need at least 8 cells per axis, got {self.shape}")
        if any(L <= 0 for L in self.length):
            raise ValueError(f"box lengths must be positive, got {self.length}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown derivative scheme {self.scheme!r}")

    @classmethod
    def cube(cls, n: int, L: float = 1.0, scheme: str = "central") -> "GridSpec":
        return cls((n, n, n), (float(L),) * 3, scheme)

    @classmethod
    def slab(cls, n: int, L: float = 1.0, transverse: int = 8, scheme: str = "central") -> "GridSpec":
        """``n`` cells along x, a thin periodic cross-section with the same spacing."""
        h = L / n
        return cls((n, transverse, transverse), (float(L), h * transverse, h * transverse), scheme)

    def with_scheme(self, scheme: str) -> "GridSpec":
        return GridSpec(self.shape, self.length, scheme)

    @property
    def h(self) -> tuple[float, float, float]:
        return tuple(L / n for L, n in zip(self.length, self.shape))

    @property
    def cell_volume(self) -> float:
        hx, hy, hz = self.h
        return hx * hy * hz

    def coords(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Cell-center coordinates ``x_i = i h`` as broadcastable 3D arrays."""
        axes = [np.arange(n) * h for n, h in zip(self.shape, self.h)]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    def wavenumbers(self, axis: int) -> np.ndarray:
        return 2 * np.pi * np.fft.rfftfreq(self.shape[axis], d=self.h[axis])

    def zeros(self, *lead: int) -> np.ndarray:
        return np.zeros(lead + self.shape)

    def derivative(self, f: np.ndarray, axis: int) -> np.ndarray:
        """d/dx_axis of ``f``; the spatial axes are the last three of ``f``."""
        ax = f.ndim - 3 + axis
        h = self.h[axis]
        if self.scheme == "central":
            # (f[i+1] - f[i-1]) / 2h with periodic wrap, written with slices
            f = np.moveaxis(f, ax, 0)
            d = np.empty_like(f)
            np.subtract(f[2:], f[:-2], out=d[1:-1])
            np.subtract(f[1], f[-1], out=d[0])
            np.subtract(f[0], f[-2], out=d[-1])
            d /= 2 * h
            return np.moveaxis(d, 0, ax)
        n = self.shape[axis]
        k = self.wavenumbers(axis)
        if n % 2 == 0:
            k = k.copy()
            k[-1] = 0.0
        shape = [1] * f.ndim
        shape[ax] = k.size
        spec = np.fft.rfft(f, axis=ax) * (1j * k.reshape(shape))
        return np.fft.irfft(spec, n=n, axis=ax)

    def gradient(self, f: np.ndarray) -> np.ndarray:
        return np.stack([self.derivative(f, a) for a in range(3)])

    def divergence(self, v: np.ndarray) -> np.ndarray:
        return self.derivative(v[0], 0) + self.derivative(v[1], 1) + self.derivative(v[2], 2)

    def curl(self, v: np.ndarray) -> np.ndarray:
        d = self.derivative
        return np.stack([
            d(v[2], 1) - d(v[1], 2),
            d(v[0], 2) - d(v[2], 0),
            d(v[1], 0) - d(v[0], 1),
        ])

    def integrate(self, f: np.ndarray) -> float:
        return total(f) * self.cell_volume


def total(x: np.ndarray) -> float:
    """Sum with numpy's pairwise reduction over a C-ordered copy: same input, same bits."""
    return float(np.sum(np.ascontiguousarray(x, dtype=np.float64)))


def norms(x: np.ndarray, cell_volume: float, axes_lead: int = 0) -> dict[str, float]:
    """L-infinity and volume-weighted L2 norm; leading component axes are pooled."""
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0:
        return {"linf": 0.0, "l2": 0.0}
    return {"linf": float(np.max(np.abs(x))), "l2": float(np.sqrt(total(x * x) * cell_volume))}


def as_grid(shape: Sequence[int], length) -> GridSpec:
    if np.isscalar(length):
        length = (float(length),) * 3
    return GridSpec(tuple(int(n) for n in shape), tuple(float(L) for L in length))
