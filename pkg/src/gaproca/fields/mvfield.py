"""Multivector-valued grid fields and their products.

Storage is one float64 array of shape ``(2**n, Nx, Ny, Nz)``, component axis
first and indexed by blade mask, so each blade is a contiguous grid.

Products follow a fixed summation plan. For output blade ``k``, the
contributions from blade ``a`` and its dual ``a ^ full`` are added first, and
these pairs are then combined in ascending mask order. A duality rotation by
pi/2 only permutes and negates components inside dual pairs. Under this plan
the rotated quadratic densities come out as exact negations or exact copies,
bit for bit.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..algebra import MINKOWSKI, AlgebraSignature, Multivector, SignatureMismatch, cayley_table, grade_of
from .grid import GridSpec

_KEEP = {
    "geometric": None,
    "outer": lambda r, s, k: k == r + s,
    "inner": lambda r, s, k: r > 0 and s > 0 and k == abs(r - s),
}


@lru_cache(maxsize=None)
def _plan(alg: AlgebraSignature, kind: str):
    """plan[k] = groups of (a, b, sign) with a*b landing on blade k, dual partners grouped."""
    keep = _KEEP[kind]
    table = cayley_table(alg)
    full = alg.full_mask
    plan = []
    for k in range(alg.dim):
        groups = []
        for x in range(alg.dim):
            if x > x ^ full:
                continue
            grp = []
            for a in (x, x ^ full):
                b = a ^ k
                sign, m = table[a][b]
                assert m == k
                if keep is None or keep(grade_of(a), grade_of(b), grade_of(k)):
                    grp.append((a, b, sign))
            if grp:
                groups.append(tuple(grp))
        plan.append(tuple(groups))
    return tuple(plan)


def _reverse_signs(alg: AlgebraSignature) -> np.ndarray:
    g = np.array([grade_of(m) for m in range(alg.dim)])
    return np.where((g * (g - 1) // 2) % 2 == 1, -1.0, 1.0)


class MultivectorField:
    """A multivector per grid cell, one signature for the whole field."""

    __slots__ = ("alg", "grid", "data")

    def __init__(self, grid: GridSpec, data: np.ndarray, alg: AlgebraSignature = MINKOWSKI):
        data = np.asarray(data, dtype=np.float64)
        if data.shape != (alg.dim,) + grid.shape:
            raise ValueError(f"expected data shape {(alg.dim,) + grid.shape}, got {data.shape}")
        self.alg = alg
        self.grid = grid
        self.data = data

    @classmethod
    def zeros(cls, grid: GridSpec, alg: AlgebraSignature = MINKOWSKI) -> "MultivectorField":
        return cls(grid, np.zeros((alg.dim,) + grid.shape), alg)

    @classmethod
    def constant(cls, grid: GridSpec, mv: Multivector) -> "MultivectorField":
        data = np.zeros((mv.alg.dim,) + grid.shape)
        for m, c in mv.items():
            data[m] = float(c)
        return cls(grid, data, mv.alg)

    @classmethod
    def from_components(cls, grid: GridSpec, comps: dict, alg: AlgebraSignature = MINKOWSKI):
        """``comps`` maps blade mask to a grid (or scalar); values on the same mask add."""
        data = np.zeros((alg.dim,) + grid.shape)
        for m, v in comps.items():
            data[m] += v
        return cls(grid, data, alg)

    def _like(self, data: np.ndarray) -> "MultivectorField":
        return MultivectorField(self.grid, data, self.alg)

    def _check(self, other: "MultivectorField"):
        if other.alg != self.alg:
            raise SignatureMismatch(f"cannot combine {self.alg} with {other.alg}")
        if other.grid != self.grid:
            raise ValueError("fields live on different grids")

    def __getitem__(self, mask: int) -> np.ndarray:
        return self.data[mask]

    def at(self, idx) -> Multivector:
        """The multivector of a single cell, e.g. ``F.at((0, 3, 5))``."""
        return Multivector(self.alg, (float(x) for x in self.data[(slice(None),) + tuple(idx)]))

    def grade(self, k: int) -> "MultivectorField":
        mask = np.array([grade_of(m) == k for m in range(self.alg.dim)])
        return self._like(np.where(mask.reshape((-1, 1, 1, 1)), self.data, 0.0))

    def grades(self) -> set[int]:
        return {grade_of(m) for m in range(self.alg.dim) if np.any(self.data[m])}

    def reverse(self) -> "MultivectorField":
        return self._like(self.data * _reverse_signs(self.alg).reshape((-1, 1, 1, 1)))

    def adjoint(self) -> "MultivectorField":
        g0 = self.alg.gen(0)
        return product(product(g0, self.reverse()), g0)

    def __add__(self, other):
        self._check(other)
        return self._like(self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        return self._like(self.data - other.data)

    def __neg__(self):
        return self._like(-self.data)

    def scale(self, s) -> "MultivectorField":
        """Multiply by a scalar or by a scalar grid."""
        return self._like(self.data * s)

    def __mul__(self, other):
        if isinstance(other, (MultivectorField, Multivector)):
            return product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return product(other, self)
        return self.scale(other)

    def __xor__(self, other):
        return product(self, other, "outer")

    def __or__(self, other):
        return product(self, other, "inner")

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data))) if self.data.size else 0.0

    def __repr__(self):
        return f"MultivectorField({self.alg}, grid={self.grid.shape}, grades={sorted(self.grades())})"


def _operand(x, alg, grid):
    """(components accessor, nonzero flags) for a field or a constant multivector."""
    if isinstance(x, MultivectorField):
        if x.alg != alg:
            raise SignatureMismatch(f"cannot multiply {alg} by {x.alg}")
        if grid is not None and x.grid != grid:
            raise ValueError("fields live on different grids")
        return x.data, [bool(np.any(x.data[m])) for m in range(alg.dim)]
    if isinstance(x, Multivector):
        if x.alg != alg:
            raise SignatureMismatch(f"cannot multiply {alg} by {x.alg}")
        vals = [np.float64(float(c)) for c in x.coeffs]
        return vals, [v != 0 for v in vals]
    raise TypeError(f"cannot multiply by {type(x).__name__}")


def product(a, b, kind: str = "geometric") -> MultivectorField:
    """Per-cell geometric (or outer / inner) product; either side may be a constant."""
    fa = a if isinstance(a, MultivectorField) else None
    fb = b if isinstance(b, MultivectorField) else None
    field = fa or fb
    if field is None:
        raise TypeError("at least one operand must be a MultivectorField")
    alg, grid = field.alg, field.grid
    A, nza = _operand(a, alg, grid)
    B, nzb = _operand(b, alg, grid)
    out = np.zeros((alg.dim,) + grid.shape)
    for k, groups in enumerate(_plan(alg, kind)):
        acc = None
        for grp in groups:
            s = None
            for x, y, sign in grp:
                if not (nza[x] and nzb[y]):
                    continue
                t = A[x] * B[y]
                if sign < 0:
                    t = -t
                s = t if s is None else s + t
            if s is not None:
                acc = s if acc is None else acc + s
        if acc is not None:
            out[k] = acc
    return MultivectorField(grid, out, alg)
