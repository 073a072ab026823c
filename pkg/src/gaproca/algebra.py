"""Exact Clifford algebra kernel for Cl(p, q) with p + q <= 4.

Basis blades are bitmasks over the generators (bit k set means generator k
is present, canonical order ascending). Positive-norm generators come first,
so in Cl(1,3) generator 0 is the timelike gamma_0 and the metric reads
diag(+, -, -, -).

Coefficients are whatever scalar type you feed in: ``fractions.Fraction``
for exact identity work, ``float`` for numerics, or any ring element that
supports ``+``, ``-``, ``*`` and comparison with ``0`` (the symbolic layer
uses its polynomial type here).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence


class SignatureMismatch(ValueError):
    """Operands live in different algebras."""


@dataclass(frozen=True)
class AlgebraSignature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or not 1 <= self.p + self.q <= 4:
            raise ValueError(f"unsupported signature Cl({self.p},{self.q}); need p,q >= 0 and 1 <= p+q <= 4")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def full_mask(self) -> int:
        return self.dim - 1

    def metric(self, k: int) -> int:
        """Square of generator ``k``."""
        if not 0 <= k < self.n:
            raise IndexError(f"generator index {k} out of range for Cl({self.p},{self.q})")
        return 1 if k < self.p else -1

    @property
    def is_minkowski(self) -> bool:
        return (self.p, self.q) == (1, 3)

    @property
    def prefix(self) -> str:
        return "g" if self.is_minkowski else "e"

    # constructors -------------------------------------------------------
    def scalar(self, value: Any = 1) -> "Multivector":
        return Multivector.from_dict(self, {0: value})

    def blade(self, mask: int, value: Any = 1) -> "Multivector":
        if not 0 <= mask < self.dim:
            raise IndexError(f"blade mask {mask} out of range")
        return Multivector.from_dict(self, {mask: value})

    def gen(self, k: int, value: Any = 1) -> "Multivector":
        self.metric(k)
        return self.blade(1 << k, value)

    def vector(self, comps: Sequence[Any]) -> "Multivector":
        if len(comps) != self.n:
            raise ValueError(f"expected {self.n} components, got {len(comps)}")
        return Multivector.from_dict(self, {1 << k: c for k, c in enumerate(comps)})

    def zero(self) -> "Multivector":
        return Multivector(self, (0,) * self.dim)

    def __str__(self):
        return f"Cl({self.p},{self.q})"


MINKOWSKI = AlgebraSignature(1, 3)
EUCLIDEAN = AlgebraSignature(4, 0)


def parse_signature(text: str) -> AlgebraSignature:
    """Parse ``"p,q"``."""
    try:
        p, q = (int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"signature must look like 'p,q', got {text!r}") from None
    return AlgebraSignature(p, q)


def grade_of(mask: int) -> int:
    return bin(mask).count("1")


def reorder_sign(a: int, b: int) -> int:
    """Sign from moving the generators of ``b`` past those of ``a``.

    Counts, for every generator in ``a``, the generators in ``b`` with a
    smaller index; each such pair costs one transposition.
    """
    a >>= 1
    swaps = 0
    while a:
        swaps += grade_of(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def cayley_table(alg: AlgebraSignature) -> tuple[tuple[tuple[int, int], ...], ...]:
    """``table[a][b] == (sign, a ^ b)`` with ``blade_a * blade_b = sign * blade_(a^b)``."""
    rows = []
    for a in range(alg.dim):
        row = []
        for b in range(alg.dim):
            sign = reorder_sign(a, b)
            common = a & b
            k = 0
            while common:
                if common & 1:
                    sign *= alg.metric(k)
                common >>= 1
                k += 1
            row.append((sign, a ^ b))
        rows.append(tuple(row))
    return tuple(rows)


def blade_name(alg: AlgebraSignature, mask: int) -> str:
    if mask == 0:
        return "1"
    return "^".join(f"{alg.prefix}{k}" for k in range(alg.n) if mask >> k & 1)


def _is_zero(x: Any) -> bool:
    return x == 0


def _fmt_coeff(c: Any) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if isinstance(c, float):
        return repr(c)
    return str(c)


class Multivector:
    """Dense multivector: ``2**n`` coefficients indexed by blade mask.

    Immutable; every operation returns a new value.
    """

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: AlgebraSignature, coeffs: Iterable[Any]):
        coeffs = tuple(coeffs)
        if len(coeffs) != alg.dim:
            raise ValueError(f"{alg} needs {alg.dim} coefficients, got {len(coeffs)}")
        self.alg = alg
        self.coeffs = coeffs

    @classmethod
    def from_dict(cls, alg: AlgebraSignature, items: dict[int, Any]) -> "Multivector":
        c = [0] * alg.dim
        for mask, value in items.items():
            c[mask] = c[mask] + value
        return cls(alg, c)

    # element access ------------------------------------------------------
    def __getitem__(self, mask: int) -> Any:
        return self.coeffs[mask]

    def items(self):
        """Nonzero ``(mask, coefficient)`` pairs in canonical order."""
        return [(m, c) for m, c in enumerate(self.coeffs) if not _is_zero(c)]

    def grades(self) -> set[int]:
        return {grade_of(m) for m, _ in self.items()}

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def scalar_part(self) -> Any:
        return self.coeffs[0]

    def map(self, fn) -> "Multivector":
        return Multivector(self.alg, (fn(c) for c in self.coeffs))

    # linear structure ----------------------------------------------------
    def _check(self, other: "Multivector"):
        if other.alg != self.alg:
            raise SignatureMismatch(f"cannot combine {self.alg} with {other.alg}")

    def _coerce(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Multivector(self.alg, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Multivector(self.alg, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Multivector(self.alg, (-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector(self.alg, (a * other for a in self.coeffs))

    def __rmul__(self, other):
        return Multivector(self.alg, (other * a for a in self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, Multivector):
            raise TypeError("division by a multivector is not supported")
        return Multivector(self.alg, (a / other for a in self.coeffs))

    def __xor__(self, other):
        return outer(self, self._coerce(other))

    def __rxor__(self, other):
        return outer(self._coerce(other), self)

    def __or__(self, other):
        return inner(self, self._coerce(other))

    def __ror__(self, other):
        return inner(self._coerce(other), self)

    def __invert__(self):
        return reverse(self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = self.alg.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.alg == other.alg and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        if isinstance(other, (int, float, Fraction)):
            return self == self.alg.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.alg, self.coeffs))

    def grade(self, k: int) -> "Multivector":
        return grade(self, k)

    def reverse(self) -> "Multivector":
        return reverse(self)

    def adjoint(self) -> "Multivector":
        return adjoint(self)

    def __str__(self):
        terms = []
        for mask, c in self.items():
            cs = _fmt_coeff(c)
            if " " in cs.lstrip("-"):
                cs = f"({cs})"
            if mask == 0:
                terms.append(cs)
            elif cs in ("1", "-1"):
                terms.append(cs[:-1] + blade_name(self.alg, mask))
            else:
                terms.append(f"{cs} {blade_name(self.alg, mask)}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        return f"Multivector({self.alg}, {self})"


# products --------------------------------------------------------------------
def _product(a: Multivector, b: Multivector, keep) -> Multivector:
    if a.alg != b.alg:
        raise SignatureMismatch(f"cannot multiply {a.alg} by {b.alg}")
    table = cayley_table(a.alg)
    out: list[Any] = [0] * a.alg.dim
    b_items = b.items()
    for ma, ca in a.items():
        row = table[ma]
        for mb, cb in b_items:
            sign, m = row[mb]
            if keep is not None and not keep(grade_of(ma), grade_of(mb), grade_of(m)):
                continue
            term = ca * cb
            out[m] = out[m] + term if sign > 0 else out[m] - term
    return Multivector(a.alg, out)


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return _product(a, b, None)


def outer(a: Multivector, b: Multivector) -> Multivector:
    """Wedge: grade ``r + s`` part of each homogeneous pair."""
    return _product(a, b, lambda r, s, k: k == r + s)


def inner(a: Multivector, b: Multivector) -> Multivector:
    """Grade-lowering contraction ``<ab>_{|r-s|}``; zero when either factor is a scalar."""
    return _product(a, b, lambda r, s, k: r > 0 and s > 0 and k == abs(r - s))


def grade(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.alg.n:
        raise ValueError(f"grade {k} out of range 0..{a.alg.n}")
    return Multivector(a.alg, (c if grade_of(m) == k else 0 for m, c in enumerate(a.coeffs)))


def reverse(a: Multivector) -> Multivector:
    def flip(m, c):
        g = grade_of(m)
        return -c if (g * (g - 1) // 2) & 1 else c

    return Multivector(a.alg, (flip(m, c) for m, c in enumerate(a.coeffs)))


def adjoint(a: Multivector) -> Multivector:
    """Hermitian adjoint relative to generator 0: ``g0 ~a g0``.

    Reverses spatial blades and keeps relative vectors ``g_k g0`` fixed, so
    ``F F^adj`` of a Faraday bivector is ``E^2 + B^2 - 2 i E^B``.
    """
    g0 = a.alg.gen(0)
    return g0 * reverse(a) * g0


def pseudoscalar(alg: AlgebraSignature) -> Multivector:
    return alg.blade(alg.full_mask)


def magnitude(a: Multivector) -> float:
    """``<a~ a>_0 ** 1/2`` (absolute value taken under the root)."""
    return math.sqrt(abs((reverse(a) * a).scalar_part()))


def pseudoscalar_commutation(a: Multivector) -> int:
    """+1 if the pseudoscalar commutes with ``a``, -1 if it anticommutes.

    Decided from the actual products ``i a`` and ``a i``.
    """
    gs = a.grades()
    if len(gs) > 1:
        raise ValueError(f"expected a homogeneous multivector, got grades {sorted(gs)}")
    i = pseudoscalar(a.alg)
    left, right = i * a, a * i
    if left == right:
        return 1
    if left == -right:
        return -1
    raise AssertionError("pseudoscalar neither commutes nor anticommutes")


# spacetime split -------------------------------------------------------------
def relative_basis(alg: AlgebraSignature) -> tuple[Multivector, Multivector, Multivector]:
    """Relative vectors ``sigma_k = gen_k gen_0`` for k = 1..3."""
    if alg.n != 4:
        raise ValueError("relative vectors need a four-generator algebra")
    g0 = alg.gen(0)
    return tuple(alg.gen(k) * g0 for k in (1, 2, 3))


def relative_vector(alg: AlgebraSignature, comps: Sequence[Any]) -> Multivector:
    out = alg.zero()
    for c, s in zip(comps, relative_basis(alg)):
        out = out + s * c
    return out


@dataclass(frozen=True)
class SpacetimeSplit:
    time_scalar: Any
    spatial: tuple[Any, Any, Any]

    def recombine(self, alg: AlgebraSignature = MINKOWSKI) -> Multivector:
        return (alg.scalar(self.time_scalar) + relative_vector(alg, self.spatial)) * alg.gen(0)


def spacetime_split(a: Multivector) -> SpacetimeSplit:
    if not a.alg.is_minkowski:
        raise ValueError(f"spacetime split needs Cl(1,3), got {a.alg}")
    if a.grades() - {1}:
        raise ValueError("spacetime split needs a grade-1 vector")
    g0 = a.alg.gen(0)
    t = (a | g0).scalar_part()
    w = a ^ g0
    # sigma_k = g_k g0 is the blade g0^gk with coefficient -1
    spatial = tuple(-w[1 | (1 << k)] for k in (1, 2, 3))
    return SpacetimeSplit(t, spatial)


# duality ---------------------------------------------------------------------
def exact_trig(alpha: float) -> tuple[float, float]:
    """cos and sin, snapped to exact values at integer multiples of pi/2."""
    q = alpha / (math.pi / 2)
    k = round(q)
    if abs(q - k) < 1e-12:
        return ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))[k % 4]
    return math.cos(alpha), math.sin(alpha)


def duality_rotor(alg: AlgebraSignature, alpha: float) -> Multivector:
    """``exp(-i alpha) = cos(alpha) - i sin(alpha)``; right-multiplying F by it rotates (E, B)."""
    if not alg.is_minkowski:
        raise ValueError(f"continuous duality rotation needs i^2 = -1 (Cl(1,3)); got {alg}")
    c, s = exact_trig(alpha)
    return alg.scalar(c) - pseudoscalar(alg) * s


def boost_rotor(alpha_rapidity: float, axis: int, alg: AlgebraSignature = MINKOWSKI) -> Multivector:
    """``exp(-(beta/2) g_axis g0)``; the bivector squares to +1, so cosh/sinh close the series."""
    if axis not in (1, 2, 3):
        raise ValueError(f"boost axis must be 1, 2 or 3, got {axis}")
    if not alg.is_minkowski:
        raise ValueError("boosts are defined for Cl(1,3)")
    half = alpha_rapidity / 2
    return alg.scalar(math.cosh(half)) - (alg.gen(axis) * alg.gen(0)) * math.sinh(half)


def to_float(a: Multivector) -> Multivector:
    return a.map(float)


def to_fraction(a: Multivector) -> Multivector:
    return a.map(Fraction)
