"""Normal forms by generator-word rewriting.

A term is a polynomial coefficient times a word of generator indices. Words
are brought to canonical blade order with two rules only::

    g_a g_b -> -g_b g_a     (a > b)
    g_a g_a -> metric(a)

This does not touch the kernel's Cayley table, so the two routes check each
other.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra import AlgebraSignature, Multivector, blade_name
from .parser import (
    Adj, Dot, Dual, DualityRotor, Gen, GradeProj, Neg, Num, Pow, Prod, Pseudo,
    RelBasis, Rev, Scope, Sum, Sym, VecSym, Wedge,
)
from .poly import Poly

Form = dict  # sorted generator tuple -> Poly


def normalize_word(word: tuple[int, ...], alg: AlgebraSignature) -> tuple[int, tuple[int, ...]]:
    """Sort a generator word; returns (sign, canonical blade word)."""
    w = list(word)
    sign = 1
    i = 0
    while i < len(w) - 1:
        a, b = w[i], w[i + 1]
        if a == b:
            sign *= alg.metric(a)
            del w[i:i + 2]
            i = max(i - 1, 0)
        elif a > b:
            w[i], w[i + 1] = b, a
            sign = -sign
            i = max(i - 1, 0)
        else:
            i += 1
    return sign, tuple(w)


def _add(out: Form, word, coeff: Poly):
    c = out.get(word)
    c = coeff if c is None else c + coeff
    if c:
        out[word] = c
    else:
        out.pop(word, None)


def _mul(x: Form, y: Form, alg: AlgebraSignature, keep=None) -> Form:
    out: Form = {}
    for wa, ca in x.items():
        for wb, cb in y.items():
            sign, w = normalize_word(wa + wb, alg)
            if keep is not None and not keep(len(wa), len(wb), len(w)):
                continue
            _add(out, w, ca * cb if sign > 0 else -(ca * cb))
    return out


def _scale(x: Form, c) -> Form:
    out: Form = {}
    for w, v in x.items():
        _add(out, w, v * c)
    return out


def _sum(*forms: Form) -> Form:
    out: Form = {}
    for f in forms:
        for w, v in f.items():
            _add(out, w, v)
    return out


@dataclass(frozen=True)
class CanonicalForm:
    """Expanded normal form: blade -> polynomial, zero blades absent."""

    alg: AlgebraSignature
    terms: tuple  # sorted ((blade mask, Poly), ...)

    @classmethod
    def from_form(cls, alg: AlgebraSignature, form: Form) -> "CanonicalForm":
        items = []
        for word, c in form.items():
            if c:
                items.append((sum(1 << k for k in word), c))
        return cls(alg, tuple(sorted(items, key=lambda t: t[0])))

    def multivector(self) -> Multivector:
        return Multivector.from_dict(self.alg, dict(self.terms))

    def coefficient(self, mask: int) -> Poly:
        return dict(self.terms).get(mask, Poly())

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, self.terms))

    def __str__(self):
        return str(self.multivector())


class Evaluator:
    def __init__(self, scope: Scope):
        self.scope = scope
        self.alg = scope.alg
        self.one: Form = {(): Poly.const(1)}

    def gen(self, k: int) -> Form:
        return {(k,): Poly.const(1)}

    def pseudo(self) -> Form:
        return {tuple(range(self.alg.n)): Poly.const(1)}

    def rel(self, k: int) -> Form:
        return _mul(self.gen(k), self.gen(0), self.alg)

    def eval(self, node) -> Form:
        alg = self.alg
        match node:
            case Num(value=v):
                return {(): Poly.const(v)} if v else {}
            case Gen(index=k):
                return self.gen(k)
            case Pseudo():
                return self.pseudo()
            case RelBasis(k=k):
                return self.rel(k)
            case Sym(name=s):
                return {(): Poly.symbol(s)}
            case VecSym(name=s, relative=False):
                return _sum(*({(k,): Poly.symbol(c)} for k, c in enumerate(self.scope.component_names(s))))
            case VecSym(name=s, relative=True):
                return _sum(*(_scale(self.rel(k), Poly.symbol(c))
                              for k, c in zip((1, 2, 3), self.scope.component_names(s))))
            case Sum(terms=ts):
                return _sum(*(self.eval(t) for t in ts))
            case Neg(arg=a):
                return _scale(self.eval(a), -1)
            case Prod(left=a, right=b):
                return _mul(self.eval(a), self.eval(b), alg)
            case Wedge(left=a, right=b):
                return _mul(self.eval(a), self.eval(b), alg, lambda r, s, k: k == r + s)
            case Dot(left=a, right=b):
                return _mul(self.eval(a), self.eval(b), alg, lambda r, s, k: r > 0 and s > 0 and k == abs(r - s))
            case GradeProj(arg=a, k=k):
                return {w: c for w, c in self.eval(a).items() if len(w) == k}
            case Rev(arg=a):
                return {w: (-c if (len(w) * (len(w) - 1) // 2) % 2 else c) for w, c in self.eval(a).items()}
            case Adj(arg=a):
                g0 = self.gen(0)
                return _mul(_mul(g0, self.eval(Rev(a)), alg), g0, alg)
            case Dual(arg=a):
                return _mul(self.eval(a), self.pseudo(), alg)
            case Pow(base=b, k=k):
                base = self.eval(b)
                out = self.one
                for _ in range(k):
                    out = _mul(out, base, alg)
                return out
            case DualityRotor(q=q):
                i = self.pseudo()
                ii = _mul(i, i, alg)
                if ii != {(): Poly.const(-1)}:
                    raise ValueError(f"duality rotor needs i^2 = -1; {alg} has i^2 = +1")
                cos, sin = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}[int(2 * q) % 4]
                return _sum({(): Poly.const(cos)} if cos else {}, _scale(i, -sin))
        raise TypeError(f"unknown node {node!r}")


def canonicalize(node, scope: Scope | AlgebraSignature) -> CanonicalForm:
    if isinstance(scope, AlgebraSignature):
        scope = Scope(scope)
    return CanonicalForm.from_form(scope.alg, Evaluator(scope).eval(node))


@dataclass(frozen=True)
class IdentityReport:
    equal: bool
    lhs: CanonicalForm
    rhs: CanonicalForm
    diff: tuple  # ((blade name, lhs - rhs polynomial), ...)

    def __str__(self):
        if self.equal:
            return "equal"
        return "unequal: " + "; ".join(f"[{b}] {p}" for b, p in self.diff)


def verify_identity(lhs, rhs, scope: Scope) -> IdentityReport:
    left = canonicalize(lhs, scope)
    right = canonicalize(rhs, scope)
    if left.alg != right.alg:
        raise ValueError("identity sides use different signatures")
    masks = sorted({m for m, _ in left.terms} | {m for m, _ in right.terms})
    diff = []
    for m in masks:
        d = left.coefficient(m) - right.coefficient(m)
        if d:
            diff.append((blade_name(scope.alg, m), d))
    return IdentityReport(not diff, left, right, tuple(diff))


def as_fraction_multivector(form: CanonicalForm) -> Multivector:
    """Numeric multivector from a symbol-free canonical form."""
    out = {}
    for m, c in form.terms:
        if not c.is_constant():
            raise ValueError(f"coefficient {c} is not a constant")
        out[m] = Fraction(c.constant())
    return Multivector.from_dict(form.alg, out)
