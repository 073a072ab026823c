"""Expression grammar for multivector identities.

Grammar (whitespace separates tokens and is otherwise ignored)::

    expr    := term (('+' | '-') term)*
    term    := '-' term | product
    product := wedge (['*'] wedge | '/' NUMBER ['/' INT])*
                                           juxtaposition or '*': geometric product;
                                           '/' divides by a nonzero constant
    wedge   := unary (('^' | '|') unary)*  '^' outer, '|' inner; left associative
    unary   := '-' unary | power
    power   := postfix ['**' INT]
    postfix := atom '~'*                   '~' reverse
    atom    := NUMBER ['/' INT]
             | '<' expr '>' '_' INT        grade projection
             | '(' expr ')'
             | FUNC '(' expr ')'           FUNC in adj, rev, dual
             | 'duality' '(' NUMBER ['/' INT] ')'
             | NAME

``^`` and ``|`` bind tighter than the geometric product, so ``a b ^ c`` is
``a (b ^ c)``. NUMBER is a decimal literal (``2``, ``0.5``, ``1e-3``) read
exactly. Built-in names: ``i`` (unit pseudoscalar), ``gK`` / ``eK``
(generator K), and for four generators ``s1 s2 s3`` (relative vectors
``gK g0``). Everything else must be declared in a :class:`Scope`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import AlgebraSignature


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


# AST ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Pseudo:
    pass


@dataclass(frozen=True)
class RelBasis:
    k: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class VecSym:
    """Named symbolic vector; ``relative`` selects the ``gK g0`` basis."""

    name: str
    relative: bool


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Prod:
    left: object
    right: object


@dataclass(frozen=True)
class Wedge:
    left: object
    right: object


@dataclass(frozen=True)
class Dot:
    left: object
    right: object


@dataclass(frozen=True)
class GradeProj:
    arg: object
    k: int


@dataclass(frozen=True)
class Rev:
    arg: object


@dataclass(frozen=True)
class Adj:
    arg: object


@dataclass(frozen=True)
class Dual:
    arg: object


@dataclass(frozen=True)
class Pow:
    base: object
    k: int


@dataclass(frozen=True)
class DualityRotor:
    """``exp(-i q pi)``; only multiples of pi/2 are admitted."""

    q: Fraction


@dataclass
class Scope:
    """Signature plus declared names."""

    alg: AlgebraSignature
    scalars: set = field(default_factory=set)
    vectors: set = field(default_factory=set)
    relvectors: set = field(default_factory=set)
    lets: dict = field(default_factory=dict)

    def is_builtin(self, name: str) -> bool:
        return name == "i" or bool(re.fullmatch(r"[ge]\d+", name)) or (
            self.alg.n == 4 and name in ("s1", "s2", "s3")
        ) or name in _FUNCS or name == "duality"

    def component_names(self, name: str) -> list[str]:
        if name in self.vectors:
            return [f"{name}{k}" for k in range(self.alg.n)]
        if name in self.relvectors:
            return [f"{name}{k}" for k in (1, 2, 3)]
        return []

    def _taken(self) -> set:
        names = set(self.scalars) | self.vectors | self.relvectors | set(self.lets)
        for v in self.vectors | self.relvectors:
            names.update(self.component_names(v))
        return names

    def declare(self, kind: str, name: str):
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9]*", name):
            raise ValueError(f"bad symbol name {name!r}")
        if self.is_builtin(name) or name in self._taken():
            raise ValueError(f"name {name!r} is already defined")
        if kind in ("vector", "relvector"):
            if kind == "relvector" and self.alg.n != 4:
                raise ValueError("relative vectors need a four-generator algebra")
            comps = [f"{name}{k}" for k in (range(self.alg.n) if kind == "vector" else (1, 2, 3))]
            clash = [c for c in comps if c in self._taken() or self.is_builtin(c)]
            if clash:
                raise ValueError(f"components {clash} of {name!r} clash with existing names")
        {"scalar": self.scalars.add, "vector": self.vectors.add,
         "relvector": self.relvectors.add}[kind](name)

    def let(self, name: str, text: str):
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9]*", name):
            raise ValueError(f"bad name {name!r}")
        if self.is_builtin(name) or name in self._taken():
            raise ValueError(f"name {name!r} is already defined")
        self.lets[name] = parse(text, self)


_FUNCS = {"adj": Adj, "rev": Rev, "dual": Dual}

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<op>\*\*|[-+*^|~()<>_/,])"
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(Token(kind, m.group(), line, pos - line_start + 1))
        for j, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + j + 1
        pos = m.end()
    toks.append(Token("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str, scope: Scope):
        self.toks = tokenize(text)
        self.pos = 0
        self.scope = scope

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")

    def integer(self) -> int:
        tok = self.tok
        if tok.kind != "num" or not tok.text.isdigit():
            self.error("expected a non-negative integer")
        self.pos += 1
        return int(tok.text)

    def number(self) -> Fraction:
        tok = self.tok
        if tok.kind != "num":
            self.error("expected a number")
        self.pos += 1
        value = Fraction(tok.text)
        if self.tok.kind == "op" and self.tok.text == "/":
            self.pos += 1
            den_tok = self.tok
            den = self.integer()
            if den == 0:
                self.error("zero denominator", den_tok)
            value /= den
        return value

    def starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text in "(<")

    # grammar -------------------------------------------------------------------
    def parse(self):
        node = self.expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        terms = [self.term()]
        while self.tok.kind == "op" and self.tok.text in "+-":
            negate = self.tok.text == "-"
            self.pos += 1
            t = self.term()
            terms.append(Neg(t) if negate else t)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        if self.accept("-"):
            return Neg(self.term())
        return self.product()

    def product(self):
        node = self.wedge()
        while True:
            if self.accept("*"):
                node = Prod(node, self.wedge())
            elif self.accept("/"):
                tok = self.tok
                q = self.number()
                if q == 0:
                    self.error("division by zero", tok)
                node = Prod(node, Num(1 / q))
            elif self.starts_atom():
                node = Prod(node, self.wedge())
            else:
                return node

    def wedge(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "^|":
            op = self.tok.text
            self.pos += 1
            rhs = self.unary()
            node = Wedge(node, rhs) if op == "^" else Dot(node, rhs)
        return node

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.postfix()
        if self.accept("**"):
            node = Pow(node, self.integer())
        return node

    def postfix(self):
        node = self.atom()
        while self.accept("~"):
            node = Rev(node)
        return node

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            return Num(self.number())
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.accept("<"):
            node = self.expr()
            self.expect(">")
            self.expect("_")
            ktok = self.tok
            k = self.integer()
            if k > self.scope.alg.n:
                self.error(f"grade {k} exceeds algebra dimension {self.scope.alg.n}", ktok)
            return GradeProj(node, k)
        if tok.kind == "name":
            self.pos += 1
            return self.name(tok)
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def name(self, tok: Token):
        name, scope = tok.text, self.scope
        if name in _FUNCS:
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return _FUNCS[name](node)
        if name == "duality":
            self.expect("(")
            q = self.number()
            self.expect(")")
            if (2 * q).denominator != 1:
                self.error("duality angle must be a multiple of 1/2 (in units of pi)", tok)
            return DualityRotor(q)
        if name == "i":
            return Pseudo()
        m = re.fullmatch(r"[ge](\d+)", name)
        if m:
            k = int(m.group(1))
            if k >= scope.alg.n:
                self.error(f"generator index {k} out of range for {scope.alg}", tok)
            return Gen(k)
        if scope.alg.n == 4 and name in ("s1", "s2", "s3"):
            return RelBasis(int(name[1]))
        if name in scope.lets:
            return scope.lets[name]
        if name in scope.vectors:
            return VecSym(name, False)
        if name in scope.relvectors:
            return VecSym(name, True)
        if name in scope.scalars:
            return Sym(name)
        for v in scope.vectors | scope.relvectors:
            if name in scope.component_names(v):
                return Sym(name)
        self.error(f"unknown symbol {name!r}", tok)


def parse(text: str, scope: Scope | AlgebraSignature):
    """Parse ``text`` into an AST; raises :class:`ParseError` with line/column."""
    if isinstance(scope, AlgebraSignature):
        scope = Scope(scope)
    return _Parser(text, scope).parse()
