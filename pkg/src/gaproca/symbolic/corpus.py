"""Identity corpus files and the batch verifier.

File format (UTF-8, line oriented, ``#`` starts a comment line)::

    [item-name]
    signature: 1,3
    scalars: d0 d1
    vectors: a b            # spacetime vectors, components a0..a3
    relvectors: E B         # relative vectors on gK g0, components E1..E3
    let: F = E + i B        # macro, may be repeated; later lets see earlier ones
    lhs: <F F>_0
    rhs: E1**2 + E2**2 + E3**2 - B1**2 - B2**2 - B3**2

Keys other than ``let`` appear at most once per item. ``signature``, ``lhs``
and ``rhs`` are required.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from ..algebra import parse_signature
from .canonical import IdentityReport, canonicalize, verify_identity
from .parser import ParseError, Scope, parse


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusItem:
    name: str
    signature: str
    lhs: str
    rhs: str
    scalars: tuple = ()
    vectors: tuple = ()
    relvectors: tuple = ()
    lets: tuple = ()  # ((name, text), ...)
    line: int = 0

    def scope(self) -> Scope:
        scope = Scope(parse_signature(self.signature))
        for kind, names in (("scalar", self.scalars), ("vector", self.vectors), ("relvector", self.relvectors)):
            for n in names:
                scope.declare(kind, n)
        for name, text in self.lets:
            scope.let(name, text)
        return scope

    def verify(self) -> IdentityReport:
        scope = self.scope()
        return verify_identity(parse(self.lhs, scope), parse(self.rhs, scope), scope)


def corrupted(item: CorpusItem) -> CorpusItem:
    """Same identity with the right-hand side sign flipped (negative control)."""
    return replace(item, name=item.name + "~corrupted", rhs=f"-({item.rhs})")


def loads(text: str, source: str = "<string>") -> list[CorpusItem]:
    items: list[CorpusItem] = []
    cur: dict | None = None

    def close():
        if cur is None:
            return
        missing = [k for k in ("signature", "lhs", "rhs") if k not in cur]
        if missing:
            raise CorpusError(f"{source}:{cur['line']}: item [{cur['name']}] lacks {', '.join(missing)}")
        items.append(CorpusItem(
            name=cur["name"], signature=cur["signature"], lhs=cur["lhs"], rhs=cur["rhs"],
            scalars=tuple(cur.get("scalars", "").split()),
            vectors=tuple(cur.get("vectors", "").split()),
            relvectors=tuple(cur.get("relvectors", "").split()),
            lets=tuple(cur["lets"]), line=cur["line"],
        ))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            close()
            cur = {"name": line[1:-1].strip(), "line": lineno, "lets": []}
            continue
        if cur is None:
            raise CorpusError(f"{source}:{lineno}: content before the first [item]")
        key, sep, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if not sep:
            raise CorpusError(f"{source}:{lineno}: expected 'key: value'")
        if key == "let":
            name, eq, body = value.partition("=")
            if not eq:
                raise CorpusError(f"{source}:{lineno}: let needs 'NAME = expr'")
            cur["lets"].append((name.strip(), body.strip()))
        elif key in ("signature", "scalars", "vectors", "relvectors", "lhs", "rhs"):
            if key in cur:
                raise CorpusError(f"{source}:{lineno}: duplicate key {key!r}")
            cur[key] = value
        else:
            raise CorpusError(f"{source}:{lineno}: unknown key {key!r}")
    close()
    names = [it.name for it in items]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise CorpusError(f"{source}: duplicate item names {sorted(dupes)}")
    return items


def load(path) -> list[CorpusItem]:
    path = Path(path)
    return loads(path.read_text(encoding="utf-8"), str(path))


BUILTIN = ("minkowski", "euclidean", "signatures")


def builtin(name: str) -> list[CorpusItem]:
    text = resources.files(__package__).joinpath("data", f"{name}.corpus").read_text(encoding="utf-8")
    return loads(text, f"{name}.corpus")


def builtin_all() -> list[CorpusItem]:
    return [it for name in BUILTIN for it in builtin(name)]


@dataclass
class ItemResult:
    name: str
    signature: str
    passed: bool
    detail: str


@dataclass
class CorpusReport:
    results: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[ItemResult]:
        return [r for r in self.results if not r.passed]

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "n_items": len(self.results),
            "n_failed": len(self.failures()),
            "items": [
                {"name": r.name, "signature": r.signature, "passed": r.passed, "detail": r.detail}
                for r in self.results
            ],
        }


def _check(item: CorpusItem) -> ItemResult:
    try:
        rep = item.verify()
    except (ParseError, ValueError) as exc:
        return ItemResult(item.name, item.signature, False, f"error: {exc}")
    return ItemResult(item.name, item.signature, rep.equal, str(rep))


def run_corpus(items, signatures=None, workers: int = 1) -> CorpusReport:
    """Verify every item (optionally only those whose signature is in ``signatures``).

    Results are sorted by item name, so the report does not depend on ``workers``.
    """
    t0 = time.perf_counter()
    if signatures is not None:
        wanted = {parse_signature(s) if isinstance(s, str) else s for s in signatures}
        items = [it for it in items if parse_signature(it.signature) in wanted]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(_check, items))
    else:
        results = [_check(it) for it in items]
    results.sort(key=lambda r: r.name)
    return CorpusReport(results, time.perf_counter() - t0)


def negative_control(items) -> tuple[CorpusReport, list[str]]:
    """Run every item with its rhs negated; each run must fail.

    Items whose rhs is identically zero are skipped (negation cannot change
    them) and returned by name.
    """
    t0 = time.perf_counter()
    results, skipped = [], []
    for it in items:
        scope = it.scope()
        if not canonicalize(parse(it.rhs, scope), scope).terms:
            skipped.append(it.name)
            continue
        results.append(_check(corrupted(it)))
    results.sort(key=lambda r: r.name)
    return CorpusReport(results, time.perf_counter() - t0), sorted(skipped)
