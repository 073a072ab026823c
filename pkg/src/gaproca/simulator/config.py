"""Run configuration and its INI file format.

Example::

    [grid]
    n = 32              ; or nx / ny / nz
    box = 1.0           ; or lx / ly / lz
    scheme = central

    [physics]
    m_gamma = 0.0
    c = 1.0
    signature = minkowski

    [time]
    dt = 0.005          ; omit to use 0.5 * h_min / c
    steps = 1000

    [initial]
    kind = plane-wave   ; zero | plane-wave | gaussian-monopole | gaussian-electric-charge | snapshot
    mode = 1 0 0        ; integer wave-vector, k = 2 pi mode / L
    polarization = 0 1 0
    amplitude = 1.0

    [output]
    diagnostics_every = 10
    snapshot_every = 0  ; 0 disables snapshots

Precedence: values in the file override command-line flags, and flags
override defaults.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..fields.grid import GridSpec

CFL_LIMIT = 0.5
MASS_STEP_LIMIT = 0.1
INITIAL_KINDS = ("zero", "plane-wave", "gaussian-monopole", "gaussian-electric-charge", "snapshot")
SIGNATURES = ("minkowski", "euclidean")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    grid: GridSpec
    m_gamma: float = 0.0
    c: float = 1.0
    dt: float | None = None
    n_steps: int = 100
    initial: dict = field(default_factory=lambda: {"kind": "zero"})
    signature: str = "minkowski"
    diagnostics_every: int = 10
    snapshot_every: int = 0

    def __post_init__(self):
        if self.dt is None:
            object.__setattr__(self, "dt", CFL_LIMIT * min(self.grid.h) / self.c)
        self.validate()

    @property
    def courant(self) -> float:
        return self.c * self.dt / min(self.grid.h)

    def validate(self):
        if self.dt <= 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if self.courant > CFL_LIMIT * (1 + 1e-12):
            raise ConfigError(f"CFL violated: c dt / h = {self.courant:.4g} > {CFL_LIMIT}")
        if self.m_gamma < 0:
            raise ConfigError("m_gamma must be >= 0")
        if self.m_gamma * self.c * self.dt > MASS_STEP_LIMIT:
            raise ConfigError(f"mass term too stiff: m c dt = {self.m_gamma * self.c * self.dt:.3g} > {MASS_STEP_LIMIT}")
        if self.n_steps < 0:
            raise ConfigError("steps must be >= 0")
        if self.signature not in SIGNATURES:
            raise ConfigError(f"signature must be one of {SIGNATURES}")
        if self.initial.get("kind") not in INITIAL_KINDS:
            raise ConfigError(f"initial kind must be one of {INITIAL_KINDS}, got {self.initial.get('kind')!r}")
        if self.diagnostics_every < 1 or self.snapshot_every < 0:
            raise ConfigError("diagnostics_every must be >= 1 and snapshot_every >= 0")

    def replace(self, **kw) -> "SimConfig":
        if "grid" in kw and "dt" not in kw:
            kw["dt"] = None
        return replace(self, **kw)


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.replace(",", " ").split()]


def _parse_initial(sec) -> dict:
    out = {"kind": sec.get("kind", "zero").strip()}
    for key, value in sec.items():
        if key == "kind":
            continue
        if key in ("mode", "polarization", "center"):
            out[key] = _floats(value)
        elif key == "path":
            out[key] = value.strip()
        else:
            out[key] = float(value)
    return out


def load_config(path, defaults: dict | None = None) -> SimConfig:
    """Read an INI run file; ``defaults`` (e.g. from flags) fill keys the file omits."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        cp.read_string(path.read_text())
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    d = dict(defaults or {})

    def get(section, key, conv, fallback):
        if cp.has_option(section, key):
            try:
                return conv(cp.get(section, key))
            except ValueError as exc:
                raise ConfigError(f"{path}: [{section}] {key}: {exc}") from exc
        return fallback

    n = get("grid", "n", int, d.get("grid", 32))
    shape = tuple(get("grid", f"n{a}", int, n) for a in "xyz")
    box = get("grid", "box", float, d.get("box", 1.0))
    length = tuple(get("grid", f"l{a}", float, box) for a in "xyz")
    scheme = get("grid", "scheme", str.strip, "central")
    try:
        grid = GridSpec(shape, length, scheme)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    initial = _parse_initial(cp["initial"]) if cp.has_section("initial") else {"kind": "zero"}
    return SimConfig(
        grid=grid,
        m_gamma=get("physics", "m_gamma", float, d.get("mass", 0.0)),
        c=get("physics", "c", float, 1.0),
        dt=get("time", "dt", float, d.get("dt")),
        n_steps=get("time", "steps", int, d.get("steps", 100)),
        initial=initial,
        signature=get("physics", "signature", str.strip, "minkowski"),
        diagnostics_every=get("output", "diagnostics_every", int, 10),
        snapshot_every=get("output", "snapshot_every", int, 0),
    )
