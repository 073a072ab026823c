"""Text snapshot format: one record per cell plus a JSON sidecar.

Columns, in order: i j k Ex Ey Ez Bx By Bz A0 Ax Ay Az rho_e rho_m
jex jey jez jmx jmy jmz. Cells are listed in C order (k fastest). Floats are
written with 17 significant digits, enough to round-trip float64 exactly.

The sidecar ``<file>.meta.json`` stores the grid (shape, length, scheme),
m_gamma, c, t, the format and the column names.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .grid import GridSpec
from .state import FieldState

COLUMNS = ("i", "j", "k", "Ex", "Ey", "Ez", "Bx", "By", "Bz", "A0", "Ax", "Ay", "Az",
           "rho_e", "rho_m", "jex", "jey", "jez", "jmx", "jmy", "jmz")
FORMATS = ("csv", "json")


def _table(state: FieldState) -> np.ndarray:
    g = state.grid
    idx = np.indices(g.shape).reshape(3, -1)
    cols = [idx[0], idx[1], idx[2]]
    for arr in (state.E, state.B):
        cols.extend(a.ravel() for a in arr)
    cols.append(state.A0.ravel())
    cols.extend(a.ravel() for a in state.Avec)
    cols.extend((state.rho_e.ravel(), state.rho_m.ravel()))
    for arr in (state.j_e, state.j_m):
        cols.extend(a.ravel() for a in arr)
    return cols


def sidecar_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".meta.json")


def write_snapshot(state: FieldState, path, fmt: str | None = None) -> Path:
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".")
    if fmt not in FORMATS:
        raise ValueError(f"snapshot format must be one of {FORMATS}, got {fmt!r}")
    cols = _table(state)
    n = cols[0].size
    if fmt == "csv":
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(COLUMNS)
            for r in range(n):
                w.writerow([int(cols[0][r]), int(cols[1][r]), int(cols[2][r])]
                           + [f"{float(c[r]):.17g}" for c in cols[3:]])
    else:
        records = [
            {name: (int(c[r]) if name in "ijk" else float(c[r])) for name, c in zip(COLUMNS, cols)}
            for r in range(n)
        ]
        path.write_text(json.dumps(records, indent=None, separators=(",", ":")) + "\n")
    g = state.grid
    meta = {
        "format": fmt,
        "columns": list(COLUMNS),
        "grid": {"shape": list(g.shape), "length": list(g.length), "scheme": g.scheme},
        "m_gamma": state.m_gamma,
        "c": state.c,
        "t": state.t,
    }
    sidecar_path(path).write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")
    return path


def read_snapshot(path) -> FieldState:
    path = Path(path)
    meta_file = sidecar_path(path)
    if not meta_file.exists():
        raise FileNotFoundError(f"missing sidecar metadata {meta_file}")
    meta = json.loads(meta_file.read_text())
    gm = meta["grid"]
    grid = GridSpec(tuple(gm["shape"]), tuple(gm["length"]), gm.get("scheme", "central"))
    if meta["format"] == "csv":
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
        if tuple(rows[0]) != COLUMNS:
            raise ValueError(f"{path}: unexpected header {rows[0]}")
        table = np.array(rows[1:], dtype=np.float64)
    else:
        records = json.loads(path.read_text())
        table = np.array([[rec[c] for c in COLUMNS] for rec in records], dtype=np.float64)
    n = int(np.prod(grid.shape))
    if table.shape != (n, len(COLUMNS)):
        raise ValueError(f"{path}: expected {n} records of {len(COLUMNS)} columns")
    out = {name: np.zeros(grid.shape) for name in COLUMNS[3:]}
    ii, jj, kk = (table[:, a].astype(int) for a in range(3))
    for col, name in enumerate(COLUMNS[3:], start=3):
        out[name][ii, jj, kk] = table[:, col]
    vec = lambda *names: np.stack([out[nm] for nm in names])
    return FieldState(
        grid=grid,
        E=vec("Ex", "Ey", "Ez"), B=vec("Bx", "By", "Bz"),
        A0=out["A0"], Avec=vec("Ax", "Ay", "Az"),
        rho_e=out["rho_e"], rho_m=out["rho_m"],
        j_e=vec("jex", "jey", "jez"), j_m=vec("jmx", "jmy", "jmz"),
        m_gamma=float(meta["m_gamma"]), c=float(meta["c"]), t=float(meta["t"]),
    )


def write_json(obj, path) -> Path:
    """Stable JSON: sorted keys, two-space indent, trailing newline."""
    path = Path(path)
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    return path
