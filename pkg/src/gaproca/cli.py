"""Command-line front end.

Each subcommand prints one JSON summary on stdout and, with ``--out DIR``,
writes its data files there. Human-readable progress goes to stderr.

Exit codes:
- 0: every check in scope passed.
- 1: a check failed; the failing item is named on stderr.
- 2: usage error (bad flags, missing config, parameters out of range).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import parse_signature, pseudoscalar
from .oracle import kernel_mismatches

TOL = 1e-12
ALL_SIGNATURES = ("1,3", "4,0", "3,1", "2,2")


class UsageError(Exception):
    pass


class Context:
    def __init__(self, args):
        self.args = args
        self.failures: list[str] = []
        self.out = Path(args.out) if getattr(args, "out", None) else None
        if self.out:
            self.out.mkdir(parents=True, exist_ok=True)

    def log(self, msg: str):
        if self.args.verbose >= 0:
            print(msg, file=sys.stderr)

    def check(self, name: str, ok: bool, detail: str = ""):
        if not ok:
            self.failures.append(f"{name}: {detail}" if detail else name)
        return ok

    def path(self, name: str) -> Path | None:
        return self.out / name if self.out else None

    def write_json(self, name: str, obj):
        p = self.path(name)
        if p:
            p.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")

    def write_table(self, stem: str, rows: list[dict], columns):
        p = self.path(f"{stem}.{self.args.format}")
        if not p:
            return
        if self.args.format == "json":
            p.write_text(json.dumps([{c: r[c] for c in columns} for r in rows], indent=2) + "\n")
        else:
            from .simulator.experiments import write_rows_csv
            write_rows_csv(rows, columns, p)


def _common(p: argparse.ArgumentParser, *names):
    add = {
        "signature": lambda: p.add_argument("--signature", action="append", metavar="P,Q",
                                            help="algebra signature (repeatable)"),
        "grid": lambda: p.add_argument("--grid", type=int, metavar="N", help="cells per axis"),
        "box": lambda: p.add_argument("--box", type=float, metavar="L", help="box edge length"),
        "mass": lambda: p.add_argument("--mass", type=float, metavar="M", help="photon mass m_gamma"),
        "dt": lambda: p.add_argument("--dt", type=float, help="time step"),
        "steps": lambda: p.add_argument("--steps", type=int, help="number of time steps"),
        "seed": lambda: p.add_argument("--seed", type=int, default=42, help="random seed (default 42)"),
    }
    for n in names:
        add[n]()
    p.add_argument("--out", metavar="DIR", help="directory for data files")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="table format (default csv)")
    p.add_argument("--config", metavar="FILE", help="INI run config; its values override flags")
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.add_argument("-q", "--quiet", dest="verbose", action="store_const", const=-1)


# subcommands -------------------------------------------------------------------------
def cmd_verify_identities(ctx: Context) -> dict:
    from .symbolic import builtin_all, load, negative_control, run_corpus

    a = ctx.args
    sigs = a.signature or list(ALL_SIGNATURES)
    try:
        algs = [parse_signature(s) for s in sigs]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    items = load(a.corpus) if a.corpus else builtin_all()
    report = run_corpus(items, signatures=algs, workers=a.workers)
    control, skipped = negative_control(
        [it for it in items if parse_signature(it.signature) in set(algs)])
    ctx.log(f"corpus: {len(report.results)} items in {report.seconds:.3f} s, "
            f"{len(report.failures())} failed")
    for r in report.failures():
        ctx.check(f"identity {r.name}", False, r.detail)
    for r in control.results:
        ctx.check(f"negative control {r.name}", not r.passed, "corrupted identity still verifies")
    oracle, squares = {}, {}
    for alg in algs:
        bad = kernel_mismatches(alg)
        oracle[str(alg)] = {"pairs": alg.dim * alg.dim, "mismatches": len(bad)}
        ctx.check(f"kernel oracle {alg}", not bad, f"{len(bad)} mismatching blade pairs")
        i = pseudoscalar(alg)
        squares[str(alg)] = float((i * i).scalar_part())
    if parse_signature("2,2") in algs:
        ctx.check("Cl(2,2) pseudoscalar square", squares["Cl(2,2)"] == 1.0)
    out = {
        "corpus": report.as_dict(),
        "negative_control": {"n_items": len(control.results),
                             "n_still_verifying": sum(r.passed for r in control.results),
                             "skipped_zero_rhs": skipped},
        "kernel_oracle": oracle,
        "pseudoscalar_square": squares,
    }
    ctx.write_json("identities.json", out)
    return out


def _grid(a, n_default: int, box_default: float, scheme: str = "central"):
    from .fields import GridSpec

    n = a.grid or n_default
    try:
        return GridSpec.cube(n, a.box or box_default, scheme)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_check_equivalence(ctx: Context) -> dict:
    from .fields import equivalence_deviation, random_state

    a = ctx.args
    grid = _grid(a, 32, 2 * math.pi)
    rng = np.random.default_rng(a.seed)
    worst = {}
    for s in range(a.n):
        dev = equivalence_deviation(random_state(grid, rng, m_gamma=a.mass))
        for k, v in dev.items():
            worst[k] = max(worst.get(k, 0.0), v)
    overall = max(worst.values(), default=0.0)
    ctx.log(f"{a.n} states on {grid.shape}: max per-cell deviation {overall:.3e}")
    for k, v in worst.items():
        ctx.check(f"equivalence {k}", v <= TOL, f"deviation {v:.3e} > {TOL:g}")
    out = {"n_states": a.n, "grid": list(grid.shape), "seed": a.seed, "max_deviation": overall,
           "per_equation": worst, "tolerance": TOL}
    ctx.write_json("equivalence.json", out)
    return out


def cmd_duality_report(ctx: Context) -> dict:
    from .fields import (
        assemble_faraday, duality_rotate, hamiltonian_density, lagrangian_density, poynting,
        pseudoscalar_invariant, random_state,
    )
    from .simulator import DUALITY_COLUMNS, duality_summary, duality_timeseries

    a = ctx.args
    if a.config:
        from .simulator import run
        cfg = _load_cfg(a)
        if not cfg.snapshot_every:
            cfg = cfg.replace(snapshot_every=max(1, cfg.n_steps // 10))
        rows = duality_timeseries(run(cfg).snapshots)
        summary = duality_summary(rows)
        ctx.check("L negated", summary["L_negated_exactly"])
        ctx.check("H invariant", summary["H_max_change"] <= TOL * max(1.0, max(abs(r["H"]) for r in rows)))
        ctx.write_table("duality_timeseries", rows, DUALITY_COLUMNS)
        out = {"mode": "run", "rows": len(rows), "summary": summary}
        ctx.write_json("duality.json", out)
        return out

    grid = _grid(a, 32, 2 * math.pi)
    rng = np.random.default_rng(a.seed)
    stats = {"L_exact_negation": 0, "H_max_change": 0.0, "S_max_change": 0.0, "P_exact_negation": 0,
             "H_max_change_arbitrary_alpha": 0.0}
    alphas = [float(x) for x in rng.uniform(0, 2 * math.pi, size=a.alphas)]
    for s in range(a.n):
        F = assemble_faraday(random_state(grid, rng, with_rates=False))
        Fr = duality_rotate(F, math.pi / 2)
        L, H, P, S = lagrangian_density(F), hamiltonian_density(F), pseudoscalar_invariant(F), poynting(F)
        stats["L_exact_negation"] += bool(np.array_equal(lagrangian_density(Fr), -L))
        stats["P_exact_negation"] += bool(np.array_equal(pseudoscalar_invariant(Fr), -P))
        stats["H_max_change"] = max(stats["H_max_change"], float(np.max(np.abs(hamiltonian_density(Fr) - H))))
        stats["S_max_change"] = max(stats["S_max_change"], float(np.max(np.abs(poynting(Fr) - S))))
        if alphas:  # the arbitrary angles take turns across the states
            al = alphas[s % len(alphas)]
            d = float(np.max(np.abs(hamiltonian_density(duality_rotate(F, al)) - H)))
            stats["H_max_change_arbitrary_alpha"] = max(stats["H_max_change_arbitrary_alpha"], d)
    ctx.check("L' = -L exactly", stats["L_exact_negation"] == a.n, f"{a.n - stats['L_exact_negation']} states differ")
    ctx.check("<F^2>_4 negated", stats["P_exact_negation"] == a.n)
    ctx.check("H' = H", stats["H_max_change"] <= TOL, f"{stats['H_max_change']:.3e}")
    ctx.check("S' = S", stats["S_max_change"] <= TOL, f"{stats['S_max_change']:.3e}")
    ctx.check("H invariant for arbitrary alpha", stats["H_max_change_arbitrary_alpha"] <= TOL,
              f"{stats['H_max_change_arbitrary_alpha']:.3e}")
    out = {"mode": "random", "n_states": a.n, "alphas": alphas, "seed": a.seed, **stats}
    ctx.write_json("duality.json", out)
    return out


def cmd_densities(ctx: Context) -> dict:
    """Gauge suite and Lorentz checks; with --snapshot, per-cell densities of that state."""
    from .fields import (
        GridSpec, assemble_faraday, gauge_report, hamiltonian_density, lagrangian_density, poynting,
        pseudoscalar_invariant, random_gauge, random_state, read_snapshot, rotor_boost,
    )

    a = ctx.args
    if a.snapshot:
        st = read_snapshot(a.snapshot)
        F = assemble_faraday(st)
        L, H, P, S = lagrangian_density(F), hamiltonian_density(F), pseudoscalar_invariant(F), poynting(F, st.c)
        idx = np.indices(st.grid.shape).reshape(3, -1)
        rows = [{"i": int(idx[0][r]), "j": int(idx[1][r]), "k": int(idx[2][r]),
                 "L": float(L.flat[r]), "H": float(H.flat[r]), "P": float(P.flat[r]),
                 "Sx": float(S[0].flat[r]), "Sy": float(S[1].flat[r]), "Sz": float(S[2].flat[r])}
                for r in range(L.size)]
        ctx.write_table("densities", rows, ("i", "j", "k", "L", "H", "P", "Sx", "Sy", "Sz"))
        out = {"mode": "snapshot", "cells": L.size, "integrals": {
            "L": st.grid.integrate(L), "H": st.grid.integrate(H), "P": st.grid.integrate(P)}}
        ctx.write_json("densities.json", out)
        return out

    n = a.grid or 32
    box = a.box or 2 * math.pi
    rng = np.random.default_rng(a.seed)
    gauge = {"central": {"field_change": 0.0, "expansion_error": 0.0},
             "spectral": {"field_change": 0.0, "expansion_error": 0.0}}
    witness_min = math.inf
    for s in range(a.gauge_pairs):
        seed_state, seed_chi = (int(x) for x in rng.integers(0, 2**63 - 1, size=2))
        for scheme in ("central", "spectral"):
            grid = GridSpec.cube(n, box, scheme)
            rep = gauge_report(random_state(grid, seed_state), random_gauge(grid, seed_chi))
            g = gauge[scheme]
            g["field_change"] = max(g["field_change"], rep.field_change)
            g["expansion_error"] = max(g["expansion_error"], rep.expansion_error)
            witness_min = min(witness_min, rep.witness["l2"])
    if a.gauge_pairs > 0:
        ctx.check("gauge: F invariant (central)", gauge["central"]["field_change"] <= TOL)
        ctx.check("gauge: F invariant (spectral)", gauge["spectral"]["field_change"] <= TOL)
        ctx.check("gauge: expansion pointwise (spectral)", gauge["spectral"]["expansion_error"] <= TOL,
                  f"{gauge['spectral']['expansion_error']:.3e}")
        ctx.check("gauge: (nabla chi)^2 witness nonzero", witness_min > 0)

    grid = GridSpec.cube(n, box)
    lorentz = {"L_max_change": 0.0, "P_max_change": 0.0, "H_max_change": 0.0}
    for s in range(a.boost_pairs):
        F = assemble_faraday(random_state(grid, rng, with_rates=False))
        beta = float(rng.uniform(-1.5, 1.5))
        axis = int(rng.integers(1, 4))
        Fb = rotor_boost(F, beta, axis)
        for key, fn in (("L_max_change", lagrangian_density), ("P_max_change", pseudoscalar_invariant),
                        ("H_max_change", hamiltonian_density)):
            lorentz[key] = max(lorentz[key], float(np.max(np.abs(fn(Fb) - fn(F)))))
    if a.boost_pairs > 0:
        ctx.check("boost: <F^2>_0 invariant", lorentz["L_max_change"] <= TOL, f"{lorentz['L_max_change']:.3e}")
        ctx.check("boost: <F^2>_4 invariant", lorentz["P_max_change"] <= TOL, f"{lorentz['P_max_change']:.3e}")
        ctx.check("boost: <F F^adj>_0 not invariant", lorentz["H_max_change"] > 1e-6)
    out = {"mode": "suite", "seed": a.seed, "grid": [n, n, n], "gauge_pairs": a.gauge_pairs,
           "gauge": gauge, "gauge_witness_min_l2": witness_min if a.gauge_pairs > 0 else None, "boost_pairs": a.boost_pairs,
           "lorentz": lorentz}
    ctx.write_json("densities.json", out)
    return out


def cmd_dispersion_scan(ctx: Context) -> dict:
    from .simulator import DISPERSION_COLUMNS, measure_dispersion

    a = ctx.args
    n = a.grid or 128
    L = a.box or 1.0
    k = 2 * math.pi / L
    masses = [float(x) * k for x in a.mass_fractions] if a.mass is None else [a.mass]
    results = [measure_dispersion(n, m, L=L) for m in masses]
    for m, r in zip(masses, results):
        ctx.log(f"m = {m:.4g}: omega {r.omega_measured:.8f} vs {r.omega_predicted:.8f} (err {r.rel_error:.2e})")
        ctx.check(f"dispersion m={m:g}", r.rel_error <= 0.01, f"relative error {r.rel_error:.3e}")
    out = {"grid": n, "box": L, "results": [r.__dict__ for r in results]}
    if a.convergence:
        coarse = [measure_dispersion(n // 2, m, L=L) for m in masses]
        ratios = [c.rel_error / f.rel_error for c, f in zip(coarse, results)]
        for m, ratio in zip(masses, ratios):
            ctx.check(f"convergence m={m:g}", 3.2 <= ratio <= 4.8, f"ratio {ratio:.3f}")
        out["convergence"] = {"coarse_grid": n // 2, "ratios": ratios}
    ctx.write_table("dispersion", [r.__dict__ for r in results], DISPERSION_COLUMNS)
    ctx.write_json("dispersion.json", out)
    return out


def cmd_euclidean_evanescence(ctx: Context) -> dict:
    from .simulator import euclidean_evanescence

    a = ctx.args
    n = a.grid or 128
    L = a.box or 1.0
    omega = a.omega if a.omega is not None else 2 * math.pi / L
    rep = euclidean_evanescence(omega, n_cells=n, L=L)
    out = {"report": rep.as_dict()}
    if omega > 0:
        ctx.check("kappa = omega / c", rep.rel_error <= 0.02, f"relative error {rep.rel_error:.3e}")
        ctx.check("no transmission past 10 decay lengths", rep.far_amplitude < 1e-4,
                  f"amplitude {rep.far_amplitude:.3e}")
        double = euclidean_evanescence(2 * omega, n_cells=n, L=L)
        out["doubled"] = double.as_dict()
        out["kappa_ratio"] = double.kappa_fit / rep.kappa_fit
        ctx.check("doubling omega doubles kappa", abs(out["kappa_ratio"] - 2) <= 0.02 * 2,
                  f"ratio {out['kappa_ratio']:.4f}")
    ctx.write_json("evanescence.json", out)
    return out


def cmd_monopole_gauss(ctx: Context) -> dict:
    from .simulator import monopole_gauss_check

    a = ctx.args
    try:
        rep = monopole_gauss_check(a.charge, n_cells=a.grid or 64, L=a.box or 1.0, width_cells=a.width_cells)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if a.charge:
        for half, r in rep.ratio.items():
            ctx.check(f"flux/4pi e_m (half-width {half})", 0.99 <= r <= 1.01, f"ratio {r:.6f}")
        ctx.check("flux box independence", rep.box_spread < 0.005, f"spread {rep.box_spread:.3e}")
    else:
        ctx.check("zero charge gives zero flux", all(v == 0 for v in rep.flux.values()))
    out = rep.as_dict()
    ctx.write_json("monopole.json", out)
    return out


def _load_cfg(a):
    from .simulator import ConfigError, load_config

    defaults = {k: getattr(a, k, None) for k in ("grid", "box", "mass", "dt", "steps")}
    defaults = {k: v for k, v in defaults.items() if v is not None}
    try:
        return load_config(a.config, defaults)
    except (FileNotFoundError, ConfigError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_simulate(ctx: Context) -> dict:
    from .fields import write_snapshot
    from .simulator import SERIES_COLUMNS, SimulationError, run

    a = ctx.args
    out: dict = {}
    if a.config_file or a.config:
        a.config = a.config or a.config_file
        cfg = _load_cfg(a)
        if cfg.signature != "minkowski":
            raise UsageError("simulate only time-steps the Minkowski signature; "
                             "use euclidean-evanescence for the Euclidean problem")
        try:
            res = run(cfg)
        except SimulationError as exc:
            ctx.check("simulation", False, str(exc))
            return {"error": str(exc)}
        ctx.write_table("series", res.series, SERIES_COLUMNS)
        p = ctx.path(f"final.{a.format}")
        if p:
            write_snapshot(res.final, p, a.format)
        for n, st in res.snapshots:
            p = ctx.path(f"snapshot_{n:06d}.{a.format}")
            if p:
                write_snapshot(st, p, a.format)
        last = res.series[-1]
        out["run"] = {"steps": cfg.n_steps, "dt": cfg.dt, "t_final": res.final.t,
                      "gauss_e_final": last["gauss_e"], "gauss_m_final": last["gauss_m"],
                      "H_first": res.series[0]["H"], "H_last": last["H"]}
    if a.conservation:
        from .simulator import massive_conservation_run, static_monopole_divergence

        steps = a.steps or 10_000
        coarse = massive_conservation_run(16, steps=steps, m_gamma=a.mass if a.mass else 2.0)
        fine = massive_conservation_run(32, steps=steps, m_gamma=a.mass if a.mass else 2.0)
        ratio = coarse.continuity_e_linf / fine.continuity_e_linf
        div_jm = static_monopole_divergence()
        ctx.check("continuity_e second-order convergence", 3.2 <= ratio <= 4.8, f"ratio {ratio:.3f}")
        ctx.check("div j_m == 0 for static monopoles", div_jm == 0.0, f"max {div_jm:.3e}")
        out["conservation"] = {"coarse": coarse.as_dict(), "fine": fine.as_dict(), "ratio": ratio,
                               "static_monopole_div_jm": div_jm}
    if not out:
        raise UsageError("simulate needs a CONFIG file and/or --conservation")
    ctx.write_json("simulate.json", out)
    return out


# parser --------------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gaproca", description="Spacetime-algebra Maxwell-Proca toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("verify-identities", help="symbolic corpus, negative control and kernel oracle")
    _common(s, "signature")
    s.add_argument("--corpus", metavar="FILE", help="corpus file (default: built-in corpora)")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_verify_identities)

    s = sub.add_parser("check-equivalence", help="unified vs vector-form residuals on random states")
    _common(s, "grid", "box", "mass", "seed")
    s.add_argument("--n", type=int, default=100, help="number of random states")
    s.set_defaults(func=cmd_check_equivalence)

    s = sub.add_parser("duality-report", help="duality behaviour of the densities")
    _common(s, "grid", "box", "seed")
    s.add_argument("--n", type=int, default=100, help="number of random states")
    s.add_argument("--alphas", type=int, default=10, help="number of arbitrary angles")
    s.set_defaults(func=cmd_duality_report)

    s = sub.add_parser("densities", help="gauge suite and Lorentz checks, or densities of a snapshot")
    _common(s, "grid", "box", "seed")
    s.add_argument("--gauge-pairs", type=int, default=20)
    s.add_argument("--boost-pairs", type=int, default=20)
    s.add_argument("--snapshot", metavar="FILE", help="write per-cell densities of this snapshot")
    s.set_defaults(func=cmd_densities)

    s = sub.add_parser("dispersion-scan", help="measured vs predicted Proca dispersion")
    _common(s, "grid", "box", "mass")
    s.add_argument("--mass-fractions", type=float, nargs="+", default=[0.0, 0.5, 1.0],
                   help="masses as multiples of k = 2 pi / L (ignored with --mass)")
    s.add_argument("--convergence", action="store_true", help="also run at half resolution")
    s.set_defaults(func=cmd_dispersion_scan)

    s = sub.add_parser("euclidean-evanescence", help="driven Euclidean slab decay rate")
    _common(s, "grid", "box")
    s.add_argument("--omega", type=float, help="drive frequency (default 2 pi / L)")
    s.set_defaults(func=cmd_euclidean_evanescence)

    s = sub.add_parser("monopole-gauss", help="flux of a Gaussian monopole")
    _common(s, "grid", "box")
    s.add_argument("--charge", type=float, default=1.0)
    s.add_argument("--width-cells", type=float, default=4.0)
    s.set_defaults(func=cmd_monopole_gauss)

    s = sub.add_parser("simulate", help="run a config file and/or the conservation study")
    _common(s, "grid", "box", "mass", "dt", "steps")
    s.add_argument("config_file", nargs="?", metavar="CONFIG", help="INI run config")
    s.add_argument("--conservation", action="store_true",
                   help="massive conservation convergence study plus static-monopole check")
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = Context(args)
        out = args.func(ctx)
    except (UsageError, ValueError) as exc:
        # ValueError here means the requested parameters are out of range
        parser.print_usage(sys.stderr)
        print(f"gaproca: error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        # numerical failure (no convergence, blow-up, unfittable profile)
        print(json.dumps({"command": args.command, "passed": False, "failures": [f"{type(exc).__name__}: {exc}"]},
                         sort_keys=True, indent=2))
        print(f"FAIL {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out = {"command": args.command, "passed": not ctx.failures, "failures": ctx.failures, **out}
    print(json.dumps(out, sort_keys=True, indent=2, default=float))
    for f in ctx.failures:
        print(f"FAIL {f}", file=sys.stderr)
    return 1 if ctx.failures else 0


if __name__ == "__main__":
    sys.exit(main())
