"""Acceptance criteria 1-10, each run end-to-end through its CLI subcommand.

Every test prints one ``PASS``/``FAIL`` line (visible even without ``-s``)
and then asserts, so a red criterion is reported rather than hidden.
"""
import json
import time

import pytest

from gaproca.cli import main

pytestmark = pytest.mark.acceptance


def run_cli(capsys, argv):
    t0 = time.perf_counter()
    code = main(argv)
    seconds = time.perf_counter() - t0
    out = json.loads(capsys.readouterr().out)
    return code, out, seconds


def report(capsys, number: int, title: str, ok: bool, detail: str):
    with capsys.disabled():
        print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")


def test_criterion_01_symbolic_corpus(capsys):
    code, out, seconds = run_cli(capsys, ["verify-identities", "-q"])
    corpus, control = out["corpus"], out["negative_control"]
    ok = (code == 0 and corpus["passed"] and control["n_items"] > 0
          and control["n_still_verifying"] == 0 and seconds < 1.0)
    report(capsys, 1, "symbolic corpus", ok,
           f"{corpus['n_items'] - corpus['n_failed']}/{corpus['n_items']} identities in {seconds:.3f} s, "
           f"{control['n_items']} corrupted items all fail")
    assert ok, out["failures"]


def test_criterion_02_kernel_oracle(capsys):
    code, out, seconds = run_cli(capsys, ["verify-identities", "-q"])
    oracle = out["kernel_oracle"]
    mismatches = sum(v["mismatches"] for v in oracle.values())
    ok = (code == 0 and len(oracle) == 4 and mismatches == 0
          and out["pseudoscalar_square"]["Cl(2,2)"] == 1.0 and seconds < 1.0)
    report(capsys, 2, "kernel oracle", ok,
           f"{sum(v['pairs'] for v in oracle.values())} blade pairs over {len(oracle)} signatures, "
           f"{mismatches} mismatches; Cl(2,2) i^2 = {out['pseudoscalar_square']['Cl(2,2)']:+g}")
    assert ok, out["failures"]


def test_criterion_03_unified_vs_vector(capsys):
    code, out, seconds = run_cli(capsys, ["check-equivalence", "--seed", "42", "--n", "100", "-q"])
    ok = code == 0 and out["n_states"] == 100 and out["max_deviation"] <= 1e-12 and seconds < 30
    report(capsys, 3, "unified vs vector form", ok,
           f"max deviation {out['max_deviation']:.2e} over 100 states ({seconds:.1f} s)")
    assert ok, out["failures"]


def test_criterion_04_duality(capsys):
    code, out, _ = run_cli(capsys, ["duality-report", "--seed", "42", "--n", "100", "-q"])
    ok = (code == 0 and out["L_exact_negation"] == 100 and out["H_max_change"] <= 1e-12
          and out["S_max_change"] <= 1e-12 and out["H_max_change_arbitrary_alpha"] <= 1e-12
          and len(out["alphas"]) == 10)
    report(capsys, 4, "duality", ok,
           f"L'=-L exactly in {out['L_exact_negation']}/100, |dH| {out['H_max_change']:.1e}, "
           f"|dS| {out['S_max_change']:.1e}, |dH(alpha)| {out['H_max_change_arbitrary_alpha']:.1e}")
    assert ok, out["failures"]


def test_criterion_05_gauge(capsys):
    code, out, _ = run_cli(capsys, ["densities", "--seed", "42", "--boost-pairs", "0", "-q"])
    g = out["gauge"]
    ok = (code == 0 and out["gauge_pairs"] == 20
          and max(g["central"]["field_change"], g["spectral"]["field_change"]) <= 1e-12
          and g["spectral"]["expansion_error"] <= 1e-12 and out["gauge_witness_min_l2"] > 0)
    report(capsys, 5, "gauge suite", ok,
           f"dF {max(g['central']['field_change'], g['spectral']['field_change']):.1e}, "
           f"expansion {g['spectral']['expansion_error']:.1e}, "
           f"min ||(nabla chi)^2|| {out['gauge_witness_min_l2']:.3g}")
    assert ok, out["failures"]


def test_criterion_06_lorentz(capsys):
    code, out, _ = run_cli(capsys, ["densities", "--seed", "42", "--gauge-pairs", "0", "-q"])
    lz = out["lorentz"]
    ok = (code == 0 and out["boost_pairs"] == 20 and lz["L_max_change"] <= 1e-12
          and lz["P_max_change"] <= 1e-12 and lz["H_max_change"] > 1e-6)
    report(capsys, 6, "Lorentz boosts", ok,
           f"|d<F^2>_0| {lz['L_max_change']:.1e}, |d<F^2>_4| {lz['P_max_change']:.1e}, "
           f"max |d<F F^adj>_0| {lz['H_max_change']:.3g}")
    assert ok, out["failures"]


def test_criterion_07_dispersion(capsys):
    code, out, seconds = run_cli(capsys, ["dispersion-scan", "--grid", "128", "--convergence", "-q"])
    errors = [r["rel_error"] for r in out["results"]]
    ratios = out["convergence"]["ratios"]
    ok = (code == 0 and len(errors) == 3 and max(errors) <= 0.01
          and all(3.2 <= r <= 4.8 for r in ratios) and seconds < 120)
    report(capsys, 7, "massive dispersion", ok,
           f"rel errors {', '.join(f'{e:.1e}' for e in errors)}; "
           f"64/128 ratios {', '.join(f'{r:.3f}' for r in ratios)} ({seconds:.1f} s)")
    assert ok, out["failures"]


def test_criterion_08_evanescence(capsys):
    code, out, _ = run_cli(capsys, ["euclidean-evanescence", "--grid", "128", "-q"])
    rep = out["report"]
    ok = code == 0 and rep["rel_error"] <= 0.02 and rep["far_amplitude"] < 1e-4
    report(capsys, 8, "Euclidean evanescence", ok,
           f"kappa error {rep['rel_error']:.1e}, amplitude past 10 decay lengths "
           f"{rep['far_amplitude']:.1e}, kappa(2w)/kappa(w) {out['kappa_ratio']:.4f}")
    assert ok, out["failures"]


def test_criterion_09_monopole(capsys):
    code, out, _ = run_cli(capsys, ["monopole-gauss", "--grid", "64", "-q"])
    ratios = list(out["ratio"].values())
    ok = code == 0 and all(0.99 <= r <= 1.01 for r in ratios) and out["box_spread"] < 0.005
    report(capsys, 9, "monopole Gauss law", ok,
           f"flux/4pi e_m {', '.join(f'{r:.9f}' for r in ratios)}, box spread {out['box_spread']:.1e}")
    assert ok, out["failures"]


def test_criterion_10_conservation(capsys):
    code, out, seconds = run_cli(capsys, ["simulate", "--conservation", "-q"])
    c = out["conservation"]
    ok = (code == 0 and c["coarse"]["steps"] == 10_000 and 3.2 <= c["ratio"] <= 4.8
          and c["static_monopole_div_jm"] == 0.0)
    report(capsys, 10, "conservation", ok,
           f"continuity_e residual {c['coarse']['continuity_e_linf']:.3e} -> {c['fine']['continuity_e_linf']:.3e} "
           f"(ratio {c['ratio']:.3f}); static div j_m = {c['static_monopole_div_jm']:g} ({seconds:.1f} s)")
    assert ok, out["failures"]
