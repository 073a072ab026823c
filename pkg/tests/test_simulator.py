import math

import numpy as np
import pytest

from gaproca.fields import FieldState, GridSpec, write_snapshot
from gaproca.simulator import (
    CFL_LIMIT, ConfigError, ConvergenceError, FitError, OscillatingCharge, SimConfig, SimulationError,
    UnresolvedWavelength, duality_summary, duality_timeseries, euclidean_evanescence, fit_frequency,
    gaussian_blob, group_speed, initial_state, load_config, measure_dispersion, monopole_gauss_check,
    plane_wave, run, screened_potential, solve_profile, sor_poisson, step,
)
from gaproca.simulator.experiments import massive_conservation_run, static_monopole_divergence


@pytest.fixture
def slab():
    return GridSpec.slab(32, 1.0)


# config --------------------------------------------------------------------------
def test_default_dt_sits_on_the_cfl_limit(slab):
    cfg = SimConfig(grid=slab)
    assert cfg.courant == pytest.approx(CFL_LIMIT)


@pytest.mark.parametrize("kw,fragment", [
    ({"dt": 1.0}, "CFL"),
    ({"dt": -0.1}, "positive"),
    ({"m_gamma": 100.0}, "stiff"),
    ({"signature": "riemannian"}, "signature"),
    ({"initial": {"kind": "vortex"}}, "initial kind"),
    ({"n_steps": -1}, "steps"),
])
def test_config_validation(slab, kw, fragment):
    with pytest.raises(ConfigError, match=fragment):
        SimConfig(grid=slab, **kw)


def test_load_config_precedence(tmp_path):
    p = tmp_path / "run.ini"
    p.write_text("[grid]\nn = 16\n\n[time]\nsteps = 7   ; inline comment\n\n"
                 "[initial]\nkind = plane-wave\nmode = 1 0 0\npolarization = 0 0 1\n")
    cfg = load_config(p, {"grid": 64, "steps": 99, "mass": 0.5})
    assert cfg.grid.shape == (16, 16, 16)      # file beats flag
    assert cfg.n_steps == 7
    assert cfg.m_gamma == 0.5                   # flag fills what the file omits
    assert cfg.initial == {"kind": "plane-wave", "mode": [1.0, 0.0, 0.0], "polarization": [0.0, 0.0, 1.0]}


def test_load_config_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "missing.ini")
    bad = tmp_path / "bad.ini"
    bad.write_text("[grid]\nn = sixteen\n")
    with pytest.raises(ConfigError, match="n"):
        load_config(bad)
    bad.write_text("no section header\n")
    with pytest.raises(ConfigError):
        load_config(bad)


# initial data --------------------------------------------------------------------
def test_gaussian_blob_integrates_to_charge():
    g = GridSpec.cube(32, 1.0)
    rho = gaussian_blob(g, 2.5, 3 * g.h[0])
    assert g.integrate(rho) == pytest.approx(2.5, rel=1e-6)   # tails past 5 sigma are cut
    with pytest.raises(ValueError):
        gaussian_blob(g, 1.0, g.h[0])


def test_discrete_poisson_symbol_inverts_grid_operator():
    g = GridSpec.cube(16, 1.0)
    rho = gaussian_blob(g, 1.0, 3 * g.h[0])
    rho -= rho.mean()
    phi = screened_potential(g, rho)
    lap = g.divergence(g.gradient(phi))
    # only the Nyquist content is invisible to the wide central stencil
    assert np.max(np.abs(-lap - 4 * math.pi * rho)) < 1e-3 * np.max(np.abs(4 * math.pi * rho))
    assert np.all(np.isfinite(phi)) and np.max(np.abs(phi)) < 10
    with pytest.raises(ValueError):
        screened_potential(g, rho + 1.0)


def test_plane_wave_validation(slab):
    with pytest.raises(ValueError):
        plane_wave(slab, (0, 0, 0), (0, 1, 0), 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        plane_wave(slab, (1, 0, 0), (1, 0, 0), 1.0, 0.0, 1.0)


def test_monopole_initial_state_satisfies_discrete_gauss_law():
    cfg = SimConfig(grid=GridSpec.cube(32, 1.0),
                    initial={"kind": "gaussian-monopole", "separation": 0.4, "width": 0.1})
    st = initial_state(cfg)
    assert abs(cfg.grid.integrate(st.rho_m)) < 1e-12
    res = cfg.grid.divergence(st.B) - 4 * math.pi * st.rho_m
    assert np.max(np.abs(res)) < 1e-4 * np.max(np.abs(4 * math.pi * st.rho_m))


def test_snapshot_initial_state(tmp_path, slab):
    st = plane_wave(slab, (1, 0, 0), (0, 1, 0), 0.3, 0.0, 1.0)
    p = write_snapshot(st, tmp_path / "s.json", "json")
    back = initial_state(SimConfig(grid=slab, initial={"kind": "snapshot", "path": str(p)}))
    assert np.array_equal(back.Avec, st.Avec)
    with pytest.raises(ValueError):
        initial_state(SimConfig(grid=GridSpec.slab(16, 1.0), initial={"kind": "snapshot", "path": str(p)}))


# stepping ------------------------------------------------------------------------
def test_zero_state_stays_zero(slab):
    res = run(SimConfig(grid=slab, n_steps=20, diagnostics_every=5))
    assert res.final.t == pytest.approx(20 * SimConfig(grid=slab).dt)
    for name in ("E", "B", "A0", "Avec"):
        assert not np.any(getattr(res.final, name))
    assert [r["step"] for r in res.series] == [0, 5, 10, 15, 20]


def test_euclidean_signature_is_not_time_stepped(slab):
    cfg = SimConfig(grid=slab, signature="euclidean")
    with pytest.raises(SimulationError):
        step(FieldState.zeros(slab), cfg)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_blow_up_is_reported(slab):
    st = FieldState.zeros(slab)
    st = st.replace(E=st.E + np.inf)
    with pytest.raises(SimulationError, match="non-finite"):
        step(st, SimConfig(grid=slab))


def test_run_is_deterministic(slab):
    cfg = SimConfig(grid=slab, m_gamma=1.0, n_steps=30,
                    initial={"kind": "plane-wave", "mode": [1, 0, 0], "polarization": [0, 1, 0]})
    a, b = run(cfg), run(cfg)
    assert a.series == b.series
    assert np.array_equal(a.final.E, b.final.E)


def test_gauss_constraints_are_preserved():
    cfg = SimConfig(grid=GridSpec.cube(16, 1.0), n_steps=40, diagnostics_every=10,
                    initial={"kind": "gaussian-electric-charge", "separation": 0.4, "width": 0.2})
    res = run(cfg)
    ge, gm = res.column("gauss_e"), res.column("gauss_m")
    assert np.max(np.abs(ge - ge[0])) < 1e-10 * max(1.0, np.max(np.abs(cfg.grid.divergence(res.final.E))))
    assert np.max(gm) < 1e-12


def test_energy_is_bounded_for_a_vacuum_wave(slab):
    cfg = SimConfig(grid=slab, n_steps=400, diagnostics_every=20,
                    initial={"kind": "plane-wave", "mode": [1, 0, 0], "polarization": [0, 1, 0]})
    H = run(cfg).column("H")
    assert np.max(np.abs(H - H[0])) < 1e-2 * H[0]


def test_lorenz_gauge_is_preserved_in_vacuum(slab):
    cfg = SimConfig(grid=slab, m_gamma=2.0, n_steps=40, diagnostics_every=10,
                    initial={"kind": "plane-wave", "mode": [1, 0, 0], "polarization": [0, 1, 0]})
    lorenz = [v for v in run(cfg).column("lorenz") if not math.isnan(v)]
    assert lorenz and max(lorenz) < 1e-10


def test_oscillating_charge_is_conserved(slab):
    slab = slab.with_scheme("spectral")
    src = OscillatingCharge(slab, 1.0, 1, 2.0)
    dt = 1e-6
    a, b = src(0.3 - dt), src(0.3 + dt)
    drho = (b["rho_e"] - a["rho_e"]) / (2 * dt)
    assert np.max(np.abs(drho + slab.divergence(src(0.3)["j_e"]))) < 1e-8


def test_duality_along_a_run(slab):
    cfg = SimConfig(grid=slab, n_steps=20, snapshot_every=5,
                    initial={"kind": "plane-wave", "mode": [1, 0, 0], "polarization": [0, 1, 0]})
    rows = duality_timeseries(run(cfg).snapshots)
    assert [r["step"] for r in rows] == [0, 5, 10, 15, 20]
    summary = duality_summary(rows)
    assert summary["L_negated_exactly"]
    assert summary["H_max_change"] <= 1e-12 and summary["S_max_change"] <= 1e-12


# dispersion ----------------------------------------------------------------------
def test_fit_frequency_recovers_synthetic_signal():
    t = np.linspace(0, 10, 400)
    a = 0.7 * np.exp(-1j * 3.3 * t) + 0.1 * np.exp(1j * 3.3 * t)
    assert fit_frequency(t, a, 3.0) == pytest.approx(3.3, rel=1e-8)


def test_unresolved_wavelength_is_refused():
    with pytest.raises(UnresolvedWavelength):
        measure_dispersion(32, 0.0, mode=4)


@pytest.mark.slow
def test_massive_dispersion_at_moderate_resolution():
    k = 2 * math.pi
    r = measure_dispersion(64, k)
    assert r.omega_predicted == pytest.approx(math.sqrt(2) * k)
    assert r.rel_error < 0.01


@pytest.mark.slow
def test_group_speed_below_c():
    vg = group_speed(64, 2 * math.pi)
    assert 0 < vg < 1


# evanescence ---------------------------------------------------------------------
def test_evanescence_decay_rate():
    rep = euclidean_evanescence(2 * math.pi)
    assert rep.rel_error < 0.02 and rep.far_amplitude < 1e-4
    assert rep.phase_gradient == pytest.approx(0.0, abs=1e-9)


def test_evanescence_kappa_scales_with_omega():
    a, b = euclidean_evanescence(2 * math.pi), euclidean_evanescence(4 * math.pi)
    assert b.kappa_fit / a.kappa_fit == pytest.approx(2.0, rel=0.02)


def test_evanescence_at_zero_frequency_is_uniform():
    rep = euclidean_evanescence(0.0)
    assert rep.kappa_fit == pytest.approx(0.0, abs=1e-12)


def test_minkowski_contrast_propagates():
    _, E = solve_profile(2 * math.pi, 128, 3.0, signature="minkowski")
    assert np.max(np.abs(E[len(E) // 2:])) > 0.5
    with pytest.raises(FitError):
        euclidean_evanescence(2 * math.pi, n_cells=4)
    with pytest.raises(ValueError):
        solve_profile(1.0, 16, 1.0, signature="lorentzian")


# monopole ------------------------------------------------------------------------
def test_monopole_flux_on_small_grid():
    rep = monopole_gauss_check(1.0, n_cells=32, boxes=(10, 12), width_cells=2)
    assert all(0.99 <= r <= 1.01 for r in rep.ratio.values())


def test_zero_monopole_gives_zero_flux():
    rep = monopole_gauss_check(0.0, n_cells=32, boxes=(10, 12), width_cells=2)
    assert all(v == 0 for v in rep.flux.values())


def test_default_boxes_scale_with_grid():
    rep = monopole_gauss_check(1.0, n_cells=32, width_cells=2)
    assert sorted(rep.flux) == [12, 14]


def test_monopole_box_must_fit():
    with pytest.raises(ValueError):
        monopole_gauss_check(1.0, n_cells=32, boxes=(40,), width_cells=2)


def test_sor_reports_non_convergence():
    f = np.zeros((16, 16, 16))
    f[8, 8, 8] = 1.0
    with pytest.raises(ConvergenceError):
        sor_poisson(f, 1 / 16, tol=1e-14, max_iter=10)


# conservation --------------------------------------------------------------------
def test_static_monopole_divergence_is_exactly_zero():
    assert static_monopole_divergence(n_cells=16, steps=5) == 0.0


@pytest.mark.slow
def test_conservation_residual_shrinks_with_h():
    a = massive_conservation_run(16, steps=1000, diagnostics_every=100)
    b = massive_conservation_run(32, steps=2000, diagnostics_every=200)
    assert b.continuity_e_linf < a.continuity_e_linf


@pytest.mark.parametrize("name", ["plane_wave.ini", "monopole_pair.ini"])
def test_demo_configs_load(name):
    from pathlib import Path

    cfg = load_config(Path(__file__).parent.parent / "demos" / "configs" / name)
    assert cfg.courant <= CFL_LIMIT
    initial_state(cfg)
