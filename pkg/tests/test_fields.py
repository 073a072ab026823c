import json
import math

import numpy as np
import pytest

from gaproca.algebra import MINKOWSKI, pseudoscalar, relative_basis
from gaproca.fields import (
    STATIC, FieldState, GaugeField, GridSpec, MissingTimeDerivative, MultivectorField, Rates,
    assemble_faraday, bracketed, conservation_report, duality_rotate, energy_momentum,
    equivalence_deviation, faraday, gauge_report, gauge_transform, hamiltonian_density,
    lagrangian_density, nabla, norms, poynting, pseudoscalar_invariant, random_gauge,
    random_state, read_faraday, read_snapshot, residual_unified, residual_vector_form, rotor_boost,
    total, write_snapshot,
)
from gaproca.fields.equations import split_unified, unified_residual
from gaproca.fields.transforms import euclidean_duality_swap
from gaproca.simulator import screened_potential

G0 = MINKOWSKI.gen(0)


@pytest.fixture
def grid():
    return GridSpec.cube(16, 2 * math.pi)


def proca_wave(grid, m, t=0.0, c=1.0):
    """A_y = cos(kx - wt): an exact source-free Proca solution in Lorenz gauge."""
    x = grid.coords()[0]
    k = 2 * math.pi / grid.length[0]
    w = c * math.sqrt(k * k + m * m)
    th = k * x - w * t
    zero = np.zeros(grid.shape)
    vec = lambda f: np.stack([zero, f, zero])
    vz = lambda f: np.stack([zero, zero, f])
    rates = Rates(
        E=vec((w * w / c) * np.cos(th)),
        B=vz(k * w * np.cos(th)),
        Avec=vec(w * np.sin(th)),
    )
    return FieldState.zeros(grid, E=vec(-(w / c) * np.sin(th)), B=vz(-k * np.sin(th)),
                            Avec=vec(np.cos(th)), m_gamma=m, c=c, rates=rates)


# grid ----------------------------------------------------------------------------
def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec.cube(4)
    with pytest.raises(ValueError):
        GridSpec.cube(16, -1.0)
    with pytest.raises(ValueError):
        GridSpec.cube(16, 1.0, "upwind")


def test_slab_has_uniform_spacing():
    g = GridSpec.slab(64, 1.0)
    assert g.shape == (64, 8, 8)
    assert np.allclose(g.h, 1 / 64)


@pytest.mark.parametrize("scheme", ["central", "spectral"])
def test_derivative_of_sine(scheme):
    errs = []
    for n in (16, 32):
        g = GridSpec.cube(n, 2 * math.pi, scheme)
        x = g.coords()[0]
        errs.append(np.max(np.abs(g.derivative(np.sin(x), 0) - np.cos(x))))
    if scheme == "central":
        assert 3.8 < errs[0] / errs[1] < 4.2
    else:
        assert max(errs) < 1e-12


def test_derivative_acts_on_last_three_axes(grid):
    x, y, _ = grid.coords()
    f = np.stack([np.sin(x), np.sin(y)])
    d = grid.derivative(f, 1)
    assert np.allclose(d[0], 0) and d.shape == f.shape


def test_curl_of_gradient_vanishes(grid):
    x, y, z = grid.coords()
    f = np.sin(x) * np.cos(2 * y) + np.sin(z)
    assert np.max(np.abs(grid.curl(grid.gradient(f)))) < 1e-12


def test_total_is_order_independent_of_memory_layout():
    a = np.random.default_rng(0).normal(size=(8, 9, 10))
    assert total(a) == total(np.asfortranarray(a))
    assert norms(np.zeros(0), 1.0) == {"linf": 0.0, "l2": 0.0}


# state ---------------------------------------------------------------------------
def test_state_shape_validation(grid):
    with pytest.raises(ValueError):
        FieldState.zeros(grid, E=np.zeros((3, 8, 8, 8)))
    with pytest.raises(ValueError):
        FieldState.zeros(grid, m_gamma=-1.0)


def test_missing_rates_refuse_time_dependent_checks(grid):
    st = random_state(grid, 1, with_rates=False)
    with pytest.raises(MissingTimeDerivative):
        residual_unified(st)
    with pytest.raises(MissingTimeDerivative):
        nabla(assemble_faraday(st))
    nabla(assemble_faraday(st), static=True)


def test_random_state_is_seeded(grid):
    a, b = random_state(grid, 7), random_state(grid, 7)
    assert np.array_equal(a.E, b.E) and a.m_gamma == b.m_gamma
    assert not np.array_equal(a.E, random_state(grid, 8).E)


def test_bracketed_rates(grid):
    st = random_state(grid, 2, with_rates=False)
    later = st.replace(E=st.E + 0.5, t=0.25)
    mid = bracketed(st, st, later)
    assert np.allclose(mid.rate("E"), 2.0)
    with pytest.raises(ValueError):
        bracketed(later, st, st)


# Faraday bivector ----------------------------------------------------------------
def test_faraday_blades(grid):
    E = np.stack([np.full(grid.shape, v) for v in (1.0, 2.0, 3.0)])
    B = np.stack([np.full(grid.shape, v) for v in (4.0, 5.0, 6.0)])
    F = faraday(grid, E, B)
    s1, s2, s3 = relative_basis(MINKOWSKI)
    i = pseudoscalar(MINKOWSKI)
    expected = 1 * s1 + 2 * s2 + 3 * s3 + i * (4 * s1 + 5 * s2 + 6 * s3)
    assert F.at((0, 0, 0)) == expected.map(float)
    assert F.grades() == {2}
    E2, B2 = read_faraday(F)
    assert np.array_equal(E2, E) and np.array_equal(B2, B)


def test_nabla_of_constant_field_is_zero(grid):
    F = MultivectorField.constant(grid, G0 * 3.0)
    assert nabla(F, static=True).max_abs() == 0.0


def test_nabla_of_linear_potential_in_time():
    # A = t g0 (A0 = t): nabla A = g0 g0 dA0/dt = 1
    g = GridSpec.cube(8)
    A = MultivectorField.constant(g, G0 * 0.0)
    dA = MultivectorField.constant(g, G0 * 1.0)
    out = nabla(A, dA)
    assert np.allclose(out.data[0], 1.0) and np.allclose(out.data[1:], 0.0)


def test_field_products_match_scalar_kernel(grid):
    st = random_state(grid, 3, with_rates=False)
    F = assemble_faraday(st)
    idx = (2, 5, 7)
    assert np.allclose((F * F).at(idx).coeffs, (F.at(idx) * F.at(idx)).coeffs)
    assert np.allclose(F.adjoint().at(idx).coeffs, F.at(idx).adjoint().coeffs)


# field equations -----------------------------------------------------------------
@pytest.mark.parametrize("m", [0.0, 1.5])
def test_proca_wave_solves_both_forms_spectrally(m):
    g = GridSpec.cube(16, 2 * math.pi, "spectral")
    st = proca_wave(g, m)
    assert residual_unified(st).max_linf() < 1e-12
    assert residual_vector_form(st).max_linf() < 1e-12
    assert conservation_report(st).max_linf() < 1e-12


def test_proca_wave_residual_is_second_order_with_central_differences():
    r = [residual_vector_form(proca_wave(GridSpec.cube(n, 2 * math.pi), 1.0)).max_linf() for n in (16, 32)]
    assert 3.8 < r[0] / r[1] < 4.2


def test_split_recovers_vector_form_on_random_states(grid):
    for seed in range(5):
        dev = equivalence_deviation(random_state(grid, seed))
        assert set(dev) == {"gauss_e", "faraday", "gauss_m", "ampere"}
        assert max(dev.values()) <= 1e-12


def test_unified_residual_has_only_odd_grades(grid):
    R = unified_residual(random_state(grid, 11))
    assert R.grades() <= {1, 3}
    assert residual_unified(random_state(grid, 11)).grades["other"]["linf"] == 0.0


def test_split_grade_bookkeeping(grid):
    st = random_state(grid, 4)
    parts = split_unified(unified_residual(st))
    assert parts["gauss_e"].shape == grid.shape and parts["ampere"].shape == (3,) + grid.shape


def test_coulomb_field_residual_is_second_order():
    errs = []
    for n in (16, 32):
        g = GridSpec.cube(n, 1.0)
        x, y, z = g.coords()
        r2 = (x - 0.5) ** 2 + (y - 0.5) ** 2 + (z - 0.5) ** 2
        rho = np.exp(-r2 / (2 * 0.08 ** 2))
        rho -= rho.mean()
        phi = screened_potential(g, rho, symbol="exact")
        st = FieldState.zeros(g, E=-g.gradient(phi), A0=phi, rho_e=rho, rates=STATIC)
        errs.append(residual_vector_form(st).equations["gauss_e"]["linf"])
    assert errs[1] < errs[0] and 3.0 < errs[0] / errs[1] < 5.0


def test_residual_report_json_is_stable(grid):
    rep = residual_vector_form(random_state(grid, 5))
    text = rep.to_json()
    assert json.loads(text)["kind"] == "vector"
    assert text == residual_vector_form(random_state(grid, 5)).to_json()


# densities -----------------------------------------------------------------------
def uniform_faraday(E, B):
    g = GridSpec.cube(8)
    return faraday(g, np.stack([np.full(g.shape, v) for v in E]), np.stack([np.full(g.shape, v) for v in B]))


def test_density_values():
    F = uniform_faraday((1.0, 2.0, 0.0), (0.0, 1.0, 3.0))
    assert np.allclose(lagrangian_density(F), 5 - 10)
    assert np.allclose(hamiltonian_density(F), 5 + 10)
    assert np.allclose(pseudoscalar_invariant(F), 2 * (1 * 0 + 2 * 1 + 0 * 3))


def test_poynting_is_conventional_e_cross_b():
    F = uniform_faraday((1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    S = poynting(F, c=1.0)
    assert np.allclose(S[2], 1 / (4 * math.pi)) and np.allclose(S[:2], 0.0)


def test_energy_momentum_time_component():
    F = uniform_faraday((1.0, 2.0, 0.0), (0.0, 1.0, 3.0))
    T0 = energy_momentum(F, G0)
    assert np.allclose((T0 | MultivectorField.constant(F.grid, G0 * 1.0)).data[0], 7.5)
    with pytest.raises(ValueError):
        energy_momentum(F, G0 * G0)


# transforms ----------------------------------------------------------------------
def test_duality_quarter_turn(grid):
    st = random_state(grid, 6, with_rates=False)
    F = assemble_faraday(st)
    E, B = read_faraday(duality_rotate(F, math.pi / 2))
    assert np.array_equal(E, st.B) and np.array_equal(B, -st.E)
    Fr = duality_rotate(F, math.pi / 2)
    assert np.array_equal(lagrangian_density(Fr), -lagrangian_density(F))


def test_duality_full_turn_is_identity(grid):
    F = assemble_faraday(random_state(grid, 6, with_rates=False))
    assert np.array_equal(duality_rotate(F, 2 * math.pi).data, F.data)


def test_euclidean_swap_copies(grid):
    st = random_state(grid, 6, with_rates=False)
    E, B = euclidean_duality_swap(st.E, st.B)
    assert np.array_equal(E, st.B) and E is not st.B


def test_boost_invariants(grid):
    F = assemble_faraday(random_state(grid, 9, with_rates=False))
    Fb = rotor_boost(F, 0.9, 2)
    assert np.max(np.abs(lagrangian_density(Fb) - lagrangian_density(F))) < 1e-12
    assert np.max(np.abs(pseudoscalar_invariant(Fb) - pseudoscalar_invariant(F))) < 1e-12
    assert np.max(np.abs(hamiltonian_density(Fb) - hamiltonian_density(F))) > 1e-6
    assert max(Fb.grade(0).max_abs(), Fb.grade(4).max_abs()) < 1e-12   # rounding only


@pytest.mark.parametrize("scheme", ["central", "spectral"])
def test_gauge_invariance_of_field(scheme):
    g = GridSpec.cube(16, 2 * math.pi, scheme)
    rep = gauge_report(random_state(g, 12), random_gauge(g, 13))
    assert rep.field_change <= 1e-12
    assert rep.witness["l2"] > 0
    if scheme == "spectral":
        assert rep.expansion_error <= 1e-12


def test_constant_gauge_leaves_potential_unchanged(grid):
    st = random_state(grid, 14)
    after = gauge_transform(st, GaugeField(np.full(grid.shape, 3.0)))
    assert np.array_equal(after.Avec, st.Avec) and np.array_equal(after.A0, st.A0)
    rep = gauge_report(st, GaugeField(np.full(grid.shape, 3.0)))
    assert rep.witness["linf"] == 0.0


def test_mass_term_breaks_gauge_invariance_of_residual():
    g = GridSpec.cube(16, 2 * math.pi, "spectral")
    st = proca_wave(g, 1.0)
    after = gauge_transform(st, random_gauge(g, 3))
    assert residual_vector_form(after).max_linf() > 1e-3
    assert residual_vector_form(gauge_transform(proca_wave(g, 0.0), random_gauge(g, 3))).max_linf() < 1e-12


# io ------------------------------------------------------------------------------
@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_snapshot_roundtrip(tmp_path, fmt):
    g = GridSpec((8, 9, 10), (1.0, 1.5, 2.0))
    st = random_state(g, 15, with_rates=False).replace(t=0.75)
    p = write_snapshot(st, tmp_path / f"snap.{fmt}", fmt)
    back = read_snapshot(p)
    assert back.grid == g and back.t == 0.75 and back.m_gamma == st.m_gamma
    for name in ("E", "B", "A0", "Avec", "rho_e", "rho_m", "j_e", "j_m"):
        assert np.array_equal(getattr(back, name), getattr(st, name)), name


def test_snapshot_needs_sidecar(tmp_path, grid):
    p = write_snapshot(FieldState.zeros(grid), tmp_path / "s.csv", "csv")
    p.with_name(p.name + ".meta.json").unlink()
    with pytest.raises(FileNotFoundError):
        read_snapshot(p)


def test_snapshot_bad_format(tmp_path, grid):
    with pytest.raises(ValueError):
        write_snapshot(FieldState.zeros(grid), tmp_path / "s.txt", "txt")
