"""Optical springs, per-well equilibria, and the brute-force well oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomcav import (
    HBAR,
    TWO_PI,
    EnsembleConfig,
    ProbeDrive,
    UnconfinedError,
    RunOptions,
    curvature_ratio,
    default_rb87_params,
    effective_curvature_sq,
    equilibrium_state,
    force_per_photon_per_atom,
    full_potential_oracle,
    ground_state_width,
    mode_frequencies,
    spring_constants,
)

P = default_rb87_params()
D = ProbeDrive(delta_ca=-TWO_PI * 6e9, delta_pc=0.0, n_max=1.0)


def ens(n_atoms, phi0, omega_z_hz=70e3, **kw):
    return EnsembleConfig(n_atoms=n_atoms, phi0=phi0, omega_z=TWO_PI * omega_z_hz, **kw)


def test_curvature_ratio_frozen_value_and_sign():
    e = ens(3000, 0.0)
    assert curvature_ratio(P, e, D, 1.0) == pytest.approx(-0.0881001908109751, rel=1e-12)
    blue = ProbeDrive(delta_ca=TWO_PI * 6e9, delta_pc=0.0, n_max=1.0)
    assert curvature_ratio(P, e, blue, 1.0) > 0.0
    assert curvature_ratio(P, e, D, 0.0) == 0.0


def test_curvature_ratio_independent_of_atom_number():
    a = curvature_ratio(P, ens(10, 0.3), D, 2.0)
    b = curvature_ratio(P, ens(5000, 0.3), D, 2.0)
    assert a == b


@settings(max_examples=100, deadline=None)
@given(
    phi0=st.floats(0.0, math.pi),
    n_bar=st.floats(0.0, 5.0),
    omega_z_hz=st.floats(20e3, 200e3),
    sign=st.sampled_from([-1.0, 1.0]),
)
def test_static_spring_route_matches_curvature_route(phi0, n_bar, omega_z_hz, sign):
    """omega_z^2 + K_s/(N m) and omega_z^2 (1 + eta cos 2 phi0) are the same
    number computed two unrelated ways."""
    d = ProbeDrive(delta_ca=sign * TWO_PI * 6e9, delta_pc=0.0, n_max=1.0)
    e = ens(4000, phi0, omega_z_hz)
    s = spring_constants(P, e, d, n_bar, delta_eff=0.0)
    via_spring = e.omega_z**2 + s.k_static / (e.n_atoms * P.mass)
    via_eta = float(effective_curvature_sq(P, e, d, n_bar, phi0))
    assert via_spring == pytest.approx(via_eta, rel=1e-12)


def test_dynamic_spring_odd_in_detuning():
    e = ens(4000, math.pi / 4.0)
    for delta in (0.3 * P.kappa, P.kappa, 2.7 * P.kappa):
        kp = spring_constants(P, e, D, 1.0, delta).k_dynamic
        km = spring_constants(P, e, D, 1.0, -delta).k_dynamic
        assert km == -kp


def test_dynamic_spring_extremal_at_kappa():
    e = ens(4000, math.pi / 4.0)
    at_kappa = abs(spring_constants(P, e, D, 1.0, P.kappa).k_dynamic)
    assert at_kappa > abs(spring_constants(P, e, D, 1.0, 0.9 * P.kappa).k_dynamic)
    assert at_kappa > abs(spring_constants(P, e, D, 1.0, 1.1 * P.kappa).k_dynamic)


def test_dynamic_spring_vanishes_at_node_and_antinode():
    for phi0 in (0.0, math.pi / 2.0):
        s = spring_constants(P, ens(4000, phi0), D, 1.0, -P.kappa)
        assert s.k_dynamic == pytest.approx(0.0, abs=1e-30)


def test_equilibrium_displacement_closed_form():
    # z_cm = -eta sin(2 phi) / (2 k_p (1 + eta cos 2 phi)), any eta
    for phi in (0.3, math.pi / 4.0, 1.2):
        for n_bar in (0.5, 2.0):
            eq = equilibrium_state(P, ens(100, 0.0), D, n_bar, phi)
            eta = curvature_ratio(P, ens(100, 0.0), D, n_bar)
            expect = -eta * math.sin(2.0 * phi) / (2.0 * P.k_p * (1.0 + eta * math.cos(2.0 * phi)))
            assert eq.z_cm == pytest.approx(expect, rel=1e-12)


def test_equilibrium_pulls_toward_higher_intensity_for_red_probe():
    # attractive probe (delta_ca < 0), phi in (0, pi/2): intensity grows
    # with z, so the well centre moves to positive z
    eq = equilibrium_state(P, ens(100, 0.0), D, 1.0, 0.6)
    assert eq.z_cm > 0.0
    blue = ProbeDrive(delta_ca=TWO_PI * 6e9, delta_pc=0.0, n_max=1.0)
    assert equilibrium_state(P, ens(100, 0.0), blue, 1.0, 0.6).z_cm < 0.0


def test_equilibrium_width_tracks_effective_frequency():
    eq = equilibrium_state(P, ens(100, 0.0), D, 1.5, 0.4)
    assert eq.confined
    assert eq.sigma_eff == pytest.approx(
        float(ground_state_width(P.mass, math.sqrt(eq.omega_eff_sq))), rel=1e-12
    )


def test_deconfinement_flag_at_unit_eta():
    e = ens(100, 0.0)
    eta1 = curvature_ratio(P, e, D, 1.0)  # negative
    n_crit = -1.0 / eta1
    assert equilibrium_state(P, e, D, n_crit * (1.0 - 1e-9), 0.0).confined
    past = equilibrium_state(P, e, D, n_crit * (1.0 + 1e-9), 0.0)
    assert not past.confined
    assert past.z_cm is None and past.sigma_eff is None


def test_mode_frequencies_consistency():
    e = ens(4000, 0.8, omega_z_hz=32e3)
    n_bar = 0.05
    delta = -P.kappa
    f_static, f_linear = mode_frequencies(P, e, D, n_bar, delta)
    assert f_static**2 == pytest.approx(
        float(effective_curvature_sq(P, e, D, n_bar, 0.8)), rel=1e-12
    )
    s = spring_constants(P, e, D, n_bar, delta)
    expect_sq = e.omega_z**2 + (s.k_static + s.k_dynamic) / (e.n_atoms * P.mass)
    assert f_linear**2 == pytest.approx(expect_sq, rel=1e-10)


def test_mode_frequencies_dark_cavity_is_bare_trap():
    f_static, f_linear = mode_frequencies(P, ens(4000, 0.8), D, 0.0, -P.kappa)
    assert f_static == pytest.approx(TWO_PI * 70e3, rel=1e-12)
    assert f_linear == pytest.approx(TWO_PI * 70e3, rel=1e-12)


def test_mode_frequencies_no_atoms_keeps_single_atom_spring():
    # the static spring is per atom (eta does not involve N), while the
    # collective backaction spring dies with the ensemble
    e0 = ens(0, 0.8)
    f_static, f_linear = mode_frequencies(P, e0, D, 1.0, -P.kappa)
    assert f_static**2 == pytest.approx(float(effective_curvature_sq(P, e0, D, 1.0, 0.8)), rel=1e-12)
    assert f_linear == f_static


def test_mode_frequencies_raise_when_unconfined():
    e = ens(100, 0.0)
    n_crit = -1.0 / curvature_ratio(P, e, D, 1.0)
    with pytest.raises(UnconfinedError):
        mode_frequencies(P, e, D, 1.2 * n_crit, 0.0)


def oracle_setup(phi_site, eta_target):
    e = ens(100, 0.0)
    n_bar = eta_target / curvature_ratio(P, e, D, 1.0)
    depth = RunOptions().trap_depth(P, e)
    return e, n_bar, depth


@pytest.mark.parametrize("phi_site", [0.35, math.pi / 4.0, 1.15])
@pytest.mark.parametrize("eta_target", [-0.02, -0.08])
def test_oracle_confirms_harmonic_equilibrium(phi_site, eta_target):
    e, n_bar, depth = oracle_setup(phi_site, eta_target)
    eq = equilibrium_state(P, e, D, n_bar, phi_site)
    oracle = full_potential_oracle(P, e, D, n_bar, phi_site, depth)
    assert oracle.confined
    assert oracle.z_min == pytest.approx(eq.z_cm, rel=0.05)
    assert oracle.curvature == pytest.approx(P.mass * eq.omega_eff_sq, rel=0.02)


def test_oracle_sees_symmetry_breaking_past_threshold():
    # at a field node (phi = 0) with attractive light, the harmonic story
    # says the well curvature crosses zero at |eta| = 1; the full potential
    # instead breaks symmetry there, the minimum leaving z = 0
    e = ens(100, 0.0)
    n_crit = -1.0 / curvature_ratio(P, e, D, 1.0)
    depth = RunOptions().trap_depth(P, e)
    below = full_potential_oracle(P, e, D, 0.9 * n_crit, 0.0, depth)
    above = full_potential_oracle(P, e, D, 1.1 * n_crit, 0.0, depth)
    assert below.confined and abs(below.z_min) < 1e-9
    assert above.confined and abs(above.z_min) > 2e-9
    assert above.curvature > 0.0


def test_oracle_input_validation():
    e = ens(100, 0.0)
    with pytest.raises(ValueError, match="n_points"):
        full_potential_oracle(P, e, D, 0.1, 0.3, 1e-28, n_points=10)


def test_force_per_photon_per_atom_sign_and_value():
    f1 = force_per_photon_per_atom(P, D)
    assert f1 == pytest.approx(HBAR * P.k_p * P.g0**2 / D.delta_ca, rel=1e-15)
    assert f1 < 0.0
