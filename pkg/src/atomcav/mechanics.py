"""Mechanical response of the trapped ensemble to the intracavity field.

The probe adds a sin^2(k_p z + phi) potential on top of each harmonic
well.  Its curvature relative to the trap's is the single dimensionless
knob of the whole problem,

    eta = 4 n_bar g0^2 omega_r / (delta_ca omega_z^2),

signed like delta_ca.  The effective well curvature is
omega_z^2 (1 + eta cos 2 phi): attractive probe light (delta_ca < 0)
softens a well at a field node (phi = 0) and stiffens one at an antinode
(phi = pi/2); repulsive light interchanges the roles.  eta = -1 at a
softened site removes the confinement entirely.
"""

import math
import numpy as np
from dataclasses import dataclass

from .constants import HBAR
from .params import ground_state_width


class UnconfinedError(ValueError):
    """The combined trap + probe potential no longer confines the atoms."""


@dataclass(frozen=True)
class SpringConstants:
    """Optical spring constants acting on the collective coordinate.

    k_static : N/m
        Intensity-gradient spring 2 k_p F n_bar cos(2 phi0); follows the
        probe intensity profile with the photon number held fixed.
    k_dynamic : N/m
        Detuning-dependent spring 2 F^2 sin^2(2 phi0) n_bar delta /
        (hbar (delta^2 + kappa^2)) from the cavity field adiabatically
        tracking the displacement; odd in delta, largest at |delta| = kappa.
    eta : float
        Probe/trap curvature ratio at the same n_bar (diagnostic).
    """

    k_static: float
    k_dynamic: float
    eta: float


@dataclass(frozen=True)
class MechanicalEquilibrium:
    """Harmonic equilibrium of one well at a given photon number.

    omega_eff_sq is always set; z_cm and sigma_eff are None when the well
    is not confined (omega_eff_sq <= 0).
    """

    omega_eff_sq: float
    confined: bool
    z_cm: float = None
    sigma_eff: float = None


def curvature_ratio(p, e, d, n_bar):
    """Signed probe/trap curvature ratio eta at photon number n_bar."""
    return 4.0 * n_bar * p.g0**2 * p.omega_r / (d.delta_ca * e.omega_z**2)


def effective_curvature_sq(p, e, d, n_bar, phi):
    """omega_eff^2 = omega_z^2 (1 + eta cos 2 phi); array-capable in n_bar/phi."""
    eta = curvature_ratio(p, e, d, np.asarray(n_bar, dtype=float))
    return e.omega_z**2 * (1.0 + eta * np.cos(2.0 * np.asarray(phi)))


def force_per_photon_per_atom(p, d):
    """hbar k_p g0^2 / delta_ca: probe force scale per photon per atom, N."""
    return HBAR * p.k_p * p.g0**2 / d.delta_ca


def spring_constants(p, e, d, n_bar, delta_eff):
    """Optical spring constants at photon number n_bar and detuning delta_eff.

    delta_eff is the probe detuning from the *shifted* cavity resonance,
    rad/s.  Both constants are collective (they divide by N m to give the
    frequency shifts in mode_frequencies).
    """
    force = e.n_atoms * force_per_photon_per_atom(p, d)
    s2 = math.sin(2.0 * e.phi0)
    k_static = 2.0 * p.k_p * force * n_bar * math.cos(2.0 * e.phi0)
    k_dynamic = (
        2.0 * force**2 * s2**2 * n_bar * delta_eff
        / (HBAR * (delta_eff**2 + p.kappa**2))
    )
    return SpringConstants(
        k_static=k_static,
        k_dynamic=k_dynamic,
        eta=curvature_ratio(p, e, d, n_bar),
    )


def equilibrium_state(p, e, d, n_bar, phi_site):
    """Self-consistent harmonic state of one well at probe phase phi_site.

    Minimizing (1/2) m omega_z^2 z^2 + n_bar * u(z), with u the per-photon
    per-atom coupling potential, gives

        z_cm      = -f1 n_bar sin(2 phi_site) / (m omega_eff^2),
        sigma_eff = sqrt(hbar / (2 m omega_eff)),

    with f1 = hbar k_p g0^2 / delta_ca (per-atom force scale, so the result
    does not depend on how many atoms share the well).  A non-positive
    omega_eff^2 is reported as unconfined rather than raised, because sweep
    code must keep going through deconfinement.
    """
    om2 = float(effective_curvature_sq(p, e, d, n_bar, phi_site))
    if not om2 > 0.0:
        return MechanicalEquilibrium(omega_eff_sq=om2, confined=False)
    f1 = force_per_photon_per_atom(p, d)
    z_cm = -f1 * n_bar * math.sin(2.0 * phi_site) / (p.mass * om2)
    sigma = float(ground_state_width(p.mass, math.sqrt(om2)))
    return MechanicalEquilibrium(omega_eff_sq=om2, confined=True, z_cm=z_cm, sigma_eff=sigma)


def mode_frequencies(p, e, d, n_bar, delta_eff):
    """Collective mode frequencies probed two different ways, rad/s.

    Returns
    -------
    (f_static, f_linear)
        f_static = sqrt(omega_z^2 + k_static/(N m)) is the frequency seen
        by parametric (intensity-modulation) drive; f_linear additionally
        includes k_dynamic and is the resonance of the driven response.

    Raises
    ------
    UnconfinedError
        If either radicand is negative.
    """
    eta = curvature_ratio(p, e, d, n_bar)
    static_sq = e.omega_z**2 * (1.0 + eta * math.cos(2.0 * e.phi0))
    # k_dynamic/(N m) written per atom so that N = 0 stays finite.
    f1 = force_per_photon_per_atom(p, d)
    dyn_sq = (
        2.0 * e.n_atoms * f1**2 * math.sin(2.0 * e.phi0) ** 2 * n_bar * delta_eff
        / (HBAR * p.mass * (delta_eff**2 + p.kappa**2))
    )
    linear_sq = static_sq + dyn_sq
    if static_sq < 0.0 or linear_sq < 0.0:
        raise UnconfinedError(
            "negative squared mode frequency (static=%.6g, linear=%.6g rad^2/s^2): "
            "the well is unconfined at n_bar=%.6g" % (static_sq, linear_sq, n_bar)
        )
    return math.sqrt(static_sq), math.sqrt(linear_sq)


@dataclass(frozen=True)
class PotentialMinimum:
    """Result of the brute-force well scan: location, curvature, confinement."""

    z_min: float = None
    curvature: float = None
    confined: bool = True


def full_potential_oracle(p, e, d, n_bar, phi_site, trap_depth, n_points=4096):
    """Locate the minimum of the full (un-expanded) single-well potential.

    V(z) = trap_depth sin^2(k_t z) + hbar n_bar g0^2 sin^2(k_p z + phi_site)
           / delta_ca   [per atom]

    scanned over one trap period centred on the unperturbed minimum z = 0.
    The scan argmin is refined by two parabolic-vertex steps and the
    curvature is a central finite difference.  No interior minimum (argmin
    on the scan boundary) is reported as unconfined.  This deliberately
    shares no code with equilibrium_state; it is the independent check of
    the harmonic expansion.
    """
    if n_points < 1000:
        raise ValueError("n_points must be >= 1000, got %r" % (n_points,))

    def potential(z):
        return trap_depth * np.sin(p.k_t * z) ** 2 + (
            HBAR * n_bar * p.g0**2 / d.delta_ca
        ) * np.sin(p.k_p * z + phi_site) ** 2

    half_well = math.pi / (2.0 * p.k_t)
    z = np.linspace(-half_well, half_well, n_points)
    v = potential(z)
    idx = int(np.argmin(v))
    if idx == 0 or idx == n_points - 1:
        return PotentialMinimum(confined=False)
    h = z[1] - z[0]
    z_min = z[idx]
    for _ in range(2):
        vm, v0, vp = potential(z_min - h), potential(z_min), potential(z_min + h)
        denom = vm - 2.0 * v0 + vp
        if denom <= 0.0:
            break  # locally flat or concave: keep the scan point
        z_min = z_min + 0.5 * h * (vm - vp) / denom
        h = 0.25 * h
    h = z[1] - z[0]
    curvature = (potential(z_min - h) - 2.0 * potential(z_min) + potential(z_min + h)) / h**2
    return PotentialMinimum(z_min=float(z_min), curvature=float(curvature), confined=True)
