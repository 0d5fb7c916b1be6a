"""Dispersive atom-cavity coupling in closed form.

A single atom at displacement dz from a point of probe phase phi couples at
g(dz) = g0 sin(phi + k_p dz).  Averaging g^2/delta_ca over a Gaussian cloud
of rms width sigma centred at z_cm gives the cavity frequency pull

    shift = N g0^2 / (2 delta_ca) * (1 - exp(-2 k_p^2 sigma^2)
                                         * cos 2(phi + k_p z_cm)).

The Taylor expansion of that expression around z_cm = 0 fixes every sign
convention used downstream: the per-photon coupling potential is

    u(z) = hbar*delta_n0 + linear_coeff * z + (quad_coeff/2) * z^2 + const,

so the optical force on the collective coordinate is -du/dz.
"""

import math
import numpy as np
from dataclasses import dataclass

from .constants import HBAR


@dataclass(frozen=True)
class CouplingCoefficients:
    """Second-order expansion of the per-photon coupling.

    delta_n0 : static cavity shift N g0^2 sin^2(phi0) / delta_ca, rad/s
    force_per_photon : N hbar k_p g0^2 / delta_ca, newtons (signed)
    linear_coeff : slope F sin(2 phi0) of the per-photon potential, N
    quad_coeff : curvature 2 k_p F cos(2 phi0) of the per-photon potential, N/m
    """

    delta_n0: float
    force_per_photon: float
    linear_coeff: float
    quad_coeff: float


def coupling_coefficients(p, e, d):
    """Expand the coupling to second order in the collective displacement.

    Requires the dispersive guard |delta_ca| >= guard * gamma and raises
    DispersiveGuardError otherwise.
    """
    d.check_dispersive(p)
    force = e.n_atoms * HBAR * p.k_p * p.g0**2 / d.delta_ca
    return CouplingCoefficients(
        delta_n0=e.n_atoms * p.g0**2 / d.delta_ca * math.sin(e.phi0) ** 2,
        force_per_photon=force,
        linear_coeff=force * math.sin(2.0 * e.phi0),
        quad_coeff=2.0 * p.k_p * force * math.cos(2.0 * e.phi0),
    )


def single_site_shift(p, n_atoms, phi, sigma, z_cm, delta_ca):
    """Gaussian-averaged dispersive shift of one site, rad/s.

    Array-capable in phi, sigma and z_cm (numpy broadcasting); the scalar
    public wrapper is dispersive_shift.
    """
    envelope = np.exp(-2.0 * p.k_p**2 * np.square(sigma))
    phase = 2.0 * (phi + p.k_p * np.asarray(z_cm))
    return n_atoms * p.g0**2 / (2.0 * delta_ca) * (1.0 - envelope * np.cos(phase))


def dispersive_shift(p, e, d, sigma, z_cm=0.0):
    """Cavity shift of the full cloud treated as one site at phase e.phi0.

    Parameters
    ----------
    sigma : float
        Rms width of the cloud, m (>= 0).
    z_cm : float, optional
        Collective displacement from the phase-phi0 point, m.

    Returns
    -------
    float
        Dispersive cavity shift, rad/s.
    """
    if not sigma >= 0.0:
        raise ValueError("sigma must be >= 0, got %r" % (sigma,))
    return float(single_site_shift(p, e.n_atoms, e.phi0, sigma, z_cm, d.delta_ca))
