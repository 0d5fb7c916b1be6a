"""Losing the trap at a node: curvature cancellation and symmetry breaking.

Park the ensemble at a trap node (phi0 = 0) with a red-detuned probe and
the intracavity standing wave fights the trap curvature.  The ratio eta
of probe to trap curvature grows linearly with photon number; at
|eta| = 1 the harmonic restoring force is gone.  The full potential shows
what actually happens there: the site minimum splits and slides sideways,
so the atoms end up displaced instead of free.
"""

import pathlib

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from atomcav import (
    EnsembleConfig,
    ProbeDrive,
    RunOptions,
    TWO_PI,
    curvature_ratio,
    default_rb87_params,
    full_potential_oracle,
)
from atomcav.constants import HBAR

p = default_rb87_params()
e = EnsembleConfig(n_atoms=200, phi0=0.0, omega_z=TWO_PI * 70e3)
d = ProbeDrive(delta_ca=-TWO_PI * 6e9, delta_pc=0.0, n_max=4.0)
depth = RunOptions().trap_depth(p, e)

eta1 = curvature_ratio(p, e, d, 1.0)
n_unit = -1.0 / eta1
print("curvature ratio per photon: %.5f  (|eta| = 1 at n_bar = %.2f)" % (eta1, n_unit))

# left panel: the potential along the site for a few photon numbers
zg = np.linspace(-0.25 * p.lattice_spacing, 0.25 * p.lattice_spacing, 600)
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 4.0))
for frac in (0.0, 0.6, 1.0, 1.4):
    n_bar = frac * n_unit
    v = depth * np.sin(p.k_t * zg) ** 2
    v = v + HBAR * n_bar * e.n_atoms * p.g0**2 * np.sin(p.k_p * zg) ** 2 / d.delta_ca
    v = v - v.min()
    ax1.plot(zg * 1e9, v / HBAR / TWO_PI / 1e6, label="eta = %.1f" % (-frac))
ax1.set_xlabel("z (nm)")
ax1.set_ylabel("potential (h MHz)")
ax1.legend(fontsize=9)
ax1.set_title("site potential vs photon number")

# right panel: where the oracle finds the minimum as eta passes -1
etas = np.linspace(0.2, 1.8, 97)
z_min = []
for a in etas:
    m = full_potential_oracle(p, e, d, a * n_unit, 0.0, depth)
    z_min.append(m.z_min)
z_min = np.array(z_min)
ax2.plot(etas, np.abs(z_min) * 1e9, "C0")
ax2.axvline(1.0, color="0.8", lw=0.8)
ax2.set_xlabel("|eta|")
ax2.set_ylabel("|z_min| (nm)")
ax2.set_title("minimum leaves the node past |eta| = 1")
fig.tight_layout()
out = pathlib.Path(__file__).with_name("confinement_threshold.png")
fig.savefig(out, dpi=130)
print("wrote", out)

cross = etas[np.argmax(np.abs(z_min) > 2e-9)]
print("symmetry breaking detected at |eta| = %.3f" % cross)
