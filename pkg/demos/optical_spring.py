"""Optical-spring shifts of the axial trap frequency.

Two channels move the mechanical frequency away from the bare trap value.
The static channel comes from the curvature of the intracavity standing
wave and follows cos(2 phi0): it vanishes at the half-way phase pi/4 and
is largest at a node or antinode.  The backaction channel needs a slope
(sin(2 phi0) != 0) plus a nonzero probe-cavity detuning, peaks at
delta = -kappa, and flips sign with the detuning.  The parametric heating
resonance sits at twice the static frequency either way.
"""

import pathlib
from dataclasses import replace

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from atomcav import (
    EnsembleConfig,
    ProbeDrive,
    TWO_PI,
    UnconfinedError,
    default_rb87_params,
    mode_frequencies,
)

p = default_rb87_params()
e = EnsembleConfig(n_atoms=5400, phi0=0.0, omega_z=TWO_PI * 32e3)
d = ProbeDrive(delta_ca=-TWO_PI * 14e9, delta_pc=0.0, n_max=0.1)
n_bar = 0.1
f_z = e.omega_z / TWO_PI

def freqs(phi0, delta_eff):
    try:
        fs, fl = mode_frequencies(p, replace(e, phi0=phi0), d, n_bar, delta_eff)
    except UnconfinedError:
        return np.nan, np.nan
    return fs / TWO_PI, fl / TWO_PI

phis = np.linspace(0.0, np.pi / 2.0, 61)
static = np.array([freqs(x, 0.0)[0] for x in phis])
red = np.array([freqs(x, -p.kappa)[1] for x in phis])
blue = np.array([freqs(x, +p.kappa)[1] for x in phis])

deltas = np.linspace(-3.0, 3.0, 121) * p.kappa
over_delta = np.array([freqs(np.pi / 4.0, dd)[1] for dd in deltas])

print("static shift at phi0=0:    %+.0f Hz" % (static[0] - f_z))
print("static shift at phi0=pi/2: %+.0f Hz" % (static[-1] - f_z))
print("backaction shift at pi/4, delta=-kappa: %+.0f Hz" % (red[30] - f_z))

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 4.0))
ax1.plot(phis / np.pi, (static - f_z) / 1e3, "C0", label="static (delta=0)")
ax1.plot(phis / np.pi, (red - f_z) / 1e3, "C3", label="delta = -kappa")
ax1.plot(phis / np.pi, (blue - f_z) / 1e3, "C2", label="delta = +kappa")
ax1.axhline(0.0, color="0.8", lw=0.8)
ax1.set_xlabel("phi0 / pi")
ax1.set_ylabel("frequency shift (kHz)")
ax1.legend(fontsize=9)
ax1.set_title("shift vs probe phase, n_bar = %.2f" % n_bar)

ax2.plot(deltas / p.kappa, (over_delta - f_z) / 1e3, "C3")
ax2.axvline(-1.0, color="0.8", lw=0.8)
ax2.axvline(+1.0, color="0.8", lw=0.8)
ax2.set_xlabel("probe detuning (kappa)")
ax2.set_ylabel("frequency shift (kHz)")
ax2.set_title("backaction channel at phi0 = pi/4")
fig.tight_layout()
out = pathlib.Path(__file__).with_name("optical_spring.png")
fig.savefig(out, dpi=130)
print("wrote", out)
