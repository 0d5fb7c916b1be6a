"""Swept cavity lineshapes: from shifted Lorentzian to hysteretic folds.

At low drive the atoms just move the resonance and the transmission
profile stays a Lorentzian.  Turning the power up lets the photon number
rearrange the ensemble, which moves the resonance while it is being
interrogated: the line pulls toward the shift, steepens on one side, and
past a threshold folds over.  Then the trace depends on chirp direction,
with the upward and downward scans jumping at opposite edges of the fold.
"""

import pathlib

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from atomcav import (
    EnsembleConfig,
    ProbeDrive,
    TWO_PI,
    bistability_region,
    default_rb87_params,
    ensemble_shift,
    sweep_lineshape,
)

p = default_rb87_params()
e = EnsembleConfig(n_atoms=5400, phi0=np.pi / 4.0, omega_z=TWO_PI * 32e3)

def drive(n_max, delta_pc=0.0):
    return ProbeDrive(delta_ca=-TWO_PI * 14e9, delta_pc=delta_pc, n_max=n_max)

s0 = ensemble_shift(p, e, drive(1.0))
print("static collective shift: %.2f MHz = %.1f kappa" % (s0 / TWO_PI / 1e6, s0 / p.kappa))

det = np.linspace(s0 - 7.0 * p.kappa, s0 + 3.0 * p.kappa, 321)
powers = [0.3, 1.0, 2.0]

fig, axes = plt.subplots(1, len(powers), figsize=(11.5, 3.8), sharey=False)
for ax, n_max in zip(axes, powers):
    d = drive(n_max)
    up = sweep_lineshape(p, e, d, det, "up")
    down = sweep_lineshape(p, e, d, det[::-1], "down")
    ax.plot(det / p.kappa, up.n_bar / n_max, "C0", lw=1.6, label="up chirp")
    ax.plot(down.delta_pc / p.kappa, down.n_bar / n_max, "C3--", lw=1.4, label="down chirp")
    region = bistability_region(p, e, d, det[0], det[-1], scan_points=256)
    for lo, hi in region:
        ax.axvspan(lo / p.kappa, hi / p.kappa, color="0.9", zorder=0)
        print("n_max %.1f: bistable over [%.2f, %.2f] kappa" % (n_max, lo / p.kappa, hi / p.kappa))
    if not region:
        print("n_max %.1f: single valued everywhere" % n_max)
    ax.set_title("n_max = %.1f" % n_max)
    ax.set_xlabel("probe detuning (kappa)")
axes[0].set_ylabel("n_bar / n_max")
axes[0].legend(fontsize=9)
fig.tight_layout()
out = pathlib.Path(__file__).with_name("bistability_hysteresis.png")
fig.savefig(out, dpi=130)
print("wrote", out)
