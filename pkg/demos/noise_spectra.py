"""Reading the mechanical frequencies back out of the light.

Two spectroscopic handles on the trapped ensemble.  Modulating the probe
power parametrically heats the cloud when the modulation hits twice the
static trap frequency, so atom loss vs modulation frequency maps out
2 f_static.  Driving near resonance instead probes the full linear
response: the gain peak sits at the backaction-shifted frequency f_linear
and its width tracks the mechanical damping.
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
    default_rb87_params,
    gain_spectrum,
    mode_frequencies,
    parametric_loss_curve,
)

p = default_rb87_params()
e = EnsembleConfig(n_atoms=4000, phi0=0.9, omega_z=TWO_PI * 32e3)
d = ProbeDrive(delta_ca=-TWO_PI * 14e9, delta_pc=0.0, n_max=0.05)
n_bar = 0.05
opts = RunOptions()

f_static, f_linear = mode_frequencies(p, e, d, n_bar, -p.kappa)
print("static frequency:  %.1f Hz (bare trap %.1f Hz)" % (f_static / TWO_PI, e.omega_z / TWO_PI))
print("linear-response frequency: %.1f Hz" % (f_linear / TWO_PI))

mod = np.linspace(1.2 * f_static, 2.8 * f_static, 400)
loss = parametric_loss_curve(p, e, d, n_bar, mod, opts.loss_width(e), 0.4)

drive_f = np.linspace(0.2 * f_linear, 1.8 * f_linear, 400)
gain = gain_spectrum(p, e, d, n_bar, -p.kappa, drive_f, opts.damping(e))

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 4.0))
ax1.plot(mod / TWO_PI / 1e3, loss.response, "C0")
ax1.axvline(2 * f_static / TWO_PI / 1e3, color="0.8", lw=0.8)
ax1.set_xlabel("modulation frequency (kHz)")
ax1.set_ylabel("fractional atom loss")
ax1.set_title("parametric heating at 2 f_static")

ax2.plot(drive_f / TWO_PI / 1e3, gain.response, "C3")
ax2.axvline(f_linear / TWO_PI / 1e3, color="0.8", lw=0.8)
ax2.set_xlabel("drive frequency (kHz)")
ax2.set_ylabel("normalized response")
ax2.set_title("driven response at f_linear")
fig.tight_layout()
out = pathlib.Path(__file__).with_name("noise_spectra.png")
fig.savefig(out, dpi=130)
print("wrote", out)
