"""Mechanical signatures in the cavity output.

Two measurement modes share one container:

* parametric loss: intensity (spring-constant) modulation removes atoms
  fastest when driven at twice the k_static-shifted mode frequency;
* driven gain spectrum: the displacement response |chi|^2 of a damped
  oscillator whose resonance carries both spring constants.
"""

import numpy as np
from dataclasses import dataclass

from .mechanics import mode_frequencies


@dataclass(frozen=True)
class SpectrumTrace:
    """Sampled spectrum: axis (rad/s), dimensionless response, and the
    on-axis peak location plus measured full width at half maximum."""

    frequency: np.ndarray
    response: np.ndarray
    peak_frequency: float
    linewidth: float


def _fwhm(freq, resp):
    """Full width at half maximum by linear interpolation around the peak."""
    k = int(np.argmax(resp))
    half = 0.5 * resp[k]
    left = np.nan
    for i in range(k, 0, -1):
        if resp[i - 1] <= half:
            f = (half - resp[i - 1]) / (resp[i] - resp[i - 1])
            left = freq[i - 1] + f * (freq[i] - freq[i - 1])
            break
    right = np.nan
    for i in range(k, len(resp) - 1):
        if resp[i + 1] <= half:
            f = (resp[i] - half) / (resp[i] - resp[i + 1])
            right = freq[i] + f * (freq[i + 1] - freq[i])
            break
    return float(right - left)


def parametric_loss_curve(p, e, d, n_bar, mod_frequencies, width, peak_loss):
    """Atom-loss fraction versus intensity-modulation frequency.

    A Lorentzian of full width ``width`` and height ``peak_loss`` centred
    at twice the parametric mode frequency 2 sqrt(omega_z^2 + K_s/(N m)).
    K_d plays no role here.

    Raises mechanics.UnconfinedError if the mode frequency is imaginary.
    """
    if not width > 0.0:
        raise ValueError("width must be positive, got %r" % (width,))
    if not 0.0 < peak_loss <= 1.0:
        raise ValueError("peak_loss must lie in (0, 1], got %r" % (peak_loss,))
    f_static, _ = mode_frequencies(p, e, d, n_bar, 0.0)
    centre = 2.0 * f_static
    freq = np.asarray(mod_frequencies, dtype=float)
    half = 0.5 * width
    resp = peak_loss * half**2 / ((freq - centre) ** 2 + half**2)
    k = int(np.argmax(resp))
    return SpectrumTrace(
        frequency=freq,
        response=resp,
        peak_frequency=float(freq[k]),
        linewidth=_fwhm(freq, resp),
    )


def gain_spectrum(p, e, d, n_bar, delta_eff, frequencies, damping):
    """Relative displacement power spectrum of the driven collective mode.

    Response proportional to |chi(omega)|^2 with
    chi(omega) = 1 / (f_linear^2 - omega^2 - i damping omega),
    normalized to unit maximum on the supplied grid.  The peak sits at
    sqrt(f_linear^2 - damping^2/2), i.e. within ~damping^2/(4 f_linear)
    of f_linear for light damping.
    """
    if not damping > 0.0:
        raise ValueError("damping must be positive, got %r" % (damping,))
    _, f_linear = mode_frequencies(p, e, d, n_bar, delta_eff)
    freq = np.asarray(frequencies, dtype=float)
    psd = 1.0 / ((f_linear**2 - freq**2) ** 2 + (damping * freq) ** 2)
    psd = psd / psd.max()
    k = int(np.argmax(psd))
    return SpectrumTrace(
        frequency=freq,
        response=psd,
        peak_frequency=float(freq[k]),
        linewidth=_fwhm(freq, psd),
    )
