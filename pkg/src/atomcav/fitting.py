"""Sinusoid fitting for shift-versus-position records."""

import numpy as np
from dataclasses import dataclass
from scipy.optimize import curve_fit


@dataclass(frozen=True)
class SinusoidFit:
    """y ~ offset + amplitude * cos(2 pi x / period + phase), amplitude >= 0."""

    offset: float
    amplitude: float
    period: float
    phase: float

    @property
    def contrast(self):
        """|amplitude / offset| -- fringe visibility of the fitted record.

        nan when the offset vanishes (e.g. an identically zero record).
        """
        if self.offset == 0.0:
            return float("nan")
        return abs(self.amplitude / self.offset)


def _model(x, offset, amplitude, period, phase):
    return offset + amplitude * np.cos(2.0 * np.pi * x / period + phase)


def fit_sinusoid(x, y):
    """Least-squares sinusoid fit with an FFT-seeded period.

    Expects a uniformly spaced x grid covering at least one full period.

    Returns
    -------
    SinusoidFit
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 8:
        raise ValueError("need at least 8 samples, got %d" % x.size)
    step = np.diff(x)
    if not np.allclose(step, step[0], rtol=1e-6):
        raise ValueError("x grid must be uniform")

    if np.ptp(y) == 0.0:
        # Constant record (empty cavity): the sinusoid is degenerate, so
        # report zero amplitude over the scan span rather than fitting.
        return SinusoidFit(
            offset=float(y[0]), amplitude=0.0, period=float(x[-1] - x[0]), phase=0.0
        )

    detrended = y - y.mean()
    spectrum = np.abs(np.fft.rfft(detrended, n=8 * x.size))
    freqs = np.fft.rfftfreq(8 * x.size, d=step[0])
    k = int(np.argmax(spectrum[1:])) + 1
    period0 = 1.0 / freqs[k]
    comp = np.fft.rfft(detrended, n=8 * x.size)[k]
    phase0 = np.angle(comp) - 2.0 * np.pi * x[0] / period0

    p0 = (y.mean(), np.sqrt(2.0) * detrended.std(), period0, phase0)
    popt, _ = curve_fit(_model, x, y, p0=p0, maxfev=20000)
    offset, amplitude, period, phase = popt
    if amplitude < 0.0:
        amplitude = -amplitude
        phase = phase + np.pi
    if period < 0.0:
        period = -period
    phase = float(np.mod(phase, 2.0 * np.pi))
    return SinusoidFit(
        offset=float(offset), amplitude=float(amplitude), period=float(period), phase=phase
    )
