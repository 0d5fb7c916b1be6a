"""Command-line driver: five figure-style studies, CSV + manifest output.

Every command reads one flat config file, writes deterministic CSV files
(byte-identical across runs of the same config and flags; the wall clock
only ever lands in the manifest sidecar), a re-loadable snapshot of the
resolved configuration, and a JSON manifest listing all outputs.

Exit codes: 0 success, 1 config/invariant problem, 2 usage error.
"""

import argparse
import json
import math
import sys
import time
from datetime import datetime, timezone
from dataclasses import replace
from pathlib import Path

import numpy as np

from .ensemble import ensemble_shift, phase_at_position
from .fitting import fit_sinusoid
from .mechanics import UnconfinedError, curvature_ratio, mode_frequencies
from .params import TWO_PI, ConfigError, dump_config, load_config
from .spectra import gain_spectrum, parametric_loss_curve
from .steadystate import bistability_region, equilibrated_shift, sweep_lineshape

DEFAULT_PHI0_LIST = "0,%r,%r" % (math.pi / 4.0, math.pi / 2.0)


def _parse_range(text):
    """LO:HI pair of floats for --range style flags."""
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO:HI, got %r" % (text,)) from None


def _parse_float_list(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated floats, got %r" % (text,)) from None


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_csv(path, header, rows, footer_comments=()):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    for comment in footer_comments:
        lines.append("# " + comment)
    path.write_text("\n".join(lines) + "\n")


class _Run:
    """Collects outputs and writes the manifest + config snapshot at the end."""

    def __init__(self, command, out_dir, parsed):
        self.command = command
        self.out = Path(out_dir)
        self.out.mkdir(parents=True, exist_ok=True)
        self.p, self.e, self.d, self.o = parsed
        self.outputs = []
        self.extras = {}
        self.t0 = time.monotonic()

    def csv(self, name, header, rows, footer_comments=()):
        path = self.out / name
        _write_csv(path, header, rows, footer_comments)
        self.outputs.append(name)
        return path

    def finish(self):
        cfg_name = "%s_config.cfg" % self.command
        (self.out / cfg_name).write_text(dump_config(self.p, self.e, self.d, self.o))
        manifest = {
            "command": self.command,
            "outputs": sorted(self.outputs),
            "config_snapshot": cfg_name,
            "tolerances": {
                "tol_abs": self.o.tol_abs,
                "tol_rel": self.o.tol_rel,
                "fp_grid_points": self.o.fp_grid,
            },
            "started_utc": datetime.now(timezone.utc).isoformat(),
            "duration_s": time.monotonic() - self.t0,
        }
        manifest.update(self.extras)
        path = self.out / ("%s_manifest.json" % self.command)
        path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        return path


def cmd_shift_vs_position(parsed, args):
    """Static dispersive shift versus ensemble centre position, plus a
    fitted-sinusoid summary (period and contrast)."""
    p, e, d, o = parsed
    run = _Run("shift_vs_position", args.out, parsed)
    beat_period = math.pi / (p.k_p - p.k_t)
    lo, hi = args.range if args.range is not None else (0.0, 2.0 * beat_period)
    z0 = np.linspace(lo, hi, args.steps)
    shifts = np.empty_like(z0)
    for i, z in enumerate(z0):
        e_here = replace(e, phi0=float(phase_at_position(p, z, phi_ref=e.phi0)))
        shifts[i] = ensemble_shift(p, e_here, d)
    fit = fit_sinusoid(z0, shifts / TWO_PI)
    run.extras["fit"] = {
        "period_m": fit.period,
        "contrast": fit.contrast,
        "offset_hz": fit.offset,
        "amplitude_hz": fit.amplitude,
    }
    run.csv(
        "shift_vs_position.csv",
        ["z0_m", "shift_hz"],
        [(z, s / TWO_PI) for z, s in zip(z0, shifts)],
        footer_comments=[
            "fit_period_m = %r" % fit.period,
            "fit_contrast = %r" % fit.contrast,
        ],
    )
    run.finish()
    return 0


def cmd_lineshape(parsed, args):
    """Swept-probe photon-number traces with hysteresis bookkeeping."""
    p, e, d, o = parsed
    run = _Run("lineshape", args.out, parsed)
    if args.range is not None:
        lo, hi = (v * TWO_PI for v in args.range)
    else:
        shift0 = ensemble_shift(p, e, d)
        lo, hi = shift0 - 20.0 * p.kappa, shift0 + 8.0 * p.kappa
    det = np.linspace(lo, hi, args.steps)

    directions = {"both": ("up", "down"), "up": ("up",), "down": ("down",)}[args.chirp]
    traces = {}
    for k, direction in enumerate(directions):
        e_here = e
        if k == 1 and o.sweep_atom_loss > 0.0:
            e_here = replace(e, n_atoms=int(round(e.n_atoms * (1.0 - o.sweep_atom_loss))))
        grid = det if direction == "up" else det[::-1]
        traces[direction] = sweep_lineshape(p, e_here, d, grid, direction, o)

    header = ["delta_pc_hz"]
    columns = [det / TWO_PI]
    for direction in directions:
        tr = traces[direction]
        order = slice(None) if direction == "up" else slice(None, None, -1)
        header += ["n_bar_%s" % direction, "branch_%s" % direction, "jump_%s" % direction]
        columns += [tr.n_bar[order], tr.branch_id[order], tr.jumped[order]]
    rows = list(zip(*columns))
    run.csv("lineshape.csv", header, rows)
    intervals = bistability_region(p, e, d, float(det[0]), float(det[-1]), o)
    run.extras["bistability_region_hz"] = [[a / TWO_PI, b / TWO_PI] for a, b in intervals]
    run.finish()
    return 0


def cmd_shift_vs_eta(parsed, args):
    """Probe-induced shift versus curvature ratio, photon number stabilized."""
    p, e, d, o = parsed
    run = _Run("shift_vs_eta", args.out, parsed)
    if args.range is not None:
        lo, hi = args.range
    else:
        eta_per_photon = abs(curvature_ratio(p, e, d, 1.0))
        lo, hi = 0.0, 0.9 / eta_per_photon
    n_bar = np.linspace(lo, hi, args.steps)
    rows = []
    for phi0 in args.phi0:
        e_here = replace(e, phi0=phi0)
        shifts = equilibrated_shift(p, e_here, d, n_bar, o)
        base = equilibrated_shift(p, e_here, d, 0.0, o)
        for nb, s in zip(n_bar, np.atleast_1d(shifts)):
            eta = curvature_ratio(p, e, d, nb)
            rows.append((phi0, nb, eta, abs(eta), (s - base) / TWO_PI))
    run.csv("shift_vs_eta.csv", ["phi0_rad", "n_bar", "eta", "eta_abs", "shift_hz"], rows)
    run.finish()
    return 0


def cmd_frequency_shifts(parsed, args):
    """Mode frequencies versus probe phase; optional detuning sweep at pi/4."""
    p, e, d, o = parsed
    run = _Run("frequency_shifts", args.out, parsed)
    delta_eff = args.delta_eff_hz * TWO_PI if args.delta_eff_hz is not None else -p.kappa
    phi_grid = np.linspace(0.0, math.pi, args.steps, endpoint=False)
    rows = []
    for phi0 in phi_grid:
        e_here = replace(e, phi0=float(phi0))
        try:
            f_static, f_linear = mode_frequencies(p, e_here, d, d.n_max, delta_eff)
            rows.append((phi0, f_static / TWO_PI, 2.0 * f_static / TWO_PI, f_linear / TWO_PI))
        except UnconfinedError:
            rows.append((phi0, float("nan"), float("nan"), float("nan")))
    run.csv(
        "frequency_shifts.csv",
        ["phi0_rad", "f_static_hz", "f_parametric_peak_hz", "f_linear_hz"],
        rows,
    )
    if args.delta_range is not None:
        lo, hi = (v * TWO_PI for v in args.delta_range)
        deltas = np.linspace(lo, hi, args.delta_steps)
        e_quarter = replace(e, phi0=math.pi / 4.0)
        drows = []
        for dd in deltas:
            try:
                _, f_linear = mode_frequencies(p, e_quarter, d, d.n_max, float(dd))
                drows.append((dd / TWO_PI, f_linear / TWO_PI))
            except UnconfinedError:
                drows.append((dd / TWO_PI, float("nan")))
        run.csv("frequency_shifts_delta_sweep.csv", ["delta_hz", "f_linear_hz"], drows)
    run.finish()
    return 0


def cmd_spectrum(parsed, args):
    """Mechanical spectrum: driven-response PSD or parametric loss curve."""
    p, e, d, o = parsed
    run = _Run("spectrum", args.out, parsed)
    delta_eff = args.delta_eff_hz * TWO_PI if args.delta_eff_hz is not None else -p.kappa
    try:
        if args.mode == "psd":
            _, f_linear = mode_frequencies(p, e, d, d.n_max, delta_eff)
            if args.range is not None:
                lo, hi = (v * TWO_PI for v in args.range)
            else:
                lo, hi = 0.2 * f_linear, 1.8 * f_linear
            freq = np.linspace(lo, hi, args.steps)
            tr = gain_spectrum(p, e, d, d.n_max, delta_eff, freq, o.damping(e))
            run.csv(
                "spectrum_psd.csv",
                ["freq_hz", "psd_rel"],
                list(zip(freq / TWO_PI, tr.response)),
            )
        else:
            f_static, _ = mode_frequencies(p, e, d, d.n_max, delta_eff)
            if args.range is not None:
                lo, hi = (v * TWO_PI for v in args.range)
            else:
                lo, hi = 1.0 * f_static, 3.0 * f_static
            freq = np.linspace(lo, hi, args.steps)
            tr = parametric_loss_curve(
                p, e, d, d.n_max, freq, o.loss_width(e), o.parametric_peak_loss
            )
            run.csv(
                "spectrum_parametric.csv",
                ["mod_freq_hz", "loss_fraction"],
                list(zip(freq / TWO_PI, tr.response)),
            )
    except UnconfinedError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    run.extras["peak_frequency_hz"] = tr.peak_frequency / TWO_PI
    run.extras["linewidth_hz"] = tr.linewidth / TWO_PI
    run.finish()
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="atomcav",
        description="Tunable cavity optomechanics of a lattice-trapped atomic ensemble.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, steps):
        sp.add_argument("--config", required=True, help="flat key=value config file")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--steps", type=int, default=steps, help="number of grid samples")
        sp.add_argument("--range", type=_parse_range, default=None, metavar="LO:HI")

    sp = sub.add_parser("shift-vs-position", help="dispersive shift vs ensemble position")
    common(sp, steps=241)
    sp.set_defaults(func=cmd_shift_vs_position)

    sp = sub.add_parser("lineshape", help="swept-probe photon number with hysteresis")
    common(sp, steps=401)
    sp.add_argument("--chirp", choices=("both", "up", "down"), default="both")
    sp.set_defaults(func=cmd_lineshape)

    sp = sub.add_parser("shift-vs-eta", help="probe-induced shift vs curvature ratio")
    common(sp, steps=61)
    sp.add_argument(
        "--phi0", type=_parse_float_list, default=_parse_float_list(DEFAULT_PHI0_LIST),
        help="comma-separated probe phases, rad",
    )
    sp.set_defaults(func=cmd_shift_vs_eta)

    sp = sub.add_parser("frequency-shifts", help="mode frequencies vs probe phase")
    common(sp, steps=49)
    sp.add_argument("--delta-eff-hz", type=float, default=None,
                    help="detuning from shifted resonance, Hz (default -kappa)")
    sp.add_argument("--delta-range", type=_parse_range, default=None, metavar="LO:HI",
                    help="emit a second CSV sweeping delta at phi0=pi/4, Hz")
    sp.add_argument("--delta-steps", type=int, default=41)
    sp.set_defaults(func=cmd_frequency_shifts)

    sp = sub.add_parser("spectrum", help="driven PSD or parametric loss spectrum")
    common(sp, steps=2001)
    sp.add_argument("--mode", choices=("psd", "parametric"), default="psd")
    sp.add_argument("--delta-eff-hz", type=float, default=None,
                    help="detuning from shifted resonance, Hz (default -kappa)")
    sp.set_defaults(func=cmd_spectrum)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print("error: cannot read config: %s" % exc, file=sys.stderr)
        return 1
    try:
        parsed = load_config(text)
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    try:
        return args.func(parsed, args)
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


def run():
    raise SystemExit(main())


if __name__ == "__main__":
    run()
