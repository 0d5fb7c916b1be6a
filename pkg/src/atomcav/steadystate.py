"""Self-consistent cavity + ensemble steady states.

The intracavity photon number obeys the Lorentzian condition

    n_bar = n_max / (1 + delta^2 / kappa^2),
    delta = delta_pc - shift(n_bar),

where shift(n_bar) is the ensemble's dispersive pull evaluated with every
well relaxed to its harmonic equilibrium at that photon number.  Because
the shift feeds back on itself the condition can hold at one or three
photon numbers; folds between them produce optical bistability and
hysteretic lineshapes.

Fixed points are found by sign-change bracketing of n_bar - G(n_bar) on a
uniform grid followed by bisection, with a 10x-grid verification pass; a
fixed point is stable iff d(n_bar - G)/dn_bar > 0 there.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .constants import HBAR
from .coupling import single_site_shift
from .ensemble import site_arrays, site_populations
from .mechanics import curvature_ratio, equilibrium_state, force_per_photon_per_atom
from .params import RunOptions


class GridResolutionError(RuntimeError):
    """Grid refinement kept revealing new fixed points; the grid is too coarse."""


@dataclass(frozen=True)
class SteadyState:
    """One self-consistent operating point of the coupled system."""

    n_bar: float
    delta_eff: float  # detuning from the shifted resonance, rad/s
    shift: float  # ensemble dispersive shift at this n_bar, rad/s
    per_site: tuple  # MechanicalEquilibrium per occupied well, site order
    stable: bool


@dataclass(frozen=True)
class SweepTrace:
    """Adiabatic branch-following record of one detuning chirp.

    branch_id starts at 0 and increments at every fold jump, so
    jumped[i] is True exactly where branch_id[i] != branch_id[i-1].
    """

    direction: str
    delta_pc: np.ndarray
    n_bar: np.ndarray
    branch_id: np.ndarray
    jumped: np.ndarray


def _equilibrated_shift(p, e, d, n_bar, opts):
    """Ensemble shift with each well relaxed at n_bar; array-capable in n_bar.

    Applies the width and displacement caps from ``opts`` so the map stays
    bounded and continuous through deconfinement of individual wells.
    """
    nb = np.atleast_1d(np.asarray(n_bar, dtype=float))
    phi, w = site_arrays(p, e)
    cos2 = np.cos(2.0 * phi)
    sin2 = np.sin(2.0 * phi)
    eta = curvature_ratio(p, e, d, nb)
    om2 = e.omega_z**2 * (1.0 + eta[..., None] * cos2)
    confined = om2 > 0.0
    om2_safe = np.where(confined, om2, 1.0)

    sigma_cap = opts.sigma_cap(p)
    sigma = np.sqrt(HBAR / (2.0 * p.mass * np.sqrt(om2_safe)))
    sigma = np.where(confined, np.minimum(sigma, sigma_cap), sigma_cap)

    f1 = force_per_photon_per_atom(p, d)
    z_cap = opts.z_cap(p)
    z_raw = -f1 * nb[..., None] * sin2 / (p.mass * om2_safe)
    z = np.where(
        confined,
        np.clip(z_raw, -z_cap, z_cap),
        z_cap * np.sign(-f1 * sin2),
    )
    per_site = single_site_shift(p, e.n_atoms * w, phi, sigma, z, d.delta_ca)
    return per_site.sum(axis=-1)


def equilibrated_shift(p, e, d, n_bar, opts=None):
    """Dispersive shift (rad/s) with the ensemble relaxed at fixed n_bar.

    This is the stabilized-photon-number observable: drive the cavity so the
    circulating photon number is held at n_bar, let every well settle to its
    shifted equilibrium, and read the resulting resonance shift. Scalar in,
    scalar out; arrays broadcast.
    """
    if opts is None:
        opts = RunOptions()
    out = _equilibrated_shift(p, e, d, n_bar, opts)
    if np.isscalar(n_bar) or np.asarray(n_bar).ndim == 0:
        return float(out[0])
    return out


def response_map(p, e, d, n_bar_guess, opts=None):
    """One iteration of the photon-number map G(n_bar); array-capable.

    Unconfined wells enter through the documented width cap, so the map is
    defined (and bounded by n_max) for every n_bar >= 0.
    """
    if opts is None:
        opts = RunOptions()
    shift = _equilibrated_shift(p, e, d, n_bar_guess, opts)
    delta = d.delta_pc - shift
    out = d.n_max / (1.0 + (delta / p.kappa) ** 2)
    if np.isscalar(n_bar_guess) or np.asarray(n_bar_guess).ndim == 0:
        return float(out[0])
    return out


def _residual(p, e, d, nb, opts):
    return np.atleast_1d(np.asarray(nb, dtype=float)) - np.atleast_1d(
        response_map(p, e, d, nb, opts)
    )


def _grid_brackets(p, e, d, opts, n_points):
    x = np.linspace(0.0, d.n_max, n_points + 1)
    r = _residual(p, e, d, x, opts)
    s = np.sign(r)
    change = np.nonzero(s[:-1] * s[1:] < 0)[0]
    brackets = [(x[i], x[i + 1]) for i in change]
    exact = [float(v) for v in x[r == 0.0]]
    return brackets, exact


def _verified_brackets(p, e, d, opts):
    """Bracket on the configured grid, verify on 10x; retry once on mismatch."""
    base = opts.fp_grid
    b1, z1 = _grid_brackets(p, e, d, opts, base)
    b2, z2 = _grid_brackets(p, e, d, opts, 10 * base)
    if len(b2) + len(z2) == len(b1) + len(z1):
        return b2, z2
    b3, z3 = _grid_brackets(p, e, d, opts, 100 * base)
    if len(b3) + len(z3) == len(b2) + len(z2):
        return b3, z3
    raise GridResolutionError(
        "fixed-point count kept changing under grid refinement "
        "(%d -> %d -> %d brackets); increase fp_grid"
        % (len(b1) + len(z1), len(b2) + len(z2), len(b3) + len(z3))
    )


def _bisect_brackets(p, e, d, opts, brackets):
    if not brackets:
        return []
    lo = np.array([b[0] for b in brackets])
    hi = np.array([b[1] for b in brackets])
    flo = _residual(p, e, d, lo, opts)
    span = float(np.max(hi - lo))
    tol = 1e-13 * d.n_max
    iters = min(max(int(math.ceil(math.log2(span / tol))), 1), 64) if span > tol else 1
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = _residual(p, e, d, mid, opts)
        left = flo * fm < 0.0
        hi = np.where(left, mid, hi)
        lo = np.where(left, lo, mid)
        flo = np.where(left, flo, fm)
    return [float(v) for v in 0.5 * (lo + hi)]


def _root_values(p, e, d, opts):
    """All fixed points of the map in [0, n_max], ascending, with stability."""
    if d.n_max == 0.0:
        return [0.0], [True]
    brackets, exact = _verified_brackets(p, e, d, opts)
    roots = sorted(_bisect_brackets(p, e, d, opts, brackets) + exact)
    h = 1e-4 * d.n_max
    stable = []
    for root in roots:
        a, b = root - h, root + h
        if a < 0.0:
            a = root
        if b > d.n_max:
            b = root
        ra, rb = _residual(p, e, d, np.array([a, b]), opts)
        stable.append(bool(rb - ra > 0.0))
    return roots, stable


def fixed_points(p, e, d, opts=None):
    """Every self-consistent photon number at the configured detuning.

    Returns
    -------
    list of SteadyState, ascending in n_bar.  Generic detunings give an
    odd count with alternating stability (stable, unstable, stable, ...).
    """
    if opts is None:
        opts = RunOptions()
    roots, stable = _root_values(p, e, d, opts)
    sites = site_populations(p, e)
    states = []
    for root, st in zip(roots, stable):
        shift = float(_equilibrated_shift(p, e, d, root, opts)[0])
        per_site = tuple(equilibrium_state(p, e, d, root, s.phi_j) for s in sites)
        states.append(
            SteadyState(
                n_bar=root,
                delta_eff=d.delta_pc - shift,
                shift=shift,
                per_site=per_site,
                stable=st,
            )
        )
    return states


def _stable_values(p, e, d, delta_pc, opts):
    dd = replace(d, delta_pc=delta_pc)
    roots, stable = _root_values(p, e, dd, opts)
    vals = np.array([r for r, s in zip(roots, stable) if s])
    if vals.size == 0:
        # Degenerate (tangency) scan: fall back to the smallest root.
        vals = np.array([roots[0]])
    return vals


def sweep_lineshape(p, e, d, detunings, direction="up", opts=None):
    """Adiabatically follow the stable branch along a detuning chirp.

    Parameters
    ----------
    detunings : array_like
        Probe-cavity detunings, rad/s, strictly monotone (increasing for
        direction="up", decreasing for "down").
    direction : {"up", "down"}
        Chirp sign; purely a label check against the grid ordering.

    The tracker starts on the smallest stable photon number, follows the
    nearest stable fixed point step to step, and refines the step interval
    whenever the move is large; a gap that persists at vanishing step width
    is a fold, recorded with jumped=True and a new branch_id.
    """
    if opts is None:
        opts = RunOptions()
    det = np.asarray(detunings, dtype=float)
    if det.size < 2:
        raise ValueError("need at least two detuning samples")
    diffs = np.diff(det)
    if direction == "up":
        if not np.all(diffs > 0.0):
            raise ValueError("direction='up' requires strictly increasing detunings")
    elif direction == "down":
        if not np.all(diffs < 0.0):
            raise ValueError("direction='down' requires strictly decreasing detunings")
    else:
        raise ValueError("direction must be 'up' or 'down', got %r" % (direction,))

    jump_tol = 0.02 * d.n_max
    min_step = 1e-9 * abs(det[-1] - det[0])

    def advance(prev, da, db, depth):
        vals = _stable_values(p, e, d, db, opts)
        cand = float(vals[np.argmin(np.abs(vals - prev))])
        if abs(cand - prev) <= jump_tol:
            return cand, False
        if depth <= 0 or abs(db - da) <= min_step:
            return cand, True
        mid = 0.5 * (da + db)
        via, j1 = advance(prev, da, mid, depth - 1)
        out, j2 = advance(via, mid, db, depth - 1)
        return out, (j1 or j2)

    start_vals = _stable_values(p, e, d, det[0], opts)
    current = float(start_vals.min())
    n_bar = [current]
    branch = 0
    branch_id = [0]
    jumped = [False]
    for k in range(1, det.size):
        current, did_jump = advance(current, det[k - 1], det[k], depth=48)
        if did_jump:
            branch += 1
        n_bar.append(current)
        branch_id.append(branch)
        jumped.append(did_jump)
    return SweepTrace(
        direction=direction,
        delta_pc=det.copy(),
        n_bar=np.array(n_bar),
        branch_id=np.array(branch_id, dtype=int),
        jumped=np.array(jumped, dtype=bool),
    )


def bistability_region(p, e, d, lo, hi, opts=None, scan_points=512):
    """Detuning intervals in [lo, hi] holding >= 2 stable fixed points.

    Boundaries are resolved by bisection to 1e-3 * kappa.  Returns a list
    of (lo_i, hi_i) tuples, possibly empty.
    """
    if opts is None:
        opts = RunOptions()
    if not hi > lo:
        raise ValueError("need hi > lo, got %r, %r" % (lo, hi))
    dets = np.linspace(lo, hi, scan_points)

    def is_multi(delta):
        return _stable_values(p, e, d, delta, opts).size >= 2

    flags = np.array([is_multi(dd) for dd in dets])
    resolution = 1e-3 * p.kappa

    def edge(a, b):
        # flags differ between a and b; return the crossing to within resolution
        pa = is_multi(a)
        while b - a > resolution:
            m = 0.5 * (a + b)
            if is_multi(m) == pa:
                a = m
            else:
                b = m
        return 0.5 * (a + b)

    intervals = []
    inside = None
    for k in range(dets.size):
        if flags[k] and inside is None:
            inside = dets[k] if k == 0 else edge(dets[k - 1], dets[k])
        elif not flags[k] and inside is not None:
            intervals.append((float(inside), float(edge(dets[k - 1], dets[k]))))
            inside = None
    if inside is not None:
        intervals.append((float(inside), float(dets[-1])))
    return intervals
