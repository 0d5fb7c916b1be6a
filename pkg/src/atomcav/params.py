"""Parameter containers and configuration handling.

Everything inside the package is SI with *angular* frequencies (rad/s).
Ordinary frequencies in Hz appear only at the two boundaries, config files
and CSV output, and always under names suffixed ``_hz``.  Config files are
flat ``key = value`` documents; the full key table is in the README.
"""

import math
import numpy as np
from dataclasses import dataclass

from .constants import HBAR, MASS_RB87

TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """A configuration document is malformed or violates an invariant."""


class DispersiveGuardError(ValueError):
    """|delta_ca| is too small for the dispersive (adiabatic) approximation."""


def ground_state_width(mass, omega):
    """Rms width sqrt(hbar / (2 m omega)) of a harmonic-oscillator ground state."""
    return np.sqrt(HBAR / (2.0 * mass * omega))


@dataclass(frozen=True)
class PhysicalParams:
    """Fixed cavity, atom and trap constants.

    Parameters
    ----------
    g0 : float
        Single-atom coupling rate at a probe antinode, rad/s.
    kappa : float
        Cavity half linewidth, rad/s.
    gamma : float
        Atomic half linewidth, rad/s.
    k_p : float
        Probe wavenumber 2 pi / lambda_p, rad/m.
    k_t : float
        Trap-lattice wavenumber 2 pi / lambda_t, rad/m.
    mass : float
        Single-atom mass, kg.
    omega_r : float
        Recoil frequency hbar k_p^2 / (2 m), rad/s.  Derived; if passed
        explicitly it must match the derived value to 1e-12 relative.
    """

    g0: float
    kappa: float
    gamma: float
    k_p: float
    k_t: float
    mass: float = MASS_RB87
    omega_r: float = None

    def __post_init__(self):
        for name in ("g0", "kappa", "gamma", "k_p", "k_t", "mass"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ConfigError("%s must be positive, got %r" % (name, value))
        if not self.k_p > self.k_t:
            raise ConfigError(
                "k_p must exceed k_t (probe shorter wavelength than trap), "
                "got k_p=%r k_t=%r" % (self.k_p, self.k_t)
            )
        derived = HBAR * self.k_p**2 / (2.0 * self.mass)
        if self.omega_r is None:
            object.__setattr__(self, "omega_r", derived)
        elif abs(self.omega_r - derived) > 1e-12 * derived:
            raise ConfigError(
                "omega_r=%r is not the recoil frequency derived from k_p and "
                "mass (%r)" % (self.omega_r, derived)
            )

    @property
    def cooperativity(self):
        """Single-atom cooperativity g0^2 / (2 kappa gamma)."""
        return self.g0**2 / (2.0 * self.kappa * self.gamma)

    @property
    def lattice_spacing(self):
        """Distance pi / k_t between adjacent trap wells, m."""
        return math.pi / self.k_t


@dataclass(frozen=True)
class EnsembleConfig:
    """Where the atoms sit and how they are spread.

    ``phi0`` is the probe phase at the central occupied well, pi-periodic.
    ``sigma_site`` is the intra-well rms width; ``None`` means the harmonic
    ground-state width for ``omega_z``.  ``sigma_spread`` is the rms spread
    of the well-occupation envelope across the lattice.
    """

    n_atoms: int
    phi0: float
    omega_z: float
    sigma_site: float = None
    sigma_spread: float = 400e-9
    n_sites: int = 11

    def __post_init__(self):
        if self.n_atoms < 0:
            raise ConfigError("n_atoms must be >= 0, got %r" % (self.n_atoms,))
        if not self.omega_z > 0.0:
            raise ConfigError("omega_z must be positive, got %r" % (self.omega_z,))
        if self.sigma_site is not None and not self.sigma_site >= 0.0:
            raise ConfigError("sigma_site must be >= 0, got %r" % (self.sigma_site,))
        if not self.sigma_spread >= 0.0:
            raise ConfigError("sigma_spread must be >= 0, got %r" % (self.sigma_spread,))
        if self.n_sites < 1 or self.n_sites % 2 == 0:
            raise ConfigError("n_sites must be a positive odd count, got %r" % (self.n_sites,))

    def site_width(self, p):
        """Intra-well rms width actually used: sigma_site, or the ground state."""
        if self.sigma_site is not None:
            return self.sigma_site
        return float(ground_state_width(p.mass, self.omega_z))


@dataclass(frozen=True)
class ProbeDrive:
    """Probe detunings and drive strength.

    ``delta_ca`` is the (signed) probe-atom detuning, ``delta_pc`` the
    probe-cavity detuning from the *bare* cavity resonance, and ``n_max``
    the resonant intracavity photon number.  ``dispersive_guard`` is the
    minimum allowed |delta_ca| / gamma ratio.
    """

    delta_ca: float
    delta_pc: float
    n_max: float
    dispersive_guard: float = 100.0

    def __post_init__(self):
        if self.delta_ca == 0.0:
            raise ConfigError("delta_ca must be nonzero")
        if not self.n_max >= 0.0:
            raise ConfigError("n_max must be >= 0, got %r" % (self.n_max,))
        if not self.dispersive_guard > 0.0:
            raise ConfigError("dispersive_guard must be positive, got %r" % (self.dispersive_guard,))

    def check_dispersive(self, p):
        """Raise DispersiveGuardError unless |delta_ca| >= guard * gamma."""
        if abs(self.delta_ca) < self.dispersive_guard * p.gamma:
            raise DispersiveGuardError(
                "|delta_ca|=%.6g rad/s below the dispersive guard %g * gamma=%.6g rad/s"
                % (abs(self.delta_ca), self.dispersive_guard, self.dispersive_guard * p.gamma)
            )


@dataclass(frozen=True)
class RunOptions:
    """Solver knobs and free model parameters not taken from the physics.

    The caps regularize the harmonic per-well model once a well approaches
    deconfinement: ``sigma_cap_m`` bounds the rms width (default: the rms of
    a uniform distribution filling one lattice well, (pi/k_t)/sqrt(12)) and
    ``z_cap_m`` bounds the equilibrium displacement (default pi/(4 k_p)).
    ``mech_damping``, ``parametric_width`` and ``parametric_peak_loss`` are
    free spectrum-shape parameters with arbitrary documented defaults.
    """

    tol_abs: float = 1e-10
    tol_rel: float = 1e-8
    fp_grid: int = 2000
    sigma_cap_m: float = None
    z_cap_m: float = None
    trap_depth_j: float = None
    sweep_atom_loss: float = 0.0
    mech_damping: float = None
    parametric_width: float = None
    parametric_peak_loss: float = 0.5

    def __post_init__(self):
        if not self.tol_abs > 0.0 or not self.tol_rel > 0.0:
            raise ConfigError("solver tolerances must be positive")
        if self.fp_grid < 16:
            raise ConfigError("fp_grid must be >= 16, got %r" % (self.fp_grid,))
        if not 0.0 <= self.sweep_atom_loss < 1.0:
            raise ConfigError("sweep_atom_loss must lie in [0, 1), got %r" % (self.sweep_atom_loss,))
        if not 0.0 < self.parametric_peak_loss <= 1.0:
            raise ConfigError(
                "parametric_peak_loss must lie in (0, 1], got %r" % (self.parametric_peak_loss,)
            )

    def sigma_cap(self, p):
        if self.sigma_cap_m is not None:
            return self.sigma_cap_m
        return (math.pi / p.k_t) / math.sqrt(12.0)

    def z_cap(self, p):
        if self.z_cap_m is not None:
            return self.z_cap_m
        return math.pi / (4.0 * p.k_p)

    def trap_depth(self, p, e):
        """Trap depth used by the full-potential oracle; default matches omega_z."""
        if self.trap_depth_j is not None:
            return self.trap_depth_j
        return p.mass * e.omega_z**2 / (2.0 * p.k_t**2)

    def damping(self, e):
        if self.mech_damping is not None:
            return self.mech_damping
        return e.omega_z / 100.0

    def loss_width(self, e):
        if self.parametric_width is not None:
            return self.parametric_width
        return e.omega_z / 20.0


def default_rb87_params():
    """The rubidium-87 860-nm-cavity parameter set used throughout the tests."""
    return PhysicalParams(
        g0=TWO_PI * 13.1e6,
        kappa=TWO_PI * 1.8e6,
        gamma=TWO_PI * 3.0e6,
        k_p=TWO_PI / 780e-9,
        k_t=TWO_PI / 845e-9,
        mass=MASS_RB87,
    )


# ---------------------------------------------------------------------------
# Flat key=value config documents
# ---------------------------------------------------------------------------

_DEFAULT_P = default_rb87_params()

# key -> (target, field, kind).  kind selects the unit conversion:
#   "hz"     config Hz        <-> internal rad/s
#   "len2k"  config wavelength m <-> internal wavenumber rad/m
#   "float", "int", "rad", "m"  pass through
_KEYS = {
    "g0_hz": ("p", "g0", "hz"),
    "kappa_hz": ("p", "kappa", "hz"),
    "gamma_hz": ("p", "gamma", "hz"),
    "lambda_p_m": ("p", "k_p", "len2k"),
    "lambda_t_m": ("p", "k_t", "len2k"),
    "n_atoms": ("e", "n_atoms", "int"),
    "phi0_rad": ("e", "phi0", "float"),
    "omega_z_hz": ("e", "omega_z", "hz"),
    "sigma_site_m": ("e", "sigma_site", "float"),
    "sigma_spread_m": ("e", "sigma_spread", "float"),
    "n_sites": ("e", "n_sites", "int"),
    "delta_ca_hz": ("d", "delta_ca", "hz"),
    "delta_pc_hz": ("d", "delta_pc", "hz"),
    "n_max": ("d", "n_max", "float"),
    "dispersive_guard": ("d", "dispersive_guard", "float"),
    "tol_abs": ("o", "tol_abs", "float"),
    "tol_rel": ("o", "tol_rel", "float"),
    "fp_grid_points": ("o", "fp_grid", "int"),
    "sigma_cap_m": ("o", "sigma_cap_m", "float"),
    "z_cap_m": ("o", "z_cap_m", "float"),
    "trap_depth_j": ("o", "trap_depth_j", "float"),
    "sweep_atom_loss": ("o", "sweep_atom_loss", "float"),
    "mech_damping_hz": ("o", "mech_damping", "hz"),
    "parametric_width_hz": ("o", "parametric_width", "hz"),
    "parametric_peak_loss": ("o", "parametric_peak_loss", "float"),
}

_DEFAULTS = {
    "g0_hz": 13.1e6,
    "kappa_hz": 1.8e6,
    "gamma_hz": 3.0e6,
    "lambda_p_m": 780e-9,
    "lambda_t_m": 845e-9,
    "n_atoms": 0,
    "phi0_rad": 0.0,
    "omega_z_hz": 70e3,
    "sigma_spread_m": 400e-9,
    "n_sites": 11,
    "delta_ca_hz": -6e9,
    "delta_pc_hz": 0.0,
    "n_max": 1.0,
}


def _parse_value(key, raw, kind):
    try:
        if kind == "int":
            return int(raw)
        return float(raw)
    except ValueError:
        raise ConfigError("could not parse %s = %r" % (key, raw)) from None


def _to_internal(value, kind):
    if kind == "hz":
        return value * TWO_PI
    if kind == "len2k":
        return TWO_PI / value
    return value


def _to_config(value, kind):
    if kind == "hz":
        return value / TWO_PI
    if kind == "len2k":
        return TWO_PI / value
    return value


def _roundtrip_config_value(internal, kind):
    """Config-side representation whose reload reproduces ``internal`` exactly.

    The naive conversion can land one ulp off after the inverse conversion;
    searching a couple of neighbouring floats fixes that whenever the value
    is reachable at all (it always is for values produced by load_config).
    """
    if kind in ("float", "int", "rad", "m"):
        return internal
    base = _to_config(internal, kind)
    cand = base
    for _ in range(5):
        if _to_internal(cand, kind) == internal:
            return cand
        cand = np.nextafter(cand, np.inf)
    cand = base
    for _ in range(5):
        if _to_internal(cand, kind) == internal:
            return cand
        cand = np.nextafter(cand, -np.inf)
    return base


def _parse_document(text):
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError("line %d is not 'key = value': %r" % (lineno, line))
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in _KEYS:
            raise ConfigError("unknown config key %r (line %d)" % (key, lineno))
        if key in values:
            raise ConfigError("duplicate config key %r (line %d)" % (key, lineno))
        values[key] = raw
    return values


def load_config(text):
    """Parse a flat key=value document into parameter objects.

    Returns
    -------
    (PhysicalParams, EnsembleConfig, ProbeDrive, RunOptions)

    Unknown keys are errors, not warnings.  Unset physical fields fall back
    to the rubidium-87 defaults documented in the README.
    """
    raw = _parse_document(text)
    fields = {"p": {}, "e": {}, "d": {}, "o": {}}
    for key, (target, field, kind) in _KEYS.items():
        if key in raw:
            value = _parse_value(key, raw[key], kind)
        elif key in _DEFAULTS:
            value = _DEFAULTS[key]
        else:
            continue
        if kind == "len2k" and value == 0.0:
            raise ConfigError("%s must be nonzero, got %r" % (key, raw.get(key)))
        fields[target][field] = _to_internal(value, kind)

    p = PhysicalParams(**fields["p"])
    e = EnsembleConfig(**fields["e"])
    d = ProbeDrive(**fields["d"])
    o = RunOptions(**fields["o"])
    try:
        d.check_dispersive(p)
    except DispersiveGuardError as exc:
        raise ConfigError("delta_ca_hz: %s" % exc) from None
    return p, e, d, o


def _format_value(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def dump_config(p, e, d, o=None):
    """Serialize parameters to a document that load_config maps back exactly.

    Optional fields left at their derived/None defaults are omitted, so a
    load -> dump -> load cycle reproduces identical field values.
    """
    if o is None:
        o = RunOptions()
    objs = {"p": p, "e": e, "d": d, "o": o}
    ref = {"p": None, "e": None, "d": None, "o": RunOptions()}
    lines = ["# atomcav configuration (flat key = value, '#' comments)"]
    for key, (target, field, kind) in _KEYS.items():
        value = getattr(objs[target], field)
        if value is None:
            continue
        if target == "o" and value == getattr(ref["o"], field):
            continue  # pure solver defaults stay implicit
        if field == "omega_r":
            continue
        lines.append("%s = %s" % (key, _format_value(_roundtrip_config_value(value, kind))))
    return "\n".join(lines) + "\n"
