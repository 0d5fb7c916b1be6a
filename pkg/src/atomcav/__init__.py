"""Tunable cavity optomechanics of a lattice-trapped atomic ensemble.

The collective centre of mass of atoms held in an intracavity optical
lattice couples to the cavity field through a position-dependent
dispersive shift.  This package computes that shift, the self-consistent
cavity/ensemble steady state (including optical bistability and
hysteretic probe sweeps), the resulting optical-spring corrections to the
mechanical mode frequencies, and simple driven/parametric spectra.

All angular quantities (g0, kappa, detunings, trap frequencies) are
rad/s internally; config files and CSV outputs use Hz and convert at the
boundary.  Lengths are metres throughout.
"""

from .constants import HBAR, MASS_RB87
from .params import (
    TWO_PI,
    ConfigError,
    DispersiveGuardError,
    EnsembleConfig,
    PhysicalParams,
    ProbeDrive,
    RunOptions,
    default_rb87_params,
    dump_config,
    ground_state_width,
    load_config,
)
from .coupling import CouplingCoefficients, coupling_coefficients, dispersive_shift, single_site_shift
from .ensemble import (
    SitePopulation,
    contrast,
    ensemble_shift,
    lattice_phase_step,
    phase_at_position,
    site_arrays,
    site_populations,
)
from .mechanics import (
    MechanicalEquilibrium,
    PotentialMinimum,
    SpringConstants,
    UnconfinedError,
    curvature_ratio,
    effective_curvature_sq,
    equilibrium_state,
    force_per_photon_per_atom,
    full_potential_oracle,
    mode_frequencies,
    spring_constants,
)
from .steadystate import (
    GridResolutionError,
    SteadyState,
    SweepTrace,
    bistability_region,
    equilibrated_shift,
    fixed_points,
    response_map,
    sweep_lineshape,
)
from .spectra import SpectrumTrace, gain_spectrum, parametric_loss_curve
from .fitting import SinusoidFit, fit_sinusoid

__version__ = "0.1.0"

__all__ = [
    "HBAR",
    "MASS_RB87",
    "TWO_PI",
    "ConfigError",
    "DispersiveGuardError",
    "EnsembleConfig",
    "PhysicalParams",
    "ProbeDrive",
    "RunOptions",
    "default_rb87_params",
    "dump_config",
    "ground_state_width",
    "load_config",
    "CouplingCoefficients",
    "coupling_coefficients",
    "dispersive_shift",
    "single_site_shift",
    "SitePopulation",
    "contrast",
    "ensemble_shift",
    "lattice_phase_step",
    "phase_at_position",
    "site_arrays",
    "site_populations",
    "MechanicalEquilibrium",
    "PotentialMinimum",
    "SpringConstants",
    "UnconfinedError",
    "curvature_ratio",
    "effective_curvature_sq",
    "equilibrium_state",
    "force_per_photon_per_atom",
    "full_potential_oracle",
    "mode_frequencies",
    "spring_constants",
    "GridResolutionError",
    "SteadyState",
    "SweepTrace",
    "bistability_region",
    "equilibrated_shift",
    "fixed_points",
    "response_map",
    "sweep_lineshape",
    "SpectrumTrace",
    "gain_spectrum",
    "parametric_loss_curve",
    "SinusoidFit",
    "fit_sinusoid",
    "__version__",
]
