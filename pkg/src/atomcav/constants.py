"""Fixed physical constants.

Values are pinned to six significant digits and never read from a config
file, so that every run of the package is reproducible bit for bit.  See
GLOSSARY.md at the repository root for the full unit conventions.
"""

HBAR = 1.05457e-34  # reduced Planck constant, J s
MASS_RB87 = 1.44316e-25  # mass of a rubidium-87 atom, kg
