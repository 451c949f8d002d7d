"""Proper-time localization toolkit for a free relativistic particle.

Thin Python surface over the C++ core: extension spectra, localization
kernels, time/position densities, admissibility diagnosis and the numerical
invariant battery.
"""

from ._ptloc import (
    admissibility,
    conical_p,
    extension_eigenvalues,
    gamma_abs_half,
    position_density,
    position_overlap,
    sinc,
    time_density,
    time_overlap,
    verify,
    z0,
)

__all__ = [
    "admissibility",
    "conical_p",
    "extension_eigenvalues",
    "gamma_abs_half",
    "position_density",
    "position_overlap",
    "sinc",
    "time_density",
    "time_overlap",
    "verify",
    "z0",
]

__version__ = "0.1.0"
