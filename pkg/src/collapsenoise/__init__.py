"""Coloured collapse noise from an opposite-sign oscillator bath.

Dense Fock-space oracles, analytic spectra, Gaussian dephasing, GKLS
dynamics with Choi positivity checks, and the cosmological rate arithmetic.
"""

__version__ = "0.1.0"

from .params import GtdParams, PhysicalConstants, amplitude_AJ, holographic_mass, surrogate_kappa_sq  # noqa: E402

__all__ = [
    "__version__",
    "GtdParams",
    "PhysicalConstants",
    "amplitude_AJ",
    "surrogate_kappa_sq",
    "holographic_mass",
]
