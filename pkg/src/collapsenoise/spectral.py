"""Analytic correlators and spectra as symbolic line collections.

Fourier convention, used everywhere in the package::

    S(omega) = integral dtau exp(-i omega tau) C(tau)

so a line ``weight * 2 pi delta(omega - center)`` corresponds to
``C(tau) = weight * exp(+i center tau)``, and a Lorentzian of area ``A``
(under ``domega / 2 pi``), center ``Oc`` and width ``gamma`` corresponds to
``A exp(i Oc tau - gamma |tau|)``.

Spectra are never sampled on grids.  A delta line at twice the Hubble rate
has no useful grid representation, so models are kept as lists of weights.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .params import GtdParams, amplitude_AJ

__all__ = [
    "DeltaLine",
    "LorentzianLine",
    "SpectrumModel",
    "wightman_line",
    "symmetrized_model",
    "csym",
    "commutator_kernel",
    "lorentzian_S",
    "lorentzian_model",
    "offres_suppression",
    "populated_fermion_model",
    "populated_boson_model",
    "fermi_occupation",
    "bose_occupation",
    "thermal_fermion_factors",
]


@dataclass(frozen=True)
class DeltaLine:
    weight: complex
    center: float


@dataclass(frozen=True)
class LorentzianLine:
    area: float
    center: float
    width: float

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"Lorentzian width must be positive, got {self.width!r}")


@dataclass(frozen=True)
class SpectrumModel:
    """Weighted delta lines, Lorentzian lines and a zero-frequency pedestal."""

    delta_lines: tuple = ()
    lorentzians: tuple = ()
    pedestal_weight: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "delta_lines", tuple(self.delta_lines))
        object.__setattr__(self, "lorentzians", tuple(self.lorentzians))

    def total_weight(self) -> complex:
        w = sum(l.weight for l in self.delta_lines) + sum(l.area for l in self.lorentzians)
        return w + self.pedestal_weight

    def correlator(self, tau):
        """Inverse transform ``C(tau) = integral domega/2pi e^{i omega tau} S(omega)``."""
        tau = np.asarray(tau, dtype=float)
        out = np.full(tau.shape, self.pedestal_weight, dtype=complex)
        for l in self.delta_lines:
            out = out + l.weight * np.exp(1j * l.center * tau)
        for l in self.lorentzians:
            out = out + l.area * np.exp(1j * l.center * tau - l.width * np.abs(tau))
        return out if out.ndim else complex(out)

    def continuous_density(self, omega):
        """Smooth part of ``S(omega)``; delta lines and the pedestal are excluded."""
        omega = np.asarray(omega, dtype=float)
        out = np.zeros(omega.shape)
        for l in self.lorentzians:
            out = out + lorentzian_S(omega, l.area, l.center, l.width)
        return out if out.ndim else float(out)

    def to_dict(self) -> dict:
        def num(x):
            x = complex(x)
            return x.real if x.imag == 0 else [x.real, x.imag]

        return {
            "delta_lines": [{"weight": num(l.weight), "center": float(l.center)} for l in self.delta_lines],
            "lorentzians": [
                {"area": float(l.area), "center": float(l.center), "width": float(l.width)} for l in self.lorentzians
            ],
            "pedestal_weight": float(self.pedestal_weight),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "SpectrumModel":
        def num(x):
            return complex(x[0], x[1]) if isinstance(x, (list, tuple)) else x

        return cls(
            delta_lines=[DeltaLine(num(l["weight"]), l["center"]) for l in d.get("delta_lines", [])],
            lorentzians=[LorentzianLine(l["area"], l["center"], l["width"]) for l in d.get("lorentzians", [])],
            pedestal_weight=d.get("pedestal_weight", 0.0),
        )


def wightman_line(p: GtdParams) -> SpectrumModel:
    """Vacuum Wightman spectrum: weight ``A_J`` at ``-2 sigma omega0``."""
    return SpectrumModel(delta_lines=[DeltaLine(amplitude_AJ(p), -2.0 * p.sigma_branch * p.omega0)])


def symmetrized_model(p: GtdParams) -> SpectrumModel:
    A = amplitude_AJ(p)
    return SpectrumModel(delta_lines=[DeltaLine(A / 2, 2.0 * p.omega0), DeltaLine(A / 2, -2.0 * p.omega0)])


def csym(p: GtdParams, tau):
    """Symmetrized correlator ``A_J cos(2 omega0 tau)``."""
    return amplitude_AJ(p) * np.cos(2.0 * p.omega0 * np.asarray(tau, dtype=float))


def commutator_kernel(p: GtdParams, tau):
    """Commutator ``<[J(tau), J(0)]> = C(tau) - C(-tau)`` of the vacuum line: ``-2i sigma A_J sin(2 omega0 tau)``."""
    return -2j * p.sigma_branch * amplitude_AJ(p) * np.sin(2.0 * p.omega0 * np.asarray(tau, dtype=float))


def lorentzian_S(omega, area, center, width):
    """``area * 2 width / ((omega - center)**2 + width**2)``; integrates to ``area`` under ``domega/2pi``."""
    if not width > 0:
        raise ValueError(f"width must be positive, got {width!r}")
    omega = np.asarray(omega, dtype=float)
    return area * 2.0 * width / ((omega - center) ** 2 + width**2)


def lorentzian_model(p: GtdParams) -> SpectrumModel:
    """Vacuum line broadened to width ``gamma_width``."""
    return SpectrumModel(
        lorentzians=[LorentzianLine(amplitude_AJ(p), -2.0 * p.sigma_branch * p.omega0, p.gamma_width)]
    )


def offres_suppression(omega_S, omega0, gamma, sigma: int = 1):
    """Lorentzian weight at ``omega_S`` relative to the peak: ``gamma**2/((omega_S + 2 sigma omega0)**2 + gamma**2)``."""
    if not np.all(np.asarray(gamma) > 0):
        raise ValueError("gamma must be positive")
    detuning = np.asarray(omega_S, dtype=float) + 2.0 * sigma * omega0
    g2 = np.asarray(gamma, dtype=float) ** 2
    out = g2 / (detuning**2 + g2)
    return out if np.ndim(out) else float(out)


def fermi_occupation(beta_hbar_omega0):
    return 1.0 / (np.exp(beta_hbar_omega0) + 1.0)


def bose_occupation(beta_hbar_omega0):
    return 1.0 / np.expm1(beta_hbar_omega0)


def _check_occupation(n, name):
    if not 0.0 <= n <= 1.0:
        raise ValueError(f"{name}={n!r} outside [0, 1]")


def populated_fermion_model(p: GtdParams, n_b: float, n_d: float) -> SpectrumModel:
    """Populated fermionic bath: forward line, backward line and pedestal.

    The total weight is ``A_J`` whenever ``n_b == n_d``.
    """
    _check_occupation(n_b, "n_b")
    _check_occupation(n_d, "n_d")
    A = amplitude_AJ(p)
    fwd = -2.0 * p.sigma_branch * p.omega0
    return SpectrumModel(
        delta_lines=[DeltaLine((1 - n_b) * (1 - n_d) * A, fwd), DeltaLine(n_b * n_d * A, -fwd)],
        pedestal_weight=(n_b * (1 - n_b) + n_d * (1 - n_d)) * A,
    )


def populated_boson_model(p: GtdParams, n_B: float) -> SpectrumModel:
    """Populated bosonic surrogate; total weight ``(2 n_B + 1)**2 A_J``."""
    if not n_B >= 0:
        raise ValueError(f"n_B must be nonnegative, got {n_B!r}")
    A = amplitude_AJ(p)
    w = 2.0 * p.omega0
    return SpectrumModel(
        delta_lines=[DeltaLine((n_B + 1) ** 2 * A, w), DeltaLine(n_B**2 * A, -w)],
        pedestal_weight=2.0 * n_B * (n_B + 1) * A,
    )


@dataclass(frozen=True)
class ThermalFermionFactors:
    beta_hbar_omega0: float
    n_F: float
    backward_forward_ratio: float
    pedestal: float = field(default=0.0)


def thermal_fermion_factors(beta_hbar_omega0: float) -> ThermalFermionFactors:
    """Occupation, backward/forward ratio and pedestal weight (in units of ``A_J``)."""
    x = float(beta_hbar_omega0)
    if not x > 0:
        raise ValueError("beta*hbar*omega0 must be positive")
    n = fermi_occupation(x)
    return ThermalFermionFactors(x, n, (n / (1 - n)) ** 2, 2 * n * (1 - n))
