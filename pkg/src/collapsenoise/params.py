"""Physical constants and oscillator-bath parameter sets.

Everything downstream takes its numbers from here: the oscillator length
scale ``L_aik``, the current amplitude ``A_J``, the surrogate coupling
``kappa**2`` and the holographic per-mode mass.

Two unit modes are supported.  SI values come from :class:`PhysicalConstants`
and :meth:`GtdParams.holographic`; :meth:`GtdParams.natural` sets
``hbar = c = m_R = omega0 = 1`` which keeps the Fock-space oracles free of
huge exponents.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields, replace

import scipy.constants as sc

__all__ = [
    "PhysicalConstants",
    "GtdParams",
    "amplitude_AJ",
    "surrogate_kappa_sq",
    "holographic_mass",
    "planck_length",
    "load_params",
    "params_from_dict",
    "dump_params",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants used by the cosmological matching.

    ``H0`` and ``rho_Lambda`` are the rounded present-day values used
    throughout; ``m_Pl`` is derived from CODATA ``hbar``, ``c`` and ``G``.
    """

    hbar: float = sc.hbar
    c: float = sc.c
    H0: float = 2.18e-18
    rho_Lambda: float = 5.3e-10
    m_Pl: float = math.sqrt(sc.hbar * sc.c / sc.G)
    m_nucleon: float = sc.m_p
    alpha_em: float = sc.fine_structure
    v_cmb_over_c: float = 1.23e-3

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{f.name} must be a positive finite number, got {v!r}")
        if not self.alpha_em < 1:
            raise ValueError("alpha_em must lie in (0, 1)")
        if not self.v_cmb_over_c < 1:
            raise ValueError("v_cmb_over_c must lie in (0, 1)")

    @property
    def G(self) -> float:
        """Newton's constant implied by ``m_Pl``."""
        return self.hbar * self.c / self.m_Pl**2


def planck_length(k: PhysicalConstants) -> float:
    """``sqrt(hbar G / c^3)``, written through ``m_Pl``."""
    return k.hbar / (k.m_Pl * k.c)


@dataclass(frozen=True)
class GtdParams:
    """Microscopic and matching parameters of the oscillator bath.

    Parameters
    ----------
    m_R : float
        Oscillator mass.
    omega0 : float
        Oscillator frequency; the bath line sits at ``2*omega0``.
    alpha_gtd : float
        Internal dimensionless coupling fixing ``L_aik = alpha_gtd*c/omega0``.
        Unrelated to the fine-structure constant.
    n_matrix : int
        Matrix dimension of the fermionic coordinate.
    trace_factor_N : float, optional
        Trace normalization; defaults to ``n_matrix**2``.
    dirac_factor_D : float
        Spinor factor, 1 for the scalar bilinear.
    sigma_branch : {+1, -1}
        Sign of the fermionic sector; ``+1`` is the working branch.
    gamma_width : float
        Lorentzian line width.
    g_int : float
        System-bath coupling.
    m_F : float, optional
        Fermionic mass scale; defaults to ``m_R``.
    hbar, c : float
        Unit system. SI by default.

    ``L_aik`` is derived and available as an attribute.
    """

    m_R: float
    omega0: float
    alpha_gtd: float = 1.0
    n_matrix: int = 1
    trace_factor_N: float | None = None
    dirac_factor_D: float = 1.0
    sigma_branch: int = 1
    gamma_width: float = 1.0
    g_int: float = 1.0
    m_F: float | None = None
    hbar: float = sc.hbar
    c: float = sc.c
    L_aik: float = field(init=False)

    def __post_init__(self):
        for name in ("m_R", "omega0", "alpha_gtd", "gamma_width", "hbar", "c"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive, got {v!r}")
        if int(self.n_matrix) != self.n_matrix or self.n_matrix < 1:
            raise ValueError(f"n_matrix must be a positive integer, got {self.n_matrix!r}")
        if self.sigma_branch not in (1, -1):
            raise ValueError(f"sigma_branch must be +1 or -1, got {self.sigma_branch!r}")
        if self.trace_factor_N is None:
            object.__setattr__(self, "trace_factor_N", float(self.n_matrix**2))
        if self.m_F is None:
            object.__setattr__(self, "m_F", self.m_R)
        if self.m_F <= 0:
            raise ValueError("m_F must be positive")
        object.__setattr__(self, "n_matrix", int(self.n_matrix))
        object.__setattr__(self, "L_aik", self.alpha_gtd * self.c / self.omega0)

    @classmethod
    def natural(cls, **overrides) -> "GtdParams":
        """Natural units: ``hbar = c = m_R = omega0 = alpha_gtd = 1``, so ``L_aik = 1``."""
        base = dict(m_R=1.0, omega0=1.0, alpha_gtd=1.0, gamma_width=1.0, hbar=1.0, c=1.0)
        base.update(overrides)
        return cls(**base)

    @classmethod
    def holographic(cls, k: PhysicalConstants | None = None, **overrides) -> "GtdParams":
        """SI parameters with ``m_R`` at the holographic per-mode mass and ``omega0 = gamma = H0``."""
        from .cosmo import de_sitter_count

        k = k or PhysicalConstants()
        base = dict(
            m_R=holographic_mass(k, de_sitter_count(k)),
            omega0=k.H0,
            gamma_width=k.H0,
            hbar=k.hbar,
            c=k.c,
        )
        base.update(overrides)
        return cls(**base)

    def with_(self, **changes) -> "GtdParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)


def amplitude_AJ(p: GtdParams) -> float:
    """Equal-time connected variance of the bath current.

    ``(hbar / (2 m_R omega0 L_aik**2))**2 * N * D``.
    """
    _check_positive(p)
    return (p.hbar / (2.0 * p.m_R * p.omega0 * p.L_aik**2)) ** 2 * p.trace_factor_N * p.dirac_factor_D


def surrogate_kappa_sq(p: GtdParams) -> float:
    """Squared coupling of the bosonic surrogate, ``N*D / (8 L_aik**4)``.

    With this value ``2 kappa**2 (hbar/(m_R omega0))**2`` reproduces
    :func:`amplitude_AJ` identically.
    """
    _check_positive(p)
    return p.trace_factor_N * p.dirac_factor_D / (8.0 * p.L_aik**4)


def holographic_mass(k: PhysicalConstants, N_dS: float) -> float:
    """Per-mode mass ``m_Pl / sqrt(N_dS)``."""
    if not N_dS > 0:
        raise ValueError(f"N_dS must be positive, got {N_dS!r}")
    return k.m_Pl / math.sqrt(N_dS)


def _check_positive(p: GtdParams):
    if not (p.m_R > 0 and p.omega0 > 0 and p.L_aik > 0):
        raise ValueError("m_R, omega0 and L_aik must be positive")


_INPUT_FIELDS = [f.name for f in fields(GtdParams) if f.init]


def params_from_dict(d: dict) -> GtdParams:
    """Build parameters from a flat mapping; unknown keys are rejected.

    ``L_aik`` may be given instead of ``alpha_gtd``.  If both are given they
    must agree to 1e-12 relative.
    """
    d = dict(d)
    unknown = set(d) - set(_INPUT_FIELDS) - {"L_aik"}
    if unknown:
        raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
    L = d.pop("L_aik", None)
    if L is not None:
        c = d.get("c", sc.c)
        alpha = L * d["omega0"] / c
        if "alpha_gtd" in d and not math.isclose(d["alpha_gtd"], alpha, rel_tol=1e-12):
            raise ValueError("L_aik and alpha_gtd are inconsistent")
        d["alpha_gtd"] = alpha
    return GtdParams(**d)


def load_params(path) -> GtdParams:
    with open(path) as fh:
        d = json.load(fh)
    if not isinstance(d, dict):
        raise ValueError("parameter file must hold a flat JSON object")
    return params_from_dict(d)


def dump_params(p: GtdParams) -> str:
    return json.dumps(p.to_dict(), sort_keys=True)
