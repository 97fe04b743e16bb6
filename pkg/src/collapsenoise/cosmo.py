"""Cosmological matching and collapse-rate arithmetic (SI units)."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from .params import GtdParams, PhysicalConstants, amplitude_AJ, holographic_mass, planck_length

__all__ = [
    "de_sitter_count",
    "per_mode_energy",
    "lambda_natural",
    "lambda_bench",
    "amplification_threshold",
    "markov_surrogate_rate",
    "AMScaling",
    "am_scaling",
    "doppler_shift",
    "t1_exponent",
    "planck_counterfactual_ratio",
    "ThresholdRow",
    "MatchReport",
    "match_report",
    "TABLE_C_MATCH",
]


def de_sitter_count(k: PhysicalConstants) -> float:
    """Horizon area in Planck units, ``pi (c/H0)**2 / L_P**2``."""
    return math.pi * (k.c / k.H0) ** 2 / planck_length(k) ** 2


def per_mode_energy(k: PhysicalConstants) -> float:
    """Dark energy inside the Hubble sphere ``(4 pi/3)(c/H0)**3`` shared over the de Sitter modes."""
    return k.rho_Lambda * (4.0 * math.pi / 3.0) * (k.c / k.H0) ** 3 / de_sitter_count(k)


def lambda_natural(k: PhysicalConstants, C_match: float) -> float:
    if not C_match > 0:
        raise ValueError("C_match must be positive")
    return k.H0 * C_match


def lambda_bench(k: PhysicalConstants) -> float:
    """Natural rate with ``C_match = alpha_em**2``."""
    return lambda_natural(k, k.alpha_em**2)


def amplification_threshold(lam: float, m_nucleon: float) -> tuple[float, float]:
    """Nucleon count ``N*`` with ``N***2 lam (1 s) = 1`` and its mass."""
    if not lam > 0:
        raise ValueError("lambda must be positive")
    n_star = 1.0 / math.sqrt(lam * 1.0)
    return n_star, n_star * m_nucleon


def markov_surrogate_rate(g_int, A_J, gamma, omega0, m0, hbar, V_rC) -> float:
    """``g**2 A_J gamma / (m0**2 hbar**2 ((2 omega0)**2 + gamma**2)) V``.

    At fixed ``A_J`` the dependence on ``gamma`` peaks at ``gamma = 2 omega0``.
    """
    for name, v in dict(g_int=g_int, A_J=A_J, gamma=gamma, omega0=omega0, m0=m0, hbar=hbar, V_rC=V_rC).items():
        if not v > 0:
            raise ValueError(f"{name} must be positive")
    return g_int**2 * A_J * gamma / (m0**2 * hbar**2 * ((2.0 * omega0) ** 2 + gamma**2)) * V_rC


@dataclass(frozen=True)
class AMScaling:
    p_exponent: float
    N1: float
    exponent: float
    factor: float
    classification: str
    eta: float


def am_scaling(p_exponent: float, N1: float, atol: float = 1e-12) -> AMScaling:
    """Bath-size scaling ``N1**(1 - 4p)`` of summed vertex fluctuations.

    The sum diverges with ``N1`` for ``p < 1/4``, stays finite at ``p = 1/4``
    and vanishes above.  ``eta = N1**-0.5`` is the relative fluctuation of the
    conserved charge.
    """
    if not N1 >= 1:
        raise ValueError("N1 must be at least 1")
    e = 1.0 - 4.0 * p_exponent
    if abs(e) <= atol:
        cls, e = "finite", 0.0
    elif e > 0:
        cls = "divergent"
    else:
        cls = "vanishing"
    return AMScaling(p_exponent, N1, e, N1**e, cls, N1**-0.5)


def doppler_shift(omega_line: float, v_over_c: float) -> float:
    if not abs(v_over_c) < 1:
        raise ValueError("|v/c| must be below 1")
    return omega_line * v_over_c


def t1_exponent(lambda_bench: float, m: float, m0: float, T: float) -> float:
    """``lambda_bench (m/m0)**2 T**2``, with ``T`` in seconds and the rate referred to 1 s."""
    for name, v in dict(lambda_bench=lambda_bench, m=m, m0=m0, T=T).items():
        if not v > 0:
            raise ValueError(f"{name} must be positive")
    return lambda_bench * (m / m0) ** 2 * T**2 / 1.0


def planck_counterfactual_ratio(k: PhysicalConstants) -> dict:
    """Rate suppression when the oscillator mass is ``m_Pl`` instead of the holographic mass.

    The rate chain is linear in ``A_J``, so the ratio is ``A_J(m_Pl)/A_J(m_hol)``.
    The Hubble-quantum estimate ``(hbar H0 / m_Pl c**2)**2`` is returned alongside.
    """
    N = de_sitter_count(k)
    base = GtdParams.holographic(k)
    planck = base.with_(m_R=k.m_Pl)
    return {
        "amplitude_ratio": amplitude_AJ(planck) / amplitude_AJ(base),
        "hubble_quantum_ratio": (k.hbar * k.H0 / (k.m_Pl * k.c**2)) ** 2,
        "one_over_N_dS": 1.0 / N,
    }


TABLE_C_MATCH = ("1", "alpha_em^2", "1e-8", "1e-12")


def _c_value(k, c):
    if isinstance(c, str):
        return k.alpha_em**2 if c == "alpha_em^2" else float(c)
    return float(c)


@dataclass(frozen=True)
class ThresholdRow:
    C_match: float
    label: str
    lam: float
    N_star: float
    mass: float


@dataclass(frozen=True)
class MatchReport:
    N_dS: float
    eps_per_mode: float
    m_R_hol: float
    lambda_natural: float
    C_match: float
    thresholds: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "N_dS": self.N_dS,
            "eps_per_mode": self.eps_per_mode,
            "m_R_hol": self.m_R_hol,
            "lambda_natural": self.lambda_natural,
            "C_match": self.C_match,
            "thresholds": [
                {"C_match": r.C_match, "label": r.label, "lambda": r.lam, "N_star": r.N_star, "mass": r.mass}
                for r in self.thresholds
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self, fmt=repr) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["C_match", "lambda", "N_star", "mass"])
        for r in self.thresholds:
            w.writerow([fmt(r.C_match), fmt(r.lam), fmt(r.N_star), fmt(r.mass)])
        return buf.getvalue()


def match_report(k: PhysicalConstants | None = None, C_match=("1", "alpha_em^2", "1e-8", "1e-12"), headline="alpha_em^2") -> MatchReport:
    k = k or PhysicalConstants()
    N = de_sitter_count(k)
    rows = []
    for c in C_match:
        cv = _c_value(k, c)
        lam = lambda_natural(k, cv)
        n_star, mass = amplification_threshold(lam, k.m_nucleon)
        rows.append(ThresholdRow(cv, str(c), lam, n_star, mass))
    hv = _c_value(k, headline)
    return MatchReport(
        N_dS=N,
        eps_per_mode=per_mode_energy(k),
        m_R_hol=holographic_mass(k, N),
        lambda_natural=lambda_natural(k, hv),
        C_match=hv,
        thresholds=tuple(rows),
    )
