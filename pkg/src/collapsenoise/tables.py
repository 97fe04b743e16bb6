"""Row builders for the three reference tables.

Row inputs are fixed here; values are computed, never stored.
"""

from __future__ import annotations

import math

from .cosmo import match_report
from .params import PhysicalConstants
from .spectral import offres_suppression, thermal_fermion_factors

__all__ = ["SUPPRESSION_BANDS", "POPULATED_BETAS", "suppression_rows", "populated_rows", "threshold_rows", "TABLES"]

SUPPRESSION_BANDS = (
    ("pulsar timing 1 nHz", 6.3e-9),
    ("LISA band 1 mHz", 6.3e-3),
    ("mechanical 1 Hz", 6.3),
    ("mechanical 1 kHz", 6.3e3),
    ("X-ray 1 keV", 1.5e18),
)

POPULATED_BETAS = (("1", 1.0), ("2pi", 2.0 * math.pi), ("0.1", 0.1))


def suppression_rows(k: PhysicalConstants | None = None):
    """Off-resonance suppression with ``gamma = omega0 = H0``."""
    k = k or PhysicalConstants()
    header = ("band", "omega_S", "suppression")
    rows = [(label, w, offres_suppression(w, k.H0, k.H0)) for label, w in SUPPRESSION_BANDS]
    return header, rows


def populated_rows(k: PhysicalConstants | None = None):
    header = ("beta_hbar_omega0", "n_F", "backward_forward", "pedestal")
    rows = []
    for label, x in POPULATED_BETAS:
        f = thermal_fermion_factors(x)
        rows.append((label, f.n_F, f.backward_forward_ratio, f.pedestal))
    return header, rows


def threshold_rows(k: PhysicalConstants | None = None):
    rep = match_report(k or PhysicalConstants())
    header = ("C_match", "lambda", "N_star", "mass")
    return header, [(r.C_match, r.lam, r.N_star, r.mass) for r in rep.thresholds]


TABLES = {"suppression": suppression_rows, "populated": populated_rows, "thresholds": threshold_rows}
