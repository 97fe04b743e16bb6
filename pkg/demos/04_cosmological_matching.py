"""
Cosmological matching arithmetic
================================

Horizon mode count, per-mode energy and mass, the natural collapse rate
and what it implies for the mesoscopic amplification threshold.
"""

from collapsenoise import cosmo, tables
from collapsenoise.params import PhysicalConstants

k = PhysicalConstants()
rep = cosmo.match_report(k)
print(f"N_dS          = {rep.N_dS:.3e}")
print(f"energy / mode = {rep.eps_per_mode:.3e} J  ({rep.eps_per_mode / (k.hbar * k.H0):.3f} hbar H0)")
print(f"m_R (holo)    = {rep.m_R_hol:.3e} kg")
print(f"lambda_bench  = {rep.lambda_natural:.4e} 1/s")
print()
print(rep.to_csv(lambda x: f"{x:.2e}"))

header, rows = tables.suppression_rows(k)
for band, w, s in rows:
    print(f"{band:20s} omega_S={w:8.2e}  suppression={s:.2e}")

print()
print("Doppler shift of the 2 H0 line:", f"{cosmo.doppler_shift(2 * k.H0, k.v_cmb_over_c):.2e} 1/s")
print("T1 exponent, 1e-22 kg for 1 s:", f"{cosmo.t1_exponent(rep.lambda_natural, 1e-22, k.m_nucleon, 1.0):.2e}")
print("Planck-mass counterfactual:", {key: f"{v:.2e}" for key, v in cosmo.planck_counterfactual_ratio(k).items()})
