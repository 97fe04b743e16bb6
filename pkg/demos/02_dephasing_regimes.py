"""
Dephasing kernel across regimes
===============================

D(T) grows as T^2 for short times, linearly once T exceeds the
correlation time 1/gamma, and oscillates in between when the line is sharp.
"""

import numpy as np

from collapsenoise import dephasing as dp

A, Omega, gamma = 1.0, 2.0, 0.05
T = np.geomspace(1e-2, 1e4, 13)
curve = dp.dephasing_curve(A, Omega, gamma, T)
for t, d, r in zip(curve.T, curve.D, curve.regime):
    print(f"T={t:10.3g}  D={d:12.5g}  {r}")

# quasi-static coefficient and long-time slope
print("D/T^2 at T=0.01:", curve.D[0] / T[0] ** 2, "(A_J =", A, ")")
print("D/T at T=1e4:   ", curve.D[-1] / T[-1], "(S_sym(0) =", dp.long_time_slope(A, Omega, gamma), ")")

# the closed form against an adaptive double integral
cov = lambda t: A * np.exp(-gamma * abs(t)) * np.cos(Omega * t)
print("closed form vs dblquad at T=3:", dp.d_broadened(A, Omega, gamma, 3.0), dp.d_quadrature_2d(cov, 3.0))

# sampling the noise gives the same coherence, within its error bar
mean, err = dp.monte_carlo_coherence(1.0, A, Omega / 2, 1.2, n_samples=200_000, seed=1)
print(f"coherence: MC {mean:.5f} +- {err:.5f}, exact {dp.coherence_ratio(1.0, A, Omega / 2, 0.0, 1.2):.5f}")
