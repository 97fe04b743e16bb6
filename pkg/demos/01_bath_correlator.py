"""
The bath current from brute-force Fock space
=============================================

Build the fermionic current on a two-mode Fock space, evaluate its vacuum
two-point function by dense linear algebra and compare with the single
spectral line the closed form predicts.
"""

import numpy as np

from collapsenoise import fock, spectral
from collapsenoise.params import GtdParams, amplitude_AJ

p = GtdParams.natural()
ws = fock.current_workspace(p.n_matrix)
print("Fock dimension:", ws.dim)

# the vacuum Wightman function is one complex exponential at -2 omega0
taus = np.linspace(-3, 3, 7)
brute = np.array([fock.correlator_JJ(ws, p, t) for t in taus])
line = spectral.wightman_line(p).correlator(taus)
print("max |brute - line|:", np.abs(brute - line).max())

# symmetrizing gives the real classical covariance A_J cos(2 omega0 tau)
sym = 0.5 * (brute + np.array([fock.correlator_JJ(ws, p, -t) for t in taus]))
print("symmetrized matches csym:", np.allclose(sym, spectral.csym(p, taus), atol=1e-12))

# a populated bath keeps the total weight when n_b == n_d and adds a pedestal
st = fock.product_state(ws, [0.2, 0.2])
model = spectral.populated_fermion_model(p, 0.2, 0.2)
print("total weight / A_J:", model.total_weight().real / amplitude_AJ(p))
print("pedestal / A_J:", model.pedestal_weight / amplitude_AJ(p))
print("populated oracle residual:", abs(fock.correlator_JJ(ws, p, 0.9, st) - model.correlator(0.9)))

# the bosonic surrogate puts its line on the other side, at +2 omega0
sw = fock.surrogate_workspace(6)
print("surrogate C(0.9):", fock.correlator_surrogate(sw, p, 0.9))
print("A_J e^{+1.8i}:   ", amplitude_AJ(p) * np.exp(1.8j))
