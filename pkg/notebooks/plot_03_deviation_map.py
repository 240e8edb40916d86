"""
Deviation map and resonance locus
=================================

Scan the nonlinear deviation metric over coupling and detuning and overlay
the curve on which polariton 2 is twice polariton 1.
"""

import numpy as np
import matplotlib.pyplot as plt

import trimode

p = trimode.validate(trimode.SystemParams(
    omega_m2=1.9858, delta=-13.22, kappa=0.02, g1=2e-4, g2=2e-4,
    G1=0.3, G2=0.3, gamma1=2e-6, gamma2=2e-6))

##############################################################################
# The map
# -------
#
# Rows are ordered with |delta| as the slow index, so a reshape recovers the
# image. Unstable cells come back as NaN.

G2 = np.linspace(0.02, 1.2, 120)
D = np.linspace(3.0, 30.0, 100)
res = trimode.map_I(p, G2, D)
img = res["log10_I"].reshape(D.size, G2.size)

##############################################################################
# The locus
# ---------

locus = trimode.trace_resonance(p, D)
tab = locus.table()

fig, ax = plt.subplots()
m = ax.pcolormesh(G2, D, img, shading="auto", vmin=-8)
ax.plot(tab["G2_res"], -tab["delta"], "w-", lw=1.2)
ax.set_xlabel("G2")
ax.set_ylabel("|delta|")
fig.colorbar(m, label="log10 I")
plt.show()

print(f"{len(locus)} locus points, {len(locus.missing)} missing")
