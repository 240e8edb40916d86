"""
Polariton spectrum and Bogoliubov basis
=======================================

Diagonalize the linearized cavity plus two mechanical modes and inspect the
normal-mode frequencies as the drive strength grows.
"""

import numpy as np
import matplotlib.pyplot as plt

import trimode

##############################################################################
# A single working point
# ----------------------
#
# All frequencies are in units of the first mechanical frequency. The cavity
# is red detuned, and both mechanical modes see the same effective coupling.

p = trimode.validate(trimode.SystemParams(
    omega_m2=1.9858, delta=-13.22, kappa=0.02, g1=2e-4, g2=2e-4,
    G1=0.3, G2=0.3, gamma1=2e-6, gamma2=2e-6))

basis = trimode.diagonalize(trimode.build_M(p))
print("polariton frequencies:", basis.omega)
print("symplectic residual:  ", basis.symplectic_residual())

##############################################################################
# For a large detuning the mechanical-like polaritons are pulled down by
# roughly ``G^2 / |delta|``. The perturbative result is close to the exact one.

print("perturbative:", trimode.perturbative_frequencies(p))

##############################################################################
# Frequencies against the coupling
# --------------------------------
#
# ``build_M_grid`` broadcasts, so a whole sweep is diagonalized in one call.
# The lower polariton softens to zero at the stability edge.

from trimode.bogoliubov import build_M_grid

G = np.linspace(0.0, 0.99 * np.sqrt(13.22 * 1.9858 / (4 * (1.9858 + 1))), 300)
grid = trimode.diagonalize(build_M_grid(1.9858, 13.22, G, G), check=False)

fig, ax = plt.subplots()
for i, name in enumerate(["polariton 1", "polariton 2"]):
    ax.plot(G, grid.omega[:, i], label=name)
ax.plot(G, 2 * grid.omega[:, 0], "k--", lw=0.8, label="2 x polariton 1")
ax.set_xlabel("G1 = G2")
ax.set_ylabel("frequency")
ax.legend()
plt.show()
