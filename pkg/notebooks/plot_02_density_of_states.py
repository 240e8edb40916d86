"""
Cavity density of states
========================

Compare the cavity DOS with and without the three-wave self-energies near
the two mechanical-like polaritons.
"""

import numpy as np
import matplotlib.pyplot as plt

import trimode

##############################################################################
# Tune onto the three-wave resonance
# ----------------------------------
#
# The effect is largest when polariton 2 sits at twice polariton 1. We solve
# for that coupling at the chosen detuning, then use a single-photon
# coupling of a tenth of the cavity linewidth so the splitting is resolved.

base = trimode.validate(trimode.SystemParams(
    omega_m2=1.9858, delta=-13.22, kappa=0.02, g1=2e-3, g2=2e-3,
    G1=0.3, G2=0.3, gamma1=2e-6, gamma2=2e-6))
G2 = float(trimode.sweep.resonance_coupling(base, 13.22)[0][0])
p = trimode.validate(trimode.SystemParams(
    omega_m2=1.9858, delta=-13.22, kappa=0.02, g1=2e-3, g2=2e-3,
    G1=G2, G2=G2, gamma1=2e-6, gamma2=2e-6))
r = trimode.analyze(p)
print(f"G2 on resonance: {G2:.6f}")
print("cooperativities:", r.nonlinear.c_eff)

##############################################################################
# Lineshapes around each polariton
# --------------------------------

fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
for i, ax in enumerate(axes):
    c, hw = r.basis.omega[i], r.peak_window(i)
    x = np.linspace(c - hw, c + hw, 4001)
    ax.plot(x - c, r.dos(x, include_nl=False), label="linear")
    ax.plot(x - c, r.dos(x), label="with self-energy")
    ax.set_title(f"polariton {i + 1}")
    ax.set_xlabel("frequency offset")
axes[0].legend()
plt.show()

##############################################################################
# Peaks found on the nonlinear DOS near polariton 2 and the predicted
# splitting:

xs, _ = r.peaks(1)
print("maxima:", xs, "separation:", np.ptp(xs))
print("predicted:", r.nonlinear.splittings.delta2)
