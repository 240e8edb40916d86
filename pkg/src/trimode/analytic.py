"""Closed-form large-detuning results, valid for ``|delta| >> omega_mi, G_i``.

All quantities are in units of omega_m1. Where a single mechanical damping
appears it is ``gamma1`` (the formulas assume equal mechanical dampings);
``gamma2`` enters only through :func:`ceff2_large_detuning`.
"""

from __future__ import annotations

import math

import numpy as np

from .model import ValidatedParams

__all__ = [
    "C0", "C1", "C2",
    "dampings",
    "occupation_n1",
    "g211",
    "ceff2_large_detuning",
    "resonance_G2",
    "resonance_prefactor",
    "enhancement_R",
    "ceff2_at_gmax",
    "resonant_delta",
    "optimal_ceff2",
    "optimal_ratio",
    "optical_damping_on_resonance",
    "delta_star",
    "ceff2_small_delta",
    "ceff2_upper_estimate",
    "ratio_estimate",
    "two_mode_ceff",
]

SQRT5 = math.sqrt(5.0)
C1 = 9 * (5 * SQRT5 - 11) / 4
C2 = 9 * (7 - 3 * SQRT5) / (16 * (SQRT5 - 1)) ** (1 / 3)
C0 = (SQRT5 + 1) ** (1 / 3)


def dampings(params: ValidatedParams):
    """``kappa_i ~ 4 G_i^2 w_mi kappa / |D|^3 + gamma_i`` for i = 1, 2."""
    p = params
    d3 = p.abs_delta ** 3
    return np.array([
        4 * p.G1 ** 2 * p.omega_m1 * p.kappa / d3 + p.gamma1,
        4 * p.G2 ** 2 * p.omega_m2 * p.kappa / d3 + p.gamma2,
    ])


def occupation_n1(params: ValidatedParams):
    """``n1 ~ (gamma1 D^2 / (kappa G1^2) + 4 w_m1 / |D|)^-1`` at zero temperature."""
    p = params
    if p.G1 == 0:
        return 0.0
    return 1.0 / (p.gamma1 * p.delta ** 2 / (p.kappa * p.G1 ** 2) + 4 * p.omega_m1 / p.abs_delta)


def g211(params: ValidatedParams):
    """``g211 ~ 3 g1 G1 G2 / D^2`` (derived for g1 = g2, G1 = G2)."""
    p = params
    return 3 * p.g1 * p.G1 * p.G2 / p.delta ** 2


def ceff2_large_detuning(g, G2, abs_delta, kappa, gamma1, gamma2=None, omega_m1=1.0):
    """C_eff,2 at resonance for g1 = g2 = g, G1 = G2 and w_m2 ~ 2 w_m1.

    ``G2`` and ``abs_delta`` are assumed to satisfy the resonance condition.
    """
    if gamma2 is None:
        gamma2 = gamma1
    d = np.asarray(abs_delta, dtype=float)
    G2 = np.asarray(G2, dtype=float)
    num = 72 * kappa * g ** 2 * G2 ** 6 * d ** 3 * (
        1 + gamma1 * d ** 2 / (2 * kappa * G2 ** 2) + 2 * omega_m1 / d)
    den = ((4 * G2 ** 2 * omega_m1 * kappa + gamma1 * d ** 3) ** 2
           * (8 * G2 ** 2 * omega_m1 * kappa + gamma2 * d ** 3))
    return num / den


def resonance_G2(ratio, abs_delta, omega_m1=1.0):
    """``G2 ~ sqrt((w_m1 - w_m2 / 2) |D|)``; NaN when ``w_m2 > 2 w_m1``."""
    arg = (omega_m1 - 0.5 * ratio * omega_m1) * np.asarray(abs_delta, dtype=float)
    with np.errstate(invalid="ignore"):
        return np.sqrt(np.where(arg >= 0, arg, np.nan))


def _lowest_pair(s, ratio, g_ratio):
    # squared frequencies of the reduced 2x2 problem with s = G2^2 / |D|
    r = g_ratio
    b11, b22, b12 = 4 * s * r * r, 4 * s * ratio, 4 * s * r * math.sqrt(ratio)
    a, b = 1 - b11, ratio ** 2 - b22
    root = math.sqrt((a - b) ** 2 + 4 * b12 ** 2)
    return 0.5 * (a + b - root), 0.5 * (a + b + root)


def resonance_prefactor(ratio, g_ratio=1.0):
    """Prefactor ``c`` of the large-detuning locus ``G2 = c sqrt(w_m1 |D|)``.

    From the reduced 2x2 frequencies, which depend on G and D only through
    ``G^2 / |D|``; the resonance ``w2 = 2 w1`` then fixes ``c``. Solved by
    bisection between zero coupling and the stability edge. NaN if there is
    no crossing (``w_m2 >= 2 w_m1``).
    """
    def f(s):
        lo, hi = _lowest_pair(s, ratio, g_ratio)
        return math.sqrt(hi) - 2 * math.sqrt(max(lo, 0.0))

    s_hi = ratio / (4 * (g_ratio ** 2 * ratio + 1))
    if f(0.0) >= 0 or f(s_hi) <= 0:
        return math.nan
    a, b = 0.0, s_hi
    for _ in range(200):
        m = 0.5 * (a + b)
        if f(m) < 0:
            a = m
        else:
            b = m
        if b - a <= 1e-16 * s_hi:
            break
    return math.sqrt(0.5 * (a + b))


def enhancement_R(G_max, kappa, gamma, omega_m1=1.0):
    """``R = (G_max / w_m1)^2 kappa / gamma``."""
    return (G_max / omega_m1) ** 2 * kappa / gamma


def ceff2_at_gmax(g, G_max, abs_delta, kappa, gamma, omega_m1=1.0):
    """C_eff,2 with ``G2 = G_max`` and the numerator correction dropped (R >> 1)."""
    d = np.asarray(abs_delta, dtype=float)
    num = 72 * kappa * g ** 2 * G_max ** 6 * d ** 3
    den = ((4 * G_max ** 2 * omega_m1 * kappa + gamma * d ** 3) ** 2
           * (8 * G_max ** 2 * omega_m1 * kappa + gamma * d ** 3))
    return num / den


def resonant_delta(G_max, ratio, omega_m1=1.0):
    """Detuning at which the locus reaches ``G2 = G_max``."""
    return G_max ** 2 / omega_m1 / (1 - ratio / 2)


def optimal_ceff2(G_max, g, kappa, gamma, omega_m1=1.0):
    """``(c1 R + c2 R^(2/3)) (g / kappa)^2``."""
    R = enhancement_R(G_max, kappa, gamma, omega_m1)
    return (C1 * R + C2 * R ** (2 / 3)) * (g / kappa) ** 2


def optimal_ratio(G_max, kappa, gamma, omega_m1=1.0):
    """``w_m2 / w_m1 ~ 2 - c0 (gamma / kappa)^(1/3) (G_max / w_m1)^(4/3)``."""
    return 2 - C0 * (gamma / kappa) ** (1 / 3) * (G_max / omega_m1) ** (4 / 3)


def optical_damping_on_resonance(ratio, abs_delta, kappa, omega_m1=1.0):
    """Optical part of kappa_1 on the locus: ``(1 - r/2) 4 w_m1^2 kappa / D^2``."""
    return (1 - ratio / 2) * 4 * omega_m1 ** 2 * kappa / np.asarray(abs_delta) ** 2


def delta_star(ratio, kappa, gamma, omega_m1=1.0):
    """Rough location of the C_eff,2 maximum along the locus."""
    return math.sqrt(kappa / gamma * (1 - ratio / 2)) * omega_m1


def ceff2_small_delta(abs_delta, g, kappa, omega_m1=1.0):
    """``(9/16) (g / kappa)^2 (|D| / w_m1)^3``: the gamma = 0 growth law."""
    return 9 / 16 * (g / kappa) ** 2 * (np.asarray(abs_delta) / omega_m1) ** 3


def ceff2_upper_estimate(ratio, g, kappa, gamma):
    """``(g / kappa)^2 [kappa / gamma (1 - r/2)]^(3/2)``."""
    return (g / kappa) ** 2 * (kappa / gamma * (1 - ratio / 2)) ** 1.5


def ratio_estimate(G_max, kappa, gamma, omega_m1=1.0):
    """Order-of-magnitude optimum: ``1 - r/2 ~ (gamma/kappa)^(1/3) G_max^(4/3)``."""
    return 2 * (1 - (gamma / kappa) ** (1 / 3) * (G_max / omega_m1) ** (4 / 3))


def two_mode_ceff(g, kappa):
    """Best effective cooperativity of a single-oscillator cavity, ``45/8 (g/kappa)^2``."""
    return 45 / 8 * (g / kappa) ** 2
