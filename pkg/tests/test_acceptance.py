"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (visible under ``pytest -v``
and when this file is run as a script) before asserting.
"""

import math
import sys
import warnings

import numpy as np
import pytest

from trimode import (SystemParams, analytic, analyze, diagonalize, dos_sum_rule,
                     perturbative_frequencies, sweep, validate)
from trimode.bogoliubov import build_M_grid
from trimode.sweep import maximize_over_delta, resonance_coupling

KAPPA, GAMMA, G_SINGLE = 0.02, 2e-6, 2e-4
_printer = None


def params(**kw):
    base = dict(omega_m2=1.9858, delta=-13.22, kappa=KAPPA, g1=G_SINGLE, g2=G_SINGLE,
                G1=0.3, G2=0.3, gamma1=GAMMA, gamma2=GAMMA)
    base.update(kw)
    return validate(SystemParams(**base))


@pytest.fixture(autouse=True)
def _visible(capsys):
    global _printer

    def show(line):
        with capsys.disabled():
            print("\n" + line)
    _printer = show
    yield
    _printer = None


def verdict(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    (_printer or print)(line)
    return ok


# 1 ------------------------------------------------------------------------

def test_criterion_01_symplectic_suite():
    rng = np.random.default_rng(2024)
    n = 1000
    q = rng.uniform(1.0, 3.0, n)
    d = rng.uniform(2.0, 300.0, n)
    a, b = rng.uniform(0, 1, (2, n))
    # sample inside the stable ellipse 4 G1^2 q + 4 G2^2 <= d q (G1 = g1 sqrt N etc.)
    G1 = a * np.sqrt(0.999 * d / 4)
    G2 = b * np.sqrt(np.maximum(0.999 * d * q / 4 - G1 ** 2 * q, 0))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        basis = diagonalize(build_M_grid(q, d, G1, G2))
    assert np.all(basis.stable)
    u, m = basis.u, basis.m
    dm = np.swapaxes(u, -1, -2) @ m @ u
    off = np.abs(dm - dm * np.eye(3)).max(axis=(-1, -2)) / d ** 2
    sym = basis.symplectic_residual()
    rule = np.abs(dos_sum_rule(basis) - 1)
    ok = off.max() < 1e-8 and sym.max() < 1e-10 and rule.max() < 1e-10
    verdict(1, ok, f"max offdiag/D^2 = {off.max():.2e}, symplectic = {sym.max():.2e}, "
                   f"sum rule = {rule.max():.2e} over {n} points")
    assert ok


# 2 ------------------------------------------------------------------------

def _perturbative_errors(d):
    p = params(omega_m2=2.0, delta=-d, G1=0.3, G2=0.3)
    r = analyze(p)
    return {
        "frequencies": np.max(np.abs(perturbative_frequencies(p) / r.basis.omega - 1)),
        "dampings": np.max(np.abs(analytic.dampings(p) / r.linear.kappa[:2] - 1)),
        "n1": abs(analytic.occupation_n1(p) / r.linear.n[0] - 1),
        "g211": abs(analytic.g211(p) / r.nonlinear.g211 - 1),
    }


def test_criterion_02_perturbative_oracle():
    e50, e100 = _perturbative_errors(50.0), _perturbative_errors(100.0)
    parts, ok = [], True
    for k in e50:
        ratio = e100[k] / e50[k]
        good = e50[k] < 0.15 and ratio <= 0.35
        ok &= good
        parts.append(f"{k}: err50 = {e50[k]:.2e}, ratio = {ratio:.3f}")
    verdict(2, ok, "; ".join(parts))
    assert ok


# 3 ------------------------------------------------------------------------

def test_criterion_03_resonance_locus():
    p = params(omega_m2=1.9)
    far = np.geomspace(50.0, 1000.0, 20)
    locus = sweep.trace_resonance(p, np.concatenate([np.geomspace(2.0, 49.0, 20), far]))
    pts = [pt for pt in locus if -pt.delta >= 50.0]
    rel = np.array([abs(pt.G2_res / analytic.resonance_G2(1.9, -pt.delta) - 1) for pt in pts])
    res = max(pt.residual for pt in locus)
    ok = len(pts) == far.size and rel.max() <= 0.10 and res < 1e-8 and not locus.missing
    verdict(3, ok, f"max |G2/sqrt(0.05|D|) - 1| = {rel.max():.3f} for |D| >= 50 "
                   f"(min {rel.min():.3f}), max residual = {res:.1e}")
    assert ok


# 4 ------------------------------------------------------------------------

def test_criterion_04_cubic_law():
    p = params(omega_m2=1.99, gamma1=0.0, gamma2=0.0)
    d = np.linspace(20.0, 80.0, 31)
    tab = sweep.cooperativity_trace(sweep.trace_resonance(p, d))
    slope, icpt = np.polyfit(np.log(-tab["delta"]), np.log(tab["C_eff2"]), 1)
    pref = math.exp(icpt) / (9 / 16 * (G_SINGLE / KAPPA) ** 2)
    ok = abs(slope - 3) <= 0.1 and abs(pref - 1) <= 0.2
    verdict(4, ok, f"slope = {slope:.4f}, prefactor / (9/16)(g/k)^2 = {pref:.4f}")
    assert ok


# 5 ------------------------------------------------------------------------

def test_criterion_05_interior_maximum():
    q = 1.9
    p = params(omega_m2=q)
    d = np.geomspace(1.5 * q, 1000.0, 201)
    c = sweep.cooperativity_trace(sweep.trace_resonance(p, d))["C_eff2"]
    interior = np.flatnonzero((c[1:-1] > c[:-2]) & (c[1:-1] > c[2:])) + 1
    _, d_max, _ = maximize_over_delta(p, None, delta_max=1000.0)
    d_star = analytic.delta_star(q, KAPPA, GAMMA)
    factor = d_max / d_star
    ok = interior.size == 1 and c.argmax() == interior[0] and 0.5 <= factor <= 2
    verdict(5, ok, f"{interior.size} interior maximum at |D| = {d_max:.2f}, "
                   f"|D*| = {d_star:.2f}, factor = {factor:.3f}")
    assert ok


# 6 ------------------------------------------------------------------------

@pytest.mark.parametrize("G_max", [0.1, 0.3, 0.5])
def test_criterion_06_optimizer_vs_closed_form(G_max):
    rep = sweep.optimize(params(), G_max)
    c_rel = rep.C_tilde / rep.analytic_C - 1
    dev_rel = (2 - rep.ratio_opt) / (2 - rep.analytic_ratio) - 1
    ok = abs(c_rel) <= 0.3 and abs(dev_rel) <= 0.3 and abs(rep.g_ratio_opt - 1) <= 0.02
    verdict(6, ok, f"G_max = {G_max}: C = {rep.C_tilde:.4e} vs {rep.analytic_C:.4e} "
                   f"({c_rel:+.3f}); ratio = {rep.ratio_opt:.5f} vs {rep.analytic_ratio:.5f} "
                   f"(deviation {dev_rel:+.3f}); g1/g2 = {rep.g_ratio_opt:.3f}")
    assert ok


# 7 ------------------------------------------------------------------------

@pytest.mark.parametrize("name, R_ref, C_ref, two_ref", [
    ("peterson", 6e3, 0.5e-4, 1e-7),
    ("teufel", 12.0, 2e-5, 1e-5),
])
def test_criterion_07_scenarios(name, R_ref, C_ref, two_ref):
    rep = sweep.scenario(name)
    two = rep.extra["two_mode_C"]
    ok = (abs(rep.R / R_ref - 1) <= 0.2 and 0.5 <= rep.C_tilde / C_ref <= 2
          and 0.5 <= two / two_ref <= 2)
    verdict(7, ok, f"{name}: R = {rep.R:.4g}, C = {rep.C_tilde:.3e}, "
                   f"two-mode C = {two:.3e}")
    assert ok


# 8 ------------------------------------------------------------------------

def test_criterion_08_lineshape():
    q, d = 1.9858, 13.22
    G2 = float(resonance_coupling(params(omega_m2=q), d)[0][0])
    strong = analyze(params(omega_m2=q, delta=-d, g1=0.1 * KAPPA, g2=0.1 * KAPPA, G1=G2, G2=G2))
    weak = analyze(params(omega_m2=q, delta=-d, g1=0.01 * KAPPA, g2=0.01 * KAPPA, G1=G2, G2=G2))
    xs, _ = strong.peaks(1)
    xw, _ = weak.peaks(1)
    d2 = float(strong.nonlinear.splittings.delta2)
    sep = xs[-1] - xs[0] if xs.size == 2 else float("nan")
    ok = xs.size == 2 and abs(sep / d2 - 1) <= 0.2 and xw.size == 1
    verdict(8, ok, f"G2 = {G2:.5f}; g = 0.1 kappa: {xs.size} maxima, separation / delta2 = "
                   f"{sep / d2:.3f}; g = 0.01 kappa: {xw.size} maximum")
    assert ok


# 9 ------------------------------------------------------------------------

def test_criterion_09_degenerate_suppression():
    i_deg = analyze(params(omega_m2=1.0)).metric_I()
    i_ref = analyze(params(omega_m2=1.99)).metric_I()
    ok = i_deg * 1e3 <= i_ref
    verdict(9, ok, f"I(1.00) = {i_deg:.3e}, I(1.99) = {i_ref:.3e}")
    assert ok


# 10 -----------------------------------------------------------------------

def test_criterion_10_peak_value_link():
    q, d = 1.9858, 13.22
    G2 = float(resonance_coupling(params(omega_m2=q), d)[0][0])
    worst, count = 0.0, 0
    for g in (5e-5, 1e-4, 2e-4, 3e-4, 5e-4):
        r = analyze(params(omega_m2=q, delta=-d, g1=g, g2=g, G1=G2, G2=G2))
        for j, c in enumerate((r.nonlinear.c_eff.c1, r.nonlinear.c_eff.c2)):
            if abs(c) > 0.3:
                continue
            w = r.basis.omega[j]
            rho, rho0 = r.dos(w), r.dos(w, include_nl=False)
            worst = max(worst, abs(abs(rho - rho0) / rho / abs(c) - 1))
            count += 1
    ok = count >= 6 and worst <= 0.15
    verdict(10, ok, f"max relative mismatch {worst:.2e} over {count} peaks with C <= 0.3")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
