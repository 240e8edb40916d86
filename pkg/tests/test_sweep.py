import math

import numpy as np
import pytest

from trimode import analytic, is_stable, polariton_basis, sweep
from trimode.sweep import (EmptyFeasibleSet, SweepResult, UnknownScenario, golden_section_max,
                           locus_ceff2, maximize_over_delta, resonance_coupling)

from conftest import make

FIG2 = dict(omega_m2=1.9)


def test_map_zero_coupling_column_has_no_deviation():
    res = sweep.map_I(make(**FIG2), [0.0, 0.2], [10.0, 30.0])
    zero = res["G2"] == 0
    assert np.all(res["I"][zero] == 0) and np.all(res["stable"][zero])
    assert np.all(res["I"][~zero] > 0)


def test_map_marks_unstable_cells():
    res = sweep.map_I(make(**FIG2), [0.1, 5.0], [10.0])
    assert list(res["stable"]) == [True, False]
    assert math.isnan(res["log10_I"][1]) and math.isnan(res["omega1"][1])


def test_map_stability_mask_matches_closed_condition():
    p = make(**FIG2)
    G2 = np.linspace(0, 6, 61)
    D = np.linspace(50, 150, 6)
    res = sweep.map_I(p, G2, D)
    mask = res["stable"].reshape(D.size, G2.size)
    for i, d in enumerate(D):
        closed = np.array([is_stable(p.replace(delta=-d, G1=g, G2=g)) for g in G2])
        assert np.sum(mask[i] != closed) <= 1


def test_map_ridge_follows_resonance_locus():
    # rows stop at 0.8 G_stab: next to the instability omega_1 -> 0 and the
    # occupations diverge, which outgrows the resonance line
    p = make(**FIG2)
    for d in (10.0, 20.0, 40.0, 80.0, 150.0):
        G_stab = math.sqrt(d * 1.9 / (4 * 2.9))
        G2 = np.linspace(0.02, 0.8 * G_stab, 201)
        res = sweep.map_I(p, G2, [d])
        G_res = resonance_coupling(p, d)[0][0]
        assert abs(G2[np.nanargmax(res["log10_I"])] - G_res) <= G2[1] - G2[0]


def test_map_grows_toward_instability_edge():
    p = make(**FIG2)
    G_stab = math.sqrt(10 * 1.9 / (4 * 2.9))
    res = sweep.map_I(p, [0.9 * G_stab, 0.99 * G_stab, 0.999 * G_stab], [10.0])
    assert np.all(np.diff(res["log10_I"]) > 0)


def test_locus_residuals_and_prefactor():
    p = make(**FIG2)
    D = np.geomspace(5, 2000, 40)
    locus = sweep.trace_resonance(p, D)
    assert len(locus) == D.size and not locus.missing
    assert max(pt.residual for pt in locus) < 1e-8
    for pt in locus:
        b = polariton_basis(p.replace(delta=pt.delta, G1=pt.G1, G2=pt.G2_res))
        assert abs(b.omega[1] - 2 * b.omega[0]) < 1e-8
    # large |delta|: G2 / sqrt|delta| tends to the reduced-problem prefactor
    c = analytic.resonance_prefactor(1.9)
    ratio = locus.array("G2_res") / np.sqrt(D) / c
    assert abs(ratio[-1] - 1) < 0.01
    assert abs(ratio[-1] - 1) < abs(ratio[10] - 1)


def test_locus_at_exact_frequency_doubling_starts_at_zero():
    p = make(omega_m2=2.0)
    G, _ = resonance_coupling(p, [10.0, 50.0])
    assert np.all(G == 0.0)


def test_locus_absent_above_doubling():
    p = make(omega_m2=2.1)
    locus = sweep.trace_resonance(p, np.geomspace(10, 500, 8))
    assert len(locus) == 0
    assert all(reason == "NoRootInBracket" for _, reason in locus.missing)
    assert len(locus.missing) == 8


def test_cooperativity_trace_feasible_maximum():
    p = make(omega_m2=1.97)
    locus = sweep.trace_resonance(p, np.geomspace(3, 200, 60))
    tab = sweep.cooperativity_trace(locus, G_max=0.5)
    feas = tab["feasible"]
    assert feas[0] and not feas[-1]
    best = tab.meta["best"]
    assert feas[best]
    assert tab["C_eff2"][best] == np.max(tab["C_eff2"][feas])
    assert max(tab["G2"][best], tab["G2"][best]) <= 0.5


def test_zero_damping_trace_is_monotone():
    p = make(omega_m2=1.99, gamma1=0.0, gamma2=0.0)
    tab = sweep.cooperativity_trace(sweep.trace_resonance(p, np.linspace(20, 60, 21)))
    assert np.all(np.diff(tab["C_eff2"]) > 0)
    law = analytic.ceff2_small_delta(-tab["delta"], p.g1, p.kappa)
    assert np.all(np.abs(tab["C_eff2"] / law - 1) < 0.2)


def test_golden_section_scalar_and_vector():
    x, fx = golden_section_max(lambda t: -(t - 0.3) ** 2, -1.0, 2.0, tol=1e-12)
    assert x == pytest.approx(0.3, abs=1e-6) and isinstance(x, float)
    centers = np.array([0.1, 0.5, 0.9])
    x, fx = golden_section_max(lambda t: -(t - centers) ** 2, np.zeros(3), np.ones(3),
                               tol=1e-12)
    assert np.allclose(x, centers, atol=1e-6)
    # infeasible right part: the search stays on the feasible side
    x, fx = golden_section_max(lambda t: t if t <= 0.7 else -np.inf, 0.0, 1.0, tol=1e-12)
    assert x == pytest.approx(0.7, abs=1e-6)


def test_maximize_over_delta_agrees_with_dense_scan():
    p = make(omega_m2=1.98)
    c, d, G2 = maximize_over_delta(p, G_max=0.4)
    D = np.geomspace(1.5 * 1.98, 200, 2000)
    dense, _ = locus_ceff2(p, D, G_max=0.4)
    assert c >= dense.max() * (1 - 1e-9)
    assert G2 <= 0.4 * (1 + 1e-9)


def test_optimize_small_grid_and_feasibility():
    p = make()
    rep = sweep.optimize(p, 0.3, ratio_range=(1.982, 1.99, 5), ratio_g_range=(1.0, 1.0, 1))
    assert rep.G_opt <= 0.3 * (1 + 1e-9)
    b = polariton_basis(p.replace(omega_m2=rep.ratio_opt, delta=rep.delta_opt,
                                  G1=rep.extra["G1_opt"], G2=rep.extra["G2_opt"]))
    assert abs(b.omega[1] - 2 * b.omega[0]) < 1e-8
    assert rep.R == pytest.approx(900.0)
    assert 0.5 < rep.C_tilde / rep.analytic_C < 1.5


def test_optimize_empty_feasible_set():
    with pytest.raises(EmptyFeasibleSet):
        sweep.optimize(make(), 0.01, ratio_range=(1.8, 1.9, 3), ratio_g_range=(1.0, 1.0, 1))


@pytest.mark.slow
def test_optimize_is_grid_refinement_stable():
    p = make()
    a = sweep.optimize(p, 0.3)
    b = sweep.optimize(p, 0.3, ratio_range=(2 - 3 * 0.0138, 2 - 0.2 * 0.0138, 29),
                       ratio_g_range=(0.8, 1.25, 19))
    assert abs(b.C_tilde / a.C_tilde - 1) < 0.02


def test_scenarios():
    with pytest.raises(UnknownScenario):
        sweep.scenario("nobody")
    p, G_max = sweep.scenario_params("Teufel")
    assert p.kappa == pytest.approx(170e3 / 10.69e6)
    assert G_max == pytest.approx(0.5e6 / 10.69e6)


def test_csv_serialization():
    t = SweepResult({"a": np.array([1.0, np.nan]), "ok": np.array([True, False])})
    text = t.to_csv()
    lines = text.splitlines()
    assert lines[0] == "# all frequencies in units of omega_m1 unless units=Hz"
    assert lines[1:] == ["a,ok", "1,1", ",0"]
