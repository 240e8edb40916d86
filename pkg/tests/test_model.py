import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from trimode import (ParameterError, SystemParams, bose, build_M, is_stable,
                     stability_margin, validate)

from conftest import make


def test_validate_normalizes_by_first_frequency():
    p = validate(SystemParams(omega_m1=2e6, omega_m2=4e6, delta=-1e8, kappa=2e4,
                              g1=10.0, g2=10.0, G1=1e5, G2=1e5, gamma1=4.0, gamma2=4.0,
                              temperature=1e6))
    assert p.omega_m1 == 1.0 and p.scale == 2e6
    assert p.omega_m2 == 2.0 and p.delta == -50.0
    assert p.kappa == pytest.approx(0.01) and p.G1 == pytest.approx(0.05)
    assert p.temperature == pytest.approx(0.5)
    assert p.N == pytest.approx(1e8)


def test_photon_number_resolves_couplings():
    p = validate(SystemParams(omega_m2=2, delta=-50, kappa=0.02, g1=1e-4, g2=2e-4, N=4e6))
    assert p.G1 == pytest.approx(0.2) and p.G2 == pytest.approx(0.4)


def test_consistent_couplings_and_photon_number_accepted():
    p = validate(SystemParams(omega_m2=2, delta=-50, kappa=0.02, g1=1e-4, g2=1e-4,
                              G1=0.3, G2=0.3, N=9e6))
    assert p.N == 9e6


@pytest.mark.parametrize("kw, code", [
    (dict(G1=0.3, G2=0.3, N=1e6), "CouplingInconsistency"),
    (dict(G1=0.3, G2=0.2), "CouplingInconsistency"),
    (dict(G1=0.3), "MissingCoupling"),
    (dict(G1=0.3, G2=0.3, delta=0.0), "BlueDetuned"),
    (dict(G1=0.3, G2=0.3, delta=5.0), "BlueDetuned"),
    (dict(G1=0.3, G2=0.3, kappa=0.0), "NegativeDamping"),
    (dict(G1=0.3, G2=0.3, gamma2=-1e-6), "NegativeDamping"),
    (dict(G1=-0.3, G2=0.3), "NegativeCoupling"),
    (dict(G1=0.3, G2=0.3, omega_m2=0.5), "NonPositiveFrequency"),
    (dict(G1=0.3, G2=0.3, temperature=-1.0), "NegativeTemperature"),
    (dict(G1=math.nan, G2=0.3), "NonFinite"),
])
def test_validation_errors(kw, code):
    base = dict(omega_m2=2.0, delta=-50.0, kappa=0.02, g1=1e-4, g2=1e-4)
    base.update(kw)
    with pytest.raises(ParameterError) as info:
        validate(SystemParams(**base))
    assert code in info.value.codes


def test_all_violations_reported_together():
    with pytest.raises(ParameterError) as info:
        validate(SystemParams(omega_m2=2, delta=1.0, kappa=-1.0, G1=0.1, G2=0.1))
    assert {"BlueDetuned", "NegativeDamping"} <= set(info.value.codes)


def test_replace_drops_photon_number_with_new_couplings():
    p = validate(SystemParams(omega_m2=2, delta=-50, kappa=0.02, g1=1e-4, g2=1e-4, N=9e6))
    assert p.replace(G1=0.1).N is None
    assert p.replace(kappa=0.1).N == 9e6


def test_margin_is_determinant_over_detuning(params):
    det = np.linalg.det(build_M(params))
    expected = det / (params.abs_delta * params.omega_m1 * params.omega_m2)
    assert stability_margin(params) == pytest.approx(expected, rel=1e-10)


def test_boundary_counts_as_stable():
    d, q = 40.0, 1.5
    G = math.sqrt(d * q / (4 * (q + 1)))  # G1 = G2 on the boundary
    p = make(omega_m2=q, delta=-d, G1=G, G2=G)
    assert abs(stability_margin(p)) < 1e-12 * d
    assert is_stable(p)
    assert not is_stable(p.replace(G1=G * 1.001, G2=G * 1.001))


@settings(max_examples=200, deadline=None)
@given(q=st.floats(1.0, 3.0), d=st.floats(30.0, 500.0),
       a=st.floats(0.0, 1.0), b=st.floats(0.0, 1.0))
def test_large_detuning_criterion_implies_exact(q, d, a, b):
    G1 = a * min(math.sqrt(d / 4), d / 10)
    G2 = b * min(math.sqrt(d * q / 4), d / 10)
    p = make(omega_m2=q, delta=-d, G1=G1, G2=G2)
    if d >= 10 * max(q, G1, G2) and is_stable(p):
        assert is_stable(p, exact=True)


@settings(max_examples=100, deadline=None)
@given(q=st.floats(1.0, 3.0), d=st.floats(2.0, 200.0), a=st.floats(0.0, 1.2))
def test_exact_criterion_matches_determinant_sign(q, d, a):
    G = a * math.sqrt(d * q / (4 * (q + 1)))
    p = make(omega_m2=q, delta=-d, G1=G, G2=G)
    m = stability_margin(p)
    if abs(m) > 1e-8 * d * q:
        assert is_stable(p, exact=True) == (m > 0)


def test_bose():
    assert np.all(bose([0.5, 1.0], 0.0) == 0.0)
    assert bose(1.0, 1e3) == pytest.approx(1e3 - 0.5, rel=1e-6)
    assert bose(1.0, 0.01) < 1e-40
