import numpy as np
import pytest

from trimode import SystemParams, validate

# operating point near the G_max = 0.3 optimum (kappa = 0.02, gamma = 2e-6)
BASE = dict(omega_m2=1.9858, delta=-13.22, kappa=0.02, g1=2e-4, g2=2e-4,
            G1=0.3, G2=0.3, gamma1=2e-6, gamma2=2e-6)


N_BASE = (0.3 / 2e-4) ** 2


def make(**changes):
    """Base parameters with changes; new G's keep the photon number unless
    g's are given too."""
    kw = dict(BASE)
    kw.update(changes)
    for i in ("1", "2"):
        if "G" + i in changes and "g" + i not in changes:
            G = changes["G" + i]
            kw["g" + i] = G / np.sqrt(N_BASE) if G > 1e-12 else 0.0
    return validate(SystemParams(**kw))


@pytest.fixture
def params():
    return make()


def random_stable(rng, n, q_range=(1.0, 3.0), d_range=(2.0, 200.0), fill=0.95):
    """Random stable points with G1/G2 sharing one photon number."""
    out = []
    for _ in range(n):
        q = rng.uniform(*q_range)
        d = rng.uniform(*d_range)
        a, b = rng.uniform(0, 1, 2)
        # stable iff 4 G1^2 q + 4 G2^2 <= d q; sample inside that ellipse
        G1 = a * np.sqrt(fill * d / 4)
        G2 = b * np.sqrt(max(fill * d * q / 4 - G1 ** 2 * q, 0.0))
        out.append(validate(SystemParams(omega_m2=q, delta=-d, kappa=rng.uniform(1e-3, 0.1),
                                         G1=G1, G2=G2, gamma1=1e-6, gamma2=1e-6)))
    return out
