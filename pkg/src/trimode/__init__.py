"""Nonlinear response of a driven cavity coupled to two mechanical oscillators.

Frequencies are dimensionless, in units of the first mechanical frequency.
Typical use::

    from trimode import SystemParams, validate, analyze
    p = validate(SystemParams(omega_m2=1.9858, delta=-13.22, kappa=0.02,
                              g1=2e-4, g2=2e-4, G1=0.3, G2=0.3,
                              gamma1=2e-6, gamma2=2e-6))
    r = analyze(p)
    r.basis.omega, r.linear.kappa, r.nonlinear.c_eff
"""

__version__ = "0.1.0"

from .model import (
    ParameterError,
    SystemParams,
    ValidatedParams,
    Violation,
    bose,
    is_stable,
    stability_margin,
    validate,
)
from .bogoliubov import (
    DegeneracyWarning,
    DegenerateRotation,
    NegativeSquaredFrequency,
    NotDegenerate,
    PolaritonBasis,
    UnstableSpectrum,
    build_M,
    dark_bright_reduce,
    diagonalize,
    jacobi_eigh,
    perturbative_frequencies,
    perturbative_U,
    polariton_basis,
)
from .response import (
    NegativeCooperativityWarning,
    NegativePopulationInversion,
    OverlapWarning,
    Response,
    analyze,
    cavity_dos,
    cooperativities,
    dos_sum_rule,
    frequency_grid,
    g211,
    linear_response,
    metric_I,
    nonlinear_response,
    peak_splittings,
    self_energies,
)
from .sweep import (
    EmptyFeasibleSet,
    OptimumReport,
    ResonancePoint,
    SweepResult,
    UnknownScenario,
    cooperativity_trace,
    map_I,
    optimize,
    scenario,
    trace_resonance,
)
from . import analytic

__all__ = [name for name in dir() if not name.startswith("_")]
