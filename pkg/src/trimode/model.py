"""Parameters of the driven cavity + two mechanical oscillators system.

All quantities handled downstream are dimensionless, measured in units of
the first mechanical frequency ``omega_m1``. :func:`validate` performs that
normalization once and returns a :class:`ValidatedParams` which every other
module consumes.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "SystemParams",
    "ValidatedParams",
    "ParameterError",
    "Violation",
    "validate",
    "is_stable",
    "stability_margin",
    "bose",
]

# relative tolerance for the G = g sqrt(N) consistency check
_COUPLING_RTOL = 1e-9


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


class ParameterError(ValueError):
    """Raised by :func:`validate`; ``violations`` lists every broken invariant."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(f"{v.code}: {v.message}" for v in self.violations))

    @property
    def codes(self):
        return tuple(v.code for v in self.violations)


@dataclass(frozen=True)
class SystemParams:
    """Raw physical parameters, in arbitrary but common frequency units.

    Either the dressed couplings ``G1``/``G2`` or the photon number ``N`` must
    be given (or both, in which case they must agree with ``g1``/``g2``).
    ``temperature`` is the mechanical bath temperature in frequency units
    (k_B = hbar = 1); the cavity bath is always at zero temperature.
    """

    omega_m2: float
    delta: float
    kappa: float
    omega_m1: float = 1.0
    g1: float = 0.0
    g2: float = 0.0
    G1: Optional[float] = None
    G2: Optional[float] = None
    N: Optional[float] = None
    gamma1: float = 0.0
    gamma2: float = 0.0
    temperature: float = 0.0


@dataclass(frozen=True)
class ValidatedParams:
    """Normalized parameters (``omega_m1 == 1``), with ``G1``/``G2`` resolved.

    ``scale`` is the original value of omega_m1, used to convert frequency
    outputs back to the caller's units.
    """

    omega_m2: float
    delta: float
    kappa: float
    g1: float
    g2: float
    G1: float
    G2: float
    gamma1: float = 0.0
    gamma2: float = 0.0
    temperature: float = 0.0
    N: Optional[float] = None
    scale: float = 1.0
    omega_m1: float = 1.0

    @property
    def abs_delta(self) -> float:
        return abs(self.delta)

    @property
    def omega_m(self) -> np.ndarray:
        return np.array([self.omega_m1, self.omega_m2])

    def replace(self, **changes) -> "ValidatedParams":
        """Copy with some fields changed; ``N`` is dropped if couplings change."""
        if {"G1", "G2", "g1", "g2"} & changes.keys() and "N" not in changes:
            changes["N"] = None
        return dataclasses.replace(self, **changes)


def _photon_number(G, g):
    if G is None or g == 0:
        return None
    return (G / g) ** 2


def validate(params: SystemParams) -> ValidatedParams:
    """Check invariants and normalize to units of ``omega_m1``.

    Raises
    ------
    ParameterError
        Listing every violation found (codes ``NonPositiveFrequency``,
        ``NegativeDamping``, ``BlueDetuned``, ``NegativeCoupling``,
        ``MissingCoupling``, ``CouplingInconsistency``).
    """
    p = params
    errs = []

    def bad(code, msg):
        errs.append(Violation(code, msg))

    finite = [p.omega_m1, p.omega_m2, p.delta, p.kappa, p.g1, p.g2, p.gamma1,
              p.gamma2, p.temperature]
    finite += [x for x in (p.G1, p.G2, p.N) if x is not None]
    if not all(math.isfinite(x) for x in finite):
        bad("NonFinite", "all parameters must be finite numbers")
        raise ParameterError(errs)

    if p.omega_m1 <= 0:
        bad("NonPositiveFrequency", f"omega_m1 = {p.omega_m1} must be > 0")
    if p.omega_m2 < p.omega_m1 or p.omega_m2 <= 0:
        bad("NonPositiveFrequency",
            f"omega_m2 = {p.omega_m2} must satisfy omega_m2 >= omega_m1 > 0")
    if p.kappa <= 0:
        bad("NegativeDamping", f"kappa = {p.kappa} must be > 0")
    for name in ("gamma1", "gamma2"):
        if getattr(p, name) < 0:
            bad("NegativeDamping", f"{name} = {getattr(p, name)} must be >= 0")
    if p.temperature < 0:
        bad("NegativeTemperature", f"temperature = {p.temperature} must be >= 0")
    if p.delta >= 0:
        bad("BlueDetuned", f"delta = {p.delta} must be < 0 (red detuning)")
    for name in ("g1", "g2", "G1", "G2", "N"):
        val = getattr(p, name)
        if val is not None and val < 0:
            bad("NegativeCoupling", f"{name} = {val} must be >= 0")
    if errs:
        raise ParameterError(errs)

    G = [p.G1, p.G2]
    g = [p.g1, p.g2]
    N = p.N
    if N is not None:
        for i in range(2):
            expected = g[i] * math.sqrt(N)
            if G[i] is None:
                G[i] = expected
            elif not math.isclose(G[i], expected, rel_tol=_COUPLING_RTOL, abs_tol=1e-300):
                bad("CouplingInconsistency",
                    f"G{i + 1} = {G[i]} differs from g{i + 1}*sqrt(N) = {expected}")
    else:
        if G[0] is None or G[1] is None:
            bad("MissingCoupling", "supply G1 and G2, or the photon number N")
            raise ParameterError(errs)
        n1, n2 = _photon_number(G[0], g[0]), _photon_number(G[1], g[1])
        if n1 is not None and n2 is not None and not math.isclose(n1, n2, rel_tol=_COUPLING_RTOL):
            bad("CouplingInconsistency",
                f"photon numbers (G1/g1)^2 = {n1:.6g} and (G2/g2)^2 = {n2:.6g} disagree")
        N = n1 if n1 is not None else n2
    if errs:
        raise ParameterError(errs)

    s = p.omega_m1
    return ValidatedParams(
        omega_m2=p.omega_m2 / s,
        delta=p.delta / s,
        kappa=p.kappa / s,
        g1=p.g1 / s,
        g2=p.g2 / s,
        G1=G[0] / s,
        G2=G[1] / s,
        gamma1=p.gamma1 / s,
        gamma2=p.gamma2 / s,
        temperature=p.temperature / s,
        N=N,
        scale=s,
    )


def stability_margin(params: ValidatedParams) -> float:
    """``|delta| w1 w2 - 4 G1^2 w2 - 4 G2^2 w1``; non-negative when stable.

    This is also ``det(M) / (|delta| w1 w2)`` for the quadrature matrix M, so the zero
    of the margin coincides with the exact linear-stability boundary.
    """
    p = params
    return (p.abs_delta * p.omega_m1 * p.omega_m2
            - 4 * p.G1 ** 2 * p.omega_m2 - 4 * p.G2 ** 2 * p.omega_m1)


def is_stable(params: ValidatedParams, exact: bool = False) -> bool:
    """Linear stability of the red-detuned steady state.

    By default uses the closed large-detuning inequality
    ``4 G1^2 w_m2 + 4 G2^2 w_m1 <= |delta| w_m1 w_m2`` (boundary counts as
    stable). With ``exact=True`` the smallest eigenvalue of the quadrature
    matrix is checked against numerical zero instead.
    """
    if not exact:
        p = params
        lhs = 4 * p.G1 ** 2 * p.omega_m2 + 4 * p.G2 ** 2 * p.omega_m1
        rhs = p.abs_delta * p.omega_m1 * p.omega_m2
        return bool(lhs <= rhs * (1 + 4 * np.finfo(float).eps))

    from .bogoliubov import build_M, jacobi_eigh

    evals, _ = jacobi_eigh(build_M(params))
    return bool(evals.min() >= -1e-12 * params.delta ** 2)


def bose(omega, temperature):
    """Bose-Einstein occupation ``1 / (exp(omega/T) - 1)``; zero at ``T == 0``."""
    omega = np.asarray(omega, dtype=float)
    if temperature <= 0:
        return np.zeros_like(omega)
    with np.errstate(over="ignore", divide="ignore"):
        return 1.0 / np.expm1(omega / temperature)
