"""Normal modes of the linearized three-mode Hamiltonian.

In quadrature coordinates the linear Hamiltonian reads
``sum_i p_i^2 / 2 + x^T M x / 2`` with the real symmetric matrix

    M = [[w1^2,              0,                 2 G1 sqrt(|D| w1)],
         [0,                 w2^2,              2 G2 sqrt(|D| w2)],
         [2 G1 sqrt(|D| w1), 2 G2 sqrt(|D| w2), D^2             ]]

An orthogonal ``U`` with ``U^T M U = diag(omega_i^2)`` gives the polariton
frequencies, and the Bogoliubov matrix ``V = (V+ V-)`` mapping
``(b1, b2, d)`` onto ``(c1, c2, c3, c1^+, c2^+, c3^+)`` follows from
``V+-[j, i] = U[j, i] f+-(x_j / omega_i)`` with ``f+-(r) = (sqrt(r) +- 1/sqrt(r)) / 2``
and bare frequencies ``x = (w1, w2, |D|)``.

Everything here accepts either a single matrix or a stack ``(..., 3, 3)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import ValidatedParams

__all__ = [
    "UnstableSpectrum",
    "NegativeSquaredFrequency",
    "DegenerateRotation",
    "NotDegenerate",
    "DegeneracyWarning",
    "PolaritonBasis",
    "jacobi_eigh",
    "build_M",
    "diagonalize",
    "polariton_basis",
    "bogoliubov_matrix",
    "perturbative_frequencies",
    "perturbative_U",
    "PerturbativeBasis",
    "dark_bright_reduce",
    "DarkBright",
]

JACOBI_TOL = 1e-13
_MAX_SWEEPS = 60
_PAIRS = ((0, 1), (0, 2), (1, 2))


class UnstableSpectrum(ArithmeticError):
    """omega_1^2 < 0: the linearized steady state is unstable."""


class NegativeSquaredFrequency(ArithmeticError):
    pass


class DegenerateRotation(ArithmeticError):
    pass


class NotDegenerate(ValueError):
    pass


class DegeneracyWarning(RuntimeWarning):
    """Two polariton frequencies coincide; off-diagonal Green's functions matter."""


def jacobi_eigh(a, tol=JACOBI_TOL):
    """Eigen-decomposition of real symmetric 3x3 matrices by cyclic Jacobi sweeps.

    Parameters
    ----------
    a : array_like, shape (..., 3, 3)
        Symmetric matrices; only the upper triangle is trusted.
    tol : float
        Sweeps stop once every off-diagonal entry satisfies
        ``|a_pq| <= tol * sqrt(|a_pp a_qq|)``. The scaled criterion keeps
        small eigenvalues accurate relative to themselves, which matters
        near the stability boundary where omega_1^2 << D^2.

    Returns
    -------
    evals : ndarray, shape (..., 3)
        Eigenvalues sorted ascending.
    evecs : ndarray, shape (..., 3, 3)
        Orthogonal matrix whose columns are eigenvectors; the entry of largest
        magnitude in each column is made positive.
    """
    a = np.array(a, dtype=float)
    if a.shape[-2:] != (3, 3):
        raise ValueError(f"expected (..., 3, 3) matrices, got shape {a.shape}")
    a = np.triu(a) + np.swapaxes(np.triu(a, 1), -1, -2)
    batch = a.shape[:-2]
    a = a.reshape(-1, 3, 3)
    v = np.broadcast_to(np.eye(3), a.shape).copy()
    scale = np.abs(a).max(axis=(-1, -2))
    floor = np.where(scale > 0, scale, 1.0) * 1e-300

    for _ in range(_MAX_SWEEPS):
        diag = np.abs(np.diagonal(a, axis1=-2, axis2=-1))
        done = True
        for p, q in _PAIRS:
            ref = np.maximum(np.sqrt(diag[:, p] * diag[:, q]), floor)
            if np.any(np.abs(a[:, p, q]) > tol * ref):
                done = False
                break
        if done:
            break
        for p, q in _PAIRS:
            apq = a[:, p, q]
            active = apq != 0
            safe = np.where(active, apq, 1.0)
            with np.errstate(over="ignore"):  # tiny a_pq: theta -> inf, t -> 0
                theta = (a[:, q, q] - a[:, p, p]) / (2.0 * safe)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(theta == 0, 1.0, t)
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            j = np.broadcast_to(np.eye(3), a.shape).copy()
            j[:, p, p] = c
            j[:, q, q] = c
            j[:, p, q] = s
            j[:, q, p] = -s
            a = np.swapaxes(j, -1, -2) @ a @ j
            a[:, p, q] = a[:, q, p] = 0.0
            v = v @ j
    else:
        warnings.warn("Jacobi iteration did not reach tolerance", RuntimeWarning)

    evals = np.diagonal(a, axis1=-2, axis2=-1).copy()
    order = np.argsort(evals, axis=-1, kind="stable")
    evals = np.take_along_axis(evals, order, axis=-1)
    v = np.take_along_axis(v, order[:, None, :], axis=-1)
    idx = np.abs(v).argmax(axis=-2)
    sign = np.sign(np.take_along_axis(v, idx[:, None, :], axis=-2))
    v = v * np.where(sign == 0, 1.0, sign)
    return evals.reshape(batch + (3,)), v.reshape(batch + (3, 3))


def build_M(params: ValidatedParams) -> np.ndarray:
    """Quadrature matrix M (units of omega_m1^2)."""
    p = params
    d = p.abs_delta
    m13 = 2 * p.G1 * math.sqrt(d * p.omega_m1)
    m23 = 2 * p.G2 * math.sqrt(d * p.omega_m2)
    return np.array([
        [p.omega_m1 ** 2, 0.0, m13],
        [0.0, p.omega_m2 ** 2, m23],
        [m13, m23, p.delta ** 2],
    ])


def build_M_grid(omega_m2, abs_delta, G1, G2, omega_m1=1.0):
    """Broadcasting version of :func:`build_M` for parameter grids."""
    omega_m2, abs_delta, G1, G2 = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (omega_m2, abs_delta, G1, G2)))
    m = np.zeros(omega_m2.shape + (3, 3))
    m[..., 0, 0] = omega_m1 ** 2
    m[..., 1, 1] = omega_m2 ** 2
    m[..., 2, 2] = abs_delta ** 2
    m[..., 0, 2] = m[..., 2, 0] = 2 * G1 * np.sqrt(abs_delta * omega_m1)
    m[..., 1, 2] = m[..., 2, 1] = 2 * G2 * np.sqrt(abs_delta * omega_m2)
    return m


def bogoliubov_matrix(u, omega, bare):
    """Assemble V = (V+ V-) from U, polariton and bare frequencies."""
    u = np.asarray(u, dtype=float)
    omega = np.asarray(omega, dtype=float)
    bare = np.asarray(bare, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = bare[..., :, None] / omega[..., None, :]
        sq = np.sqrt(r)
        fp = 0.5 * (sq + 1.0 / sq)
        fm = 0.5 * (sq - 1.0 / sq)
    return np.concatenate([u * fp, u * fm], axis=-1)


@dataclass(frozen=True)
class PolaritonBasis:
    """Polariton frequencies (ascending), U (3x3) and V (3x6).

    Arrays may carry leading batch dimensions when produced from a stack of
    matrices. ``bare`` holds ``(omega_m1, omega_m2, |delta|)``.
    """

    omega: np.ndarray
    u: np.ndarray
    v: np.ndarray
    bare: np.ndarray
    m: np.ndarray
    stable: np.ndarray | bool = True
    degenerate: np.ndarray | bool = False

    @property
    def v_plus(self):
        return self.v[..., :3]

    @property
    def v_minus(self):
        return self.v[..., 3:]

    def cavity_weights(self):
        """``V[3,i]^2 - V[3,i+3]^2``; equals ``U[3,i]^2`` and sums to one."""
        return self.v[..., 2, :3] ** 2 - self.v[..., 2, 3:] ** 2

    def symplectic_residual(self):
        """Max entrywise deviation of ``V+ V+^T - V- V-^T`` from the identity
        and asymmetry of ``V+ V-^T``."""
        vp, vm = self.v_plus, self.v_minus
        a = vp @ np.swapaxes(vp, -1, -2) - vm @ np.swapaxes(vm, -1, -2) - np.eye(3)
        b = vp @ np.swapaxes(vm, -1, -2)
        b = b - np.swapaxes(b, -1, -2)
        return np.maximum(np.abs(a).max(axis=(-1, -2)), np.abs(b).max(axis=(-1, -2)))


def diagonalize(m, check=True) -> PolaritonBasis:
    """Diagonalize M and build the Bogoliubov matrix.

    The bare frequencies are read off the diagonal of ``m``. With
    ``check=True`` an :class:`UnstableSpectrum` is raised when any eigenvalue
    is below ``-1e-12 * D^2``; with ``check=False`` such entries get NaN
    frequencies and ``stable == False`` instead (used by grid sweeps).
    Eigenvalues within that numerical zero are clipped to zero.
    """
    m = np.asarray(m, dtype=float)
    evals, u = jacobi_eigh(m)
    d2 = m[..., 2, 2]
    zero = 1e-12 * d2
    stable = evals[..., 0] >= -zero
    if check and not np.all(stable):
        bad = np.min(evals[..., 0])
        raise UnstableSpectrum(f"omega_1^2 = {bad:.6g} < 0: linearly unstable")
    ev = np.where(evals < 0, np.where(evals >= -zero[..., None], 0.0, np.nan), evals)
    omega = np.sqrt(ev)
    bare = np.sqrt(np.diagonal(m, axis1=-2, axis2=-1))
    v = bogoliubov_matrix(u, omega, bare)

    gaps = np.diff(evals, axis=-1)
    degenerate = np.any(gaps <= 1e-10 * np.abs(evals[..., 1:]), axis=-1)
    if np.any(degenerate & stable):
        warnings.warn("degenerate polariton frequencies", DegeneracyWarning, stacklevel=2)
    if np.ndim(stable) == 0:
        stable, degenerate = bool(stable), bool(degenerate)
    return PolaritonBasis(omega=omega, u=u, v=v, bare=bare, m=m, stable=stable,
                          degenerate=degenerate)


def polariton_basis(params: ValidatedParams, check=True) -> PolaritonBasis:
    return diagonalize(build_M(params), check=check)


def _b_squared(p: ValidatedParams):
    wm = p.omega_m
    G = np.array([p.G1, p.G2])
    return 4.0 / p.abs_delta * np.outer(G, G) * np.sqrt(np.outer(wm, wm))


def perturbative_frequencies(params: ValidatedParams):
    """Large-detuning polariton frequencies from the reduced 2x2 problem.

    Valid for ``|delta| >> omega_mi, G_i``; that is not checked.
    """
    p = params
    b2 = _b_squared(p)
    w1s, w2s = p.omega_m1 ** 2, p.omega_m2 ** 2
    root = math.sqrt((w1s - w2s - b2[0, 0] + b2[1, 1]) ** 2 + 4 * b2[0, 1] ** 2)
    base = w1s + w2s - b2[0, 0] - b2[1, 1]
    lo = 0.5 * (base - root)
    hi = 0.5 * (base + root)
    if lo < 0:
        raise NegativeSquaredFrequency(f"omega_1^2 = {lo:.6g} < 0 in the large-detuning form")
    w3 = math.sqrt(p.delta ** 2 + b2[0, 0] + b2[1, 1])
    return np.array([math.sqrt(lo), math.sqrt(hi), w3])


class PerturbativeBasis(NamedTuple):
    u: np.ndarray
    theta: float
    omega: np.ndarray
    cavity_weight: np.ndarray  # V[3,i]^2 - V[3,i+3]^2 = U[3,i]^2
    mechanical_weight: np.ndarray  # (V[j,i] + V[j,i+3])^2 = U[j,i]^2 w_mj / omega_i, rows j=1,2


def perturbative_U(params: ValidatedParams) -> PerturbativeBasis:
    """Approximate U from block diagonalization plus a rotation by theta.

    Raises :class:`DegenerateRotation` if both the numerator and denominator
    of ``tan(2 theta)`` vanish, where the rotation angle is undefined.
    """
    p = params
    b2 = _b_squared(p)
    num = 2 * b2[0, 1]
    den = p.omega_m2 ** 2 - p.omega_m1 ** 2 + b2[0, 0] - b2[1, 1]
    if num == 0 and den == 0:
        raise DegenerateRotation("tan(2 theta) = 0/0: mechanical modes degenerate and uncoupled")
    theta = 0.5 * math.atan2(num, den)
    c, s = math.cos(theta), math.sin(theta)
    b11, b22 = math.sqrt(b2[0, 0]), math.sqrt(b2[1, 1])
    d = p.abs_delta
    u = np.array([
        [c, -s, b11 / d],
        [s, c, b22 / d],
        [-(b11 * c + b22 * s) / d, (b11 * s - b22 * c) / d, 1.0],
    ])
    try:
        omega = perturbative_frequencies(p)
    except NegativeSquaredFrequency:
        omega = np.full(3, np.nan)
    cav = u[2] ** 2
    mech = u[:2] ** 2 * p.omega_m[:, None] / omega[None, :]
    return PerturbativeBasis(u, theta, omega, cav, mech)


class DarkBright(NamedTuple):
    G_tilde: float
    g_tilde: float
    dark: np.ndarray  # coefficients of (b1, b2)
    bright: np.ndarray


def dark_bright_reduce(params: ValidatedParams) -> DarkBright:
    """Equivalent two-mode couplings at equal mechanical frequencies.

    Only the bright combination ``(G1 b1 + G2 b2) / G~`` couples to the
    cavity; ``g~ = G~ / sqrt(N)``, computed as ``(g1 G1 + g2 G2) / G~``
    which is the same thing and does not need N explicitly.
    """
    p = params
    if p.omega_m1 != p.omega_m2:
        raise NotDegenerate(f"omega_m2 = {p.omega_m2} != omega_m1 = {p.omega_m1}")
    Gt = math.hypot(p.G1, p.G2)
    if Gt == 0:
        return DarkBright(0.0, 0.0, np.array([0.0, 1.0]), np.array([1.0, 0.0]))
    if p.N:
        gt = Gt / math.sqrt(p.N)
    else:
        gt = (p.g1 * p.G1 + p.g2 * p.G2) / Gt
    dark = np.array([-p.G2, p.G1]) / Gt
    bright = np.array([p.G1, p.G2]) / Gt
    return DarkBright(Gt, gt, dark, bright)
