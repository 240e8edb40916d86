"""Linear and nonlinear response of the polariton modes.

Linear part: polariton damping rates and occupations induced by the cavity
and mechanical baths. Nonlinear part: the resonant ``c2 c1^+ c1^+`` vertex
``g211``, second-order retarded self-energies of polaritons 1 and 2, the
cavity density of states with and without them, the deviation metric
``I = max_w |rho - rho0|``, effective cooperativities and peak splittings.

Functions accept a single :class:`~trimode.bogoliubov.PolaritonBasis` or a
batch of them (leading dimensions on every array); frequency arguments then
carry one extra trailing axis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bogoliubov import PolaritonBasis, polariton_basis
from .model import ValidatedParams, bose

__all__ = [
    "LinearResponse",
    "NonlinearResponse",
    "Response",
    "Cooperativities",
    "Splittings",
    "NegativePopulationInversion",
    "NegativeCooperativityWarning",
    "OverlapWarning",
    "polariton_dampings",
    "polariton_occupations",
    "linear_response",
    "g211",
    "self_energies",
    "cooperativities",
    "peak_splittings",
    "nonlinear_response",
    "retarded_green",
    "cavity_dos",
    "dos_sum_rule",
    "frequency_grid",
    "metric_I",
    "find_peaks",
    "analyze",
]

WINDOW_HALF_WIDTH = 20.0  # in units of the local linewidth
WINDOW_POINTS = 801


class NegativePopulationInversion(ValueError):
    """n1 < n2, so the lower-peak splitting is not real."""


class NegativeCooperativityWarning(RuntimeWarning):
    pass


class OverlapWarning(RuntimeWarning):
    """Low-polariton windows overlap the photon-like peak; the diagonal
    Green's function treatment is used anyway."""


@dataclass(frozen=True)
class LinearResponse:
    kappa: np.ndarray  # (..., 3) polariton damping rates
    n: np.ndarray  # (..., 3) polariton occupations


def polariton_dampings(basis: PolaritonBasis, params: ValidatedParams):
    """``kappa_i = kappa (V[3,i]^2 - V[3,i+3]^2) + sum_j gamma_j (V[j,i] + V[j,i+3])^2``."""
    v = basis.v
    gam = (params.gamma1, params.gamma2)
    k = params.kappa * (v[..., 2, :3] ** 2 - v[..., 2, 3:] ** 2)
    for j in range(2):
        k = k + gam[j] * (v[..., j, :3] + v[..., j, 3:]) ** 2
    return k


def polariton_occupations(basis: PolaritonBasis, kappa_i, params: ValidatedParams):
    """Free-polariton occupations; cavity bath at zero temperature.

    The mechanical Bose factor is evaluated at the polariton frequency.
    """
    v = basis.v
    kappa_i = np.asarray(kappa_i)
    gam = (params.gamma1, params.gamma2)
    nb = bose(basis.omega, params.temperature)
    mech = sum(gam[j] * (v[..., j, :3] + v[..., j, 3:]) ** 2 for j in range(2))
    return (params.kappa * v[..., 2, 3:] ** 2 + mech * nb) / kappa_i


def linear_response(basis: PolaritonBasis, params: ValidatedParams) -> LinearResponse:
    k = polariton_dampings(basis, params)
    return LinearResponse(kappa=k, n=polariton_occupations(basis, k, params))


def g211(basis: PolaritonBasis, params: ValidatedParams):
    """Effective coupling of the ``c2 c1^+ c1^+`` scattering process.

    Rows of V are (b1, b2, d); columns (c1, c2, c3, c1^+, c2^+, c3^+).
    """
    v = basis.v
    pair = v[..., 2, 0] * v[..., 2, 1] + v[..., 2, 3] * v[..., 2, 4]
    diag = v[..., 2, 0] * v[..., 2, 3]
    total = 0.0
    for i, g in ((0, params.g1), (1, params.g2)):
        total = total + g * (pair * (v[..., i, 0] + v[..., i, 3])
                             + diag * (v[..., i, 1] + v[..., i, 4]))
    return total


def _lift(x, omega):
    # append a trailing axis to polariton-indexed data when omega has one
    x = np.asarray(x)
    return x[..., None] if np.ndim(omega) > 0 else x


def self_energies(omega, g211_, omega_i, kappa_i, n_i):
    """Retarded self-energies ``(Sigma_1(w), Sigma_2(w))``; Sigma_3 is zero.

    ``Sigma_1 = 4 g^2 (n1 - n2) / (w + w1 - w2 + i (k1 + k2) / 2)``,
    ``Sigma_2 = 4 g^2 (n1 + 1/2) / (w - 2 w1 + i k1)``.
    """
    omega = np.asarray(omega, dtype=float)
    omega_i = np.asarray(omega_i)
    kappa_i = np.asarray(kappa_i)
    n_i = np.asarray(n_i)
    w1, w2 = _lift(omega_i[..., 0], omega), _lift(omega_i[..., 1], omega)
    k1, k2 = _lift(kappa_i[..., 0], omega), _lift(kappa_i[..., 1], omega)
    n1, n2 = _lift(n_i[..., 0], omega), _lift(n_i[..., 1], omega)
    g2 = 4.0 * _lift(g211_, omega) ** 2
    s1 = g2 * (n1 - n2) / (omega + w1 - w2 + 0.5j * (k1 + k2))
    s2 = g2 * (n1 + 0.5) / (omega - 2.0 * w1 + 1j * k1)
    return s1, s2


class Cooperativities(NamedTuple):
    c1: float
    c2: float
    inverted: bool  # n1 < n2, C_eff,1 is negative


def cooperativities(g211_, kappa1, kappa2, n1, n2) -> Cooperativities:
    """Effective cooperativities at the two low polariton peaks.

    ``C1 = 16 g^2 (n1 - n2) / (k1 (k1 + k2))``, ``C2 = 4 g^2 (1 + 2 n1) / (k1 k2)``.
    A negative C1 (n1 < n2) is returned as is, with ``inverted`` set.
    """
    g2 = np.asarray(g211_) ** 2
    c1 = 16 * g2 * (n1 - n2) / (kappa1 * (kappa1 + kappa2))
    c2 = 4 * g2 * (1 + 2 * n1) / (kappa1 * kappa2)
    inverted = np.asarray(n1 < n2)
    if np.any(inverted):
        warnings.warn("n1 < n2: C_eff,1 is negative", NegativeCooperativityWarning, stacklevel=2)
    if inverted.ndim == 0:
        inverted = bool(inverted)
    return Cooperativities(c1, c2, inverted)


class Splittings(NamedTuple):
    delta1: float
    delta2: float
    resolved1: bool | None = None
    resolved2: bool | None = None


def peak_splittings(g211_, n1, n2, kappa1=None, kappa2=None) -> Splittings:
    """Splittings ``4 |g211| sqrt(n1 - n2)`` and ``4 |g211| sqrt(n1 + 1/2)``.

    When the dampings are given, ``resolved*`` tells whether a splitting
    exceeds the corresponding linewidth.
    """
    if np.any(np.asarray(n1) < np.asarray(n2)):
        raise NegativePopulationInversion(f"n1 = {n1} < n2 = {n2}")
    g = np.abs(g211_)
    d1 = 4 * g * np.sqrt(n1 - n2)
    d2 = 4 * g * np.sqrt(n1 + 0.5)
    r1 = None if kappa1 is None else d1 >= kappa1
    r2 = None if kappa2 is None else d2 >= kappa2
    return Splittings(d1, d2, r1, r2)


@dataclass(frozen=True)
class NonlinearResponse:
    """Nonlinear quantities at one operating point (or a batch of them)."""

    g211: float
    omega: np.ndarray
    kappa: np.ndarray
    n: np.ndarray
    c_eff: Cooperativities
    splittings: Splittings | None

    def sigma(self, omega):
        """``(Sigma_1, Sigma_2, Sigma_3)`` evaluated at ``omega``."""
        s1, s2 = self_energies(omega, self.g211, self.omega, self.kappa, self.n)
        return s1, s2, np.zeros_like(s1)

    def sigma1(self, omega):
        return self.sigma(omega)[0]

    def sigma2(self, omega):
        return self.sigma(omega)[1]


def nonlinear_response(basis: PolaritonBasis, linear: LinearResponse,
                       params: ValidatedParams) -> NonlinearResponse:
    g = g211(basis, params)
    k, n = linear.kappa, linear.n
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NegativeCooperativityWarning)
        coop = cooperativities(g, k[..., 0], k[..., 1], n[..., 0], n[..., 1])
    try:
        split = peak_splittings(g, n[..., 0], n[..., 1], k[..., 0], k[..., 1])
    except NegativePopulationInversion:
        split = None
    return NonlinearResponse(g211=g, omega=basis.omega, kappa=k, n=n, c_eff=coop,
                             splittings=split)


def retarded_green(omega, omega_i, kappa_i, sigma=None):
    """Diagonal polariton Green's functions ``G[c_i, c_i^+; w]``, shape (..., 3, K)."""
    omega = np.asarray(omega, dtype=float)
    w = np.asarray(omega_i)[..., :, None]
    k = np.asarray(kappa_i)[..., :, None]
    den = omega[..., None, :] - w + 0.5j * k
    if sigma is not None:
        den = den - sigma
    return 1.0 / den


def _dos(omega, w, v, k, n, g=None):
    # omega: (..., K); polariton data with matching leading axes
    if g is None:
        s_pos = s_neg = None
    else:
        zeros = np.zeros(np.broadcast_shapes(np.shape(omega), np.shape(w)[:-1] + (1,)))
        s1, s2 = self_energies(omega, g, w, k, n)
        s_pos = np.stack([s1, s2, zeros], axis=-2)
        s1, s2 = self_energies(-omega, g, w, k, n)
        s_neg = np.stack([s1, s2, zeros], axis=-2)
    g_pos = retarded_green(omega, w, k, s_pos)
    g_neg = np.conj(retarded_green(-omega, w, k, s_neg))
    wp = v[..., 2, :3, None] ** 2
    wm = v[..., 2, 3:, None] ** 2
    return -np.imag(np.sum(wp * g_pos + wm * g_neg, axis=-2)) / np.pi


def cavity_dos(omega, basis: PolaritonBasis, linear: LinearResponse,
               nonlinear: NonlinearResponse | None = None, params=None,
               include_nl: bool = True):
    """Cavity density of states ``rho_d(w) = -Im G[d, d^+; w] / pi``.

    Off-diagonal polariton Green's functions are neglected. With
    ``include_nl=False`` (or no ``nonlinear``) all self-energies vanish and
    the linear ``rho_d^0`` is returned. ``omega`` may be a scalar or carry a
    trailing axis; batched inputs broadcast over the leading axes.
    """
    scalar = np.ndim(omega) == 0
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    g = nonlinear.g211 if (include_nl and nonlinear is not None) else None
    rho = _dos(omega, basis.omega, basis.v, linear.kappa, linear.n, g)
    return rho[..., 0] if scalar else rho


def dos_sum_rule(basis: PolaritonBasis):
    """Analytic integral of ``rho_d^0`` over the real line.

    Each Lorentzian integrates to one, the ``c^+ c`` parts enter with
    negative sign, leaving ``sum_i (V[3,i]^2 - V[3,i+3]^2)``.
    """
    return basis.cavity_weights().sum(axis=-1)


def _window(center, width, half_width=WINDOW_HALF_WIDTH, points=WINDOW_POINTS):
    offs = np.linspace(-1.0, 1.0, points)
    return center + half_width * width * offs


def _flanks(center, inner, outer, points=200):
    if outer <= inner:
        return np.empty(0)
    d = np.geomspace(inner, outer, points)
    return np.concatenate([center - d, center + d])


def frequency_grid(basis: PolaritonBasis, linear: LinearResponse,
                   nonlinear: NonlinearResponse | None = None,
                   full: bool = True, span: float | None = None):
    """Adaptive, sorted frequency grid for a single operating point.

    Dense windows (half-width ``20 kappa_i``, step ``kappa_i / 20``) sit on
    each polariton peak, on ``2 w1`` and on ``w2 - w1`` where the
    self-energies have their poles; windows widen to cover resolved
    splittings. With ``full=True`` the mirror images at negative frequency,
    geometric flanks and a coarse global grid over ``[-span, span]`` are
    added so that the grid supports integrals over the real line.
    """
    w = np.asarray(basis.omega, dtype=float)
    k = np.asarray(linear.kappa, dtype=float)
    if w.ndim != 1:
        raise ValueError("frequency_grid handles a single operating point")
    k1, k2 = k[0], k[1]
    extra = [0.0, 0.0, 0.0]
    if nonlinear is not None and nonlinear.splittings is not None:
        extra = [float(nonlinear.splittings.delta1), float(nonlinear.splittings.delta2), 0.0]
    centers = [(w[i], max(k[i], extra[i] / 10)) for i in range(3)]
    centers.append((2 * w[0], max(k1, extra[1] / 10)))
    centers.append((w[1] - w[0], max(0.5 * (k1 + k2), extra[0] / 10)))

    lo_win = [(c, wd) for c, wd in centers if c != w[2]]
    hw3 = WINDOW_HALF_WIDTH * k[2]
    if all(abs(c - w[2]) + WINDOW_HALF_WIDTH * wd <= hw3 for c, wd in lo_win):
        warnings.warn("low-polariton windows lie inside the photon-like peak",
                      OverlapWarning, stacklevel=2)

    parts = [_window(c, wd) for c, wd in centers]
    if full:
        if span is None:
            span = w[2] + max(20.0, 1000 * k[2])
        for i in range(3):
            parts.append(_window(-w[i], k[i]))
        for c, wd in centers[:3]:
            for s in (c, -c):
                parts.append(_flanks(s, WINDOW_HALF_WIDTH * wd, 2 * span))
        parts.append(np.linspace(-span, span, 4001))
        grid = np.concatenate(parts)
        grid = grid[np.abs(grid) <= span]
    else:
        grid = np.concatenate(parts)
        grid = grid[grid > 0]
    return np.unique(grid)


def metric_I(basis: PolaritonBasis, linear: LinearResponse, nonlinear: NonlinearResponse,
             params=None, grid=None, chunk: int = 2048):
    """``I = max_w |rho_d(w) - rho_d^0(w)|`` over the adaptive windows.

    For a single point the grid defaults to the positive-frequency windows
    of :func:`frequency_grid`. For batched inputs each point gets its own
    windows (same construction) and
    the maximum is taken per point; unstable points give NaN.
    """
    omega = np.asarray(basis.omega)
    if omega.ndim == 1:
        if grid is None:
            grid = frequency_grid(basis, linear, nonlinear, full=False)
        diff = (cavity_dos(grid, basis, linear, nonlinear)
                - cavity_dos(grid, basis, linear, None))
        return float(np.max(np.abs(diff)))

    batch = omega.shape[:-1]
    npts = int(np.prod(batch))
    w_all = omega.reshape(npts, 3)
    v_all = np.asarray(basis.v).reshape(npts, 3, 6)
    k_all = np.asarray(linear.kappa).reshape(npts, 3)
    n_all = np.asarray(linear.n).reshape(npts, 3)
    g_all = np.broadcast_to(np.asarray(nonlinear.g211), batch).reshape(npts)
    out = np.full(npts, np.nan)
    offs = np.linspace(-WINDOW_HALF_WIDTH, WINDOW_HALF_WIDTH, WINDOW_POINTS)
    ok_all = np.all(np.isfinite(w_all), axis=-1) & np.all(np.isfinite(k_all), axis=-1)
    idx = np.flatnonzero(ok_all)
    for start in range(0, idx.size, chunk):
        sel = idx[start:start + chunk]
        w, k, n = w_all[sel], k_all[sel], n_all[sel]
        g = np.abs(g_all[sel])
        d1 = 4 * g * np.sqrt(np.maximum(n[:, 0] - n[:, 1], 0.0)) / 10
        d2 = 4 * g * np.sqrt(n[:, 0] + 0.5) / 10
        centers = np.stack([w[:, 0], w[:, 1], w[:, 2], 2 * w[:, 0], w[:, 1] - w[:, 0]], axis=-1)
        widths = np.stack([np.maximum(k[:, 0], d1), np.maximum(k[:, 1], d2), k[:, 2],
                           np.maximum(k[:, 0], d2),
                           np.maximum(0.5 * (k[:, 0] + k[:, 1]), d1)], axis=-1)
        grid = (centers[..., None] + widths[..., None] * offs).reshape(len(sel), -1)
        rho = _dos(grid, w, v_all[sel], k, n_all[sel], g_all[sel])
        rho0 = _dos(grid, w, v_all[sel], k, n_all[sel], None)
        diff = np.where(grid > 0, np.abs(rho - rho0), -np.inf)
        out[sel] = diff.max(axis=-1)
    return out.reshape(batch)


def find_peaks(x, y):
    """Interior local maxima of ``y(x)``, refined by a parabola through the
    three points around each maximum.

    Returns ``(positions, heights)`` sorted by position.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    i = np.flatnonzero((y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:])) + 1
    if i.size == 0:
        return np.empty(0), np.empty(0)
    x0, x1, x2 = x[i - 1], x[i], x[i + 1]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    # vertex of the parabola through three (possibly unevenly spaced) points
    d01, d12 = (y1 - y0) / (x1 - x0), (y2 - y1) / (x2 - x1)
    a = (d12 - d01) / (x2 - x0)
    with np.errstate(divide="ignore", invalid="ignore"):
        xv = np.where(a < 0, 0.5 * (x0 + x1) - d01 / (2 * a), x1)
    xv = np.clip(xv, x0, x2)
    yv = np.where(a < 0, y0 + d01 * (xv - x0) + a * (xv - x0) * (xv - x1), y1)
    return xv, yv


@dataclass(frozen=True)
class Response:
    """Everything needed to evaluate spectra at one operating point."""

    params: ValidatedParams
    basis: PolaritonBasis
    linear: LinearResponse
    nonlinear: NonlinearResponse

    def dos(self, omega, include_nl=True):
        return cavity_dos(omega, self.basis, self.linear, self.nonlinear,
                          self.params, include_nl=include_nl)

    def grid(self, full=True, span=None):
        return frequency_grid(self.basis, self.linear, self.nonlinear, full=full, span=span)

    def metric_I(self):
        return metric_I(self.basis, self.linear, self.nonlinear, self.params)

    def peak_window(self, index):
        """Half-width of the window used to look for sub-peaks of polariton
        ``index`` (0 or 1): covers the linewidth and the predicted splitting."""
        k = float(self.linear.kappa[index])
        s = self.nonlinear.splittings
        split = 0.0 if s is None else float(s[index])
        return max(WINDOW_HALF_WIDTH * k, 3.0 * split)

    def peaks(self, index, include_nl=True, points=8001):
        """Local maxima of the DOS around polariton ``index`` (0 or 1)."""
        c = float(self.basis.omega[index])
        hw = self.peak_window(index)
        x = np.linspace(c - hw, c + hw, points)
        return find_peaks(x, self.dos(x, include_nl=include_nl))


def analyze(params: ValidatedParams) -> Response:
    """Diagonalize and evaluate linear and nonlinear response at ``params``."""
    basis = polariton_basis(params)
    lin = linear_response(basis, params)
    return Response(params, basis, lin, nonlinear_response(basis, lin, params))
