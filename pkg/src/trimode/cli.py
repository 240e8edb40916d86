"""Command-line interface.

Parameters come from a TOML file (``--config``) and/or ``--set key=value``
overrides; every key not set falls back to :data:`DEFAULTS`. Recognized keys
are the :class:`~trimode.model.SystemParams` fields, the shorthands ``g``,
``G`` and ``gamma`` (set both oscillators at once), ``units`` (``omega_m1``
or ``Hz``) and the command options in :data:`OPTION_KEYS`.

Exit codes: 0 ok, 1 check failure, 2 bad input, 3 unstable operating point.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import math
import sys
import warnings

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__, sweep
from .bogoliubov import (
    NegativeSquaredFrequency,
    UnstableSpectrum,
    perturbative_frequencies,
    polariton_basis,
)
from .model import ParameterError, SystemParams, is_stable, validate
from .response import (
    analyze,
    cavity_dos,
    dos_sum_rule,
    frequency_grid,
    g211,
    linear_response,
    nonlinear_response,
)

_trapezoid = getattr(np, "trapezoid", None) or np.trapz

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_UNSTABLE = 0, 1, 2, 3

PARAM_KEYS = {f.name for f in dataclasses.fields(SystemParams)}
SHORTHANDS = {"g": ("g1", "g2"), "G": ("G1", "G2"), "gamma": ("gamma1", "gamma2")}
OPTION_KEYS = {"units", "gmax", "grid_g2", "grid_delta", "ratio", "gratio", "delta_min",
               "format"}

# operating point near the optimum for G_max = 0.3 at kappa = 0.02
DEFAULTS = {
    "omega_m1": 1.0,
    "omega_m2": 1.9858,
    "delta": -13.22,
    "kappa": 0.02,
    "g1": 2e-4,
    "g2": 2e-4,
    "G1": 0.3,
    "G2": 0.3,
    "gamma1": 2e-6,
    "gamma2": 2e-6,
    "temperature": 0.0,
    "units": "omega_m1",
}


class InputError(ValueError):
    """Bad command line or configuration (exit code 2)."""


# ---------------------------------------------------------------- config

def _parse_value(text):
    try:
        return tomllib.loads(f"v = {text}")["v"]
    except tomllib.TOMLDecodeError:
        return text


def _expand(key, value, out):
    if key in SHORTHANDS:
        for k in SHORTHANDS[key]:
            out[k] = value
    elif key in PARAM_KEYS or key in OPTION_KEYS:
        out[key] = value
    else:
        raise InputError(f"unknown configuration key {key!r}")


def load_config(path=None, overrides=()):
    """Merge defaults, the TOML file and ``key=value`` overrides."""
    cfg = dict(DEFAULTS)
    if path is not None:
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read config: {exc}") from None
        except tomllib.TOMLDecodeError as exc:
            raise InputError(f"invalid TOML in {path}: {exc}") from None
        flat = {}
        for k, v in data.items():
            if isinstance(v, dict):  # [params] / [options] tables
                flat.update(v)
            else:
                flat[k] = v
        for k, v in flat.items():
            _expand(k, v, cfg)
    for item in overrides:
        if "=" not in item:
            raise InputError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        _expand(k.strip(), _parse_value(v.strip()), cfg)
    if cfg["units"] not in ("omega_m1", "Hz"):
        raise InputError(f"units must be 'omega_m1' or 'Hz', got {cfg['units']!r}")
    return cfg


def parse_range(text):
    """``lo:hi:n`` -> ``(lo, hi, n)`` with ``lo <= hi`` and ``n >= 1``."""
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(":")
    if len(parts) != 3:
        raise InputError(f"range must be lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InputError(f"range must be lo:hi:n, got {text!r}") from None
    if n < 1 or lo > hi or (n > 1 and lo == hi):
        raise InputError(f"range {text!r} must satisfy lo < hi (or lo == hi with n = 1), n >= 1")
    return lo, hi, n


def _grid(rng):
    lo, hi, n = rng
    return np.linspace(lo, hi, n)


def system_params(cfg):
    kw = {k: cfg[k] for k in PARAM_KEYS if k in cfg}
    try:
        kw = {k: (None if v is None else float(v)) for k, v in kw.items()}
    except (TypeError, ValueError) as exc:
        raise InputError(f"parameter values must be numbers: {exc}") from None
    return validate(SystemParams(**kw))


class Units:
    """Conversion of options and outputs for ``units = Hz``."""

    def __init__(self, cfg, scale):
        self.hz = cfg["units"] == "Hz"
        self.s = scale if self.hz else 1.0

    def to_internal(self, x):
        return None if x is None else x / self.s

    def freq(self, x):
        return np.asarray(x) * self.s

    def note(self):
        text = sweep.UNITS_NOTE
        return text + ("; units=Hz" if self.hz else "")


def _option_range(args_value, cfg, key, units=None, freq=True):
    raw = args_value if args_value is not None else cfg.get(key)
    if raw is None:
        return None
    lo, hi, n = parse_range(raw)
    if units is not None and freq:
        lo, hi = units.to_internal(lo), units.to_internal(hi)
    return lo, hi, n


def _option_float(args_value, cfg, key):
    v = args_value if args_value is not None else cfg.get(key)
    if v is None:
        return None
    try:
        return float(v)
    except (TypeError, ValueError):
        raise InputError(f"{key} must be a number, got {v!r}") from None


# ---------------------------------------------------------------- output

def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    x = float(x)
    return "nan" if math.isnan(x) else f"{x:.12g}"


def format_report(sections):
    """Render ``[(title, [(key, value), ...]), ...]`` as ``key = value`` blocks."""
    out = io.StringIO()
    for i, (title, rows) in enumerate(sections):
        if i:
            out.write("\n")
        out.write(f"[{title}]\n")
        for k, v in rows:
            if isinstance(v, (list, tuple, np.ndarray)):
                v = ", ".join(_num(x) for x in np.ravel(v))
            else:
                v = _num(v)
            out.write(f"{k} = {v}\n")
    return out.getvalue()


def _emit(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------- commands

def cmd_spectrum(cfg, args):
    p = system_params(cfg)
    u = Units(cfg, p.scale)
    stable = is_stable(p)
    stable_exact = is_stable(p, exact=True)
    basis = polariton_basis(p)  # raises UnstableSpectrum
    rows = [("stable", stable), ("stable_exact", stable_exact),
            ("omega", u.freq(basis.omega)), ("degenerate", bool(basis.degenerate))]
    for i in range(3):
        rows.append((f"U[{i + 1},:]", basis.u[i]))
    for i in range(3):
        rows.append((f"V[{i + 1},:]", basis.v[i]))
    rows.append(("symplectic_residual", basis.symplectic_residual()))
    try:
        w0 = perturbative_frequencies(p)
        rows.append(("omega_perturbative", u.freq(w0)))
        rows.append(("relative_delta", (w0 - basis.omega) / basis.omega))
    except NegativeSquaredFrequency as exc:
        rows.append(("omega_perturbative", f"n/a ({exc})"))
    return format_report([("spectrum", rows)])


def cmd_dos(cfg, args):
    p = system_params(cfg)
    u = Units(cfg, p.scale)
    r = analyze(p)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        w = frequency_grid(r.basis, r.linear, r.nonlinear, full=True)
    rho0 = cavity_dos(w, r.basis, r.linear, None)
    rho = cavity_dos(w, r.basis, r.linear, r.nonlinear)
    table = sweep.SweepResult({
        "omega": u.freq(w),
        "rho0": rho0 / u.s,
        "rho": rho / u.s,
        "rho_minus_rho0": (rho - rho0) / u.s,
    })
    return table.to_csv(units=u.note())


def cmd_sweep(cfg, args):
    p = system_params(cfg)
    u = Units(cfg, p.scale)
    g2 = _option_range(args.grid_g2, cfg, "grid_g2", u)
    dl = _option_range(args.grid_delta, cfg, "grid_delta", u)
    if g2 is None or dl is None:
        raise InputError("sweep needs --grid-g2 and --grid-delta")
    res = sweep.map_I(p, _grid(g2), np.abs(_grid(dl)))
    table = sweep.SweepResult({
        "G2": u.freq(res["G2"]),
        "delta": u.freq(res["delta"]),
        "stable": res["stable"],
        "log10_I": res["log10_I"],
    })
    return table.to_csv(units=u.note())


def cmd_resonance(cfg, args):
    p = system_params(cfg)
    u = Units(cfg, p.scale)
    dl = _option_range(args.grid_delta, cfg, "grid_delta", u)
    if dl is None:
        raise InputError("resonance needs --grid-delta")
    locus = sweep.trace_resonance(p, np.abs(_grid(dl)))
    t = locus.table()
    table = sweep.SweepResult({
        "delta": u.freq(t["delta"]),
        "G2_res": u.freq(t["G2_res"]),
        "omega1": u.freq(t["omega1"]),
        "omega2": u.freq(t["omega2"]),
        "residual": u.freq(t["residual"]),
    })
    for d, reason in locus.missing:
        sys.stderr.write(f"delta = {_num(u.freq(d))}: {reason}\n")
    return table.to_csv(units=u.note())


def _optimum_sections(rep, u, title):
    rows = [
        ("C_tilde", rep.C_tilde),
        ("analytic_C", rep.analytic_C),
        ("relative_delta_C", rep.C_tilde / rep.analytic_C - 1),
        ("ratio_opt", rep.ratio_opt),
        ("analytic_ratio", rep.analytic_ratio),
        ("relative_delta_deviation", (2 - rep.ratio_opt) / (2 - rep.analytic_ratio) - 1),
        ("g_ratio_opt", rep.g_ratio_opt),
        ("delta_opt", u.freq(rep.delta_opt)),
        ("G_opt", u.freq(rep.G_opt)),
        ("G_max", u.freq(rep.G_max)),
        ("R", rep.R),
    ]
    for k in ("G1_opt", "G2_opt"):
        rows.append((k, u.freq(rep.extra[k])))
    for k in ("two_mode_C", "g_over_kappa"):
        if k in rep.extra:
            rows.append((k, rep.extra[k]))
    return [(title, rows)]


def cmd_optimize(cfg, args):
    p = system_params(cfg)
    u = Units(cfg, p.scale)
    gmax = u.to_internal(_option_float(args.gmax, cfg, "gmax"))
    if gmax is None or gmax <= 0:
        raise InputError("optimize needs --gmax > 0")
    rep = sweep.optimize(
        p, gmax,
        ratio_range=_option_range(args.ratio, cfg, "ratio", freq=False),
        ratio_g_range=_option_range(args.gratio, cfg, "gratio", freq=False),
        delta_min=u.to_internal(_option_float(None, cfg, "delta_min")),
    )
    if _format(args, cfg, "report") == "csv":
        return rep.grid.to_csv(units=u.note())
    return format_report(_optimum_sections(rep, u, "optimum"))


def cmd_scenario(cfg, args):
    try:
        rep = sweep.scenario(args.name)
    except sweep.UnknownScenario as exc:
        raise InputError(exc.args[0]) from None
    u = Units({"units": cfg["units"]}, sweep.SCENARIOS[args.name.lower()]["omega_m"])
    return format_report(_optimum_sections(rep, u, f"scenario {args.name.lower()}"))


def _format(args, cfg, default):
    f = args.format or cfg.get("format") or default
    if f not in ("csv", "report"):
        raise InputError(f"--format must be csv or report, got {f!r}")
    return f


# ---------------------------------------------------------------- check

def _battery_points(n=200, seed=20240917):
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        q = rng.uniform(1.0, 3.0)
        d = rng.uniform(2.0, 200.0)
        r = rng.uniform(0.0, 1.0, 2)
        gstab2 = d * q / (4 * (q + 1))
        G1, G2 = np.sqrt(0.95 * gstab2) * r
        p = validate(SystemParams(omega_m2=q, delta=-d, kappa=rng.uniform(1e-3, 0.1),
                                  g1=1e-4, g2=1e-4 * G2 / G1 if G1 > 0 else 1e-4,
                                  G1=G1, G2=G2, gamma1=1e-6, gamma2=1e-6))
        pts.append(p)
    return pts


def run_checks(inject=None):
    """Evaluate the invariant battery. Returns a list of ``(name, ok, detail)``."""
    pts = _battery_points()
    results = []

    def record(name, ok, detail):
        results.append((name, bool(ok), detail))

    worst_sym = worst_diag = worst_sum = 0.0
    for p in pts:
        b = polariton_basis(p)
        v = b.v * (1.001 if inject == "symplectic" else 1.0)
        vp, vm = v[:, :3], v[:, 3:]
        worst_sym = max(worst_sym, np.abs(vp @ vp.T - vm @ vm.T - np.eye(3)).max())
        d = b.u.T @ b.m @ b.u
        worst_diag = max(worst_diag, np.abs(d - np.diag(np.diag(d))).max() / p.delta ** 2)
        worst_sum = max(worst_sum, abs(dos_sum_rule(b) - 1))
    record("symplectic V+V+^T - V-V-^T = I", worst_sym < 1e-10, worst_sym)
    record("U^T M U diagonal (/ delta^2)", worst_diag < 1e-8, worst_diag)
    record("DOS sum rule = 1", worst_sum < 1e-10, worst_sum)

    bad = 0
    for p in pts:
        if p.abs_delta >= 10 * max(p.omega_m2, p.G1, p.G2) and is_stable(p):
            bad += not is_stable(p, exact=True)
    record("large-detuning stability implies exact stability", bad == 0, bad)

    p0 = validate(SystemParams(omega_m2=1.9, delta=-50.0, kappa=0.02, G1=0.0, G2=0.0))
    w = polariton_basis(p0).omega
    err = np.abs(w - [1.0, 1.9, 50.0]).max()
    record("decoupled frequencies (1, w_m2, |delta|)", err < 1e-12, err)

    cfg = system_params(DEFAULTS)
    r = analyze(cfg)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        grid = frequency_grid(r.basis, r.linear, r.nonlinear, full=True)
    rho0 = cavity_dos(grid, r.basis, r.linear, None)
    integral = float(_trapezoid(rho0, grid))
    record("trapezoid integral of rho0 = 1", abs(integral - 1) < 1e-3, integral)
    pos = rho0[grid > 0].min()
    record("rho0 >= 0 at positive frequency", pos >= 0, pos)

    p_g0 = cfg.replace(g1=0.0, g2=0.0)
    b0 = polariton_basis(p_g0)
    lin0 = linear_response(b0, p_g0)
    nl0 = nonlinear_response(b0, lin0, p_g0)
    diff = np.abs(cavity_dos(grid, b0, lin0, nl0) - cavity_dos(grid, b0, lin0, None)).max()
    record("g = 0 gives rho = rho0", diff == 0, diff)

    locus = sweep.trace_resonance(cfg.replace(omega_m2=1.9), np.geomspace(5, 200, 21))
    res = max((pt.residual for pt in locus), default=math.inf)
    record("resonance residual < 1e-8", len(locus) > 0 and res < 1e-8, res)

    pd = cfg.replace(omega_m2=1.0)
    bd = polariton_basis(pd)
    gd = abs(float(g211(bd, pd)))
    record("degenerate oscillators: g211 = 0", gd < 1e-12, gd)

    for name in ("peterson", "teufel"):
        rep = sweep.scenario(name)
        _, G_max = sweep.scenario_params(name)
        ok = rep.G_opt <= G_max * (1 + 1e-9) and rep.C_tilde > 0 and math.isfinite(rep.R)
        record(f"scenario {name}: feasible optimum", ok, rep.C_tilde)
    return results


def cmd_check(cfg, args):
    results = run_checks(inject=args.inject)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}  ({_num(detail)})" for name, ok, detail in results]
    failed = sum(not ok for _, ok, _ in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", failed


# ---------------------------------------------------------------- main

COMMANDS = {
    "spectrum": cmd_spectrum,
    "dos": cmd_dos,
    "sweep": cmd_sweep,
    "resonance": cmd_resonance,
    "optimize": cmd_optimize,
    "scenario": cmd_scenario,
    "check": cmd_check,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="TOML file with parameters and options")
    common.add_argument("--set", metavar="KEY=VALUE", action="append", default=[],
                        help="override one configuration key (repeatable)")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--format", choices=("csv", "report"), default=None)
    common.add_argument("--grid-g2", metavar="LO:HI:N")
    common.add_argument("--grid-delta", metavar="LO:HI:N")
    common.add_argument("--gmax", metavar="X")
    common.add_argument("--ratio", metavar="LO:HI:N", help="grid of omega_m2 / omega_m1")
    common.add_argument("--gratio", metavar="LO:HI:N", help="grid of g1 / g2")

    parser = argparse.ArgumentParser(prog="trimode", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="polariton frequencies, U and V")
    sub.add_parser("dos", parents=[common], help="cavity DOS with and without self-energies")
    sub.add_parser("sweep", parents=[common], help="deviation metric on a (G2, delta) grid")
    sub.add_parser("resonance", parents=[common], help="locus w2 = 2 w1 over delta")
    sub.add_parser("optimize", parents=[common], help="best C_eff,2 under G <= G_max")
    sc = sub.add_parser("scenario", parents=[common], help="optimum for a published device")
    sc.add_argument("name", help="peterson or teufel")
    ck = sub.add_parser("check", parents=[common], help="run the invariant battery")
    ck.add_argument("--inject", default=None, help=argparse.SUPPRESS)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = load_config(args.config, args.set)
        if args.command == "check":
            text, failed = cmd_check(cfg, args)
            _emit(text, args.out)
            return EXIT_CHECK if failed else EXIT_OK
        text = COMMANDS[args.command](cfg, args)
        _emit(text, args.out)
        return EXIT_OK
    except (InputError, ParameterError, sweep.EmptyFeasibleSet) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except UnstableSpectrum as exc:
        sys.stderr.write(f"UnstableSpectrum: {exc}\n")
        return EXIT_UNSTABLE


if __name__ == "__main__":
    sys.exit(main())
