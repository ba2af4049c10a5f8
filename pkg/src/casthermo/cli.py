"""Command-line front end: parameter sweeps and CSV emission.

Subcommands: brownian-entropy, casimir-force, casimir-entropy, delta,
validate, convert-units.  Configuration can come from a flat JSON file
(--config); explicit flags override file values.  CSV files carry a
'#'-prefixed header echoing the configuration and its hash, floats are
printed with 12 significant digits, and grid points are distributed
over a worker pool whose size never changes the output bytes.

Exit codes: 0 success, 1 numerical failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import math
import os
import sys

from . import __version__, brownian, validate
from .casimir import (
    Method,
    ThermoPoint,
    delta_clp_grid,
    delta_eta_ft,
    delta_phi_te,
    entropy_dimensionless,
    eta_e,
    eta_f_matsubara,
    eta_f_resummed,
    ENTROPY_METHOD_SWITCH,
)
from .errors import CasthermoError, NumericalError
from .mirror import Kind, MirrorModel, Pol
from .brownian import BrownianParams

# CODATA SI values used by convert-units
_C_LIGHT = 299792458.0  # m/s
_HBAR = 1.054571817e-34  # J s
_K_B = 1.380649e-23  # J/K
_EPS0 = 8.8541878128e-12  # F/m

# gold-like defaults: lambda_P/L = 0.136 and the dc conductivity of gold
DEFAULT_LAMBDA_RATIO = 0.136
DEFAULT_ALPHA_P = 2.0 * math.pi / DEFAULT_LAMBDA_RATIO
DEFAULT_G = 0.125
DEFAULT_SIGMA_AU = 4.52e7  # (Ohm m)^-1, as eps0*sigma

DEFAULT_ENTROPY_G = (0.01, 0.1, 1.0, 10.0, 100.0, 1000.0)


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _grid(lo: float, hi: float, n: int, log: bool) -> list[float]:
    if not (lo < hi) or n < 2:
        raise UsageError("grid requires min < max and points >= 2")
    if log:
        if lo <= 0.0:
            raise UsageError("log spacing requires a positive minimum")
        r = (hi / lo) ** (1.0 / (n - 1))
        return [lo * r**i for i in range(n)]
    step = (hi - lo) / (n - 1)
    return [lo + step * i for i in range(n)]


def _model_from(cfg: dict) -> MirrorModel:
    kind = cfg.get("model", "drude")
    alpha_p = cfg.get("alpha_p")
    if alpha_p is None:
        ratio = cfg.get("lambda_ratio", DEFAULT_LAMBDA_RATIO)
        alpha_p = 2.0 * math.pi / float(ratio)
    if kind == "ideal":
        return MirrorModel.ideal()
    if kind == "plasma":
        return MirrorModel.plasma(float(alpha_p))
    if kind == "drude":
        return MirrorModel.drude(float(alpha_p), float(cfg.get("g", DEFAULT_G)))
    raise UsageError(f"unknown model {kind!r}")


def _write_csv(path: str, cfg: dict, columns: list[str], rows) -> None:
    echo = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    sha = hashlib.sha256(echo.encode()).hexdigest()[:12]
    lines = [
        f"# casthermo {__version__}",
        f"# config: {echo}",
        f"# config-sha256: {sha}",
        "# columns: " + ",".join(columns),
    ]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _pool_map(func_name: str, payloads: list, threads: int) -> list:
    """Ordered map over the worker pool; threads=1 stays in-process."""
    if threads <= 1 or len(payloads) <= 1:
        return [_run_task((func_name, p)) for p in payloads]
    tasks = [(func_name, p) for p in payloads]
    with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_run_task, tasks))


# ---------------------------------------------------------------- workers


def _task_force(p):
    kind, alpha_p, g, pol, tau, method = p
    model = {
        "ideal": MirrorModel.ideal,
        "plasma": lambda: MirrorModel.plasma(alpha_p),
        "drude": lambda: MirrorModel.drude(alpha_p, g),
    }[kind]()
    pol = Pol(pol)
    m = method
    if m == "auto":
        m = "matsubara" if tau >= ENTROPY_METHOD_SWITCH else "resummed"
    t = ThermoPoint(tau)
    if m == "matsubara":
        r = eta_f_matsubara(model, pol, t)
    else:
        r = eta_f_resummed(model, pol, t)
    return (tau, r.eta0, r.etaT, r.total, r.err, r.method.value)


def _task_entropy(p):
    alpha_p, g, pol, tau = p
    model = MirrorModel.drude(alpha_p, g)
    return entropy_dimensionless(model, Pol(pol), ThermoPoint(tau))


def _task_brownian(p):
    theta, w, box = p
    if math.isinf(w):
        return brownian.entropy_ohmic(theta)
    return brownian.entropy_cutoff(BrownianParams(theta, w, box))


def _task_delta(p):
    alpha_p, g, tau = p
    return delta_eta_ft(alpha_p, g, ThermoPoint(tau))


def _task_eta_t(p):
    kind, alpha_p, g, tau = p
    model = (
        MirrorModel.drude(alpha_p, g) if kind == "drude" else MirrorModel.plasma(alpha_p)
    )
    r = eta_f_resummed(model, Pol.TE, ThermoPoint(tau))
    return r.etaT


_TASKS = {
    "force": _task_force,
    "entropy": _task_entropy,
    "brownian": _task_brownian,
    "delta": _task_delta,
    "eta_t": _task_eta_t,
}


def _run_task(task):
    name, payload = task
    return _TASKS[name](payload)


# ------------------------------------------------------------- commands


def cmd_brownian_entropy(cfg: dict) -> int:
    thetas = _grid(
        float(cfg.get("tau_min", 0.01)),
        float(cfg.get("tau_max", 100.0)),
        int(cfg.get("points", 60)),
        bool(cfg.get("log", True)),
    )
    cutoffs = cfg.get("cutoffs", ["inf"])
    ws = [math.inf if str(c).lower() in ("inf", "infinity") else float(c) for c in cutoffs]
    if not ws:
        raise UsageError("need at least one cutoff value")
    box = float(cfg.get("box_const", 1.0))
    threads = int(cfg.get("threads", 1))
    payloads = [(th, w, box) for th in thetas for w in ws]
    flat = _pool_map("brownian", payloads, threads)
    cols = ["theta", "inv_theta"] + [
        f"s_minus_s0_w{'inf' if math.isinf(w) else _fmt(w)}" for w in ws
    ]
    rows = []
    for i, th in enumerate(thetas):
        chunk = flat[i * len(ws) : (i + 1) * len(ws)]
        rows.append((th, 1.0 / th, *chunk))
    _write_csv(cfg.get("out", "-"), cfg, cols, rows)
    return 0


def cmd_casimir_force(cfg: dict) -> int:
    taus = _grid(
        float(cfg.get("tau_min", 0.01)),
        float(cfg.get("tau_max", 2.0)),
        int(cfg.get("points", 20)),
        bool(cfg.get("log", True)),
    )
    models = str(cfg.get("model", "drude")).split(",")
    pols = str(cfg.get("pol", "both")).split(",")
    method = str(cfg.get("method", "auto"))
    if method not in ("matsubara", "resummed", "auto"):
        raise UsageError(f"unknown method {method!r}")
    alpha_p = cfg.get("alpha_p")
    if alpha_p is None:
        alpha_p = 2.0 * math.pi / float(cfg.get("lambda_ratio", DEFAULT_LAMBDA_RATIO))
    alpha_p = float(alpha_p)
    g = float(cfg.get("g", DEFAULT_G))
    threads = int(cfg.get("threads", 1))

    cols = ["model", "pol", "tau", "eta0", "etaT", "eta_total", "err", "method"]
    rows = []
    for kind in models:
        if kind not in ("ideal", "plasma", "drude"):
            raise UsageError(f"unknown model {kind!r}")
        for pol in pols:
            if pol not in ("te", "tm", "both"):
                raise UsageError(f"unknown polarization {pol!r}")
            payloads = [(kind, alpha_p, g, pol, tau, method) for tau in taus]
            for out in _pool_map("force", payloads, threads):
                rows.append((kind, pol, *out))
    _write_csv(cfg.get("out", "-"), cfg, cols, rows)
    return 0


def cmd_casimir_entropy(cfg: dict) -> int:
    taus = _grid(
        float(cfg.get("tau_min", 1e-3)),
        float(cfg.get("tau_max", 5.0)),
        int(cfg.get("points", 15)),
        bool(cfg.get("log", True)),
    )
    gs = [float(x) for x in cfg.get("g_list", DEFAULT_ENTROPY_G)]
    pol = str(cfg.get("pol", "both"))
    alpha_p = cfg.get("alpha_p")
    if alpha_p is None:
        alpha_p = 2.0 * math.pi / float(cfg.get("lambda_ratio", DEFAULT_LAMBDA_RATIO))
    alpha_p = float(alpha_p)
    threads = int(cfg.get("threads", 1))
    payloads = [(alpha_p, g, pol, tau) for tau in taus for g in gs]
    flat = _pool_map("entropy", payloads, threads)
    cols = ["tau"] + [f"s_g{_fmt(g)}" for g in gs]
    rows = []
    for i, tau in enumerate(taus):
        rows.append((tau, *flat[i * len(gs) : (i + 1) * len(gs)]))
    _write_csv(cfg.get("out", "-"), cfg, cols, rows)
    return 0


def cmd_delta(cfg: dict) -> int:
    alpha_p = cfg.get("alpha_p")
    if alpha_p is None:
        alpha_p = 2.0 * math.pi / float(cfg.get("lambda_ratio", DEFAULT_LAMBDA_RATIO))
    alpha_p = float(alpha_p)
    g = float(cfg.get("g", DEFAULT_G))
    threads = int(cfg.get("threads", 1))
    prefix = cfg.get("out")
    if not prefix or prefix == "-":
        raise UsageError("delta writes three files and needs --out PREFIX")

    # closed-loop difference grid (frequency x = xi/gamma, u = c kappa/omega_P)
    x_grid = _grid(1e-2, 1e2, int(cfg.get("points", 25)), True)
    u_grid = _grid(1e-3, 1.0, int(cfg.get("points", 25)), True)
    mat = delta_clp_grid(alpha_p, g, x_grid, u_grid)
    rows = [(x, *mat[i]) for i, x in enumerate(x_grid)]
    _write_csv(
        f"{prefix}_clp_grid.csv",
        cfg,
        ["x"] + [f"u{_fmt(u)}" for u in u_grid],
        rows,
    )

    # spectral-density difference curves, finite g and the g -> 0 limit
    g_list = [float(x) for x in cfg.get("g_list", (1e-3, 1e-1))]
    rows = []
    for x in x_grid:
        vals = [delta_phi_te(alpha_p, gv, x) for gv in g_list]
        vals.append(delta_phi_te(alpha_p, None, x))
        rows.append((x, *vals))
    _write_csv(
        f"{prefix}_dphi.csv",
        cfg,
        ["x"] + [f"g{_fmt(gv)}" for gv in g_list] + ["zero_limit"],
        rows,
    )

    # thermal-correction difference vs temperature, with both TE parts
    taus = _grid(
        float(cfg.get("tau_min", 1e-3)),
        float(cfg.get("tau_max", 2.0)),
        int(cfg.get("points", 25)),
        True,
    )
    deltas = _pool_map("delta", [(alpha_p, g, tau) for tau in taus], threads)
    drude_t = _pool_map("eta_t", [("drude", alpha_p, g, tau) for tau in taus], threads)
    plasma_t = _pool_map("eta_t", [("plasma", alpha_p, g, tau) for tau in taus], threads)
    rows = [
        (tau, abs(d), abs(dt), pt)
        for tau, d, dt, pt in zip(taus, deltas, drude_t, plasma_t)
    ]
    _write_csv(
        f"{prefix}_delta_eta.csv",
        cfg,
        ["tau", "abs_delta_etaT", "abs_etaT_drude_te", "etaT_plasma_te"],
        rows,
    )
    return 0


def cmd_validate(cfg: dict) -> int:
    results = validate.run_acceptance(verbose=True)
    failures = [r for r in results if not r.passed]
    print()
    print(f"{len(results) - len(failures)}/{len(results)} criteria passed")
    return 1 if failures else 0


def cmd_convert_units(cfg: dict) -> int:
    length = float(cfg.get("length_m", 1e-6))
    temp = float(cfg.get("temperature_k", 300.0))
    sigma_si = float(cfg.get("sigma0_si", DEFAULT_SIGMA_AU))
    lambda_p = float(cfg.get("lambda_p_m", 0.136e-6))
    if length <= 0 or temp <= 0 or sigma_si <= 0 or lambda_p <= 0:
        raise UsageError("convert-units requires positive inputs")
    tau = _K_B * temp * length / (_HBAR * _C_LIGHT)
    alpha_p = 2.0 * math.pi * length / lambda_p
    sigma_freq = sigma_si / _EPS0  # conductivity expressed as a frequency
    s0 = sigma_freq * length / _C_LIGHT
    g = alpha_p**2 / s0
    print(f"tau        = {_fmt(tau)}")
    print(f"alpha_p    = {_fmt(alpha_p)}")
    print(f"g          = {_fmt(g)}")
    print(f"s0         = {_fmt(s0)}")
    print(f"hbar*beta*gamma = {_fmt(g / tau)}")
    return 0


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat JSON config; flags override its values")
    p.add_argument("--model", help="ideal|plasma|drude (comma list where sensible)")
    p.add_argument("--pol", help="te|tm|both")
    p.add_argument("--alpha-p", type=float, dest="alpha_p", help="omega_P L/c")
    p.add_argument("--g", type=float, help="gamma L/c")
    p.add_argument(
        "--lambda-ratio",
        type=float,
        dest="lambda_ratio",
        help=f"lambda_P/L; alpha_p = 2 pi/ratio (default {DEFAULT_LAMBDA_RATIO})",
    )
    p.add_argument("--tau-min", type=float, dest="tau_min", help="grid minimum")
    p.add_argument("--tau-max", type=float, dest="tau_max", help="grid maximum")
    p.add_argument("--points", type=int, help="grid size (>= 2)")
    p.add_argument("--log", action="store_true", default=None, help="log-spaced grid")
    p.add_argument("--method", help="matsubara|resummed|auto")
    p.add_argument("--out", help="output path ('-' for stdout)")
    p.add_argument(
        "--threads",
        type=int,
        help="worker processes (default: CASTHERMO_THREADS or 1; 0 = all cores)",
    )


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="casthermo",
        description=(
            "Thermodynamics of the damped quantum Brownian particle and of the "
            "thermal Casimir effect between Drude/plasma mirrors"
        ),
    )
    ap.add_argument("--version", action="version", version=f"casthermo {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "brownian-entropy",
        help="entropy S-S0 of the damped free particle over a theta grid",
    )
    _add_common(p)
    p.add_argument(
        "--cutoffs",
        help="comma list of cutoff ratios w = omega_c/gamma ('inf' allowed)",
    )
    p.add_argument("--box-const", type=float, dest="box_const", help="b = 2 pi M L^2 gamma/hbar")

    p = sub.add_parser("casimir-force", help="force factor eta_F over a tau grid")
    _add_common(p)

    p = sub.add_parser(
        "casimir-entropy", help="dimensionless Casimir entropy over a tau grid"
    )
    _add_common(p)
    p.add_argument("--g-list", dest="g_list", help="comma list of g values")

    p = sub.add_parser(
        "delta", help="Drude-plasma TE difference data (grid + curves)"
    )
    _add_common(p)
    p.add_argument("--g-list", dest="g_list", help="comma list of g values for curves")

    p = sub.add_parser("validate", help="run the acceptance suite")
    _add_common(p)

    p = sub.add_parser(
        "convert-units",
        help="convert physical inputs (SI) to the dimensionless groups",
    )
    p.add_argument("--config")
    p.add_argument("--length-m", type=float, dest="length_m", help="mirror separation L in m")
    p.add_argument(
        "--temperature-k", type=float, dest="temperature_k", help="temperature in K"
    )
    p.add_argument(
        "--sigma0-si",
        type=float,
        dest="sigma0_si",
        help=f"dc conductivity in (Ohm m)^-1 (default gold, {DEFAULT_SIGMA_AU:g})",
    )
    p.add_argument(
        "--lambda-p-m", type=float, dest="lambda_p_m", help="plasma wavelength in m"
    )
    return ap


_COMMANDS = {
    "brownian-entropy": cmd_brownian_entropy,
    "casimir-force": cmd_casimir_force,
    "casimir-entropy": cmd_casimir_entropy,
    "delta": cmd_delta,
    "validate": cmd_validate,
    "convert-units": cmd_convert_units,
}

_LIST_KEYS = ("cutoffs", "g_list")


def _merge_config(args: argparse.Namespace) -> dict:
    cfg: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a flat JSON object")
        cfg.update(loaded)
    for key, val in vars(args).items():
        if key in ("command", "config") or val is None:
            continue
        cfg[key] = val
    for key in _LIST_KEYS:
        if key in cfg and isinstance(cfg[key], str):
            cfg[key] = [s.strip() for s in cfg[key].split(",") if s.strip()]
    if "threads" not in cfg:
        cfg["threads"] = int(os.environ.get("CASTHERMO_THREADS", "1"))
    if cfg["threads"] == 0:
        cfg["threads"] = os.cpu_count() or 1
    if cfg.get("threads", 1) < 0:
        raise UsageError("--threads must be >= 0")
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _merge_config(args)
        return _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, CasthermoError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
