"""Command-line front end.

Subcommands: kernel, solve, critical, figure1, tba, verify.  Configuration
comes from an optional flat-key JSON file (--config) with explicit flags
overriding file values.  Results go to a JSON summary (stdout or --output)
plus CSV tables where applicable; all runs with identical configuration
produce byte-identical output files.  Errors are printed as single-line
JSON on stderr: exit 2 for configuration problems, 3 for solver failures.
"""

import argparse
import dataclasses
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import critical, diagrams, tba
from .core import ModelParams
from .errors import ConfigError, PseudogasError
from .grid import (build_grid, build_kernel_matrix, constant_kernel_matrix,
                   kernel_matrix_from_json, kernel_matrix_to_json)
from .kernels import g2_kernel
from .pseudo import observables, solve_pseudo_energy

CSV_FLOAT = "{:.10g}"


@dataclass
class RunConfig:
    """Flat run configuration; round-trips losslessly through JSON."""
    dimension: int = 2
    mass: float = 1.0
    coupling: float = 0.13
    temperature: float = 1.0
    chemical_potential: float = -1.0
    uv_cutoff: float = 100.0 * np.sqrt(2.0)
    ir_cutoff: float = 0.0
    statistics: int = 1
    n_radial: int = 128
    n_angular: int = 64
    damping: float = 0.5
    tolerance: float = 1e-10
    max_iter: int = 500
    cache_dir: str = ""
    seed: int = 0
    mg: float = 0.13
    method: str = "closed"
    eps0: float = -1.0        # <= 0 means: use the closed-form critical value
    mu_min: float = 0.0
    mu_max: float = 0.0
    n_points: int = 200
    dk_min: float = 0.01
    dk_max: float = 10.0
    g: float = 0.5
    output: str = ""
    csv_output: str = ""

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def _load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a flat JSON object")
    return data


def _merge_config(args):
    values = {}
    if getattr(args, "config", None):
        values.update(_load_config(args.config))
    for field in dataclasses.fields(RunConfig):
        flag_value = getattr(args, field.name, None)
        if flag_value is not None:
            values[field.name] = flag_value
    merged = {**RunConfig().to_dict(), **values}
    return RunConfig.from_dict(merged)


def _params(cfg, dimension=None):
    return ModelParams(
        dimension=dimension if dimension is not None else cfg.dimension,
        mass=cfg.mass, coupling=cfg.coupling, temperature=cfg.temperature,
        chemical_potential=cfg.chemical_potential, uv_cutoff=cfg.uv_cutoff,
        ir_cutoff=cfg.ir_cutoff, statistics=cfg.statistics)


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(CSV_FLOAT.format(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _emit_json(payload, output):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cache_dir(cfg):
    return os.environ.get("PSEUDOGAS_CACHE", "") or cfg.cache_dir


def _kernel_with_cache(cfg, params, grid):
    cache = _cache_dir(cfg)
    if cache:
        from .grid import _kernel_params_hash
        path = Path(cache) / (
            f"kernel_{_kernel_params_hash(params)}_{grid.params_hash}.json")
        if path.exists():
            return kernel_matrix_from_json(path.read_text(encoding="utf-8"))
        kernel = build_kernel_matrix(params, grid)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(kernel_matrix_to_json(kernel), encoding="utf-8")
        return kernel
    return build_kernel_matrix(params, grid)


def _cmd_kernel(cfg):
    params = _params(cfg)
    dk = np.linspace(cfg.dk_min, cfg.dk_max, cfg.n_points)
    values = g2_kernel(params, dk)
    csv_path = cfg.csv_output or "kernel.csv"
    _write_csv(csv_path, ["dk", "G2"], zip(dk, values))
    _emit_json({"inputs": cfg.to_dict(), "csv": csv_path,
                "n_points": int(cfg.n_points),
                "G2_first": float(values[0]), "G2_last": float(values[-1])},
               cfg.output)


def _cmd_solve(cfg):
    params = _params(cfg)
    grid = build_grid(params, cfg.n_radial, cfg.n_angular)
    kernel = _kernel_with_cache(cfg, params, grid)
    field = solve_pseudo_energy(params, kernel, grid, damping=cfg.damping,
                                tolerance=cfg.tolerance,
                                max_iter=cfg.max_iter)
    obs = observables(params, field)
    csv_path = cfg.csv_output or "solve.csv"
    _write_csv(csv_path, ["k", "epsilon", "f", "f_tilde"],
               zip(grid.nodes, field.epsilon, obs.filling,
                   obs.dressed_filling))
    _emit_json({"inputs": cfg.to_dict(), "csv": csv_path,
                "density": obs.density, "free_energy": obs.free_energy,
                "iterations": field.iterations, "residual": field.residual},
               cfg.output)


def _critical_payload(result):
    return {"beta_mu_c": result.beta_mu_c, "beta_eps_c": result.beta_eps_c,
            "nc_lambda2": result.nc_lambda2, "method": result.method,
            "diagnostics": result.diagnostics}


def _cmd_critical(cfg):
    if cfg.method == "closed":
        if cfg.mg < 0:
            payload = {"beta_mu_c": critical.critical_mu_attractive(cfg.mg),
                       "method": "closed_form_attractive", "mg": cfg.mg}
        else:
            payload = _critical_payload(critical.closed_form_critical(cfg.mg))
    elif cfg.method == "cutoff":
        eps0 = cfg.eps0 if cfg.eps0 > 0 \
            else critical.closed_form_critical(cfg.mg).beta_eps_c
        roots = critical.cutoff_roots(cfg.mg, eps0)
        payload = {"method": "cutoff_scan", "mg": cfg.mg, "beta_eps0": eps0,
                   "roots": roots, "n_roots": len(roots)}
    elif cfg.method == "full":
        closed = critical.closed_form_critical(cfg.mg)
        eps0 = cfg.eps0 if cfg.eps0 > 0 else closed.beta_eps_c
        params = ModelParams.from_dimensionless_2d(
            cfg.mg, cfg.chemical_potential, uv_cutoff=cfg.uv_cutoff,
            ir_cutoff=float(np.sqrt(2.0 * eps0)))
        grid = build_grid(params, cfg.n_radial, cfg.n_angular)
        kernel = _kernel_with_cache(cfg, params, grid)
        payload = _critical_payload(
            critical.numeric_critical_mu(params, kernel, grid))
    else:
        raise ConfigError(f"unknown critical method {cfg.method!r}")
    payload["inputs"] = cfg.to_dict()
    _emit_json(payload, cfg.output)


def _cmd_figure1(cfg):
    eps0 = cfg.eps0 if cfg.eps0 > 0 \
        else critical.closed_form_critical(cfg.mg).beta_eps_c
    mu_max = cfg.mu_max if cfg.mu_max != 0.0 else 0.999 * eps0
    table = critical.figure1_curves(cfg.mg, eps0, (cfg.mu_min, mu_max),
                                    cfg.n_points)
    csv_path = cfg.csv_output or "figure1.csv"
    _write_csv(csv_path, ["beta_mu", "lhs", "rhs"], table)
    _emit_json({"inputs": cfg.to_dict(), "csv": csv_path,
                "beta_eps0": eps0, "n_points": int(cfg.n_points)},
               cfg.output)


def _cmd_tba(cfg):
    params = ModelParams(dimension=1, mass=0.5, coupling=cfg.g,
                         temperature=cfg.temperature,
                         chemical_potential=cfg.chemical_potential,
                         uv_cutoff=cfg.uv_cutoff)
    grid = build_grid(params, cfg.n_radial, n_angular=2)
    field = tba.solve_yang_yang(cfg.g, cfg.temperature,
                                cfg.chemical_potential, grid,
                                tolerance=cfg.tolerance,
                                max_iter=cfg.max_iter, damping=cfg.damping)
    comparison = tba.leading_order_comparison(
        cfg.g, cfg.temperature, cfg.chemical_potential, grid)
    csv_path = cfg.csv_output or "tba.csv"
    _write_csv(csv_path, ["k", "epsilon"], zip(grid.nodes, field.epsilon))
    _emit_json({"inputs": cfg.to_dict(), "csv": csv_path,
                "free_energy": tba.tba_free_energy(field),
                "iterations": field.iterations, "residual": field.residual,
                "comparison": {
                    "tba_first_order": comparison.tba_first_order,
                    "foam_first_order": comparison.foam_first_order,
                    "relative_gap": comparison.relative_gap}},
               cfg.output)


def _cmd_verify(cfg):
    summary = diagrams.verify_suite(seed=cfg.seed)
    _emit_json({"inputs": {"seed": cfg.seed}, "verified": True, **summary},
               cfg.output)


_COMMANDS = {
    "kernel": _cmd_kernel,
    "solve": _cmd_solve,
    "critical": _cmd_critical,
    "figure1": _cmd_figure1,
    "tba": _cmd_tba,
    "verify": _cmd_verify,
}


def _add_common(sub):
    sub.add_argument("--config", help="flat-key JSON config file")
    sub.add_argument("--output", help="JSON summary path (default stdout)")
    sub.add_argument("--csv-output", dest="csv_output", help="CSV table path")
    sub.add_argument("--cache-dir", dest="cache_dir",
                     help="kernel matrix cache directory "
                          "(PSEUDOGAS_CACHE overrides)")


def _float_flag(sub, name, help_text):
    sub.add_argument(name, type=float, help=help_text)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pseudogas",
        description="Thermodynamics of interacting quantum gases from "
                    "exact two-body scattering data.")
    subs = parser.add_subparsers(dest="command", required=True)

    kernel = subs.add_parser("kernel", help="dump a G2(dk) table as CSV")
    for flag in ("--mass", "--coupling", "--temperature", "--uv-cutoff",
                 "--dk-min", "--dk-max"):
        _float_flag(kernel, flag, flag.lstrip("-").replace("-", " "))
    kernel.add_argument("--dimension", type=int, choices=(1, 2, 3))
    kernel.add_argument("--n-points", dest="n_points", type=int)
    _add_common(kernel)

    solve = subs.add_parser("solve", help="solve the pseudo-energy equation")
    for flag in ("--mass", "--coupling", "--temperature",
                 "--chemical-potential", "--uv-cutoff", "--ir-cutoff",
                 "--damping", "--tolerance"):
        _float_flag(solve, flag, flag.lstrip("-").replace("-", " "))
    solve.add_argument("--dimension", type=int, choices=(1, 2, 3))
    solve.add_argument("--statistics", type=int, choices=(1, -1))
    solve.add_argument("--n-radial", dest="n_radial", type=int)
    solve.add_argument("--n-angular", dest="n_angular", type=int)
    solve.add_argument("--max-iter", dest="max_iter", type=int)
    _add_common(solve)

    crit = subs.add_parser("critical", help="locate the 2D critical point")
    crit.add_argument("--mg", type=float, help="dimensionless m*g")
    crit.add_argument("--method", choices=("closed", "cutoff", "full"))
    crit.add_argument("--eps0", type=float,
                      help="beta*eps0 infrared cutoff (<=0: critical value)")
    crit.add_argument("--uv-cutoff", dest="uv_cutoff", type=float)
    crit.add_argument("--n-radial", dest="n_radial", type=int)
    crit.add_argument("--n-angular", dest="n_angular", type=int)
    _add_common(crit)

    fig = subs.add_parser("figure1", help="tabulate both criticality curves")
    fig.add_argument("--mg", type=float)
    fig.add_argument("--eps0", type=float)
    fig.add_argument("--mu-min", dest="mu_min", type=float)
    fig.add_argument("--mu-max", dest="mu_max", type=float)
    fig.add_argument("--n-points", dest="n_points", type=int)
    _add_common(fig)

    tba_sub = subs.add_parser("tba", help="solve the 1D Yang-Yang equation")
    tba_sub.add_argument("--g", type=float, help="repulsive coupling")
    for flag in ("--temperature", "--chemical-potential", "--tolerance",
                 "--damping"):
        _float_flag(tba_sub, flag, flag.lstrip("-").replace("-", " "))
    tba_sub.add_argument("--n-radial", dest="n_radial", type=int)
    tba_sub.add_argument("--max-iter", dest="max_iter", type=int)
    _add_common(tba_sub)

    verify = subs.add_parser("verify", help="run the combinatoric identity suite")
    verify.add_argument("--seed", type=int)
    _add_common(verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        cfg = _merge_config(args)
        _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        _print_error(exc)
        return 2
    except PseudogasError as exc:
        _print_error(exc)
        return 3
    print(f"wall_time_s={time.perf_counter() - started:.3f}",
          file=sys.stderr)
    return 0


def _print_error(exc):
    sys.stderr.write(json.dumps(
        {"error": type(exc).__name__, "message": str(exc)}) + "\n")


if __name__ == "__main__":
    sys.exit(main())
