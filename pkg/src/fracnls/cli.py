"""Command-line front end.

Subcommands mirror the laboratory's studies; every run writes report.json
(plus norms.csv and field slices where applicable) into --out and exits 0
only if all asserted criteria of that run pass.

Configuration files are plain ``key: value`` text; see the schema in
SolverConfig.to_text (solver runs) plus the per-command keys documented in
each subcommand's --help.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .estimates import (
    check_japanese_bracket_integral,
    check_resonance_lower_bound,
    check_time_trace_integral,
    check_trilinear_sup_integral,
    check_two_bracket_convolution,
    check_weighted_tail_integral,
)
from .experiments import (
    convergence_study,
    rough_datum,
    smoothing_scan_fullline,
    smoothing_scan_halfline,
)
from .fractional import CausalSignal, smooth_bump01
from .kernel import build_kernel_table, save_kernel_csv, suggested_table_xmax
from .reports import SCHEMA_VERSION
from .solver import SolverConfig, save_report, solve_ibvp, solve_ivp_fullline
from .spectral import ComplexField

DEFAULT_CONFIG = """\
alpha: 1.6
s: 0.3
b: None
a: 0.1
lambda: 1.0
half_length: 16.0
n_points: 256
t_max: 1.0
n_steps: 256
T: 0.25
max_iter: 25
tol_fixed_point: 1e-9
kernel_tol: 1e-8
kernel_err_budget: 1e-7
dealias: True
"""


def _load_cfg(path):
    if path is None:
        return SolverConfig.from_text(DEFAULT_CONFIG), {}
    with open(path) as fh:
        text = fh.read()
    extra = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, val = line.partition(":")
        extra[key.strip()] = val.strip()
    return SolverConfig.from_text(text), extra


def _datum(cfg, extra):
    kind = extra.get("datum", "gaussian")
    amp = float(extra.get("datum_scale", 0.3))
    seed = int(extra.get("seed", 0))
    grid = cfg.grid
    if kind == "gaussian":
        return ComplexField.from_function(grid, lambda x: amp * np.exp(-(x**2)))
    if kind == "half_gaussian":
        vals = np.where(grid.x > 0, amp * np.exp(-((grid.x - 2.0) ** 2)), 0.0)
        return ComplexField(grid, vals)
    if kind == "rough":
        return rough_datum(grid, cfg.params.s, seed=seed, amplitude=amp,
                           window=float(extra.get("window", grid.half_length / 3.0)),
                           offset=float(extra.get("offset", 0.0)))
    raise SystemExit(f"unknown datum kind: {kind}")


def _boundary_signal(cfg, extra):
    kind = extra.get("boundary", "zero")
    if kind == "zero":
        return CausalSignal(cfg.tgrid, np.zeros(cfg.tgrid.n_steps + 1, complex))
    if kind == "bump":
        scale = float(extra.get("boundary_scale", 1.0))
        return CausalSignal.from_function(cfg.tgrid, lambda t: scale * smooth_bump01(t))
    raise SystemExit(f"unknown boundary kind: {kind}")


def _write_json(out_dir, payload):
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "report.json"), "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=float)
        fh.write("\n")


def cmd_solve_ivp(args):
    cfg, extra = _load_cfg(args.config)
    rep = solve_ivp_fullline(_datum(cfg, extra), cfg)
    save_report(rep, cfg, args.out)
    print(f"converged={rep.converged} iterations={rep.iterations}")
    return 0 if rep.converged else 1


def cmd_solve_ibvp(args):
    cfg, extra = _load_cfg(args.config)
    extra.setdefault("datum", "half_gaussian")
    rep = solve_ibvp(_datum(cfg, extra), _boundary_signal(cfg, extra), cfg)
    save_report(rep, cfg, args.out)
    print(f"converged={rep.converged} iterations={rep.iterations} "
          f"boundary_residual={rep.trace_residuals[1]:.3e}")
    return 0 if rep.converged else 1


def cmd_smoothing_scan(args):
    cfg, extra = _load_cfg(args.config)
    a_lo = float(extra.get("a_min", 0.05))
    a_hi = float(extra.get("a_max_grid", 0.25))
    n_a = int(extra.get("n_a", 3))
    a_grid = list(np.linspace(a_lo, a_hi, n_a))
    seed = int(extra.get("seed", 7))
    amp = float(extra.get("datum_scale", 0.25))
    window = float(extra.get("window", cfg.grid.half_length / 3.0))
    if extra.get("problem", "fullline") == "halfline":
        offset = float(extra.get("offset", window * 0.75))

        def fac(g):
            r = rough_datum(g, cfg.params.s, seed=seed, amplitude=amp,
                            window=window, offset=offset)
            return ComplexField(g, np.where(g.x > 0, r.values, 0.0))

        scan = smoothing_scan_halfline(fac(cfg.grid), _boundary_signal(cfg, extra),
                                       cfg, a_grid, u0_factory=fac)
    else:
        fac = lambda g: rough_datum(g, cfg.params.s, seed=seed, amplitude=amp, window=window)
        scan = smoothing_scan_fullline(fac(cfg.grid), cfg, a_grid, u0_factory=fac)
    scan.save(args.out)
    ok = all(scan.stable[:-1]) and not scan.stable[-1]
    print("stable flags:", list(map(bool, scan.stable)),
          "(last is the out-of-window control)")
    return 0 if ok else 1


def cmd_verify_estimates(args):
    cfg, extra = _load_cfg(args.config)
    p = cfg.params
    quick = bool(int(extra.get("quick", "1")))
    reports = [
        check_japanese_bracket_integral(0.0, 1.0, 0.5),
        check_two_bracket_convolution(0.0, 5.0, 1.5, 0.5),
        check_resonance_lower_bound(p.alpha, trials=int(extra.get("trials", 100000))),
        check_weighted_tail_integral(4.0, -0.25, -0.5, 0.4),
        check_time_trace_integral([2.0**j for j in range(0, 13)],
                                  min(p.s, (p.alpha - 1.0) / 2.0 - 0.05), 0.45, p.alpha),
    ]
    if not quick:
        radii = [2.0**8, 2.0**9, 2.0**10]
        reports.append(check_trilinear_sup_integral("A", p, 0.01, radii=radii))
        reports.append(check_trilinear_sup_integral("B", p, 0.01, radii=radii))
    os.makedirs(args.out, exist_ok=True)
    from .reports import EstimateReport

    with open(os.path.join(args.out, "summary.csv"), "w") as fh:
        fh.write(f"# {SCHEMA_VERSION}\n")
        fh.write(EstimateReport.CSV_HEADER + "\n")
        for rep in reports:
            fh.write(rep.csv_row() + "\n")
    _write_json(args.out, {"schema": SCHEMA_VERSION, "kind": "estimates",
                           "reports": [r.to_dict() for r in reports]})
    ok = all(r.passed for r in reports)
    for r in reports:
        print(f"{r.inequality_id}: C_emp={r.c_emp:.4g} slope={r.trend_slope:+.3f} "
              f"pass={r.passed}")
    return 0 if ok else 1


def cmd_kernel_table(args):
    cfg, extra = _load_cfg(args.config)
    alpha = cfg.params.alpha
    x_max = float(extra.get("x_max", suggested_table_xmax(alpha)))
    table = build_kernel_table(alpha, x_max, n_nodes=int(extra.get("n_nodes", 256)),
                               tol=cfg.kernel_tol)
    os.makedirs(args.out, exist_ok=True)
    save_kernel_csv(table, os.path.join(args.out, "kernel_table.csv"))
    _write_json(args.out, {
        "schema": SCHEMA_VERSION, "kind": "kernel_table", "alpha": alpha,
        "x_max": table.tail_cut, "n_nodes": len(table.x_nodes),
        "est_tail_error": table.est_tail_error,
    })
    print(f"nodes={len(table.x_nodes)} tail_error={table.est_tail_error:.2e}")
    return 0


def cmd_convergence(args):
    cfg, extra = _load_cfg(args.config)
    levels = int(extra.get("levels", 3))
    f = None
    if extra.get("problem", "fullline") == "halfline":
        extra.setdefault("datum", "half_gaussian")
        f = _boundary_signal(cfg, extra)
    out = convergence_study(cfg, _datum(cfg, extra), levels=levels, f=f)
    _write_json(args.out, out)
    ok = all(abs(o - 2.0) <= 0.4 for o in out["residual_orders"]) if out["residual_orders"] else True
    print("residual orders:", [f"{o:.2f}" for o in out["residual_orders"]])
    return 0 if ok else 1


def main(argv=None):
    parser = argparse.ArgumentParser(prog="fracnls",
                                     description="fractional NLS numerical laboratory")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, doc in (
        ("solve-ivp", cmd_solve_ivp, "full-line fixed-point solve"),
        ("solve-ibvp", cmd_solve_ibvp, "half-line fixed-point solve"),
        ("smoothing-scan", cmd_smoothing_scan, "nonlinear smoothing stability scan"),
        ("verify-estimates", cmd_verify_estimates, "inequality probes"),
        ("kernel-table", cmd_kernel_table, "build and dump the oscillatory kernel table"),
        ("convergence", cmd_convergence, "refinement convergence study"),
    ):
        sp = sub.add_parser(name, help=doc)
        sp.add_argument("--config", help="key: value configuration file")
        sp.add_argument("--out", required=True, help="output directory")
        sp.set_defaults(fn=fn)
    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
