"""Command-line front end.

Subcommands: ``verify`` runs residual self-checks; ``portrait``, ``bore``
and ``soliton`` tabulate data as CSV or JSON.  Exit codes: 0 success,
1 verification failure, 2 usage error, 3 numerical domain failure.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__, gp, kudashev
from .checks import SUITES, run_suite
from .errors import AbelGPError

OUTPUT_DIR_ENV = "ABELGP_OUTPUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


def _num(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, float, np.floating, np.integer)):
        return format(float(x), ".17g")
    return str(x)


def _json_value(x):
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, float, np.floating, np.integer)):
        x = float(x)
        return format(x, ".17g") if math.isfinite(x) else "null"
    return json.dumps(x)


class Table:
    def __init__(self, columns, rows, meta):
        self.columns = columns
        self.rows = rows
        self.meta = meta

    def csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows([_num(v) for v in row] for row in self.rows)
        return buf.getvalue()

    def json(self):
        rows = ["{" + ", ".join(f"{json.dumps(c)}: {_json_value(v)}" for c, v in zip(self.columns, row)) + "}"
                for row in self.rows]
        meta = json.dumps(self.meta, sort_keys=True)
        body = ",\n    ".join(rows)
        return f'{{\n  "meta": {meta},\n  "rows": [\n    {body}\n  ]\n}}\n' if rows else \
            f'{{\n  "meta": {meta},\n  "rows": []\n}}\n'


def _resolve_out(path):
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit(table, args):
    text = table.csv() if args.format == "csv" else table.json()
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return
    path = _resolve_out(args.out)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _meta(args, tolerances):
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    return {"command": args.command, "config": config, "version": __version__, "tolerances": tolerances}


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_verify(args):
    checks = run_suite(args.suite)
    rows = []
    ok = True
    for c in checks:
        tol = args.tol if args.tol is not None else c.tol
        passed = math.isfinite(c.residual) and c.residual < tol
        ok &= passed
        rows.append((c.suite, c.name, c.residual, tol, "pass" if passed else "FAIL"))
    table = Table(["suite", "check", "residual", "tol", "status"], rows,
                  _meta(args, {f"{r[0]}:{r[1]}": r[3] for r in rows}))
    _emit(table, args)
    return EXIT_OK if ok else EXIT_FAIL


def portrait_rows(window, seeds=None, rtol=1e-10, span=10.0, n_curve=400):
    rows = []
    for i, tr in enumerate(kudashev.phase_portrait(seeds, window, rtol=rtol, span=span)):
        cid = f"traj-{i:03d}"
        rows += [(cid, "trajectory", R, z) for R, z in zip(tr.R, tr.z)]
    for i, p in enumerate(kudashev.equilibria(), start=1):
        rows.append((f"P{i}", "equilibrium", p.R, p.z))
    sig = np.linspace(-10.0, 10.0, n_curve)
    for eps in (-1, 1):
        cid = f"algebraic-eps{eps:+d}"
        for s in sig:
            p = kudashev.algebraic_solution_point(eps, float(s))
            if window.contains(p.R, p.z):
                rows.append((cid, "algebraic", p.R, p.z))
    s_grid = -np.logspace(4, -3, n_curve)
    for eps in (-1, 1):
        for k in ("w1", "w2"):
            br = kudashev.Branch(eps, k)
            cid = f"kummer-{k}-eps{eps:+d}"
            for s in s_grid:
                p = kudashev.general_solution_point(br, float(s))
                if window.contains(p.R, p.z):
                    rows.append((cid, "kummer", p.R, p.z))
    return rows


def cmd_portrait(args):
    window = kudashev.Window(args.R_min, args.R_max, args.z_min, args.z_max)
    seeds = kudashev.default_seeds(window, args.n_R, args.n_z)
    rows = portrait_rows(window, seeds, rtol=args.tol, span=args.span)
    _emit(Table(["curve_id", "kind", "R", "z"], rows, _meta(args, {"rtol": args.tol})), args)
    return EXIT_OK


def cmd_bore(args):
    x0, x1 = gp.attainable_x(args.t)
    x_min = x0 if args.x_min is None else args.x_min
    x_max = x1 if args.x_max is None else args.x_max
    rows = []
    for smp in gp.bore_profile(args.t, x_min, x_max, args.n):
        res = math.nan
        status = smp.status
        if status == "ok":
            res = abs(gp.sample_residual(smp))
            if not res < args.tol:
                status = "residual"
        rows.append((smp.t, smp.x, smp.z, smp.r, smp.phi, smp.v, smp.u, smp.branch, status, res))
    cols = ["t", "x", "z", "r", "phi", "v", "u", "branch", "status", "residual"]
    _emit(Table(cols, rows, _meta(args, {"residual": args.tol})), args)
    return EXIT_OK


def cmd_soliton(args):
    eps_list = {"-1": (-1,), "1": (1,), "both": (-1, 1)}[args.epsilon]
    rows = []
    for eps in eps_list:
        for sigma in np.linspace(args.sigma_min, args.sigma_max, args.n_sigma):
            sigma = float(sigma)
            z = kudashev.algebraic_solution_point(eps, sigma).z
            for phi in np.linspace(args.phi_min, args.phi_max, args.n_phi):
                rows.append((eps, sigma, z, float(phi), gp.soliton_profile(sigma, float(phi), eps)))
    _emit(Table(["epsilon", "sigma", "z", "phi", "v"], rows, _meta(args, {})), args)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _positive(x):
    v = float(x)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {x}")
    return v


def _count(x):
    v = int(x)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {x}")
    return v


def _common(p, tol_default, tol_help):
    p.add_argument("--tol", type=_positive, default=tol_default, help=tol_help)
    p.add_argument("--out", default=None,
                   help=f"output file (default stdout); relative paths go under ${OUTPUT_DIR_ENV} if set")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser():
    parser = argparse.ArgumentParser(prog="abelgp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run residual self-checks")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    _common(p, None, "override every check tolerance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("portrait", help="phase-portrait polylines of the (R, z) equation")
    w = kudashev.Window()
    p.add_argument("--R-min", dest="R_min", type=float, default=w.R_min)
    p.add_argument("--R-max", dest="R_max", type=float, default=w.R_max)
    p.add_argument("--z-min", type=float, default=w.z_min)
    p.add_argument("--z-max", type=float, default=w.z_max)
    p.add_argument("--n-R", dest="n_R", type=_count, default=7, help="seed columns")
    p.add_argument("--n-z", type=_count, default=9, help="seed rows")
    p.add_argument("--span", type=_positive, default=10.0, help="arclength per direction")
    _common(p, 1e-10, "integrator relative tolerance")
    p.set_defaults(func=cmd_portrait)

    p = sub.add_parser("bore", help="leading-term bore samples at fixed t")
    p.add_argument("--t", type=_positive, default=5.0)
    p.add_argument("--x-min", type=float, default=None, help="default: lower end of the attainable range")
    p.add_argument("--x-max", type=float, default=None, help="default: upper end of the attainable range")
    p.add_argument("--n", type=_count, default=200)
    _common(p, 1e-6, "residual bound used for the status column")
    p.set_defaults(func=cmd_bore)

    p = sub.add_parser("soliton", help="soliton-limit profiles along the algebraic curve")
    p.add_argument("--sigma-min", type=float, default=2.0)
    p.add_argument("--sigma-max", type=float, default=10.0)
    p.add_argument("--n-sigma", type=_count, default=9)
    p.add_argument("--phi-min", type=float, default=-10.0)
    p.add_argument("--phi-max", type=float, default=10.0)
    p.add_argument("--n-phi", type=_count, default=201)
    p.add_argument("--epsilon", choices=("-1", "1", "both"), default="both")
    _common(p, 1e-8, "unused; echoed in the metadata")
    p.set_defaults(func=cmd_soliton)
    return parser


def _validate(parser, args):
    pairs = {"portrait": [("R_min", "R_max"), ("z_min", "z_max")],
             "soliton": [("sigma_min", "sigma_max"), ("phi_min", "phi_max")],
             "bore": [("x_min", "x_max")]}
    for lo, hi in pairs.get(args.command, []):
        a, b = getattr(args, lo), getattr(args, hi)
        if a is not None and b is not None and not a <= b:
            parser.error(f"empty range: {lo}={a} > {hi}={b}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.func(args)
    except AbelGPError as exc:
        print(f"abelgp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"abelgp: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
