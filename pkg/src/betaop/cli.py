"""Command-line interface: exact verification commands plus CSV/JSON export
of iterates, residual series, partitions, Bernoulli tables, and integer-base
residuals. Every file output is accompanied by a JSON run manifest.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage error,
3 budget exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

import mpmath
import numpy as np
import scipy

from . import __version__
from .asymptotics import (epsilon_of, fit_slope, two_term_residual_exact,
                          two_term_residual_numeric)
from .bernoulli import bernoulli_coeffs, integer_base_expansion_residual
from .catalog import builtin
from .field import BetaParams
from .partition import refine_to_level
from .piecewise import PiecewisePoly
from .spectral import (block_eigenvalues, make_u_tilde, mat_equal, mat_mul,
                       mat_scale, restriction_matrix, make_psi_basis,
                       riesz_projections)
from .transfer import BudgetExceeded, apply_transfer_iterate

EXIT_PASS = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _dec(x: float) -> str:
    """15 significant digits (float formatting rounds half-even)."""
    return "{:.15g}".format(float(x))


def _thread_count() -> int:
    raw = os.environ.get("BETAOP_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise SystemExit("BETAOP_THREADS must be an integer, got %r" % raw)
    return max(1, n)


def _write_output(args, text: str, manifest: dict) -> None:
    """Write the data file plus a sibling <path>.manifest.json; without
    --output the data goes to stdout and no manifest file is created."""
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
        with open(args.output + ".manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        sys.stdout.write(text)


def _manifest(args, command: str, started: float, extra: dict | None = None) -> dict:
    doc = {
        "schema": 1,
        "command": command,
        "parameters": {k: v for k, v in sorted(vars(args).items())
                       if k not in ("func", "output") and v is not None},
        "versions": {
            "betaop": __version__,
            "python": sys.version.split()[0],
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "mpmath": mpmath.__version__,
        },
        "threads": _thread_count(),
        "elapsed_seconds": round(time.perf_counter() - started, 6),
    }
    if getattr(args, "seed", None) is not None:
        doc["seed"] = args.seed
    if extra:
        doc.update(extra)
    return doc


def _params(args) -> BetaParams:
    return BetaParams(args.a0, args.a1)


def _load_function(args):
    """A catalog entry, or a PiecewisePoly read from --piecewise-json."""
    if getattr(args, "piecewise_json", None):
        with open(args.piecewise_json) as fh:
            return PiecewisePoly.from_json_dict(json.load(fh))
    return builtin(args.F)


# -- commands -------------------------------------------------------------------


def cmd_eigen_check(args) -> int:
    started = time.perf_counter()
    params = _params(args)
    lines = []
    failures = 0

    def check(label: str, ok: bool):
        nonlocal failures
        lines.append("%s %s" % ("PASS" if ok else "FAIL", label))
        if not ok:
            failures += 1

    u1, u2, u3 = make_u_tilde(params)
    binv = params.beta().inverse()
    lam2 = -(binv ** 2) * params.a1
    check("P u1 = u1", apply_transfer_iterate(u1, 1).equal_ae(u1))
    check("P u2 = (-a1/beta^2) u2",
          apply_transfer_iterate(u2, 1).equal_ae(u2.scaled(lam2)))
    check("P u3 = (1/beta) u3",
          apply_transfer_iterate(u3, 1).equal_ae(u3.scaled(binv)))
    check("integral u1 = 1", (u1.integrate() - 1).is_zero())
    check("integral u2 = 0", u2.integrate().is_zero())
    check("integral u3 = 0", u3.integrate().is_zero())

    eigs = block_eigenvalues(params, args.nu)
    data = riesz_projections(params)
    projs = data.projections
    ok_alg = True
    m4 = restriction_matrix(make_psi_basis(params, 2, normalized=True)).entries
    for i, (pi, lam) in enumerate(zip(projs, data.eigenvalues[:3])):
        ok_alg &= mat_equal(mat_mul(pi, pi), pi)
        ok_alg &= mat_equal(mat_mul(m4, pi), mat_scale(pi, lam))
        ok_alg &= mat_equal(mat_mul(pi, m4), mat_scale(pi, lam))
        for j, pj in enumerate(projs):
            if i != j:
                zero = mat_scale(pi, params.zero())
                ok_alg &= mat_equal(mat_mul(pi, pj), zero)
    check("projection algebra on the 4x4 restriction matrix", ok_alg)

    report = {
        "schema": 1,
        "a0": params.a0,
        "a1": params.a1,
        "nu": args.nu,
        "eigenvalues": [e.to_string() for e in eigs],
        "eigenvalues_decimal": [_dec(float(e)) for e in eigs],
        "restriction_matrix": [[e.to_string() for e in row] for row in m4],
        "checks": lines,
        "failures": failures,
    }
    if args.json:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = "".join(l + "\n" for l in lines)
        text += "eigenvalues: %s\n" % ", ".join(
            "%s (%s)" % (e.to_string(), _dec(float(e))) for e in eigs)
    _write_output(args, text, _manifest(args, "eigen-check", started,
                                        {"failures": failures}))
    return EXIT_PASS if failures == 0 else EXIT_VERIFICATION


def cmd_iterate(args) -> int:
    started = time.perf_counter()
    params = _params(args)
    F = _load_function(args)
    if not isinstance(F, PiecewisePoly):
        try:
            F = F.piecewise(params)
        except ValueError:
            raise SystemExit("function %r has no exact piecewise form; "
                             "use the asymptotics command instead" % args.F)
    g = apply_transfer_iterate(F, args.k)
    if args.out == "json":
        text = json.dumps(g.to_json_dict(), indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "value"])
        xs = np.linspace(0.0, 1.0, args.grid)
        for x, v in zip(xs, g.eval_float(xs)):
            w.writerow([_dec(x), _dec(v)])
        text = buf.getvalue()
    _write_output(args, text, _manifest(args, "iterate", started,
                                        {"pieces": len(g.pieces)}))
    return EXIT_PASS


def cmd_asymptotics(args) -> int:
    started = time.perf_counter()
    params = _params(args)
    theorem = epsilon_of(params, args.N)
    b = params.beta_float()
    if args.engine == "exact":
        F = _load_function(args)
        if not isinstance(F, PiecewisePoly):
            F = F.piecewise(params)
        series = two_term_residual_exact(F, args.k_max)
    else:
        F = _load_function(args)
        series = two_term_residual_numeric(F, params, range(1, args.k_max + 1),
                                           grid=args.grid)
    rows = []
    for k, lo, up in zip(series.ks, series.residual_lower, series.residual_upper):
        bound = b ** (-(1.0 + theorem.epsilon) * k)
        rows.append((k, lo, up, bound, up / bound))
    extra = {"fitted_slope": series.fitted_slope,
             "epsilon": theorem.epsilon,
             "predicted_slope_bound": -(1.0 + theorem.epsilon) * math.log(b)}
    if args.out == "json":
        text = json.dumps({
            "schema": 1, "a0": params.a0, "a1": params.a1,
            "rows": [{"k": k, "residual_lower": _dec(lo), "residual_upper": _dec(up),
                      "beta_power_bound": _dec(bd), "ratio": _dec(r)}
                     for k, lo, up, bd, r in rows],
            **{k: _dec(v) for k, v in extra.items()},
        }, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "residual_lower", "residual_upper",
                    "beta_power_bound", "ratio"])
        for k, lo, up, bd, r in rows:
            w.writerow([k, _dec(lo), _dec(up), _dec(bd), _dec(r)])
        text = buf.getvalue()
    _write_output(args, text, _manifest(args, "asymptotics", started, extra))
    return EXIT_PASS


def cmd_partition_dump(args) -> int:
    started = time.perf_counter()
    params = _params(args)
    partition = refine_to_level(params, args.M)
    histogram: dict[int, int] = {}
    for g in partition.gaps:
        histogram[g.depth] = histogram.get(g.depth, 0) + 1
    if args.out == "json":
        text = json.dumps({
            "schema": 1, "a0": params.a0, "a1": params.a1, "M": args.M,
            "points": [{"exact": p.to_string(), "decimal": _dec(float(p))}
                       for p in partition.points],
            "gap_depth_histogram": {str(d): histogram[d] for d in sorted(histogram)},
        }, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["left_exact", "left_decimal", "depth", "gap_length_decimal"])
        for g in partition.gaps:
            w.writerow([g.value.to_string(), _dec(float(g.value)),
                        g.depth, _dec(float(g.gap_length()))])
        w.writerow([])
        w.writerow(["depth", "count"])
        for d in sorted(histogram):
            w.writerow([d, histogram[d]])
        text = buf.getvalue()
    _write_output(args, text, _manifest(args, "partition-dump", started,
                                        {"gaps": len(partition.gaps)}))
    return EXIT_PASS


def cmd_bernoulli_table(args) -> int:
    started = time.perf_counter()
    if args.out == "json":
        text = json.dumps({
            "schema": 1,
            "rows": [{"n": n, "coeffs": [str(c) for c in bernoulli_coeffs(n)]}
                     for n in range(args.n_max + 1)],
        }, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "coefficients_ascending"])
        for n in range(args.n_max + 1):
            w.writerow([n, " ".join(str(c) for c in bernoulli_coeffs(n))])
        text = buf.getvalue()
    _write_output(args, text, _manifest(args, "bernoulli-table", started))
    return EXIT_PASS


def cmd_integer_base(args) -> int:
    started = time.perf_counter()
    F = builtin(args.F)
    ks = list(range(args.k_min, args.k_max + 1))
    with mpmath.workdps(60):
        residuals = [integer_base_expansion_residual(F, args.q, k, args.N,
                                                     args.grid, use_mp=True)
                     for k in ks]
    slope = fit_slope(ks, residuals)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "residual"])
    for k, r in zip(ks, residuals):
        w.writerow([k, _dec(r)])
    text = buf.getvalue()
    _write_output(args, text, _manifest(args, "integer-base", started, {
        "fitted_slope": slope,
        "expected_slope": -args.N * math.log(args.q),
    }))
    return EXIT_PASS


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betaop",
        description="Transfer-operator laboratory for greedy base-beta "
                    "expansions with beta^2 = a0*beta + a1.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p):
        p.add_argument("--a0", type=int, required=True)
        p.add_argument("--a1", type=int, required=True)

    def add_common(p):
        p.add_argument("--output", help="write data here plus a "
                       "<output>.manifest.json run manifest")
        p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("eigen-check", help="exact eigenrelation and "
                       "projection-algebra verification")
    add_params(p)
    p.add_argument("--nu", type=int, default=2)
    p.add_argument("--json", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_eigen_check)

    p = sub.add_parser("iterate", help="apply the transfer operator k times")
    add_params(p)
    p.add_argument("--F", default="psi1")
    p.add_argument("--piecewise-json", help="read F from a piecewise JSON file")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    add_common(p)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("asymptotics", help="two-term residual series and "
                       "fitted decay slope")
    add_params(p)
    p.add_argument("--F", default="linear")
    p.add_argument("--piecewise-json")
    p.add_argument("--k-max", type=int, default=14)
    p.add_argument("--N", type=int, default=7)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--engine", choices=("exact", "numeric"), default="exact")
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    add_common(p)
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("partition-dump", help="level-M partition points and "
                       "gap histogram")
    add_params(p)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    add_common(p)
    p.set_defaults(func=cmd_partition_dump)

    p = sub.add_parser("bernoulli-table", help="exact Bernoulli polynomial "
                       "coefficients")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    add_common(p)
    p.set_defaults(func=cmd_bernoulli_table)

    p = sub.add_parser("integer-base", help="integer-base expansion residual "
                       "series")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--F", default="sin")
    p.add_argument("--k-min", type=int, default=6)
    p.add_argument("--k-max", type=int, default=14)
    p.add_argument("--grid", type=int, default=41)
    add_common(p)
    p.set_defaults(func=cmd_integer_base)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print("budget exhausted: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError, OSError, SystemExit) as exc:
        if isinstance(exc, SystemExit):
            print(exc, file=sys.stderr)
        else:
            print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())
