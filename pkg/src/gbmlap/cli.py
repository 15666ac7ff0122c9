"""Command-line front end.

Subcommands: ``rate`` (rate-function evaluation), ``bond`` (one quote by
any method), ``asian`` (approximation, MC benchmark, or OTM limit),
``mc`` (Laplace-transform Monte Carlo), ``reproduce`` (CSV of the
published benchmark tables and the maximum-maturity figure data), and
``validate`` (the deterministic invariant suite).

Exit codes: 0 success, 1 numerical failure (the message names the failing
operation), 2 argument errors, 3 validation failures.  Single quotes are
emitted as JSON with snake_case keys; ``reproduce`` emits CSV (header row,
comma delimiter, '.' decimals, LF line endings) with the published
tables' print precision.  Monte Carlo runs only with an explicit --seed,
so every command is deterministic.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__, asian, dothan, oracles, ratefn, reference
from .asian import AsianInputs, OptionKind
from .errors import (
    BranchError,
    DomainError,
    MaxIterations,
    NoRootInInterval,
    NoSignChange,
    QuadratureNotConverged,
    ShootingFailed,
)
from .model import ModelParams, scale, t_max
from .validation import run_checks

_NUMERICAL_ERRORS = (
    BranchError,
    DomainError,
    MaxIterations,
    NoRootInInterval,
    NoSignChange,
    QuadratureNotConverged,
    ShootingFailed,
    ValueError,
)


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _bond_payload(q: dothan.BondQuote) -> dict:
    return {
        "price": q.price,
        "method": q.method.value,
        "yield_equiv": q.yield_equiv,
        "diagnostics": {k: _jsonable(v) for k, v in q.diagnostics.items()},
    }


def _jsonable(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def _cmd_rate(args) -> int:
    ev = ratefn.rate_R(args.b, args.zeta)
    _emit_json(
        {
            "b": args.b,
            "zeta": args.zeta,
            "branch": ev.branch.value,
            "root": ev.root,
            "R": ev.value,
            "J_B": 2.0 * args.b * args.b * ev.value,
        }
    )
    return 0


def _cmd_bond(args, parser) -> int:
    method = args.method
    if method != "perpetual" and args.T is None:
        parser.error(f"--T is required for method {method!r}")
    if method in ("exact", "taylor") and args.a != 0.0:
        parser.error(f"method {method!r} is defined for zero drift only (got --a {args.a})")
    if method == "asymptotic":
        q = dothan.bond_asymptotic(args.r0, args.sigma, args.a, args.T)
    elif method == "exact":
        q = dothan.bond_exact_zero_drift(args.r0, args.sigma, args.T, quad_tol=args.quad_tol)
    elif method == "small-r0":
        q = dothan.bond_small_rate(args.r0, args.sigma, args.a, args.T)
    elif method == "taylor":
        q = dothan.bond_taylor_small_T(args.r0, args.sigma, args.T)
    elif method == "perpetual":
        q = dothan.bond_perpetual(args.r0, args.sigma, args.a)
    else:  # mc
        if args.seed is None:
            parser.error("--seed is required for --method mc")
        est = oracles.mc_laplace(
            args.r0, args.sigma, args.a, args.T, args.paths, args.steps, args.seed
        )
        q = dothan.BondQuote(
            price=est.mean,
            method=dothan.BondMethod.MONTE_CARLO,
            yield_equiv=-math.log(est.mean) / args.T,
            diagnostics={
                "stderr": est.stderr,
                "n_paths": est.n_paths,
                "n_steps": est.n_steps,
                "seed": est.seed,
            },
        )
    _emit_json(_bond_payload(q))
    return 0


def _cmd_asian(args, parser) -> int:
    inp = AsianInputs(
        s0=args.s0, k=args.k, r=args.r, q=args.q, sigma=args.sigma, t=args.T,
        kind=OptionKind(args.kind),
    )
    if args.method == "approx":
        quote = asian.asian_price_approx(inp)
    elif args.method == "mc":
        if args.seed is None:
            parser.error("--seed is required for --method mc")
        est = oracles.mc_asian_price(inp, args.paths, args.steps, args.seed)
        quote = asian.OptionQuote(
            price=est.mean,
            method="mc",
            diagnostics={
                "stderr": est.stderr,
                "n_paths": est.n_paths,
                "n_steps": est.n_steps,
                "seed": est.seed,
            },
        )
    else:  # otm-limit
        a = args.r - args.q
        limit = asian.otm_log_price_limit(args.k, args.s0, args.sigma, a, args.T, inp.kind)
        ev = asian.rate_ibs(args.k / args.s0, a * args.T)
        quote = asian.OptionQuote(
            price=None,
            method="otm-limit",
            diagnostics={
                "log_price_limit": limit,
                "scaled_by": "sigma^2*T",
                "moneyness": args.k / args.s0,
                "zeta": a * args.T,
                "branch": ev.branch.value,
            },
        )
    _emit_json(
        {"price": quote.price, "method": quote.method,
         "diagnostics": {k: _jsonable(v) for k, v in quote.diagnostics.items()}}
    )
    return 0


def _cmd_mc(args) -> int:
    est = oracles.mc_laplace(
        args.theta, args.sigma, args.a, args.T, args.paths, args.steps, args.seed
    )
    _emit_json(
        {
            "mean": est.mean,
            "stderr": est.stderr,
            "n_paths": est.n_paths,
            "n_steps": est.n_steps,
            "seed": est.seed,
        }
    )
    return 0


def _table1_row(row) -> list[str]:
    T, sigma, _, _, _ = row
    r0 = reference.TABLE1_SCENARIO["r0"]
    q = dothan.bond_exact_zero_drift(r0, sigma, T)
    qa = dothan.bond_asymptotic(r0, sigma, 0.0, T)
    return [
        f"{T:g}",
        f"{sigma:.1f}",
        f"{q.price:.6f}",
        f"{100.0 * q.yield_equiv:.3f}",
        f"{100.0 * qa.yield_equiv:.3f}",
    ]


def _reproduce_rows(target: str, threads: int) -> tuple[list[str], list[list[str]]]:
    if target == "table1":
        header = ["T", "sigma", "B_exact", "R_exact_pct", "R_asympt_pct"]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(_table1_row, reference.TABLE1_ROWS))
        else:
            rows = [_table1_row(r) for r in reference.TABLE1_ROWS]
        return header, rows
    if target == "table3":
        header = ["T", "xi", "neg_log_B_over_T", "B_asympt", "B_reference"]
        sc = reference.TABLE3_SCENARIO
        rows = []
        for (T, _, _, _, b_ref) in reference.TABLE3_ROWS:
            s = scale(ModelParams(sigma=sc["sigma"], a=sc["a"], T=T, theta=sc["r0"]))
            ev = ratefn.rate_R(s.b, s.zeta)
            nlb = sc["r0"] * ev.value
            rows.append(
                [f"{T:g}", f"{ev.root:.6f}", f"{nlb:.5f}", f"{math.exp(-nlb * T):.3f}", f"{b_ref:.3f}"]
            )
        return header, rows
    # figure1: maximum maturity for series convergence, per volatility curve
    header = ["r0", "sigma", "T_max"]
    rows = []
    for sigma in reference.FIGURE1_SIGMAS:
        for i in range(1, 41):
            r0 = 0.005 * i
            rows.append([f"{r0:.3f}", f"{sigma:.1f}", f"{t_max(r0, sigma):.4f}"])
    return header, rows


def _cmd_reproduce(args) -> int:
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("GBMLAP_THREADS", "1"))
    header, rows = _reproduce_rows(args.target, max(1, threads))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_validate(args) -> int:
    results = run_checks(quick=args.quick)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.seconds:.2f}s): {r.detail}")
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} checks passed")
    return 0 if n_pass == len(results) else 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbmlap",
        description="Laplace-transform asymptotics for the time integral of "
        "geometric Brownian motion: bond and Asian-option pricing.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rate = sub.add_parser("rate", help="evaluate the rate function R and J_B at (b, zeta)")
    p_rate.add_argument("--b", type=float, required=True)
    p_rate.add_argument("--zeta", type=float, required=True)

    p_bond = sub.add_parser("bond", help="price a zero-coupon bond")
    p_bond.add_argument("--r0", type=float, required=True)
    p_bond.add_argument("--sigma", type=float, required=True)
    p_bond.add_argument("--a", type=float, default=0.0)
    p_bond.add_argument("--T", type=float, default=None)
    p_bond.add_argument(
        "--method",
        choices=["asymptotic", "exact", "small-r0", "taylor", "perpetual", "mc"],
        default="asymptotic",
    )
    p_bond.add_argument("--quad-tol", type=float, default=1e-9)
    p_bond.add_argument("--paths", type=int, default=100_000)
    p_bond.add_argument("--steps", type=int, default=256)
    p_bond.add_argument("--seed", type=int, default=None)

    p_asian = sub.add_parser("asian", help="price an arithmetic-average Asian option")
    p_asian.add_argument("--s0", type=float, required=True)
    p_asian.add_argument("--k", type=float, required=True)
    p_asian.add_argument("--r", type=float, default=0.0)
    p_asian.add_argument("--q", type=float, default=0.0)
    p_asian.add_argument("--sigma", type=float, required=True)
    p_asian.add_argument("--T", type=float, required=True)
    p_asian.add_argument("--kind", choices=["call", "put"], required=True)
    p_asian.add_argument("--method", choices=["approx", "mc", "otm-limit"], default="approx")
    p_asian.add_argument("--paths", type=int, default=100_000)
    p_asian.add_argument("--steps", type=int, default=256)
    p_asian.add_argument("--seed", type=int, default=None)

    p_mc = sub.add_parser("mc", help="Monte Carlo estimate of E[exp(-theta*X_T)]")
    p_mc.add_argument("--theta", type=float, required=True)
    p_mc.add_argument("--sigma", type=float, required=True)
    p_mc.add_argument("--a", type=float, default=0.0)
    p_mc.add_argument("--T", type=float, required=True)
    p_mc.add_argument("--paths", type=int, default=100_000)
    p_mc.add_argument("--steps", type=int, default=256)
    p_mc.add_argument("--seed", type=int, required=True)

    p_rep = sub.add_parser("reproduce", help="emit benchmark tables / figure data as CSV")
    p_rep.add_argument("target", choices=["table1", "table3", "figure1"])
    p_rep.add_argument("--out", default=None, help="output file (default: stdout)")
    p_rep.add_argument("--threads", type=int, default=None,
                       help="row-parallel workers (default: GBMLAP_THREADS or 1)")

    p_val = sub.add_parser("validate", help="run the deterministic invariant suite")
    p_val.add_argument("--quick", action="store_true", help="coarse grids, no slow sweeps")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "rate":
            return _cmd_rate(args)
        if args.command == "bond":
            return _cmd_bond(args, parser)
        if args.command == "asian":
            return _cmd_asian(args, parser)
        if args.command == "mc":
            return _cmd_mc(args)
        if args.command == "reproduce":
            return _cmd_reproduce(args)
        return _cmd_validate(args)
    except _NUMERICAL_ERRORS as exc:
        print(f"error in {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
