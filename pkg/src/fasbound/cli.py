"""Command line interface.

Exit codes: 0 success, 1 a verification report contains a violated
inequality, 2 usage error, 3 runtime error.  Machine-readable output
(edge lists, CSV, SVG) goes to the file named by --out, or to stdout
when --out is omitted; progress notes go to stderr.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .bounds import make_bound_report
from .errors import FasboundError
from .experiments import (
    SweepConfig,
    emit_csv,
    format_csv,
    read_csv,
    run_sweep,
    verify_lower_bound_montecarlo,
    verify_union_bound,
)
from .graph import format_edgelist, read_edgelist
from .models import ModelSpec, sample
from .plotting import OVERLAY_KEYS, emit_plot
from .solvers import SolverBudget, solve_auto, solve_brute_force, solve_exact_dp, solve_greedy

_MODEL_ALIASES = {"gnm": "gnm", "gnp": "gnp", "er": "gnp", "tournament": "tournament"}


def _model_kind(name: str) -> str:
    try:
        return _MODEL_ALIASES[name]
    except KeyError:
        raise FasboundError(f"unknown model {name!r}; choose gnm, gnp or tournament") from None


def _parse_range(text: str, *, as_int: bool) -> tuple:
    """START:STOP[:STEP] inclusive, or a single value."""
    parts = text.split(":")
    conv = int if as_int else float
    if len(parts) == 1:
        return (conv(parts[0]),)
    if len(parts) not in (2, 3):
        raise FasboundError(f"bad range {text!r}; use START:STOP[:STEP]")
    start, stop = conv(parts[0]), conv(parts[1])
    step = conv(parts[2]) if len(parts) == 3 else (1 if as_int else 0.1)
    if step <= 0 or stop < start:
        raise FasboundError(f"bad range {text!r}")
    values = []
    k = 0
    while True:
        v = start + k * step
        if v > stop + (0 if as_int else 1e-9):
            break
        values.append(conv(v) if as_int else round(v, 12))
        k += 1
    return tuple(values)


def _out_stream(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="ascii", newline=""), True


def _write_out(path, text: str) -> None:
    stream, close = _out_stream(path)
    try:
        stream.write(text)
    finally:
        if close:
            stream.close()


def _cmd_gen(args) -> int:
    kind = _model_kind(args.model)
    spec = ModelSpec(kind, args.n, m=args.m, p=args.p)
    g = sample(spec, args.seed)
    _write_out(args.out, format_edgelist(g))
    return 0


def _cmd_solve(args) -> int:
    g = read_edgelist(args.infile)
    budget = SolverBudget(
        exact_vertex_limit=args.exact_limit,
        brute_force_limit=args.brute_limit,
    )
    if args.method == "exact":
        res = solve_exact_dp(g, budget.exact_vertex_limit)
    elif args.method == "brute":
        res = solve_brute_force(g, budget.brute_force_limit)
    elif args.method == "greedy":
        res = solve_greedy(g)
    else:
        res = solve_auto(g, budget)
    lines = [
        f"y_star={res.feedback_count}",
        f"x_star={res.forward_count}",
        f"exact={'true' if res.exact else 'false'}",
        f"method={res.method}",
        "ordering=" + " ".join(str(v) for v in res.ordering.positions),
    ]
    _write_out(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_bounds(args) -> int:
    report = make_bound_report(args.n, m=args.m, p=args.p)
    if args.csv:
        header = "n,m,delta_av,t_star,lower_bound,failure_prob,heuristic_est,half_m,tournament_bound"
        tb = "" if report.tournament_bound is None else repr(report.tournament_bound)
        row = (
            f"{report.n},{report.m!r},{report.delta_av!r},{report.t_star!r},"
            f"{report.lower_bound!r},{report.failure_prob!r},"
            f"{report.heuristic_estimate!r},{report.half_m!r},{tb}"
        )
        _write_out(args.out, header + "\n" + row + "\n")
    else:
        rows = [
            ("n", str(report.n)),
            ("m", f"{report.m:g}"),
            ("average degree", f"{report.delta_av:g}"),
            ("t*", f"{report.t_star:.6g}"),
            ("lower bound", f"{report.lower_bound:.6g}"),
            ("failure probability", f"{report.failure_prob:.6g}"),
            ("heuristic estimate", f"{report.heuristic_estimate:.6g}"),
            ("m/2", f"{report.half_m:g}"),
        ]
        if report.tournament_bound is not None:
            rows.append(("tournament bound", f"{report.tournament_bound:.6g}"))
        width = max(len(k) for k, _ in rows)
        _write_out(args.out, "".join(f"{k:<{width}}  {v}\n" for k, v in rows))
    return 0


def _sweep_config(args, sweep: str) -> SweepConfig:
    kind = _model_kind(args.model)
    budget = SolverBudget(exact_vertex_limit=args.exact_limit)
    if sweep == "n":
        values = _parse_range(args.n, as_int=True)
        return SweepConfig(
            kind=kind, sweep="n", values=values, p=args.p, m=args.m,
            trials=args.trials, seed=args.seed, budget=budget,
        )
    values = _parse_range(args.p, as_int=False)
    return SweepConfig(
        kind=kind, sweep="p", values=values, n=args.n,
        trials=args.trials, seed=args.seed, budget=budget,
    )


def _cmd_sweep(args, sweep: str) -> int:
    cfg = _sweep_config(args, sweep)
    records = run_sweep(cfg, jobs=args.jobs)
    if args.out is None:
        sys.stdout.write(format_csv(records))
    else:
        emit_csv(records, args.out)
        print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    if args.plot is not None:
        emit_plot(records, args.plot, overlays=args.overlays)
        print(f"wrote plot to {args.plot}", file=sys.stderr)
    return 0


def _cmd_verify_union_bound(args) -> int:
    report = verify_union_bound(args.n, args.m)
    print(
        f"union-bound check n={report.n} m={report.m} "
        f"({report.total_configurations} configurations)",
        file=sys.stderr,
    )
    lines = ["k,exact_cdf,bound,ok"]
    for row in report.rows:
        lines.append(f"{row.k},{float(row.exact_cdf)!r},{float(row.bound)!r},{row.ok}")
    lines.append(f"passed={report.passed}")
    _write_out(args.out, "\n".join(lines) + "\n")
    return 0 if report.passed else 1


def _cmd_verify_lower_bound(args) -> int:
    report = verify_lower_bound_montecarlo(
        args.n, args.m, args.trials, args.seed, exact_vertex_limit=args.exact_limit
    )
    lines = [
        f"n={report.n}",
        f"m={report.m}",
        f"trials={report.trials}",
        f"bound={report.bound!r}",
        f"failure_cap={report.failure_cap!r}",
        f"violations={report.violations}",
        f"violation_rate={report.violation_rate!r}",
        f"min_ystar={report.min_ystar}",
        f"passed={report.passed}",
    ]
    _write_out(args.out, "\n".join(lines) + "\n")
    return 0 if report.passed else 1


def _cmd_plot(args) -> int:
    records = read_csv(args.infile)
    emit_plot(records, args.out, overlays=args.overlays)
    return 0


def _overlay_list(text: str) -> tuple[str, ...]:
    if not text:
        return ()
    return tuple(part.strip() for part in text.split(",") if part.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fasbound",
        description="Random oriented digraphs, feedback arc set solvers, and bound evaluation.",
    )
    parser.add_argument("--version", action="version", version=f"fasbound {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a random graph as an edge list")
    p_gen.add_argument("--model", required=True, help="gnm, gnp (alias: er) or tournament")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--m", type=int, default=None, help="arc count (gnm)")
    p_gen.add_argument("--p", type=float, default=None, help="pair probability (gnp)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_solve = sub.add_parser("solve", help="solve an edge-list file")
    p_solve.add_argument("--in", dest="infile", required=True)
    p_solve.add_argument("--method", choices=("exact", "brute", "greedy", "auto"), default="auto")
    p_solve.add_argument("--exact-limit", type=int, default=SolverBudget().exact_vertex_limit)
    p_solve.add_argument("--brute-limit", type=int, default=SolverBudget().brute_force_limit)
    p_solve.add_argument("--out", default=None)
    p_solve.set_defaults(func=_cmd_solve)

    p_bounds = sub.add_parser("bounds", help="evaluate all bounds at one (n, m) point")
    p_bounds.add_argument("--n", type=int, required=True)
    group = p_bounds.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", type=float, default=None)
    group.add_argument("--p", type=float, default=None)
    p_bounds.add_argument("--csv", action="store_true", help="one CSV row instead of aligned text")
    p_bounds.add_argument("--out", default=None)
    p_bounds.set_defaults(func=_cmd_bounds)

    p_exp = sub.add_parser("experiment", help="Monte Carlo sweeps and verification")
    exp_sub = p_exp.add_subparsers(dest="verb", required=True)

    def add_sweep_common(sp):
        sp.add_argument("--trials", type=int, default=20)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--exact-limit", type=int, default=SolverBudget().exact_vertex_limit)
        sp.add_argument("--out", default=None, help="CSV path (default: stdout)")
        sp.add_argument("--plot", default=None, help="also write an SVG chart here")
        sp.add_argument(
            "--overlays", type=_overlay_list, default=("lower", "heuristic", "half_m"),
            help="comma list from: " + ",".join(OVERLAY_KEYS),
        )

    p_sn = exp_sub.add_parser("sweep-n", help="sweep the vertex count")
    p_sn.add_argument("--model", required=True)
    p_sn.add_argument("--n", default="10:50:10", help="START:STOP[:STEP], inclusive")
    p_sn.add_argument("--p", type=float, default=None, help="fixed p (gnp)")
    p_sn.add_argument("--m", type=int, default=None, help="fixed m (gnm)")
    add_sweep_common(p_sn)
    p_sn.set_defaults(func=lambda a: _cmd_sweep(a, "n"))

    p_sp = exp_sub.add_parser("sweep-p", help="sweep the pair probability at fixed n")
    p_sp.add_argument("--model", default="gnp")
    p_sp.add_argument("--n", type=int, required=True)
    p_sp.add_argument("--p", default="0.1:1.0:0.1", help="START:STOP[:STEP], inclusive")
    add_sweep_common(p_sp)
    p_sp.set_defaults(func=lambda a: _cmd_sweep(a, "p"))

    def add_union_bound_args(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--out", default=None)
        sp.set_defaults(func=_cmd_verify_union_bound)

    def add_lower_bound_args(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--trials", type=int, default=1000)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--exact-limit", type=int, default=SolverBudget().exact_vertex_limit)
        sp.add_argument("--out", default=None)
        sp.set_defaults(func=_cmd_verify_lower_bound)

    add_union_bound_args(exp_sub.add_parser("verify-union-bound", help="exhaustive union-bound check"))
    add_lower_bound_args(exp_sub.add_parser("verify-lower-bound", help="Monte Carlo lower-bound check"))

    p_verify = sub.add_parser("verify", help="verification checks")
    verify_sub = p_verify.add_subparsers(dest="verb", required=True)
    add_union_bound_args(verify_sub.add_parser("union-bound", help="exhaustive union-bound check"))
    add_lower_bound_args(verify_sub.add_parser("lower-bound", help="Monte Carlo lower-bound check"))

    p_plot = sub.add_parser("plot", help="chart a sweep CSV as SVG")
    p_plot.add_argument("--in", dest="infile", required=True)
    p_plot.add_argument("--out", required=True)
    p_plot.add_argument(
        "--overlays", type=_overlay_list, default=("lower", "heuristic", "half_m"),
        help="comma list from: " + ",".join(OVERLAY_KEYS),
    )
    p_plot.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FasboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
