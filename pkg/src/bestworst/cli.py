"""Command-line front end.

stdout carries data only (JSON or CSV); diagnostics go to stderr.
Exit codes: 0 success, 2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

from . import fixed_n, payoff, poisson_n, scans, simulate, uniform_n
from .errors import DomainError, SeriesOverflowError
from .payoff import PayoffRule

EXIT_USAGE = 2
EXIT_DOMAIN = 3


class UsageError(Exception):
    pass


def parse_model(spec: str) -> simulate.CountModel:
    kind, sep, arg = spec.partition(":")
    if not sep or not arg:
        raise UsageError(f"malformed model spec {spec!r}; expected fixed:<n>, uniform:<N> or poisson:<lambda>")
    try:
        if kind == "fixed":
            return simulate.Fixed(int(arg))
        if kind == "uniform":
            return simulate.UniformRange(int(arg))
        if kind == "poisson":
            lam = float(arg)
            if math.isnan(lam):
                raise ValueError(arg)
            return simulate.Poisson(lam)
    except DomainError:
        raise
    except ValueError:
        raise UsageError(f"malformed number in model spec {spec!r}") from None
    raise UsageError(f"unknown model kind {kind!r} in {spec!r}")


def parse_rule(text: str) -> PayoffRule:
    try:
        return PayoffRule.parse(text)
    except ValueError:
        raise UsageError(f"unknown payoff rule {text!r}") from None


def parse_grid(text: str) -> tuple[float, float, float]:
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"malformed grid {text!r}; expected lo:hi:step") from None
    if not (lo > 0 and hi >= lo and step > 0):
        raise UsageError(f"grid {text!r} needs 0 < lo <= hi and step > 0")
    return lo, hi, step


def _num(x: float) -> str:
    return format(x, ".17g")


def _emit_json(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_num(v) if isinstance(v, float) else v for v in row])
    sys.stdout.write(buf.getvalue())


def _require_indicator(model, rule: PayoffRule) -> None:
    if rule is not PayoffRule.INDICATOR and not isinstance(model, simulate.Fixed):
        raise UsageError("payoff rules other than indicator need a fixed:<n> model")


def cmd_solve(args) -> None:
    model, rule = parse_model(args.model), parse_rule(args.rule)
    _require_indicator(model, rule)
    if isinstance(model, simulate.Fixed):
        if rule is PayoffRule.INDICATOR:
            res = fixed_n.solve(model.n)
        else:
            res = payoff.optimal_payoff(model.n, rule)
        r_star, value = res.argmax_r, res.value
    elif isinstance(model, simulate.UniformRange):
        sol = uniform_n.optimal_uniform(model.N)
        r_star, value = sol.m, sol.p
    else:
        sol = poisson_n.optimal_poisson(model.lam, tol=args.tol)
        r_star, value = sol.m, sol.p
    _emit_json({"model": args.model, "rule": rule.value, "r_star": r_star, "value": value})


def _curve_rows(model, rule: PayoffRule, tol: float) -> list[tuple[int, float]]:
    if isinstance(model, simulate.Fixed):
        if rule is PayoffRule.INDICATOR:
            return fixed_n.sweep(model.n)
        g = payoff.payoff_curve(model.n, rule)
        return [(r, float(g[r])) for r in range(2, model.n)]
    if isinstance(model, simulate.UniformRange):
        # same cutoff range as optimal_uniform, so the top row is r_star
        lo = 0 if model.N <= 2 else 1
        return [(r, uniform_n.success_prob_uniform(model.N, r)) for r in range(lo, model.N)]
    c = poisson_n.poisson_curve(model.lam, tol=tol)
    return [(r, float(v)) for r, v in enumerate(c)]


def cmd_sweep(args) -> None:
    rule = parse_rule(args.rule)
    if args.grid:
        if args.model is not None and not args.model.startswith("poisson"):
            raise UsageError("--grid applies to the poisson model only")
        lo, hi, step = parse_grid(args.grid)
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        rows = []
        for j in range(count):
            lam = lo + j * step
            sol = poisson_n.optimal_poisson(lam, tol=args.tol)
            rows.append((lam, sol.m, sol.p))
        header = ("lambda", "m", "p")
    else:
        if args.model is None:
            raise UsageError("sweep needs --model or --grid")
        model = parse_model(args.model)
        _require_indicator(model, rule)
        rows = _curve_rows(model, rule, args.tol)
        header = ("r", "value")
    if args.out == "json":
        _emit_json({"columns": list(header), "rows": [list(r) for r in rows]})
    else:
        _emit_csv(header, rows)


def _analytic(model, r: int, rule: PayoffRule) -> float | None:
    if isinstance(model, simulate.Fixed):
        if r >= model.n:
            return 0.0
        if rule is PayoffRule.INDICATOR:
            return fixed_n.success_prob(model.n, r)
        if 2 <= r <= model.n - 1:
            return payoff.expected_payoff(model.n, r, rule)
        return None
    if rule is not PayoffRule.INDICATOR:
        return None
    if isinstance(model, simulate.UniformRange):
        return uniform_n.success_prob_uniform(model.N, r) if r < model.N else 0.0
    return poisson_n.success_prob_poisson(model.lam, r)


def cmd_simulate(args) -> None:
    model, rule = parse_model(args.model), parse_rule(args.rule)
    if args.r is None:
        raise UsageError("simulate needs --r")
    rep = simulate.estimate(model, args.r, rule, args.trials, args.seed, workers=args.workers)
    exact = _analytic(model, args.r, rule)
    z = None
    if exact is not None and rep.std_error > 0:
        z = (rep.mean_payoff - exact) / rep.std_error
    _emit_json(
        {
            "model": args.model,
            "r": args.r,
            "rule": rule.value,
            "trials": rep.trials,
            "successes": rep.successes,
            "mean_payoff": rep.mean_payoff,
            "std_error": rep.std_error,
            "seed": rep.seed,
            "analytic": exact,
            "z": z,
        }
    )


def cmd_conjecture(args) -> None:
    if args.name not in scans.CONJECTURES:
        raise UsageError(f"unknown conjecture {args.name!r}; choose from {', '.join(sorted(scans.CONJECTURES))}")
    report = scans.run_conjecture(args.name, args.max_n)
    _emit_json(report.to_dict())


def cmd_voi(args) -> None:
    model = parse_model(args.model)
    if isinstance(model, simulate.UniformRange):
        pk, pu, v = uniform_n.info_value_uniform(model.N)
        _emit_json({"model": args.model, "p_known": pk, "p_unknown": pu, "value": v})
    elif isinstance(model, simulate.Poisson):
        direct, closed, pu = poisson_n.info_value_poisson(model.lam)
        _emit_json(
            {
                "model": args.model,
                "p_known": direct,
                "p_known_closed": closed,
                "p_unknown": pu,
                "value": direct - pu,
            }
        )
    else:
        raise UsageError("voi needs a uniform:<N> or poisson:<lambda> model")


def cmd_table(args) -> None:
    rows = scans.summary_table()
    header = ("scenario", "classic_m", "classic_payoff_quoted", "bw_m", "bw_payoff")
    data = [(t.scenario, t.classic_m, t.classic_payoff, t.bw_m, t.bw_payoff) for t in rows]
    if args.out == "csv":
        _emit_csv(header, data)
        return
    widths = [max(len(str(x)) for x in col) for col in zip(header, *data)]
    for row in (header, *data):
        sys.stdout.write("  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip() + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bestworst", description="Best-or-worst secretary problem toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, model_required=True):
        sp.add_argument("--model", required=model_required, help="fixed:<n> | uniform:<N> | poisson:<lambda>")
        sp.add_argument("--rule", default="indicator", help="indicator | seen | unseen")
        sp.add_argument("--tol", type=float, default=poisson_n.DEFAULT_TOL, help="Poisson truncation tolerance")

    sp = sub.add_parser("solve", help="optimal cutoff and its value")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("sweep", help="objective over all cutoffs, or a Poisson lambda grid")
    common(sp, model_required=False)
    sp.add_argument("--out", choices=("csv", "json"), default="csv")
    sp.add_argument("--grid", help="lo:hi:step over lambda (poisson only)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("simulate", help="Monte Carlo estimate of one cutoff")
    common(sp)
    sp.add_argument("--r", type=int)
    sp.add_argument("--trials", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("conjecture", help="scan an integer cutoff estimator for exceptions")
    sp.add_argument("name", help=", ".join(sorted(scans.CONJECTURES)))
    sp.add_argument("--max-n", type=int, default=None)
    sp.set_defaults(func=cmd_conjecture)

    sp = sub.add_parser("voi", help="value of knowing the number of candidates")
    sp.add_argument("--model", required=True)
    sp.set_defaults(func=cmd_voi)

    sp = sub.add_parser("table", help="asymptotic comparison table")
    sp.add_argument("--out", choices=("text", "csv"), default="text")
    sp.set_defaults(func=cmd_table)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"bestworst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, SeriesOverflowError, OverflowError) as exc:
        print(f"bestworst: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return 0


if __name__ == "__main__":
    sys.exit(main())
