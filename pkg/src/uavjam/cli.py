"""Command-line entry point: ``uavjam {solve,oracle,sweep-dualhop,realizations}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import experiments as ex
from .channel import sir_to_db
from .oracle import grid_oracle
from .scenario import Axis, Scenario, ScenarioError, ScenarioFileError, load_scenario, validate
from .solver import default_y_bounds, solve, solve_alternating

EXIT_INPUT = 2


def _load(args) -> Scenario:
    s = load_scenario(args.scenario)
    if args.y_msi is not None:
        s = replace(s, y_msi=args.y_msi)
    bad = validate(s)
    if bad:
        raise ScenarioError(bad)
    return s


def _emit(text: str, path: str | None):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    s = _load(args)
    report: dict
    if args.alternating_rounds:
        alt = solve_alternating(s, max_rounds=args.alternating_rounds, endpoints=not args.strict_paper)
        report = {"x_opt": alt.x, "y_opt": alt.y, "sir_max": alt.sir, "sir_max_db": sir_to_db(alt.sir),
                  "rounds": [list(h) for h in alt.history]}
        print(f"x_opt = {alt.x:.6f} m, y_opt = {alt.y:.6f} m")
        print(f"SIR_max = {alt.sir:.9g} ({sir_to_db(alt.sir):.6g} dB) after {len(alt.history)} half-rounds")
    else:
        axis = Axis(args.axis)
        fixed, bounds = None, None
        if axis is Axis.Y:
            fixed = args.x_msi if args.x_msi is not None else solve(s, endpoints=not args.strict_paper).x_opt
            bounds = default_y_bounds(s)
        res = solve(s, axis, fixed, bounds=bounds, endpoints=not args.strict_paper)
        report = {
            "axis": axis.value, "fixed_coordinate": res.fixed_coordinate, "x_opt": res.x_opt,
            "sir_max": res.sir_max_opt, "sir_max_db": res.sir_max_opt_db,
            "candidates_total": res.candidates_total, "candidates_realized": res.candidates_realized,
            "candidates_feasible": res.candidates_feasible,
        }
        print(f"{axis.value}_opt = {res.x_opt:.6f} m  (other coordinate fixed at {res.fixed_coordinate:g} m)")
        print(f"SIR_max = {res.sir_max_opt:.9g} ({res.sir_max_opt_db:.6g} dB)")
        print(f"candidates: {res.candidates_total} slots, {res.candidates_realized} realized, "
              f"{res.candidates_feasible} feasible")
        if args.verify:
            o = grid_oracle(s, axis=axis, fixed_coordinate=fixed, bounds=bounds)
            gap = (o.value - res.sir_max_opt) / res.sir_max_opt if res.sir_max_opt > 0 else o.value
            report["oracle"] = {"x": o.x, "value": o.value, "relative_gap": gap}
            print(f"oracle: x = {o.x:.6f} m, SIR_max = {o.value:.9g}, relative gap = {gap:.3e}")
    if args.output:
        Path(args.output).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    return 0


def cmd_oracle(args) -> int:
    s = _load(args)
    o = grid_oracle(s, coarse_points=args.points, refine_iters=args.refine)
    print(f"x = {o.x:.6f} m, SIR_max = {o.value:.9g} ({sir_to_db(o.value):.6g} dB), {o.grid_points} evaluations")
    return 0


def _write_summary(summary: list[dict], output: str | None):
    text = ex.summary_to_csv(summary)
    if output:
        p = Path(output)
        p.with_name(p.stem + ".summary.csv").write_text(text, encoding="utf-8")
    else:
        sys.stderr.write(text)


def cmd_sweep(args) -> int:
    rows = ex.run_dualhop_sweep(step=args.step, seed=args.seed, random_draws=args.random_draws, y_msi=args.y_msi or 0.0)
    text = ex.rows_to_csv(rows)
    _emit(text, args.output)
    _write_summary(ex.summarize(text), args.output)
    return 0


def cmd_realizations(args) -> int:
    ns = [int(v) for v in str(args.n_uavs).split(",")]
    texts = []
    for n in ns:
        spec = ex.RealizationSpec(n_uavs=n, count=args.count, master_seed=args.seed, y_msi=args.y_msi or 0.0)
        texts.append(ex.rows_to_csv(ex.run_multihop_realizations(spec, jobs=args.jobs)))
    text = texts[0] + "".join(t.split("\n", 1)[1] for t in texts[1:])
    _emit(text, args.output)
    _write_summary(ex.summarize(text, group_by="n_uavs"), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uavjam", description="Optimal ground jammer placement against UAV relay chains.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve a scenario file")
    ps.add_argument("--scenario", required=True)
    ps.add_argument("--y-msi", type=float)
    ps.add_argument("--x-msi", type=float, help="fixed jammer x for --axis y (default: the x optimum)")
    ps.add_argument("--axis", choices=["x", "y"], default="x")
    ps.add_argument("--alternating-rounds", type=int, default=0)
    ps.add_argument("--strict-paper", action="store_true", help="no interval-endpoint candidates")
    ps.add_argument("--verify", action="store_true", help="also run the grid oracle")
    ps.add_argument("--output", help="write a JSON report here")
    ps.set_defaults(func=cmd_solve)

    po = sub.add_parser("oracle", help="brute-force grid search on a scenario file")
    po.add_argument("--scenario", required=True)
    po.add_argument("--y-msi", type=float)
    po.add_argument("--points", type=int, default=10_001)
    po.add_argument("--refine", type=int, default=6)
    po.set_defaults(func=cmd_oracle)

    pw = sub.add_parser("sweep-dualhop", help="dual-hop sweep of the relay position")
    pw.add_argument("--step", type=float, default=5.0)
    pw.add_argument("--seed", type=int, default=0)
    pw.add_argument("--y-msi", type=float)
    pw.add_argument("--random-draws", type=int, default=0, help="0 = exact expectation of the random baseline")
    pw.add_argument("--output")
    pw.set_defaults(func=cmd_sweep)

    pr = sub.add_parser("realizations", help="random multi-hop network realizations")
    pr.add_argument("--n-uavs", default="20", help="relay count, or a comma list such as 5,10,15,20")
    pr.add_argument("--count", type=int, default=20)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--y-msi", type=float)
    pr.add_argument("--jobs", type=int, default=1)
    pr.add_argument("--output")
    pr.set_defaults(func=cmd_realizations)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ScenarioFileError, ScenarioError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
