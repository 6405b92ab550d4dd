"""Command-line interface for solving boards and running experiments.

Exit status: 0 when the requested work completed (solved / verified),
2 when a time or memory limit cut it short or a check failed, 1 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .board import build_position
from .engine import Coefficients, EngineConfig, Solver, export_training_rows
from .harness import (
    CONFIG_NAMES, DisproofNotFound, ExperimentSpec, find_disproof_setup,
    named_config, ratio_table, resolve_setup, run_experiment, scaling_study,
    support_set, write_rows_csv,
)
from .rulesets import generate_mnk, generate_trunc7, verify_block_coverage

_FEATURES = (
    ("--forced-move", "forced_move"),
    ("--dead-squares", "dead_squares"),
    ("--dominated", "dominated"),
    ("--breaker-stop", "breaker_stop"),
    ("--components", "components"),
    ("--heuristic-pn", "heuristic_pn"),
    ("--heuristic-dn", "heuristic_dn"),
    ("--isomorphy", "isomorphy"),
)


def _add_board_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rules", choices=("mnk", "trunc7"), default="trunc7")
    p.add_argument("--m", type=int, default=4, help="rows (mnk)")
    p.add_argument("--n", type=int, default=7, help="columns")
    p.add_argument("--k", type=int, default=7, help="line length (mnk)")


def _add_setup_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--setup", default="proof",
                   help="proof | disproof | file:<path>")
    p.add_argument("--setups-dir", default="setups")


def _add_config_args(p: argparse.ArgumentParser) -> None:
    for flag, dest in _FEATURES:
        p.add_argument(flag, dest=dest, choices=("on", "off"), default=None)
    p.add_argument("--order", choices=("rowmajor", "contribution"),
                   default=None)
    p.add_argument("--config", default=None,
                   help=f"named configuration ({', '.join(CONFIG_NAMES)})")
    p.add_argument("--coeffs", default=None,
                   help="file:<path> with logistic coefficients JSON")


def _add_limit_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--time-limit", type=float, default=600.0, help="seconds")
    p.add_argument("--mem-limit", type=int, default=8 << 30, help="bytes")


def _build_config(args) -> EngineConfig:
    cfg = named_config(args.config) if args.config else EngineConfig()
    for _, dest in _FEATURES:
        v = getattr(args, dest)
        if v is not None:
            setattr(cfg, dest, v == "on")
    if args.order is not None:
        cfg.order = args.order
    if args.coeffs is not None:
        if not args.coeffs.startswith("file:"):
            raise ValueError("--coeffs expects file:<path>")
        with open(args.coeffs[5:], "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        cfg.coeffs = Coefficients(
            c0=obj["c0"], c_node_type=obj["c_nodeT"],
            c_empty=obj["c_emptyS"], c_pot=obj["c_pot"])
    return cfg


def _ruleset(args):
    if args.rules == "trunc7":
        return generate_trunc7(args.n)
    return generate_mnk(args.m, args.n, args.k)


def _setup_spec(args) -> ExperimentSpec:
    return ExperimentSpec(ruleset=args.rules, ns=(args.n,), m=args.m,
                          k=args.k, setup=args.setup,
                          setups_dir=args.setups_dir)


def _cmd_solve(args) -> int:
    rs = _ruleset(args)
    pos = resolve_setup(_setup_spec(args), rs, args.n)
    cfg = _build_config(args)
    solver = Solver(rs, cfg, time_limit=args.time_limit,
                    mem_limit=args.mem_limit)
    res = solver.solve(pos)
    print(f"{rs.name} setup={args.setup}: {res.value} "
          f"nodes={res.nodes} seconds={res.seconds:.3f} stop={res.stop}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(res.to_dict(rs, args.setup, cfg), fh, indent=2)
            fh.write("\n")
    if args.trace_potential:
        if res.stop != "solved":
            print("no principal variation: search was cut short",
                  file=sys.stderr)
        else:
            pv = solver.principal_variation()
            with open(args.trace_potential, "w", encoding="utf-8") as fh:
                fh.write("ply,potential\n")
                for ply, pot in pv:
                    fh.write(f"{ply},{pot!r}\n")
    return 0 if res.stop == "solved" else 2


def _cmd_experiment(args) -> int:
    spec = ExperimentSpec(
        ruleset=args.rules, m=args.m, k=args.k,
        ns=tuple(int(x) for x in args.ns.split(",")),
        setup=args.setup, setups_dir=args.setups_dir,
        configs=tuple(args.configs.split(",")),
        time_limit=args.time_limit, mem_limit=args.mem_limit,
        csv_path=args.csv, json_path=args.json,
        ratio_base=args.ratio_base)
    rows = run_experiment(spec, workers=args.workers)
    for row in rows:
        print(f"{row['config']:20s} n={row['n']:<3d} {row['value']:12s} "
              f"nodes={row['nodes']:>10d} seconds={row['seconds']:>8.2f} "
              f"{row['limited']}")
    if spec.ratio_base:
        print(f"-- ratios vs {spec.ratio_base} --")
        for row in ratio_table(rows, spec.ratio_base):
            print(f"{row['config']:20s} n={row['n']:<3d} "
                  f"time={row['time_ratio']:>8.2f} "
                  f"size={row['size_ratio']:>8.2f} {row['limited']}")
    return 2 if any(r["limited"] for r in rows) else 0


def _cmd_support(args) -> int:
    rs = _ruleset(args)
    pos = resolve_setup(_setup_spec(args), rs, args.n)
    cfg = _build_config(args)
    report, elements = support_set(
        pos, cfg, element_time_limit=args.element_time_limit,
        element_mem_limit=args.mem_limit)
    d = report.to_dict()
    print(f"{rs.name} support: size={d['support_size']} "
          f"breaker={d['breaker_win_count']} maker={d['maker_win_count']} "
          f"failed={d['failed_count']} fraction={d['fraction']:.3f}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"report": d, "elements": elements}, fh, indent=2)
            fh.write("\n")
    return 2 if report.failed_count else 0


def _cmd_scaling(args) -> int:
    out = scaling_study(args.n_from, args.n_to, setup=args.setup,
                        config=args.config or "proof_tuned",
                        time_limit=args.time_limit, mem_limit=args.mem_limit,
                        csv_path=args.csv, setups_dir=args.setups_dir)
    for row in out["rows"]:
        print(f"n={row['n']:<3d} nodes={row['nodes']:>10d} "
              f"seconds={row['seconds']:>8.2f} {row['limited']}")
    if out["slope"] is None:
        print("slope: undefined (fewer than 2 completed points)")
    else:
        print(f"slope={out['slope']:.3f} r2={out['r2']:.3f} "
              f"points={out['points']}")
    return 2 if any(r["limited"] for r in out["rows"]) else 0


def _cmd_verify_tiling(args) -> int:
    rs = generate_trunc7(args.n)
    report = verify_block_coverage(rs, args.n)
    if report.passed:
        print(f"n={args.n}: passed ({report.checked} lines checked)")
    else:
        d, (r, c) = report.uncovered[0]
        print(f"n={args.n}: FAILED, first uncovered line {d} from "
              f"({r},{c}); {len(report.uncovered)} uncovered total")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
    return 0 if report.passed else 2


def _cmd_find_disproof(args) -> int:
    try:
        pos, res = find_disproof_setup(
            args.n, budget_seconds=args.budget, setups_dir=args.setups_dir,
            mem_limit=args.mem_limit)
    except DisproofNotFound as exc:
        print(str(exc), file=sys.stderr)
        return 2
    from .board import render_position
    print(render_position(pos))
    print(f"breaker_win in nodes={res.nodes} seconds={res.seconds:.2f}; "
          f"persisted to {args.setups_dir}")
    return 0


def _cmd_export_training(args) -> int:
    rs = _ruleset(args)
    pos = resolve_setup(_setup_spec(args), rs, args.n)
    cfg = _build_config(args)
    solver = Solver(rs, cfg, time_limit=args.time_limit,
                    mem_limit=args.mem_limit)
    res = solver.solve(pos)
    with open(args.csv, "w", encoding="utf-8") as fh:
        rows = export_training_rows(solver, fh)
    print(f"{rs.name} {res.value}: wrote {rows} rows to {args.csv}")
    return 0 if res.stop == "solved" else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="makerbreaker",
        description="Solve maker-breaker boards and run experiments.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one board")
    _add_board_args(p)
    _add_setup_arg(p)
    _add_config_args(p)
    _add_limit_args(p)
    p.add_argument("--json", default=None)
    p.add_argument("--trace-potential", default=None,
                   help="write ply,potential CSV along the proof line")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("experiment", help="solve a configs x boards matrix")
    _add_board_args(p)
    _add_setup_arg(p)
    _add_limit_args(p)
    p.add_argument("--ns", default="7", help="comma-separated columns list")
    p.add_argument("--configs", default="all_on",
                   help=f"comma-separated names from: {', '.join(CONFIG_NAMES)}")
    p.add_argument("--ratio-base", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", default=None)
    p.add_argument("--json", default=None)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("support", help="enumerate and solve the support set")
    _add_board_args(p)
    _add_setup_arg(p)
    _add_config_args(p)
    _add_limit_args(p)
    p.add_argument("--element-time-limit", type=float, default=600.0)
    p.add_argument("--json", default=None)
    p.set_defaults(func=_cmd_support)

    p = sub.add_parser("scaling", help="nodes/seconds vs n with fitted slope")
    _add_setup_arg(p)
    _add_limit_args(p)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=_cmd_scaling)

    p = sub.add_parser("verify-tiling",
                       help="check block coverage of the trunc7 edge set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", default=None)
    p.set_defaults(func=_cmd_verify_tiling)

    p = sub.add_parser("find-disproof",
                       help="search for a breaker-win 3-stone start")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=float, default=1800.0, help="seconds")
    p.add_argument("--setups-dir", default="setups")
    p.add_argument("--mem-limit", type=int, default=8 << 30)
    p.set_defaults(func=_cmd_find_disproof)

    p = sub.add_parser("export-training",
                       help="solve then dump per-node training rows")
    _add_board_args(p)
    _add_setup_arg(p)
    _add_config_args(p)
    _add_limit_args(p)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=_cmd_export_training)

    return ap


def cli(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; remap per our contract
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
