"""Command line for fitting coefficients and rendering figures."""
from __future__ import annotations

import argparse
import sys

from .fit import fit_logistic
from .plots import plot_heatmap, plot_potential_trajectory, plot_scaling


def _cmd_fit(args) -> int:
    cs = fit_logistic(args.csv, json_path=args.json)
    print(f"c0={cs.c0:.4f} c_nodeT={cs.c_nodeT:.4f} "
          f"c_emptyS={cs.c_emptyS:.4f} c_pot={cs.c_pot:.4f}")
    print(f"rows={cs.row_count} train_accuracy={cs.train_accuracy:.4f}")
    return 0


def _cmd_heatmap(args) -> int:
    plot_heatmap(args.csv, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_trajectory(args) -> int:
    trace = plot_potential_trajectory(args.log, args.out)
    print(f"wrote {args.out} ({len(trace)} plies)")
    return 0


def _cmd_scaling(args) -> int:
    rep = plot_scaling(args.csv, args.out)
    sec = "n/a" if rep["seconds_slope"] is None else f"{rep['seconds_slope']:.3f}"
    print(f"wrote {args.out}: nodes slope {rep['nodes_slope']:.3f}, "
          f"seconds slope {sec} over {rep['points']} points")
    return 0


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="mbanalysis",
        description="Fit and plot maker-breaker solver exports.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit the logistic outcome model")
    p.add_argument("csv")
    p.add_argument("--json", default=None, help="write coefficient JSON here")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("heatmap", help="outcome heatmap by node features")
    p.add_argument("csv")
    p.add_argument("out")
    p.set_defaults(func=_cmd_heatmap)

    p = sub.add_parser("trajectory", help="potential vs ply step plot")
    p.add_argument("log")
    p.add_argument("out")
    p.set_defaults(func=_cmd_trajectory)

    p = sub.add_parser("scaling", help="nodes/seconds growth plot")
    p.add_argument("csv")
    p.add_argument("out")
    p.set_defaults(func=_cmd_scaling)

    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
