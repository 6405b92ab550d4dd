"""Figure builders over the solver's exported CSVs.

Headless backend; every function returns its plotted data layer so tests
can pin determinism without decoding images.
"""
from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .fit import CoefficientSet, fit_logistic, load_training

_NEUTRAL = "0.85"          # cells with no samples


def plot_heatmap(csv_path: str, out_path: str,
                 pot_bins: int = 24) -> dict[str, np.ndarray]:
    """Majority outcome per (potential, empties) cell, one panel per node
    type, with the fitted zero-log-odds line where a fit is possible."""
    X, y = load_training(csv_path)
    try:
        cs: CoefficientSet | None = fit_logistic(csv_path)
    except ValueError:
        cs = None                        # single-label data still renders
    pots, empties, types = X[:, 2], X[:, 1], X[:, 0]
    pe = np.linspace(0.0, max(float(pots.max()), 1e-9), pot_bins + 1)
    ee = np.arange(int(empties.max()) + 2) - 0.5
    cmap = plt.get_cmap("coolwarm").copy()
    cmap.set_bad(_NEUTRAL)

    grids: dict[str, np.ndarray] = {}
    fig, axes = plt.subplots(1, 2, figsize=(11.0, 4.5), sharey=True)
    panels = (("or", 0.0, "maker to move"), ("and", 1.0, "breaker to move"))
    for ax, (key, t, title) in zip(axes, panels):
        sel = types == t
        cnt, _, _ = np.histogram2d(pots[sel], empties[sel], (pe, ee))
        wins, _, _ = np.histogram2d(pots[sel], empties[sel], (pe, ee),
                                    weights=y[sel].astype(float))
        grid = np.full(cnt.shape, np.nan)
        mask = cnt > 0
        grid[mask] = (wins[mask] / cnt[mask] > 0.5).astype(float)
        grids[key] = grid
        ax.pcolormesh(pe, ee, np.ma.masked_invalid(grid).T,
                      cmap=cmap, vmin=0.0, vmax=1.0)
        if cs is not None and cs.c_emptyS != 0.0:
            ps = np.linspace(pe[0], pe[-1], 100)
            es = -(cs.c0 + cs.c_nodeT * t + cs.c_pot * ps) / cs.c_emptyS
            ax.plot(ps, es, color="black", linewidth=1.2, linestyle="--")
        ax.set_xlim(pe[0], pe[-1])
        ax.set_ylim(ee[0], ee[-1])
        ax.set_title(title)
        ax.set_xlabel("potential")
    axes[0].set_ylabel("empty squares")
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return grids


def plot_potential_trajectory(game_log: str,
                              out_path: str) -> list[tuple[int, float]]:
    """Step plot of potential against ply from a solve trace CSV."""
    trace: list[tuple[int, float]] = []
    with open(game_log, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            trace.append((int(row["ply"]), float(row["potential"])))
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    if trace:
        plies = [p for p, _ in trace]
        pots = [v for _, v in trace]
        ax.step(plies, pots, where="post", marker="o", markersize=3)
    ax.set_xlabel("ply")
    ax.set_ylabel("potential")
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return trace


def plot_scaling(csv_path: str, out_path: str) -> dict:
    """Log-scale nodes and seconds against board width with fitted lines.

    Rows cut short by a limit are excluded; fewer than two completed
    points cannot be fitted and raise.
    """
    with open(csv_path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.DictReader(fh)
                if not r.get("limited") and r.get("value") != "unknown"]
    if len(rows) < 2:
        raise ValueError("need at least two completed scaling points")
    ns = np.array([int(r["n"]) for r in rows], dtype=float)
    nodes = np.array([int(r["nodes"]) for r in rows], dtype=float)
    secs = np.array([float(r["seconds"]) for r in rows])

    node_slope, node_icept = np.polyfit(ns, np.log(nodes), 1)
    spos = secs > 0.0
    if spos.sum() >= 2:
        sec_slope, sec_icept = np.polyfit(ns[spos], np.log(secs[spos]), 1)
    else:
        sec_slope = sec_icept = None

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.semilogy(ns, nodes, "o", color="tab:blue", label="nodes")
    grid_n = np.linspace(ns.min(), ns.max(), 50)
    ax.semilogy(grid_n, np.exp(node_icept + node_slope * grid_n),
                color="tab:blue", linewidth=1.0)
    ax.set_xlabel("board width n")
    ax.set_ylabel("nodes")
    ax2 = ax.twinx()
    ax2.semilogy(ns[spos], secs[spos], "s", color="tab:orange",
                 label="seconds")
    if sec_slope is not None:
        ax2.semilogy(grid_n, np.exp(sec_icept + sec_slope * grid_n),
                     color="tab:orange", linewidth=1.0)
    ax2.set_ylabel("seconds")
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return {
        "points": len(rows),
        "nodes_slope": float(node_slope),
        "seconds_slope": None if sec_slope is None else float(sec_slope),
    }
