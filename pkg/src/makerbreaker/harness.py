"""Experiment harness: named solver configurations, ablation tables,
scaling studies, support-set analysis, and handicap-start discovery.

Everything here drives the engine through its public surface and writes
plain CSV/JSON artifacts, so results can be consumed without importing
this package.
"""

from __future__ import annotations

import csv
import json
import math
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .board import (
    BREAKER, MAKER, Position, Ruleset, Value, build_position, parse_position,
    render_position, restore_position, square_contribution,
)
from .engine import EngineConfig, SolveResult, Solver, TranspositionTable
from .reductions import legal_moves
from .rulesets import generate_mnk, generate_trunc7

# Named configurations.  "baseline" is plain PNS over a symmetry-aware
# transposition table; the *_only rows switch on one feature at a time
# (components also needs dead-square elimination to find separators);
# "all_on" is every feature except isomorphy; the no_* rows remove one
# feature from all_on for ablation tables.
_ALL_OFF = dict(
    forced_move=False, dead_squares=False, dominated=False,
    breaker_stop=False, components=False, heuristic_pn=False,
    heuristic_dn=False,
)

_REGISTRY: dict[str, dict] = {
    "baseline": dict(_ALL_OFF),
    "forced_only": {**_ALL_OFF, "forced_move": True},
    "dead_only": {**_ALL_OFF, "dead_squares": True},
    "dominated_only": {**_ALL_OFF, "dominated": True},
    "stop_only": {**_ALL_OFF, "breaker_stop": True},
    "heuristic_only": {**_ALL_OFF, "heuristic_pn": True, "heuristic_dn": True},
    "components_only": {**_ALL_OFF, "dead_squares": True, "components": True},
    "isomorphy_only": {**_ALL_OFF, "isomorphy": True},
    "all_on": {},
    "no_forced": {"forced_move": False},
    "no_dead": {"dead_squares": False},
    "no_dominated": {"dominated": False},
    "no_stop": {"breaker_stop": False},
    "no_components": {"components": False},
    "no_heuristic": {"heuristic_pn": False, "heuristic_dn": False},
    # order="contribution" expands likely-strong moves first; fastest
    # known settings for proving maker wins from the empty board
    "proof_tuned": {"heuristic_dn": False, "components": False,
                    "order": "contribution"},
    # proof_tuned plus decomposition sub-solves; pays off on wide boards
    "proof_split": {"heuristic_dn": False, "order": "contribution"},
}

CONFIG_NAMES = tuple(_REGISTRY)


def named_config(name: str) -> EngineConfig:
    try:
        overrides = _REGISTRY[name]
    except KeyError:
        raise ValueError(
            f"unknown configuration {name!r}; known: {', '.join(CONFIG_NAMES)}"
        ) from None
    return EngineConfig(**overrides)


@dataclass
class ExperimentSpec:
    """One batch of solves: boards x named configurations."""

    ruleset: str = "trunc7"               # trunc7 | mnk
    ns: tuple[int, ...] = (7,)
    m: int = 4                            # rows, mnk only
    k: int = 7                            # line length, mnk only
    setup: str = "proof"                  # proof | disproof | file:<path>
    configs: tuple[str, ...] = ("all_on",)
    time_limit: float | None = 600.0
    mem_limit: int | None = 8 << 30
    csv_path: str | None = None
    json_path: str | None = None
    ratio_base: str | None = None         # config name the ratio table divides by
    setups_dir: str = "setups"

    def ruleset_for(self, n: int) -> Ruleset:
        if self.ruleset == "trunc7":
            return generate_trunc7(n)
        if self.ruleset == "mnk":
            return generate_mnk(self.m, n, self.k)
        raise ValueError(f"unknown ruleset {self.ruleset!r}")


def disproof_setup_path(setups_dir: str, n: int) -> str:
    return os.path.join(setups_dir, f"trunc7_disproof_{n}.json")


def load_position_file(path: str, rs: Ruleset) -> Position:
    """Read a stored position: raw board text or a setup JSON wrapper."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        text = json.loads(text)["board"]
    return parse_position(text, rs)


def _check_handicap(pos: Position) -> None:
    # 2 maker stones + 1 breaker stone puts breaker on move by alternation
    if (pos.maker.bit_count() != 2 or pos.breaker.bit_count() != 1
            or pos.side != BREAKER):
        raise ValueError(
            "disproof setup must hold 2 maker stones + 1 breaker stone "
            "with breaker to move")


def resolve_setup(spec: ExperimentSpec, rs: Ruleset, n: int) -> Position:
    if spec.setup == "proof":
        return build_position(rs)
    if spec.setup == "disproof":
        path = disproof_setup_path(spec.setups_dir, n)
        if not os.path.exists(path):
            raise FileNotFoundError(
                f"no persisted disproof setup for n={n}; "
                f"run find-disproof first (expected {path})")
        pos = load_position_file(path, rs)
        _check_handicap(pos)
        return pos
    if spec.setup.startswith("file:"):
        return load_position_file(spec.setup[5:], rs)
    raise ValueError(f"unknown setup {spec.setup!r}")


def _experiment_cell(payload: tuple) -> tuple[dict, dict]:
    """Solve one (config, board) cell; top-level so pools can pickle it."""
    spec_kw, n, config_name = payload
    spec = ExperimentSpec(**spec_kw)
    rs = spec.ruleset_for(n)
    pos = resolve_setup(spec, rs, n)
    cfg = named_config(config_name)
    solver = Solver(rs, cfg, time_limit=spec.time_limit,
                    mem_limit=spec.mem_limit)
    res = solver.solve(pos)
    row = {
        "config": config_name,
        "n": n,
        "setup": spec.setup,
        "value": res.value,
        "nodes": res.nodes,
        "seconds": round(res.seconds, 3),
        "limited": "*" if res.stop in ("time", "memory") else "",
    }
    return row, res.to_dict(rs, spec.setup, cfg)


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> list[dict]:
    """Solve every (configuration, board) cell and emit result tables.

    Returns the rows in deterministic (n, config) order; cells marked
    `*` in the limited column hit the time or memory budget, so their
    node counts are lower bounds.
    """
    spec_kw = {
        "ruleset": spec.ruleset, "ns": spec.ns, "m": spec.m, "k": spec.k,
        "setup": spec.setup, "configs": spec.configs,
        "time_limit": spec.time_limit, "mem_limit": spec.mem_limit,
        "setups_dir": spec.setups_dir,
    }
    cells = [(spec_kw, n, name) for n in spec.ns for name in spec.configs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            done = list(pool.map(_experiment_cell, cells))
    else:
        done = [_experiment_cell(c) for c in cells]
    rows = [row for row, _ in done]
    if spec.csv_path:
        write_rows_csv(spec.csv_path, rows,
                       ("config", "n", "setup", "value", "nodes", "seconds",
                        "limited"))
    if spec.json_path:
        with open(spec.json_path, "w", encoding="utf-8") as fh:
            json.dump([obj for _, obj in done], fh, indent=2)
            fh.write("\n")
    return rows


def ratio_table(rows: list[dict], base_config: str) -> list[dict]:
    """Normalize seconds/nodes per board by the named base row.

    Ratios are rounded to 2 decimals; a trailing `*` in limited means the
    numerator run hit a limit, so its ratio is a lower bound.
    """
    base: dict[tuple, dict] = {}
    for row in rows:
        if row["config"] == base_config:
            base[(row["n"], row["setup"])] = row
    out = []
    for row in rows:
        b = base.get((row["n"], row["setup"]))
        if b is None or b["limited"]:
            raise ValueError(
                f"base config {base_config!r} missing or limited for "
                f"n={row['n']}")
        out.append({
            "config": row["config"],
            "n": row["n"],
            "setup": row["setup"],
            "time_ratio": round(row["seconds"] / max(b["seconds"], 1e-9), 2),
            "size_ratio": round(row["nodes"] / b["nodes"], 2),
            "limited": row["limited"],
        })
    return out


def write_rows_csv(path: str, rows: list[dict], columns: tuple[str, ...]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(columns))
        w.writeheader()
        w.writerows(rows)


@dataclass
class SupportReport:
    """Aggregate outcome over the support of a root position."""

    support_size: int
    breaker_win_count: int
    maker_win_count: int
    failed_count: int
    fraction: Fraction

    def to_dict(self) -> dict:
        return {
            "support_size": self.support_size,
            "breaker_win_count": self.breaker_win_count,
            "maker_win_count": self.maker_win_count,
            "failed_count": self.failed_count,
            "fraction": float(self.fraction) if self.support_size else 0.0,
        }


def support_set(
    root_position: Position,
    cfg: EngineConfig | None = None,
    element_time_limit: float | None = 600.0,
    element_mem_limit: int | None = None,
) -> tuple[SupportReport, list[dict]]:
    """Enumerate and solve the support of a maker-to-move root.

    The support holds the breaker-to-move positions reachable from the
    root by descending only through maker-to-move positions and through
    single-candidate forced breaker replies (which board simplification
    plays out automatically).  Positions decided during simplification
    never become search nodes and are not counted.  Elements are solved
    sequentially over a shared transposition table, so later elements
    reuse earlier subgraphs; values are unaffected.
    """
    cfg = cfg or EngineConfig()
    rs = root_position.rs
    if root_position.side != MAKER:
        raise ValueError("support root must be maker to move")
    probe = Solver(rs, cfg)

    root = root_position.copy()
    rst, rfm = probe._simplify(root)
    elements: dict = {}
    seen_or: set = set()
    stack: list = []
    if rst.value == Value.UNDECIDED and root.side == MAKER:
        seen_or.add(probe._canon(root)[0])
        stack.append((root, rfm))

    while stack:
        pos, fm = stack.pop()
        moves = legal_moves(
            pos, forced=cfg.forced_move,
            dead=cfg.dead_squares or cfg.isomorphy,
            dominated=cfg.dominated, order=cfg.order,
            fm=fm if cfg.forced_move else None)
        for mv in moves:
            cp = pos.copy()
            cp.play(mv)
            cst, cfm = probe._simplify(cp)
            if cst.value != Value.UNDECIDED:
                continue
            key = probe._canon(cp)[0]
            if cp.side == MAKER:
                if key not in seen_or:
                    seen_or.add(key)
                    stack.append((cp, cfm))
            elif key not in elements:
                elements[key] = (cp.maker, cp.breaker, cp.dead_extra, cp.side)

    tt = TranspositionTable()
    sub_cache: dict = {}
    results = []
    bw = mw = failed = 0
    for mk, bk, de, sd in elements.values():
        el = restore_position(rs, mk, bk, de, sd)
        sub = Solver(rs, cfg, time_limit=element_time_limit,
                     mem_limit=element_mem_limit, _tt=tt,
                     _sub_cache=sub_cache)
        res = sub.solve(el)
        if res.value == "breaker_win":
            bw += 1
        elif res.value == "maker_win":
            mw += 1
        else:
            failed += 1
        results.append({
            "maker": mk, "breaker": bk, "dead": de,
            "value": res.value, "nodes": res.nodes,
            "seconds": round(res.seconds, 3),
        })
    size = len(results)
    report = SupportReport(
        support_size=size, breaker_win_count=bw, maker_win_count=mw,
        failed_count=failed,
        fraction=Fraction(bw, size) if size else Fraction(0),
    )
    return report, results


def scaling_study(
    n_from: int,
    n_to: int,
    setup: str = "proof",
    config: str = "proof_tuned",
    time_limit: float | None = 600.0,
    mem_limit: int | None = 8 << 30,
    csv_path: str | None = None,
    setups_dir: str = "setups",
) -> dict:
    """Solve trunc7 boards for a range of n and fit log(nodes) ~ n.

    Limited runs stay in the CSV but are excluded from the fit; the
    slope is in natural-log units per column.
    """
    rows = []
    for n in range(n_from, n_to + 1):
        spec = ExperimentSpec(ns=(n,), setup=setup, configs=(config,),
                              time_limit=time_limit, mem_limit=mem_limit,
                              setups_dir=setups_dir)
        rs = spec.ruleset_for(n)
        pos = resolve_setup(spec, rs, n)
        res = Solver(rs, named_config(config), time_limit=time_limit,
                     mem_limit=mem_limit).solve(pos)
        rows.append({
            "n": n, "seconds": round(res.seconds, 3), "nodes": res.nodes,
            "value": res.value,
            "limited": "*" if res.stop in ("time", "memory") else "",
        })
    if csv_path:
        write_rows_csv(csv_path, rows,
                       ("n", "seconds", "nodes", "value", "limited"))
    xs = [r["n"] for r in rows if not r["limited"]]
    ys = [math.log(r["nodes"]) for r in rows if not r["limited"]]
    slope = intercept = r2 = None
    if len(xs) >= 2 and len(set(xs)) > 1:
        slope, intercept = statistics.linear_regression(xs, ys)
        if len(set(ys)) > 1:
            r2 = statistics.correlation(xs, ys) ** 2
        else:
            r2 = 1.0
    return {"rows": rows, "slope": slope, "intercept": intercept, "r2": r2,
            "points": len(xs)}


class DisproofNotFound(RuntimeError):
    pass


def find_disproof_setup(
    n: int,
    budget_seconds: float = 1800.0,
    setups_dir: str = "setups",
    cfg: EngineConfig | None = None,
    mem_limit: int | None = 8 << 30,
) -> tuple[Position, SolveResult]:
    """Search for a 3-stone handicap start that breaker wins.

    Candidates pair two low-contribution maker stones with one
    high-contribution breaker stone (breaker on move, as alternation
    dictates after 2+1 stones), deduplicated under the horizontal
    mirror, and are tried under escalating per-start time slices until
    one proves breaker_win.  The winner is persisted as JSON next to its
    solve stats so later runs can cite and re-verify it.
    """
    deadline = time.monotonic() + budget_seconds
    rs = generate_trunc7(n)
    empty = build_position(rs)
    cfg = cfg or EngineConfig()

    contrib = {s: square_contribution(empty, rs.square(s))
               for s in range(rs.n_squares)}
    by_weak = sorted(contrib, key=lambda s: (contrib[s], s))
    by_strong = sorted(contrib, key=lambda s: (-contrib[s], s))
    perm_h = rs.perm_h

    starts: list[tuple[int, int, int]] = []
    seen: set = set()
    for a, b in combinations(by_weak[: max(8, n)], 2):
        for c in by_strong[:6]:
            if c == a or c == b:
                continue
            ident = (min(a, b), max(a, b), c)
            pa, pb, pc = perm_h[a], perm_h[b], perm_h[c]
            mirror = (min(pa, pb), max(pa, pb), pc)
            key = min(ident, mirror)
            if key in seen:
                continue
            seen.add(key)
            starts.append(ident)
    # most breaker-favorable first: weak maker stones, strong breaker stone
    starts.sort(key=lambda t: (contrib[t[0]] + contrib[t[1]] - contrib[t[2]],
                               t))

    undecided = set(starts)
    for slice_s in (10.0, 30.0, 120.0, 600.0):
        for start in starts:
            if start not in undecided:
                continue
            left = deadline - time.monotonic()
            if left <= 0.0:
                raise DisproofNotFound(
                    f"no breaker-win 3-stone start found for n={n} "
                    f"within {budget_seconds:.0f}s")
            a, b, c = start
            pos = restore_position(rs, (1 << a) | (1 << b), 1 << c, 0, BREAKER)
            res = Solver(rs, cfg, time_limit=min(slice_s, left),
                         mem_limit=mem_limit).solve(pos)
            if res.value == "breaker_win":
                _persist_setup(setups_dir, n, pos, res)
                return pos, res
            if res.value == "maker_win":
                undecided.discard(start)
        if not undecided:
            break
    raise DisproofNotFound(
        f"no breaker-win 3-stone start found for n={n} "
        f"within {budget_seconds:.0f}s")


def _persist_setup(setups_dir: str, n: int, pos: Position,
                   res: SolveResult) -> str:
    os.makedirs(setups_dir, exist_ok=True)
    path = disproof_setup_path(setups_dir, n)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({
            "ruleset": "trunc7",
            "n": n,
            "board": render_position(pos),
            "value": res.value,
            "nodes": res.nodes,
            "seconds": round(res.seconds, 3),
        }, fh, indent=2)
        fh.write("\n")
    return path
