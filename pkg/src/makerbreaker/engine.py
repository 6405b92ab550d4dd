"""Proof-number search over the maker-breaker game DAG.

OR nodes are maker-to-move, AND nodes breaker-to-move.  Proof numbers
estimate the effort to prove a maker win, disproof numbers the effort to
prove a breaker win:

    OR:  pn = min over children, dn = sum over children
    AND: pn = sum over children, dn = min over children

A node is proven at pn == 0 (dn == inf) and disproven at dn == 0.  The
search repeatedly descends to a most-proving leaf (argmin pn at OR nodes,
argmin dn at AND nodes, first child on ties), expands it, and propagates
value changes to every recorded parent until they stabilize.

Transpositions are shared through a table keyed on a canonical form of the
position: the board mirror (and vertical flip, when the ruleset is closed
under it) always collapse, and optionally full residual-hypergraph
isomorphy.  Because a stored node can be reached from differently-oriented
concrete positions, child moves are recorded in the canonical frame and
translated back through the orientation of the position at hand.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .board import (
    BREAKER, MAKER, POT_ONE, Position, Ruleset, Square, Value, build_position,
    restore_position,
)
from .canonical import canonical_residual
from .decomposition import (
    connected_components, find_cut_vertex, find_shared_edge_split,
)
from .reductions import (
    ForcedMoves, TerminalStatus, legal_moves, pairing_fixpoint,
    status_and_forced,
)

INF = math.inf

# retained bytes per search node (slots object + child/parent lists +
# table entry): tracemalloc shows ~510 on 4x7 runs, padded for headroom
NODE_BYTES = 600

_DN_CAP = 1e300
_DEAD_LABEL = 255
# transient node allowance per decomposition sub-solve; parts at the
# split_limit solve well inside this, anything needing more is abandoned
_SUB_NODE_CAP = 200_000
_GAVE_UP = object()

_F_EXPANDED = 1
_F_OR = 2


class Coefficients(NamedTuple):
    c0: float = -6.2
    c_node_type: float = -13.4
    c_empty: float = -1.52
    c_pot: float = 25.83


DEFAULT_COEFFS = Coefficients()


def prob_breaker_win(
    node_type: int, empty_squares: int, pot: float,
    coeffs: Coefficients = DEFAULT_COEFFS,
) -> float:
    """Logistic estimate that a node is a breaker win.

    node_type is 0 for AND (breaker to move), 1 for OR.
    """
    z = (coeffs.c0 + coeffs.c_node_type * node_type
         + coeffs.c_empty * empty_squares + coeffs.c_pot * pot)
    if z <= -700.0:
        return 1.0
    if z >= 700.0:
        return 0.0
    return 1.0 - 1.0 / (1.0 + math.exp(-z))


@dataclass
class EngineConfig:
    """Feature switches and tuning constants; defaults give the full solver."""

    forced_move: bool = True
    dead_squares: bool = True
    dominated: bool = True
    breaker_stop: bool = True
    components: bool = True
    heuristic_pn: bool = True
    heuristic_dn: bool = True
    isomorphy: bool = False
    symmetry: bool = True
    order: str = "rowmajor"        # or "contribution"
    alpha: float = 1000.0
    beta: float = 10.0
    coeffs: Coefficients = DEFAULT_COEFFS
    # largest part (in squares) a decomposition sub-search will take on;
    # skipping a split is always sound, and solving near-full-board parts
    # from scratch costs more than the split saves
    split_limit: int = 16

    def flags_dict(self) -> dict:
        return {
            "forced_move": self.forced_move,
            "dead_squares": self.dead_squares,
            "dominated": self.dominated,
            "breaker_stop": self.breaker_stop,
            "components": self.components,
            "heuristic_pn": self.heuristic_pn,
            "heuristic_dn": self.heuristic_dn,
            "isomorphy": self.isomorphy,
            "order": self.order,
        }


def init_leaf_values(
    is_or: bool,
    pot: float,
    empty_squares: int,
    cfg: EngineConfig,
    parent_pot: float | None = None,
    min_sibling_pot: float | None = None,
) -> tuple[float, float]:
    """Starting (pn, dn) for a fresh open leaf.

    Heuristic dn uses alpha^pot at AND leaves; at OR leaves the exponent is
    shifted by how much worse this child is than the best sibling:
    parent_pot - min_sibling_pot + pot (a lone root OR just uses pot).
    """
    pn = 1.0
    dn = 1.0
    if cfg.heuristic_pn:
        pn = 1.0 + cfg.beta * prob_breaker_win(
            1 if is_or else 0, empty_squares, pot, cfg.coeffs)
    if cfg.heuristic_dn:
        if is_or and parent_pot is not None and min_sibling_pot is not None:
            expo = parent_pot - min_sibling_pot + pot
        else:
            expo = pot
        try:
            dn = min(cfg.alpha ** expo, _DN_CAP)
        except OverflowError:
            dn = _DN_CAP
    return pn, dn


class _Node:
    __slots__ = ("pn", "dn", "kids", "moves", "parents", "flags", "empties",
                 "pot", "state")

    def __init__(self, is_or: bool, pn: float, dn: float, empties: int, pot: float):
        self.pn = pn
        self.dn = dn
        self.kids: tuple | None = None
        self.moves: bytes = b""
        self.parents: list = []
        self.flags = _F_OR if is_or else 0
        self.empties = empties
        self.pot = pot
        # defining masks (maker, breaker, dead_extra, side) of the stored
        # position, letting selection walk child pointers and rebuild the
        # board only at the chosen leaf; under symmetry these are the
        # canonical-representative masks
        self.state: tuple = ()

    @property
    def solved(self) -> bool:
        return self.pn == 0.0 or self.dn == 0.0


class TranspositionTable:
    """Canonical-key -> node store with hit accounting."""

    def __init__(self) -> None:
        self.table: dict = {}
        self.hits = 0
        self.misses = 0

    def get(self, key):
        n = self.table.get(key)
        if n is None:
            self.misses += 1
        else:
            self.hits += 1
        return n

    def put(self, key, node) -> None:
        self.table[key] = node

    def __len__(self) -> int:
        return len(self.table)


@dataclass
class SolveResult:
    value: str                     # maker_win | breaker_win | unknown
    nodes: int
    seconds: float
    stop: str                      # solved | time | memory
    root_pn: float = 0.0
    root_dn: float = 0.0
    tt_hits: int = 0
    tt_misses: int = 0
    sub_solves: int = 0

    def to_dict(self, rs: Ruleset, setup: str, cfg: EngineConfig) -> dict:
        return {
            "ruleset": rs.name,
            "n": rs.cols,
            "setup": setup,
            "flags": cfg.flags_dict(),
            "value": self.value,
            "nodes": self.nodes,
            "seconds": self.seconds,
            "stop": self.stop,
        }


class _Budget:
    __slots__ = ("deadline", "node_limit", "nodes", "stop", "sub_solves")

    def __init__(self, time_limit: float | None, node_limit: int | None):
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.node_limit = node_limit
        self.nodes = 0
        self.stop: str | None = None
        self.sub_solves = 0

    def exhausted(self) -> bool:
        if self.stop:
            return True
        if self.node_limit is not None and self.nodes >= self.node_limit:
            self.stop = "memory"
            return True
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.stop = "time"
            return True
        return False


class Solver:
    """One search instance over a fixed ruleset and configuration."""

    def __init__(
        self,
        rs: Ruleset,
        cfg: EngineConfig | None = None,
        time_limit: float | None = None,
        node_limit: int | None = None,
        mem_limit: int | None = None,
        _budget: _Budget | None = None,
        _sub_cache: dict | None = None,
        _tt: "TranspositionTable | None" = None,
    ):
        self.rs = rs
        self.cfg = cfg or EngineConfig()
        # move labels live in a bytes string; 255 is the dead-move sentinel
        assert rs.n_squares < 255, "board too large for byte move labels"
        if node_limit is None and mem_limit is not None:
            node_limit = max(1, mem_limit // NODE_BYTES)
        self.budget = _budget or _Budget(time_limit, node_limit)
        self.sub_cache = {} if _sub_cache is None else _sub_cache
        self.tt = TranspositionTable() if _tt is None else _tt
        # nodes allocated by this solver's own DAG; decomposition
        # sub-searches keep their transient allocations out of it
        self.created = 0
        self.root: _Node | None = None
        self.root_pos: Position | None = None
        self._template = build_position(rs)

        # transform ids: 0 identity, 1 mirror, 2 flip, 3 both
        self._perms: list = [None, rs.perm_h, rs.perm_v, None]
        if rs.h_symmetric and rs.v_symmetric:
            self._perms[3] = [rs.perm_h[i] for i in rs.perm_v]
        ts = [0]
        if self.cfg.symmetry and not self.cfg.isomorphy:
            if rs.h_symmetric:
                ts.append(1)
            if rs.v_symmetric:
                ts.append(2)
                if rs.h_symmetric:
                    ts.append(3)
        self._transforms = ts

    # -- canonical keys ----------------------------------------------------

    def _mask_transform(self, mask: int, t: int) -> int:
        rs = self.rs
        if t == 1:
            return rs.mirror_mask_h(mask)
        if t == 2:
            return rs.mirror_mask_v(mask)
        return rs.mirror_mask_v(rs.mirror_mask_h(mask))

    def _edge_mask_transform(self, emask: int, t: int) -> int:
        if emask == 0:
            return 0
        rs = self.rs
        if t == 1:
            return rs.permute_edge_mask(emask, rs.edge_perm_h)
        if t == 2:
            return rs.permute_edge_mask(emask, rs.edge_perm_v)
        return rs.permute_edge_mask(
            rs.permute_edge_mask(emask, rs.edge_perm_h), rs.edge_perm_v)

    def _canon(self, pos: Position):
        """Canonical key plus the transform that realizes it."""
        if self.cfg.isomorphy:
            edges = []
            live = pos.live
            while live:
                low = live & -live
                edges.append(tuple(pos.edge_empties(low.bit_length() - 1)))
                live ^= low
            cert, label = canonical_residual(edges)
            return (cert, pos.side), label
        best = (pos.maker, pos.breaker, pos.dead_extra)
        bt = 0
        for t in self._transforms[1:]:
            v = (self._mask_transform(pos.maker, t),
                 self._mask_transform(pos.breaker, t),
                 self._edge_mask_transform(pos.dead_extra, t))
            if v < best:
                best = v
                bt = t
        return (best[0], best[1], best[2], pos.side), bt

    def canonical_key(self, pos: Position):
        return self._canon(pos)[0]

    def _to_label(self, ix: int, transform) -> int:
        if self.cfg.isomorphy:
            return transform.get(ix, _DEAD_LABEL)
        if transform == 0:
            return ix
        return self._perms[transform][ix]

    def _concrete_move(self, pos: Position, label: int, transform) -> int:
        if self.cfg.isomorphy:
            if label == _DEAD_LABEL:
                m = pos.empty_mask()
                while m:
                    low = m & -m
                    ix = low.bit_length() - 1
                    if pos.deg[ix] == 0:
                        return ix
                    m ^= low
                raise AssertionError("no dead square for dead-move label")
            inv = {lab: s for s, lab in transform.items()}
            return inv[label]
        if transform == 0:
            return label
        return self._perms[transform][label]   # board mirrors are involutions

    # -- search ------------------------------------------------------------

    def _simplify(self, pos: Position):
        """Reduce pos in place to the stable state a node is stored at.

        Runs the pairing fixpoint, then auto-plays singleton forced replies
        (the block of a lone 1-line, the only square defusing every
        crossing) until the position is terminal, branching, or quiet.
        Singleton replies are geometrically unique, so replaying this from
        any mirror of the same position lands in mirrored states with one
        shared canonical key.  Returns the final (status, forced) pair.
        """
        cfg = self.cfg
        if cfg.dominated:
            pairing_fixpoint(pos)
        while True:
            st, fm = status_and_forced(pos, cfg.breaker_stop)
            if st.value != Value.UNDECIDED or not cfg.forced_move:
                return st, fm
            if not fm.forced or len(fm.candidates) != 1:
                return st, fm
            pos.play(fm.candidates[0])
            if cfg.dominated:
                pairing_fixpoint(pos)

    def solve(self, position: Position) -> SolveResult:
        assert position.rs is self.rs, "position built on a different ruleset"
        cfg = self.cfg
        t0 = time.monotonic()
        pos0 = position.copy()
        st0, _fm0 = self._simplify(pos0)
        self.root_pos = pos0
        key, _ = self._canon(pos0)
        root = self.tt.table.get(key)
        if root is None:
            root = _Node(pos0.side == MAKER, 1.0, 1.0, pos0.nempty,
                         pos0.pot_i / POT_ONE)
            # store the canonical representative so a mirrored root unfolds
            # into the identical node sequence (iso certificates are not
            # masks, so that mode keeps the position it actually saw)
            root.state = ((pos0.maker, pos0.breaker, pos0.dead_extra,
                           pos0.side) if cfg.isomorphy else key)
            if st0.value == Value.MAKER_WIN:
                root.pn, root.dn = 0.0, INF
                root.flags |= _F_EXPANDED
            elif st0.value == Value.BREAKER_WIN:
                root.pn, root.dn = INF, 0.0
                root.flags |= _F_EXPANDED
            else:
                root.pn, root.dn = init_leaf_values(
                    pos0.side == MAKER, root.pot, root.empties, cfg)
            self.tt.put(key, root)
            self.budget.nodes += 1
            self.created += 1
        self.root = root

        while not root.solved:
            if self.budget.exhausted():
                break
            leaf, pos, st, fm = self._select()
            self._expand(leaf, pos, st, fm)
            if leaf.kids is not None:
                self._backprop([leaf])
            else:
                self._backprop(list(leaf.parents))

        seconds = time.monotonic() - t0
        if root.pn == 0.0:
            value, stop = "maker_win", "solved"
        elif root.dn == 0.0:
            value, stop = "breaker_win", "solved"
        else:
            value, stop = "unknown", self.budget.stop or "time"
        return SolveResult(
            value=value, nodes=self.created, seconds=seconds, stop=stop,
            root_pn=root.pn, root_dn=root.dn,
            tt_hits=self.tt.hits, tt_misses=self.tt.misses,
            sub_solves=self.budget.sub_solves,
        )

    def _select(self) -> tuple[_Node, Position, TerminalStatus, ForcedMoves]:
        node = self.root
        while node.flags & _F_EXPANDED:
            kids = node.kids
            best_i = 0
            if node.flags & _F_OR:
                best = kids[0].pn
                for i in range(1, len(kids)):
                    v = kids[i].pn
                    if v < best:
                        best = v
                        best_i = i
            else:
                best = kids[0].dn
                for i in range(1, len(kids)):
                    v = kids[i].dn
                    if v < best:
                        best = v
                        best_i = i
            node = kids[best_i]
        mk, bk, de, sd = node.state
        pos = restore_position(self.rs, mk, bk, de, sd, self._template)
        st, fm = status_and_forced(pos, self.cfg.breaker_stop)
        return node, pos, st, fm

    def _expand(self, node: _Node, pos: Position,
                st: TerminalStatus, fm: ForcedMoves) -> None:
        cfg = self.cfg
        if st.value != Value.UNDECIDED:
            if st.value == Value.MAKER_WIN:
                node.pn, node.dn = 0.0, INF
            else:
                node.pn, node.dn = INF, 0.0
            node.flags |= _F_EXPANDED
            return
        if cfg.components and (node.flags & _F_OR) and self._try_decompose(node, pos):
            return

        # Residual-certificate keys merge positions across dead padding, so
        # dead moves would create key cycles (dead, dead returns to the same
        # key).  They are dominated anyway; drop them whenever isomorphy is on.
        moves = legal_moves(
            pos, forced=cfg.forced_move,
            dead=cfg.dead_squares or cfg.isomorphy,
            dominated=cfg.dominated, order=cfg.order,
            fm=fm if cfg.forced_move else None)
        assert moves, "undecided position with no candidates"
        _, transform = self._canon(pos)
        parent_is_or = bool(node.flags & _F_OR)
        parent_pot = pos.pot_i / POT_ONE

        # pass 1: canonical child keys and stats, deduping symmetric moves.
        # A child that simplifies to a decided state in the mover's favor
        # settles the parent, so no further children are generated.
        entries: list[tuple] = []   # (key, label, pot, empties, is_or, value, state)
        seen: set = set()
        if cfg.forced_move or cfg.dominated or cfg.isomorphy:
            table = self.tt.table
            for m in moves:
                cp = pos.copy()
                cp.play(m)
                stc, _ = self._simplify(cp)
                key, _t = self._canon(cp)
                if key in seen:
                    continue
                seen.add(key)
                cstate = ((cp.maker, cp.breaker, cp.dead_extra, cp.side)
                          if cfg.isomorphy else key)
                entries.append((key, self._to_label(m, transform),
                                cp.pot_i / POT_ONE, cp.nempty,
                                cp.side == MAKER, stc.value, cstate))
                if stc.value == Value.UNDECIDED:
                    hit = table.get(key)
                    if hit is None or not hit.solved:
                        continue
                    won = hit.pn == 0.0
                else:
                    won = stc.value == Value.MAKER_WIN
                if won == parent_is_or:
                    break
        else:
            side = pos.side
            mk, bk = pos.maker, pos.breaker
            de = pos.dead_extra
            tmk = {t: self._mask_transform(mk, t) for t in self._transforms[1:]}
            tbk = {t: self._mask_transform(bk, t) for t in self._transforms[1:]}
            tde = {t: self._edge_mask_transform(de, t)
                   for t in self._transforms[1:]} if de else None
            child_or = side == BREAKER
            cside = side ^ 1
            for m in moves:
                contrib = pos.contribution_i(m)
                if side == MAKER:
                    best = (mk | (1 << m), bk, de)
                    cpot = (pos.pot_i + contrib) / POT_ONE
                else:
                    best = (mk, bk | (1 << m), de)
                    cpot = (pos.pot_i - contrib) / POT_ONE
                for t in self._transforms[1:]:
                    pm = 1 << self._perms[t][m]
                    dt = tde[t] if tde else 0
                    v = ((tmk[t] | pm, tbk[t], dt) if side == MAKER
                         else (tmk[t], tbk[t] | pm, dt))
                    if v < best:
                        best = v
                key = (best[0], best[1], best[2], cside)
                if key in seen:
                    continue
                seen.add(key)
                entries.append((key, self._to_label(m, transform),
                                cpot, pos.nempty - 1, child_or,
                                Value.UNDECIDED, key))

        # pass 2: link children, creating new leaves with initial values
        min_pot = min(e[2] for e in entries)
        kids = []
        labels = []
        for key, label, cpot, cempty, child_or, cval, cstate in entries:
            child = self.tt.get(key)
            if child is None:
                if cval == Value.MAKER_WIN:
                    pn, dn = 0.0, INF
                elif cval == Value.BREAKER_WIN:
                    pn, dn = INF, 0.0
                elif child_or and not parent_is_or:
                    pn, dn = init_leaf_values(
                        True, cpot, cempty, cfg, parent_pot, min_pot)
                else:
                    pn, dn = init_leaf_values(child_or, cpot, cempty, cfg)
                child = _Node(child_or, pn, dn, cempty, cpot)
                child.state = cstate
                if cval != Value.UNDECIDED:
                    child.flags |= _F_EXPANDED
                self.tt.put(key, child)
                self.budget.nodes += 1
                self.created += 1
            if not child.solved:
                child.parents.append(node)
            kids.append(child)
            labels.append(label)
        node.kids = tuple(kids)
        node.moves = bytes(labels)
        node.flags |= _F_EXPANDED

    def _backprop(self, start: list) -> None:
        work = list(start)
        while work:
            nd = work.pop()
            kids = nd.kids
            if kids is None:
                continue
            if nd.flags & _F_OR:
                pn = INF
                dn = 0.0
                for c in kids:
                    if c.pn < pn:
                        pn = c.pn
                    if dn != INF:
                        dn = INF if c.dn == INF else dn + c.dn
            else:
                dn = INF
                pn = 0.0
                for c in kids:
                    if c.dn < dn:
                        dn = c.dn
                    if pn != INF:
                        pn = INF if c.pn == INF else pn + c.pn
            if pn != nd.pn or dn != nd.dn:
                nd.pn = pn
                nd.dn = dn
                work.extend(nd.parents)

    # -- decomposition -----------------------------------------------------

    def _try_decompose(self, node: _Node, pos: Position) -> bool:
        plan = connected_components(pos)
        if plan.kind == "none":
            plan = find_cut_vertex(pos)
            if plan.kind == "none":
                plan = find_shared_edge_split(pos)
        if plan.kind == "none" or not plan.parts:
            return False
        limit = self.cfg.split_limit

        if plan.kind == "components":
            # small parts first; a winning one settles the union outright
            win = False
            skipped = False
            for part in sorted(plan.parts, key=lambda p: len(p.squares)):
                if len(part.squares) > limit:
                    skipped = True
                    continue
                v = self._sub_value(part.edges, None)
                if v is None:
                    skipped = True
                elif v:
                    win = True
                    break
            if not win and skipped:
                return False
        elif plan.kind == "cut_vertex":
            if max(len(p.squares) for p in plan.parts) > limit:
                return False
            v = plan.cut_square
            p1, p2 = plan.parts
            b1 = self._sub_value(p1.edges, None)
            if b1:
                win = True
            else:
                b2 = self._sub_value(p2.edges, None)
                if b2:
                    win = True
                elif b1 is None or b2 is None:
                    return False
                else:
                    a1 = self._sub_value(p1.edges, v)
                    if a1 is None:
                        return False
                    if a1:
                        a2 = self._sub_value(p2.edges, v)
                        if a2 is None:
                            return False
                        win = bool(a2)
                    else:
                        win = False
        else:
            # Bridge splits conclude maker wins from either bare side and
            # breaker wins when a with-fragment side fails; "maker wins
            # both sides with their fragments" proves nothing (completing
            # a fragment is not completing the bridge edge: the two halves
            # cost a tempo each), so that case falls back to plain search.
            if max(len(p.squares) for p in plan.parts) > limit:
                return False
            p1, p2 = plan.parts
            f1, f2 = plan.bridge_fragments
            b1 = self._sub_value(p1.edges, None)
            if b1:
                win = True
            else:
                b2 = self._sub_value(p2.edges, None)
                if b2:
                    win = True
                elif b1 is None or b2 is None:
                    return False
                else:
                    w1 = self._sub_value(p1.edges + (f1,), None)
                    if w1 is None:
                        return False
                    if w1:
                        w2 = self._sub_value(p2.edges + (f2,), None)
                        if w2 is None or w2:
                            return False
                    win = False

        if win:
            node.pn, node.dn = 0.0, INF
        else:
            node.pn, node.dn = INF, 0.0
        node.flags |= _F_EXPANDED
        return True

    def _sub_value(self, edges: tuple, premark: int | None) -> bool | None:
        """Value of a fresh maker-to-move game on a sub-hypergraph.

        Sub-games run under the parent's deadline and remaining node
        headroom, but their transient allocations stay out of the
        parent's reported node count; only cached values survive.
        Returns None when the sub-game exceeded its slice of the budget;
        the caller then ignores the split and searches normally.
        """
        norm = tuple(sorted(set(tuple(sorted(e)) for e in edges if e)))
        key = (norm, premark)
        cached = self.sub_cache.get(key)
        if cached is not None:
            return None if cached is _GAVE_UP else cached
        if not norm:
            self.sub_cache[key] = False
            return False
        rs = self.rs
        rs_key = ("ruleset", norm)
        sub_rs = self.sub_cache.get(rs_key)
        if sub_rs is None:
            sub_rs = Ruleset(
                rs.rows, rs.cols, max(len(e) for e in norm),
                [[rs.square(ix) for ix in e] for e in norm],
                name=f"{rs.name}-part", _allow_short=True)
            self.sub_cache[rs_key] = sub_rs
        sp = build_position(sub_rs, MAKER)
        if premark is not None:
            sp._place(premark, MAKER)
        self.budget.sub_solves += 1
        headroom = (_SUB_NODE_CAP if self.budget.node_limit is None
                    else max(1, min(_SUB_NODE_CAP,
                                    self.budget.node_limit - self.budget.nodes)))
        sub_budget = _Budget(None, headroom)
        sub_budget.deadline = self.budget.deadline
        sub = Solver(sub_rs, self.cfg, _budget=sub_budget,
                     _sub_cache=self.sub_cache)
        res = sub.solve(sp)
        if res.value == "unknown":
            # remember the give-up so the same part is not retried per node
            self.sub_cache[key] = _GAVE_UP
            return None
        value = res.value == "maker_win"
        self.sub_cache[key] = value
        return value

    # -- extraction --------------------------------------------------------

    def principal_variation(self) -> list[tuple[int, float]]:
        """(ply, potential) along a proof/disproof line from the root."""
        assert self.root is not None and self.root.solved
        out = [(0, self.root_pos.pot_i / POT_ONE)]
        node = self.root
        pos = self.root_pos.copy()
        proven = node.pn == 0.0
        ply = 0
        while node.kids:
            pick = 0
            for i, c in enumerate(node.kids):
                if (proven and c.pn == 0.0) or (not proven and c.dn == 0.0):
                    pick = i
                    break
            _, transform = self._canon(pos)
            m = self._concrete_move(pos, node.moves[pick], transform)
            pos.play(m)
            self._simplify(pos)
            ply += 1
            out.append((ply, pos.pot_i / POT_ONE))
            node = node.kids[pick]
        return out


def solve(
    rs: Ruleset,
    position: Position | None = None,
    cfg: EngineConfig | None = None,
    time_limit: float | None = None,
    node_limit: int | None = None,
    mem_limit: int | None = None,
) -> SolveResult:
    """Convenience one-shot solve of a position (default: empty board)."""
    solver = Solver(rs, cfg, time_limit, node_limit, mem_limit)
    return solver.solve(position if position is not None else build_position(rs))


def export_training_rows(solver: Solver, fileobj) -> int:
    """Write one CSV row per solved node of the main search DAG.

    Columns: node_type (0 AND / 1 OR), empty_squares, potential,
    label (1 = breaker win, 0 = maker win).  Nodes from decomposition
    sub-searches are not retained and therefore not exported.
    """
    fileobj.write("node_type,empty_squares,potential,label\n")
    rows = 0
    for nd in solver.tt.table.values():
        if nd.pn == 0.0:
            label = 0
        elif nd.dn == 0.0:
            label = 1
        else:
            continue
        node_type = 1 if nd.flags & _F_OR else 0
        fileobj.write(f"{node_type},{nd.empties},{nd.pot!r},{label}\n")
        rows += 1
    return rows
