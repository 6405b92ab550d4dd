"""Hypergraph game board: rulesets, positions, potential bookkeeping.

A game is played on a set of squares (a rows x cols grid) and a set of
hyperedges (the "lines").  Maker marks squares trying to complete any one
edge; breaker marks squares trying to deny all of them.  An edge with a
breaker mark is dead.  A live edge with l empty squares is an "l-line".

Positions keep incremental state per move: live-edge set, empty counts,
l-line tallies, per-square live degree, and the board potential
    pot = sum over live l-lines of 2^-(l-1)
held as an integer scaled by 2^63 so comparisons against 1 are exact.
"""
from __future__ import annotations

import enum
from typing import Iterable, NamedTuple

# Potential is a dyadic rational; scale by 2^63 so every 2^-(l-1) term with
# l <= 64 is an exact integer.
POT_BITS = 63
POT_ONE = 1 << POT_BITS

MAKER = 0
BREAKER = 1

_MARK_CHARS = {MAKER: "M", BREAKER: "B"}


class Value(enum.IntEnum):
    UNDECIDED = 0
    MAKER_WIN = 1
    BREAKER_WIN = 2


class Square(NamedTuple):
    """1-based board coordinate; tuple order gives row-major ordering."""

    row: int
    col: int


class Hyperedge(NamedTuple):
    id: int
    squares: tuple[Square, ...]


def _term(l: int) -> int:
    # scaled 2^-(l-1); only valid for 1 <= l <= 64
    return POT_ONE >> (l - 1)


_REV_TABLES: dict[int, list[int] | None] = {}


def _rev_row_table(cols: int) -> list[int] | None:
    """Bit-reversal table for one row, shared across rulesets of a width."""
    if cols in _REV_TABLES:
        return _REV_TABLES[cols]
    if cols > 16:
        table = None
    else:
        table = []
        for bits in range(1 << cols):
            r = 0
            for i in range(cols):
                if bits >> i & 1:
                    r |= 1 << (cols - 1 - i)
            table.append(r)
    _REV_TABLES[cols] = table
    return table


class Ruleset:
    """A board shape plus its winning edges, with derived lookup tables."""

    def __init__(
        self,
        rows: int,
        cols: int,
        k: int,
        edges: Iterable[Iterable[Square]],
        name: str = "custom",
        _allow_short: bool = False,
    ):
        if rows < 1 or cols < 1:
            raise ValueError("board must have positive dimensions")
        if not 1 <= k <= 64:
            raise ValueError("k must be in [1, 64]")
        self.rows = rows
        self.cols = cols
        self.k = k
        self.name = name
        self.n_squares = rows * cols

        min_size = 1 if _allow_short else 2
        seen: set[frozenset[int]] = set()
        self.edges: list[Hyperedge] = []
        for raw in edges:
            sqs = tuple(sorted(Square(r, c) for (r, c) in raw))
            if not all(1 <= s.row <= rows and 1 <= s.col <= cols for s in sqs):
                raise ValueError(f"edge out of bounds: {sqs}")
            if len(set(sqs)) != len(sqs):
                raise ValueError(f"edge has repeated squares: {sqs}")
            if not min_size <= len(sqs) <= k:
                raise ValueError(f"edge size {len(sqs)} outside [{min_size}, {k}]: {sqs}")
            key = frozenset(self.index(s) for s in sqs)
            if key in seen:
                raise ValueError(f"duplicate edge: {sqs}")
            seen.add(key)
            self.edges.append(Hyperedge(len(self.edges), sqs))

        self._compile()

    # -- coordinate helpers ------------------------------------------------

    def index(self, sq: Square) -> int:
        return (sq.row - 1) * self.cols + (sq.col - 1)

    def square(self, ix: int) -> Square:
        return Square(ix // self.cols + 1, ix % self.cols + 1)

    def _compile(self) -> None:
        ns = self.n_squares
        self.full_mask = (1 << ns) - 1
        self.edge_squares: list[tuple[int, ...]] = []
        self.edge_masks: list[int] = []
        incident: list[list[int]] = [[] for _ in range(ns)]
        for e in self.edges:
            ixs = tuple(self.index(s) for s in e.squares)
            self.edge_squares.append(ixs)
            mask = 0
            for ix in ixs:
                mask |= 1 << ix
                incident[ix].append(e.id)
        # assertion guards the bytearray used for per-square live degree
        assert all(len(lst) < 256 for lst in incident), "square in too many edges"
        self.incident: tuple[tuple[int, ...], ...] = tuple(tuple(l) for l in incident)
        self.edge_masks = [sum(1 << ix for ix in ixs) for ixs in self.edge_squares]
        self.n_edges = len(self.edges)

        # square permutations for the board symmetries
        self.perm_h = [self.index(Square(s.row, self.cols + 1 - s.col)) for s in map(self.square, range(ns))]
        self.perm_v = [self.index(Square(self.rows + 1 - s.row, s.col)) for s in map(self.square, range(ns))]
        self._row_mask = (1 << self.cols) - 1
        self._rev_row = _rev_row_table(self.cols)

        self.edge_perm_h = self._edge_permutation(self.perm_h)
        self.edge_perm_v = self._edge_permutation(self.perm_v)
        self.h_symmetric = self.edge_perm_h is not None
        self.v_symmetric = self.edge_perm_v is not None

    def _edge_permutation(self, perm: list[int]) -> list[int] | None:
        """Map each edge id to the id of its image under perm, if closed."""
        by_mask = {m: i for i, m in enumerate(self.edge_masks)}
        out = []
        for ixs in self.edge_squares:
            m = 0
            for ix in ixs:
                m |= 1 << perm[ix]
            j = by_mask.get(m)
            if j is None:
                return None
            out.append(j)
        return out

    # -- mask transforms ---------------------------------------------------

    def mirror_mask_h(self, mask: int) -> int:
        if self._rev_row is not None:
            out = 0
            rev = self._rev_row
            rm = self._row_mask
            c = self.cols
            for r in range(self.rows):
                out |= rev[(mask >> (r * c)) & rm] << (r * c)
            return out
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << self.perm_h[low.bit_length() - 1]
            mask ^= low
        return out

    def mirror_mask_v(self, mask: int) -> int:
        out = 0
        rm = self._row_mask
        c = self.cols
        top = self.rows - 1
        for r in range(self.rows):
            out |= ((mask >> (r * c)) & rm) << ((top - r) * c)
        return out

    def permute_edge_mask(self, emask: int, edge_perm: list[int]) -> int:
        out = 0
        while emask:
            low = emask & -emask
            out |= 1 << edge_perm[low.bit_length() - 1]
            emask ^= low
        return out


class Position:
    """Mutable game state over a Ruleset, updated incrementally per move."""

    __slots__ = (
        "rs", "maker", "breaker", "side", "live", "cnt", "x", "pot_i",
        "deg", "ones", "twos", "lone", "won", "dead_extra", "nempty",
    )

    rs: Ruleset
    maker: int
    breaker: int
    side: int
    live: int
    cnt: bytearray
    x: list[int]
    pot_i: int
    deg: bytearray
    ones: set[int]
    twos: set[int]
    lone: set[int]
    won: bool
    dead_extra: int
    nempty: int

    def copy(self) -> "Position":
        p = Position.__new__(Position)
        p.rs = self.rs
        p.maker = self.maker
        p.breaker = self.breaker
        p.side = self.side
        p.live = self.live
        p.cnt = self.cnt[:]
        p.x = self.x[:]
        p.pot_i = self.pot_i
        p.deg = self.deg[:]
        p.ones = set(self.ones)
        p.twos = set(self.twos)
        p.lone = set(self.lone)
        p.won = self.won
        p.dead_extra = self.dead_extra
        p.nempty = self.nempty
        return p

    # -- queries -----------------------------------------------------------

    def is_empty(self, ix: int) -> bool:
        return not ((self.maker | self.breaker) >> ix & 1)

    def empty_mask(self) -> int:
        return self.rs.full_mask & ~(self.maker | self.breaker)

    def contribution_i(self, ix: int) -> int:
        """Scaled sum of 2^-(l-1) over live edges through ix."""
        total = 0
        live = self.live
        cnt = self.cnt
        for e in self.rs.incident[ix]:
            if live >> e & 1:
                total += POT_ONE >> (cnt[e] - 1)
        return total

    def edge_empties(self, e: int) -> list[int]:
        m = self.rs.edge_masks[e] & self.empty_mask()
        out = []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    # -- mutation ----------------------------------------------------------

    def _place(self, ix: int, who: int) -> None:
        """Put a mark on an empty square without touching side-to-move."""
        bit = 1 << ix
        assert not ((self.maker | self.breaker) & bit), "square already marked"
        self.nempty -= 1
        self.lone.discard(ix)
        if who == MAKER:
            self.maker |= bit
            live = self.live
            cnt = self.cnt
            x = self.x
            for e in self.rs.incident[ix]:
                if live >> e & 1:
                    l = cnt[e]
                    x[l] -= 1
                    l -= 1
                    cnt[e] = l
                    x[l] += 1
                    if l == 0:
                        # edge fully maker-marked: 0-lines leave the potential
                        self.pot_i -= POT_ONE
                        self.ones.discard(e)
                        self.won = True
                    else:
                        self.pot_i += POT_ONE >> l
                        if l == 1:
                            self.ones.add(e)
                            self.twos.discard(e)
                        elif l == 2:
                            self.twos.add(e)
        else:
            self.breaker |= bit
            for e in self.rs.incident[ix]:
                if self.live >> e & 1:
                    self._kill(e)

    def _kill(self, e: int) -> None:
        """Remove a live edge (breaker mark or reduction)."""
        l = self.cnt[e]
        self.x[l] -= 1
        self.pot_i -= POT_ONE >> (l - 1)
        self.live &= ~(1 << e)
        if l == 1:
            self.ones.discard(e)
        elif l == 2:
            self.twos.discard(e)
        occupied = self.maker | self.breaker
        deg = self.deg
        for t in self.rs.edge_squares[e]:
            if not (occupied >> t & 1):
                d = deg[t] - 1
                deg[t] = d
                if d == 1:
                    self.lone.add(t)
                elif d == 0:
                    self.lone.discard(t)

    def kill_edge(self, e: int) -> None:
        """Reduction-side elimination: edge dies without a breaker stone."""
        assert self.live >> e & 1
        self._kill(e)
        self.dead_extra |= 1 << e

    def play(self, ix: int) -> None:
        """Mark ix for the side to move and flip side; no undo support."""
        self._place(ix, self.side)
        self.side ^= 1

    def apply_move(self, ix: int) -> tuple:
        """Mark ix for the side to move, flip side; returns an undo token."""
        token = (
            ix, self.side, self.live, bytes(self.cnt), tuple(self.x),
            self.pot_i, bytes(self.deg), frozenset(self.ones),
            frozenset(self.twos), frozenset(self.lone), self.won,
            self.dead_extra, self.nempty,
        )
        self._place(ix, self.side)
        self.side ^= 1
        return token

    def undo_move(self, token: tuple) -> None:
        (ix, side, live, cnt, x, pot_i, deg, ones, twos, lone, won,
         dead_extra, nempty) = token
        bit = 1 << ix
        if side == MAKER:
            self.maker &= ~bit
        else:
            self.breaker &= ~bit
        self.side = side
        self.live = live
        self.cnt = bytearray(cnt)
        self.x = list(x)
        self.pot_i = pot_i
        self.deg = bytearray(deg)
        self.ones = set(ones)
        self.twos = set(twos)
        self.lone = set(lone)
        self.won = won
        self.dead_extra = dead_extra
        self.nempty = nempty


def build_position(rs: Ruleset, side: int = MAKER) -> Position:
    """Fresh position on an untouched board."""
    p = Position.__new__(Position)
    p.rs = rs
    p.maker = 0
    p.breaker = 0
    p.side = side
    p.live = (1 << rs.n_edges) - 1
    p.cnt = bytearray(len(ixs) for ixs in rs.edge_squares)
    p.x = [0] * (rs.k + 1)
    for ixs in rs.edge_squares:
        p.x[len(ixs)] += 1
    p.pot_i = sum(POT_ONE >> (len(ixs) - 1) for ixs in rs.edge_squares)
    p.deg = bytearray(len(rs.incident[ix]) for ix in range(rs.n_squares))
    p.ones = {e for e, ixs in enumerate(rs.edge_squares) if len(ixs) == 1}
    p.twos = {e for e, ixs in enumerate(rs.edge_squares) if len(ixs) == 2}
    p.lone = {ix for ix in range(rs.n_squares) if p.deg[ix] == 1}
    p.won = False
    p.dead_extra = 0
    p.nempty = rs.n_squares
    return p


def restore_position(rs: Ruleset, maker: int, breaker: int,
                     dead_extra: int, side: int,
                     template: "Position | None" = None) -> Position:
    """Rebuild a Position from its defining masks.

    Derived state (edge counts, potential, degree sets) is recomputed by
    replaying the stone placements, then re-killing reduction-eliminated
    edges that are not already dead through a breaker stone.  Placement
    order does not matter to the incremental updates.  Passing a pristine
    position of the same ruleset as template skips the rebuild of the
    empty-board state.
    """
    if template is None:
        p = build_position(rs, side)
    else:
        p = template.copy()
        p.side = side
    m = maker
    while m:
        low = m & -m
        p._place(low.bit_length() - 1, MAKER)
        m ^= low
    b = breaker
    while b:
        low = b & -b
        p._place(low.bit_length() - 1, BREAKER)
        b ^= low
    d = dead_extra & p.live
    while d:
        low = d & -d
        p.kill_edge(low.bit_length() - 1)
        d ^= low
    p.dead_extra = dead_extra
    return p


def potential(pos: Position) -> float:
    """Board potential as an exact dyadic float."""
    return pos.pot_i / POT_ONE


def square_contribution(pos: Position, sq: Square) -> float:
    return pos.contribution_i(pos.rs.index(sq)) / POT_ONE


class ResidualView(NamedTuple):
    """Live structure of a position: empty squares and truncated live edges."""

    squares: tuple[int, ...]          # empty square indexes (row-major)
    edges: tuple[tuple[int, ...], ...]  # per live edge: its empty squares
    edge_ids: tuple[int, ...]


def residual(pos: Position) -> ResidualView:
    empties = []
    m = pos.empty_mask()
    while m:
        low = m & -m
        empties.append(low.bit_length() - 1)
        m ^= low
    edges = []
    ids = []
    live = pos.live
    while live:
        low = live & -live
        e = low.bit_length() - 1
        live ^= low
        edges.append(tuple(pos.edge_empties(e)))
        ids.append(e)
    return ResidualView(tuple(empties), tuple(edges), tuple(ids))


# -- text format -----------------------------------------------------------


def render_position(pos: Position) -> str:
    rs = pos.rs
    lines = []
    for r in range(rs.rows):
        row = []
        for c in range(rs.cols):
            ix = r * rs.cols + c
            if pos.maker >> ix & 1:
                row.append("M")
            elif pos.breaker >> ix & 1:
                row.append("B")
            else:
                row.append(".")
        lines.append("".join(row))
    lines.append(f"to-move: {_MARK_CHARS[pos.side]}")
    return "\n".join(lines) + "\n"


def parse_position(text: str, rs: Ruleset) -> Position:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != rs.rows + 1:
        raise ValueError(f"expected {rs.rows} board rows plus a to-move line")
    tail = lines[-1].strip()
    if not tail.startswith("to-move:"):
        raise ValueError("missing to-move line")
    mark = tail.split(":", 1)[1].strip()
    if mark not in ("M", "B"):
        raise ValueError(f"bad side-to-move: {mark!r}")
    pos = build_position(rs, MAKER if mark == "M" else BREAKER)
    for r, ln in enumerate(lines[: rs.rows]):
        ln = ln.strip()
        if len(ln) != rs.cols:
            raise ValueError(f"row {r + 1} has {len(ln)} cells, expected {rs.cols}")
        for c, ch in enumerate(ln):
            if ch == ".":
                continue
            if ch not in ("M", "B"):
                raise ValueError(f"bad cell {ch!r} at row {r + 1}")
            pos._place(r * rs.cols + c, MAKER if ch == "M" else BREAKER)
    return pos
