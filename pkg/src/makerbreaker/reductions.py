"""Terminal detection and move pruning for maker-breaker positions.

Terminal rules, in order of checking:
  * some live edge is fully maker-marked            -> maker_win
  * maker to move with a live 1-line                -> maker_win
  * maker to move with two live 2-lines crossing    -> maker_win
  * breaker to move, >= 2 distinct 1-line squares   -> maker_win
  * breaker to move and potential < 1               -> breaker_win
  * no live edges / board full                      -> breaker_win

The potential rule is the one sound-but-optional stop (the greedy breaker
keeps the potential from rising, and below 1 no edge can ever complete);
it is gated behind a flag so ablation runs can switch it off.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple

from .board import BREAKER, MAKER, POT_ONE, Position, Value

REASON_NONE = "none"
REASON_EDGE_COMPLETE = "edge_complete"
REASON_ONE_LINE = "one_line_maker_turn"
REASON_CROSSING = "crossing_win"
REASON_DOUBLE_THREAT = "double_threat"
REASON_POTENTIAL = "potential_stop"
REASON_NO_LIVE = "no_live_edges"
REASON_BOARD_FULL = "board_full"


class TerminalStatus(NamedTuple):
    value: Value
    reason: str


def _two_line_pairs(pos: Position) -> list[tuple[int, int]]:
    return [tuple(pos.edge_empties(e)) for e in pos.twos]


def _two_line_partners(pos: Position) -> dict[int, set[int]]:
    partners: defaultdict[int, set[int]] = defaultdict(set)
    empty = pos.empty_mask()
    masks = pos.rs.edge_masks
    for e in pos.twos:
        m = masks[e] & empty
        low = m & -m
        u = low.bit_length() - 1
        v = (m ^ low).bit_length() - 1
        partners[u].add(v)
        partners[v].add(u)
    return partners


def crossing_squares(pos: Position) -> list[int]:
    """Empty squares where two live 2-lines cross.

    A crossing needs two 2-lines meeting in exactly this square: taking it
    leaves two 1-lines at distinct squares.  Coincident 2-lines (same two
    empty squares) do not cross; both their 1-lines would die to one block.
    """
    if len(pos.twos) < 2:
        return []
    partners = _two_line_partners(pos)
    return sorted(s for s, others in partners.items() if len(others) >= 2)


def _crossing_defusals(partners: dict[int, set[int]],
                       crossings: list[int]) -> list[int]:
    """Breaker moves after which no crossing survives.

    A breaker stone at t removes every 2-line through t, so crossing u
    stays alive unless t == u, or u had exactly two partners and t is one
    of them.  Any move outside this set loses on the spot, which is why
    the move set may be restricted to it; the meet point alone is not
    enough, since taking a partner square can be the breaker's only way
    to thin the structure he will face later.
    """
    pool = set(crossings)
    for u in crossings:
        pu = partners[u]
        if len(pu) == 2:
            pool.update(pu)
    out = []
    for t in sorted(pool):
        for u in crossings:
            if u == t:
                continue
            pu = partners[u]
            if len(pu) != 2 or t not in pu:
                break
        else:
            out.append(t)
    return out


def one_line_squares(pos: Position) -> list[int]:
    """Distinct empty squares of live 1-lines."""
    sqs = set()
    for e in pos.ones:
        sqs.update(pos.edge_empties(e))
    return sorted(sqs)


def terminal_status(pos: Position, use_potential_stop: bool = True) -> TerminalStatus:
    if pos.won:
        return TerminalStatus(Value.MAKER_WIN, REASON_EDGE_COMPLETE)
    if pos.side == MAKER:
        if pos.ones:
            return TerminalStatus(Value.MAKER_WIN, REASON_ONE_LINE)
        if crossing_squares(pos):
            return TerminalStatus(Value.MAKER_WIN, REASON_CROSSING)
    else:
        if pos.ones and len(one_line_squares(pos)) >= 2:
            return TerminalStatus(Value.MAKER_WIN, REASON_DOUBLE_THREAT)
        if use_potential_stop and pos.pot_i < POT_ONE:
            return TerminalStatus(Value.BREAKER_WIN, REASON_POTENTIAL)
    if not pos.live:
        return TerminalStatus(Value.BREAKER_WIN, REASON_NO_LIVE)
    if pos.nempty == 0:
        return TerminalStatus(Value.BREAKER_WIN, REASON_BOARD_FULL)
    return TerminalStatus(Value.UNDECIDED, REASON_NONE)


class ForcedMoves(NamedTuple):
    forced: bool
    candidates: tuple[int, ...]


_NOT_FORCED = ForcedMoves(False, ())


def forced_moves(pos: Position) -> ForcedMoves:
    """Single-purpose move restrictions that lose nothing.

    A breaker facing a 1-line must block it.  Facing crossings (and no
    1-line) he is restricted to the defusal squares; when nothing defuses
    every crossing, all replies lose alike and a single crossing square
    stands in for them.  A maker facing a crossing may be restricted to
    the crossing squares, each an immediate win.
    """
    if pos.side == BREAKER and pos.ones:
        return ForcedMoves(True, tuple(one_line_squares(pos)))
    if len(pos.twos) < 2:
        return _NOT_FORCED
    partners = _two_line_partners(pos)
    cross = sorted(u for u, o in partners.items() if len(o) >= 2)
    if not cross:
        return _NOT_FORCED
    if pos.side == MAKER:
        return ForcedMoves(True, tuple(cross))
    defuse = _crossing_defusals(partners, cross)
    if defuse:
        return ForcedMoves(True, tuple(defuse))
    # nothing defuses every crossing: all replies lose, one stands for all
    return ForcedMoves(True, (cross[0],))


def status_and_forced(
    pos: Position, use_potential_stop: bool = True,
) -> tuple[TerminalStatus, ForcedMoves]:
    """terminal_status and forced_moves in one pass.

    Both need the crossing squares; computing them together halves the cost
    on the solver's hot path.  The forced component of a decided status is
    meaningless and returned empty.
    """
    if pos.won:
        return TerminalStatus(Value.MAKER_WIN, REASON_EDGE_COMPLETE), _NOT_FORCED
    if pos.side == MAKER:
        if pos.ones:
            return TerminalStatus(Value.MAKER_WIN, REASON_ONE_LINE), _NOT_FORCED
        if crossing_squares(pos):
            return TerminalStatus(Value.MAKER_WIN, REASON_CROSSING), _NOT_FORCED
        if not pos.live:
            return TerminalStatus(Value.BREAKER_WIN, REASON_NO_LIVE), _NOT_FORCED
        if pos.nempty == 0:
            return TerminalStatus(Value.BREAKER_WIN, REASON_BOARD_FULL), _NOT_FORCED
        return TerminalStatus(Value.UNDECIDED, REASON_NONE), _NOT_FORCED
    if pos.ones:
        sqs = one_line_squares(pos)
        if len(sqs) >= 2:
            return TerminalStatus(Value.MAKER_WIN, REASON_DOUBLE_THREAT), _NOT_FORCED
        if use_potential_stop and pos.pot_i < POT_ONE:
            return TerminalStatus(Value.BREAKER_WIN, REASON_POTENTIAL), _NOT_FORCED
        return (TerminalStatus(Value.UNDECIDED, REASON_NONE),
                ForcedMoves(True, tuple(sqs)))
    if use_potential_stop and pos.pot_i < POT_ONE:
        return TerminalStatus(Value.BREAKER_WIN, REASON_POTENTIAL), _NOT_FORCED
    if not pos.live:
        return TerminalStatus(Value.BREAKER_WIN, REASON_NO_LIVE), _NOT_FORCED
    if pos.nempty == 0:
        return TerminalStatus(Value.BREAKER_WIN, REASON_BOARD_FULL), _NOT_FORCED
    undecided = TerminalStatus(Value.UNDECIDED, REASON_NONE)
    if len(pos.twos) < 2:
        return undecided, _NOT_FORCED
    partners = _two_line_partners(pos)
    cross = sorted(u for u, o in partners.items() if len(o) >= 2)
    if not cross:
        return undecided, _NOT_FORCED
    defuse = _crossing_defusals(partners, cross)
    if defuse:
        return undecided, ForcedMoves(True, tuple(defuse))
    # nothing defuses every crossing: all replies lose, one stands for all
    return undecided, ForcedMoves(True, (cross[0],))


def prune_dead_squares(pos: Position) -> list[int]:
    """Empty squares in no live edge; playing one is never useful."""
    out = []
    deg = pos.deg
    m = pos.empty_mask()
    while m:
        low = m & -m
        ix = low.bit_length() - 1
        m ^= low
        if deg[ix] == 0:
            out.append(ix)
    return out


@dataclass
class MoveRestriction:
    eliminated_squares: list[int] = field(default_factory=list)
    eliminated_edges: list[int] = field(default_factory=list)
    eager_pair: tuple[int, int] | None = None   # (maker move, forced breaker reply)

    @property
    def kind(self) -> str:
        if self.eager_pair is not None:
            return "eager"
        if self.eliminated_edges:
            return "pairing"
        return "none"


def _single_live_edge(pos: Position, ix: int) -> int:
    for e in pos.rs.incident[ix]:
        if pos.live >> e & 1:
            return e
    raise AssertionError("lone square with no live edge")


def pairing_fixpoint(pos: Position) -> tuple[list[int], list[int]]:
    """Partial-pairing elimination, run to a fixpoint; mutates pos.

    When two squares share the same single live edge, the breaker can pair
    them (answer one with the other), so that edge can never complete and
    is removed together with both squares.  Worklist processing order does
    not matter: killing an edge only lowers degrees, so a pairable edge
    stays pairable until it dies, and the final killed set is unique.
    """
    elim_sq: list[int] = []
    elim_edges: list[int] = []
    lone = pos.lone
    if not lone:
        return elim_sq, elim_edges
    rs = pos.rs
    deg = pos.deg
    work = list(lone)
    while work:
        s = work.pop()
        if s not in lone:
            continue
        live = pos.live
        for e in rs.incident[s]:
            if live >> e & 1:
                break
        occupied = pos.maker | pos.breaker
        partner = -1
        for t in rs.edge_squares[e]:
            if t != s and not (occupied >> t & 1) and deg[t] == 1:
                partner = t
                break
        if partner < 0:
            continue
        pos.kill_edge(e)
        elim_sq += (s, partner) if s < partner else (partner, s)
        elim_edges.append(e)
        for t in rs.edge_squares[e]:
            if t != s and t in lone:
                work.append(t)
    return elim_sq, elim_edges


def dominated_square_reduction(pos: Position) -> MoveRestriction:
    """Partial-pairing elimination plus eager-exchange detection.

    Mutates pos via pairing_fixpoint.  Afterwards, a remaining lone square
    s on a live 2-line {s, s'} yields the eager pair (s', s): maker may as
    well take s' at once, forcing the breaker to s.  The eager pair is
    only reported at maker-to-move nodes.
    """
    elim_sq, elim_edges = pairing_fixpoint(pos)
    r = MoveRestriction(eliminated_squares=elim_sq, eliminated_edges=elim_edges)
    if pos.side == MAKER:
        for s in sorted(pos.lone):
            e = _single_live_edge(pos, s)
            if pos.cnt[e] == 2:
                other = [t for t in pos.edge_empties(e) if t != s][0]
                r.eager_pair = (other, s)
                break
    return r


def legal_moves(
    pos: Position,
    *,
    forced: bool = True,
    dead: bool = True,
    dominated: bool = True,
    order: str = "rowmajor",
    fm: ForcedMoves | None = None,
) -> list[int]:
    """Candidate moves for the side to move, after enabled restrictions.

    Assumes the pairing fixpoint (when dominated is on) has already run on
    pos; here dominated only contributes the eager-pair restriction.  A
    caller that already holds the ForcedMoves for pos can pass it as fm.
    """
    cands: list[int] | None = None
    if forced:
        if fm is None:
            fm = forced_moves(pos)
        if fm.forced:
            cands = list(fm.candidates)
    if cands is None and dominated and pos.side == MAKER:
        for s in sorted(pos.lone):
            e = _single_live_edge(pos, s)
            if pos.cnt[e] == 2:
                cands = [t for t in pos.edge_empties(e) if t != s][:1]
                break
    if cands is None:
        cands = []
        m = pos.empty_mask()
        deg = pos.deg
        while m:
            low = m & -m
            ix = low.bit_length() - 1
            m ^= low
            if not dead or deg[ix]:
                cands.append(ix)
    if order == "contribution":
        cands.sort(key=lambda ix: (-pos.contribution_i(ix), ix))
    return cands
