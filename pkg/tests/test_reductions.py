"""Terminal rules, forced-move restrictions, pairing and dead squares."""
from makerbreaker import (
    BREAKER, MAKER, Ruleset, Square, Value, build_position,
    dominated_square_reduction, forced_moves, legal_moves, pairing_fixpoint,
    potential, prune_dead_squares, square_contribution, terminal_status,
)
from makerbreaker.board import restore_position
from makerbreaker.reductions import (
    REASON_BOARD_FULL, REASON_CROSSING, REASON_DOUBLE_THREAT,
    REASON_EDGE_COMPLETE, REASON_NO_LIVE, REASON_ONE_LINE, REASON_POTENTIAL,
    crossing_squares, one_line_squares, status_and_forced,
)

from oracle import oracle_value, random_position, random_ruleset


def strip(rs, maker=0, breaker=0, side=MAKER):
    return restore_position(rs, maker, breaker, 0, side)


def line(cols, k, *edges):
    """1 x cols board with explicit edges given as column tuples."""
    return Ruleset(1, cols, k,
                   [[Square(1, c) for c in e] for e in edges],
                   _allow_short=True)


def oracle_after(pos, ix):
    nxt = pos.copy()
    nxt.play(ix)
    return oracle_value(nxt)


def test_terminal_reasons_on_hand_positions():
    rs = line(2, 2, (1, 2))
    assert terminal_status(strip(rs, maker=0b11)).reason == REASON_EDGE_COMPLETE
    # lone 2-line, breaker to move: potential 2^-1 < 1
    st = terminal_status(strip(rs, side=BREAKER))
    assert st.value == Value.BREAKER_WIN and st.reason == REASON_POTENTIAL
    assert terminal_status(strip(rs, side=BREAKER),
                           use_potential_stop=False).value == Value.UNDECIDED
    st = terminal_status(strip(rs, breaker=0b01))
    assert st.value == Value.BREAKER_WIN and st.reason == REASON_NO_LIVE
    full = strip(rs, maker=0b01, breaker=0b10)
    assert terminal_status(full).reason in (REASON_NO_LIVE, REASON_BOARD_FULL)


def test_one_line_terminals():
    rs = line(3, 3, (1, 2, 3))
    pos = strip(rs, maker=0b011)                 # 1-line, maker to move
    assert terminal_status(pos).reason == REASON_ONE_LINE
    pos = strip(rs, maker=0b011, side=BREAKER)   # breaker must block
    st, fm = status_and_forced(pos)
    assert st.value == Value.UNDECIDED
    assert fm == (True, (2,))


def test_double_threat():
    rs = line(4, 2, (1, 2), (3, 4))
    pos = strip(rs, maker=0b0101, side=BREAKER)  # 1-lines at columns 2 and 4
    assert terminal_status(pos).reason == REASON_DOUBLE_THREAT
    assert one_line_squares(pos) == [1, 3]


def test_crossing_detection_and_defusals():
    # two 2-edges meeting at column 2: maker takes it, two threats appear
    rs = line(3, 2, (1, 2), (2, 3))
    pos = strip(rs)
    assert crossing_squares(pos) == [1]
    assert terminal_status(pos).reason == REASON_CROSSING
    fm = forced_moves(strip(rs, side=BREAKER))
    # defusals: the meet point or either partner square
    assert fm == (True, (0, 1, 2))


def test_coincident_two_lines_do_not_cross():
    # both edges have the same two empties; one block kills both threats
    rs = Ruleset(2, 2, 3, [[Square(1, 1), Square(1, 2)],
                           [Square(1, 1), Square(2, 1), Square(1, 2)]])
    pos = strip(rs, maker=1 << 2)
    assert crossing_squares(pos) == []
    assert terminal_status(pos).value == Value.UNDECIDED


def test_lost_breaker_collapses_to_single_candidate():
    # two crossings too far apart to defuse with one stone
    rs = line(7, 2, (1, 2), (2, 3), (5, 6), (6, 7))
    pos = strip(rs, side=BREAKER)
    assert crossing_squares(pos) == [1, 5]
    assert forced_moves(pos) == (True, (1,))
    assert oracle_value(pos) == Value.MAKER_WIN


def test_forced_moves_not_forced_without_structure(mnk33):
    assert forced_moves(build_position(mnk33)) == (False, ())


def test_excluded_breaker_moves_all_lose(rng):
    """Soundness of the defusal restriction: everything outside it loses."""
    checked = 0
    for _ in range(4000):
        if checked >= 60:
            break
        rs = random_ruleset(rng)
        pos = random_position(rs, rng, min_empty=4, max_empty=9)
        if pos.side != BREAKER or pos.won:
            continue
        if terminal_status(pos).value != Value.UNDECIDED:
            continue
        fm = forced_moves(pos)
        if not fm.forced:
            continue
        checked += 1
        allowed = set(fm.candidates)
        for ix in range(rs.n_squares):
            if pos.is_empty(ix) and ix not in allowed:
                assert oracle_after(pos, ix) == Value.MAKER_WIN
    assert checked >= 30


def test_forced_restriction_preserves_value(rng):
    checked = 0
    for _ in range(4000):
        if checked >= 60:
            break
        rs = random_ruleset(rng)
        pos = random_position(rs, rng, min_empty=4, max_empty=9)
        if pos.won or terminal_status(pos).value != Value.UNDECIDED:
            continue
        fm = forced_moves(pos)
        if not fm.forced:
            continue
        checked += 1
        vals = [oracle_after(pos, ix) for ix in fm.candidates]
        want = Value.MAKER_WIN if pos.side == MAKER else Value.BREAKER_WIN
        best = want if want in vals else (Value.BREAKER_WIN if
                                          want == Value.MAKER_WIN else
                                          Value.MAKER_WIN)
        assert best == oracle_value(pos)
    assert checked >= 30


def test_prune_dead_squares():
    rs = line(4, 2, (1, 2))
    assert prune_dead_squares(strip(rs)) == [2, 3]
    # breaker stone kills the only edge: everything left is dead
    assert prune_dead_squares(strip(rs, breaker=0b0001)) == [1, 2, 3]


def test_pairing_eliminates_isolated_edges():
    rs = line(4, 2, (1, 2), (3, 4))
    pos = strip(rs)
    sq, edges = pairing_fixpoint(pos)
    assert sorted(sq) == [0, 1, 2, 3] and len(edges) == 2
    assert pos.live == 0


def test_pairing_keeps_shared_squares():
    # middle square has degree 2; neither edge is pairable
    rs = line(3, 2, (1, 2), (2, 3))
    pos = strip(rs)
    assert pairing_fixpoint(pos) == ([], [])
    assert bin(pos.live).count("1") == 2


def test_pairing_cascades():
    # only (2,3,4) is pairable at first; killing it frees (1,2)
    rs = line(4, 3, (1, 2), (2, 3, 4))
    pos = strip(rs)
    sq, edges = pairing_fixpoint(pos)
    assert len(edges) == 2 and pos.live == 0
    assert sorted(sq) == [0, 1, 2, 3]


def test_eager_pair_detection():
    rs = line(3, 2, (1, 2), (2, 3))
    pos = strip(rs)
    r = dominated_square_reduction(pos)
    assert r.kind == "eager"
    assert r.eager_pair == (1, 0)
    assert legal_moves(pos, forced=False, dominated=True) == [1]


def test_legal_moves_ordering_and_dead_filter():
    rs = line(4, 2, (1, 2))
    pos = strip(rs)
    assert legal_moves(pos, forced=False, dominated=False, dead=True) == [0, 1]
    allm = legal_moves(pos, forced=False, dominated=False, dead=False)
    assert allm == [0, 1, 2, 3]
    by_cont = legal_moves(pos, forced=False, dominated=False, dead=False,
                          order="contribution")
    conts = [square_contribution(pos, rs.square(ix)) for ix in by_cont]
    assert conts == sorted(conts, reverse=True)


def test_status_and_forced_agrees_with_parts(rng):
    for _ in range(300):
        rs = random_ruleset(rng)
        pos = random_position(rs, rng)
        st, fm = status_and_forced(pos)
        assert st == terminal_status(pos)
        if st.value == Value.UNDECIDED:
            assert fm == forced_moves(pos)


def test_terminal_calls_agree_with_oracle(rng):
    """Every decided status must match exhaustive search."""
    decided = 0
    for _ in range(400):
        rs = random_ruleset(rng)
        pos = random_position(rs, rng, min_empty=2, max_empty=9)
        st = terminal_status(pos)
        if st.value == Value.UNDECIDED or pos.won:
            continue
        decided += 1
        assert oracle_value(pos) == st.value, st.reason
    assert decided > 50


def test_potential_two_ply_envelope(rng):
    """After a greedy breaker move, no maker reply lifts the potential."""
    checked = 0
    for _ in range(600):
        if checked >= 200:
            break
        rs = random_ruleset(rng)
        pos = random_position(rs, rng, min_empty=3)
        if pos.side != BREAKER or pos.won:
            continue
        checked += 1
        empties = [ix for ix in range(rs.n_squares) if pos.is_empty(ix)]
        greedy = max(empties, key=lambda ix: (pos.contribution_i(ix), -ix))
        before = potential(pos)
        mid = pos.copy()
        mid.play(greedy)
        for reply in (ix for ix in empties if ix != greedy):
            after = mid.copy()
            after.play(reply)
            if after.won:
                continue
            assert potential(after) <= before + 1e-12
    assert checked >= 100
