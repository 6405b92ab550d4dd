"""Board state: construction, incremental updates, potential bookkeeping."""
import pytest

from makerbreaker import (
    MAKER, POT_ONE, Ruleset, Square, build_position, parse_position,
    potential, render_position, square_contribution,
)
from makerbreaker.board import residual, restore_position

from oracle import random_position, random_ruleset


def recompute_potential(pos):
    """Brute-force potential: sum of 2^-(empties-1) over live edges."""
    total = 0.0
    occupied = pos.maker | pos.breaker
    for e, ixs in enumerate(pos.rs.edge_squares):
        mask = pos.rs.edge_masks[e]
        if mask & pos.breaker:
            continue
        total += 2.0 ** (1 - bin(mask & ~occupied).count("1"))
    return total


def test_square_index_roundtrip(mnk44):
    for ix in range(mnk44.n_squares):
        assert mnk44.index(mnk44.square(ix)) == ix


def test_ruleset_rejects_bad_edges():
    with pytest.raises(ValueError):
        Ruleset(2, 2, 3, [[Square(1, 1), Square(1, 3)]])  # out of bounds
    with pytest.raises(ValueError):
        Ruleset(2, 2, 2, [[Square(1, 1), Square(1, 1)]])  # repeated square
    with pytest.raises(ValueError):
        Ruleset(2, 2, 2, [[Square(1, 1)]])                # too short
    with pytest.raises(ValueError):
        Ruleset(2, 3, 2, [[Square(1, 1), Square(1, 2), Square(1, 3)]])
    with pytest.raises(ValueError):
        Ruleset(2, 2, 2, [[Square(1, 1), Square(1, 2)],
                          [Square(1, 2), Square(1, 1)]])  # duplicate edge


def test_initial_potential_mnk33(mnk33):
    # 8 lines, 3 empties each, 2^-(3-1) apiece
    pos = build_position(mnk33)
    assert pos.pot_i == 8 * (POT_ONE >> 2)
    assert potential(pos) == pytest.approx(2.0)


def test_play_updates_potential_by_contribution(rng):
    for _ in range(200):
        rs = random_ruleset(rng)
        pos = random_position(rs, rng, min_empty=2)
        empties = [ix for ix in range(rs.n_squares) if pos.is_empty(ix)]
        ix = rng.choice(empties)
        cont = square_contribution(pos, rs.square(ix))
        before = potential(pos)
        nxt = pos.copy()
        nxt.play(ix)
        if nxt.won:
            continue        # a completed edge leaves the live pool
        delta = potential(nxt) - before
        want = cont if pos.side == MAKER else -cont
        assert delta == pytest.approx(want, abs=1e-12)


def test_potential_matches_brute_force(rng):
    for _ in range(200):
        rs = random_ruleset(rng)
        pos = random_position(rs, rng)
        assert potential(pos) == pytest.approx(recompute_potential(pos))


def test_apply_undo_roundtrip(rng):
    for _ in range(100):
        rs = random_ruleset(rng)
        pos = random_position(rs, rng, min_empty=3)
        ref = pos.copy()
        moves = [ix for ix in range(rs.n_squares) if pos.is_empty(ix)][:3]
        tokens = [pos.apply_move(ix) for ix in moves]
        for tok in reversed(tokens):
            pos.undo_move(tok)
        assert pos.maker == ref.maker and pos.breaker == ref.breaker
        assert pos.side == ref.side and pos.live == ref.live
        assert pos.pot_i == ref.pot_i and pos.won == ref.won
        assert pos.cnt == ref.cnt and pos.deg == ref.deg
        assert pos.ones == ref.ones and pos.twos == ref.twos
        assert pos.lone == ref.lone and pos.nempty == ref.nempty


def test_copy_is_independent(mnk33):
    pos = build_position(mnk33)
    cp = pos.copy()
    cp.play(0)
    assert pos.maker == 0 and pos.is_empty(0)


def test_restore_equals_replay(rng):
    for _ in range(50):
        rs = random_ruleset(rng)
        pos = random_position(rs, rng)
        back = restore_position(rs, pos.maker, pos.breaker, pos.dead_extra,
                                pos.side)
        assert back.pot_i == pos.pot_i and back.live == pos.live
        assert back.ones == pos.ones and back.twos == pos.twos
        assert back.nempty == pos.nempty and back.won == pos.won


def test_won_flag_on_completed_edge(mnk33):
    pos = build_position(mnk33)
    for ix in (0, 3, 1, 4, 2):        # maker fills row 1, breaker row 2
        pos.play(ix)
    assert pos.won


def test_render_parse_roundtrip(rng):
    for _ in range(30):
        rs = random_ruleset(rng)
        pos = random_position(rs, rng)
        text = render_position(pos)
        back = parse_position(text, rs)
        assert back.maker == pos.maker
        assert back.breaker == pos.breaker
        assert back.side == pos.side


def test_parse_rejects_malformed(mnk33):
    with pytest.raises(ValueError):
        parse_position("...\n...\n...\n", mnk33)       # missing to-move
    with pytest.raises(ValueError):
        parse_position("..\n...\n...\nto-move: M\n", mnk33)
    with pytest.raises(ValueError):
        parse_position("Q..\n...\n...\nto-move: M\n", mnk33)


def test_mirror_masks(mnk44, rng):
    full = mnk44.full_mask
    for _ in range(50):
        mask = rng.getrandbits(mnk44.n_squares)
        assert mnk44.mirror_mask_h(mnk44.mirror_mask_h(mask)) == mask
        assert mnk44.mirror_mask_v(mnk44.mirror_mask_v(mask)) == mask
    assert mnk44.mirror_mask_h(full) == full
    assert mnk44.mirror_mask_v(0) == 0


def test_residual_of_empty_board_is_full_hypergraph(mnk33):
    r = residual(build_position(mnk33))
    assert r.squares == tuple(range(9))
    assert set(r.edge_ids) == set(range(mnk33.n_edges))
    assert set(r.edges) == set(mnk33.edge_squares)


def test_residual_drops_dead_edges(mnk33):
    # breaker corner kills row 1, column 1 and the main diagonal
    pos = parse_position("B..\n...\n...\nto-move: M\n", mnk33)
    r = residual(pos)
    assert 0 not in r.squares and len(r.squares) == 8
    assert len(r.edges) == 5
    assert all(0 not in e for e in r.edges)


def test_contribution_counts_live_lines_once(mnk33):
    pos = build_position(mnk33)
    # centre square of the empty 3x3 board sits on 4 lines of length 3
    assert square_contribution(pos, Square(2, 2)) == pytest.approx(4 * 0.25)
    pos.play(0)           # maker takes the corner
    pos.play(8)           # breaker takes the opposite corner, killing 3 lines
    # corner (1,3): row 1 still live (2 empties after maker), column 3 live,
    # anti-diagonal dead
    assert square_contribution(pos, Square(1, 3)) == pytest.approx(0.5 + 0.25)
