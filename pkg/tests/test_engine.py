"""Search engine: soundness against the oracle, budgets, invariants."""
import io
import itertools

from makerbreaker import (
    DEFAULT_COEFFS, EngineConfig, Solver, build_position,
    export_training_rows, generate_mnk, generate_trunc7, init_leaf_values,
    prob_breaker_win, solve,
)
from makerbreaker.board import restore_position
from makerbreaker.engine import NODE_BYTES, _F_OR

from oracle import oracle_value, random_position, random_ruleset

NO_FLAGS = dict(forced_move=False, dead_squares=False, dominated=False,
                breaker_stop=False, components=False, heuristic_pn=False,
                heuristic_dn=False, symmetry=False, isomorphy=False)


def single_flag_configs():
    out = {"all_off": EngineConfig(**NO_FLAGS)}
    for flag in ("forced_move", "dead_squares", "dominated", "breaker_stop",
                 "components", "heuristic_pn", "heuristic_dn", "symmetry",
                 "isomorphy"):
        kw = dict(NO_FLAGS)
        kw[flag] = True
        if flag == "components":
            kw["dead_squares"] = True      # splits appear once squares die
        out[flag] = EngineConfig(**kw)
    out["all_on"] = EngineConfig(isomorphy=True)
    out["defaults"] = EngineConfig()
    return out


def test_solve_mnk33_is_maker_win(mnk33):
    res = solve(mnk33)
    assert res.value == "maker_win"
    assert res.stop == "solved"
    assert res.nodes >= 1


def test_solve_1x3_is_breaker_win():
    res = solve(generate_mnk(1, 3, 3))
    assert res.value == "breaker_win"


def test_every_config_matches_oracle(rng):
    configs = single_flag_configs()
    for _ in range(40):
        rs = random_ruleset(rng)
        pos = random_position(rs, rng, min_empty=4, max_empty=10)
        want = oracle_value(pos).name.lower()
        for name, cfg in configs.items():
            res = Solver(rs, cfg).solve(pos.copy())
            assert res.value == want, f"{name} disagrees with oracle"


def test_potential_stop_decides_at_root():
    rs = generate_mnk(1, 3, 3)
    pos = build_position(rs, side=1)      # breaker to move, pot 1/4
    res = Solver(rs).solve(pos)
    assert res.value == "breaker_win" and res.stop == "solved"
    assert res.nodes == 1


def test_mirror_invariance_value_and_node_count(rng):
    """Solving a mirrored board replays the identical canonical search."""
    for rs in (generate_mnk(3, 4, 3), generate_trunc7(7)):
        for _ in range(6):
            pos = random_position(rs, rng, min_empty=6, max_empty=12)
            mk = rs.mirror_mask_h(pos.maker)
            bk = rs.mirror_mask_h(pos.breaker)
            mirrored = restore_position(rs, mk, bk, 0, pos.side)
            a = Solver(rs).solve(pos)
            b = Solver(rs).solve(mirrored)
            assert a.value == b.value
            assert a.nodes == b.nodes


def test_determinism(t7):
    r1 = Solver(t7).solve(build_position(t7))
    r2 = Solver(t7).solve(build_position(t7))
    assert (r1.value, r1.nodes) == (r2.value, r2.nodes)


def test_transposition_table_resume(mnk33):
    first = Solver(mnk33)
    r1 = first.solve(build_position(mnk33))
    again = Solver(mnk33, _tt=first.tt)
    r2 = again.solve(build_position(mnk33))
    assert r2.value == r1.value
    assert r2.nodes == 0              # root found already solved


def test_node_limit_reports_memory_stop(t7):
    res = Solver(t7, node_limit=50).solve(build_position(t7))
    assert res.value == "unknown" and res.stop == "memory"
    res = Solver(t7, mem_limit=NODE_BYTES * 50).solve(build_position(t7))
    assert res.value == "unknown" and res.stop == "memory"


def test_time_limit_reports_time_stop():
    rs = generate_trunc7(9)
    res = Solver(rs, time_limit=0.2).solve(build_position(rs))
    assert res.value == "unknown" and res.stop == "time"


def test_heuristic_switches_do_not_change_value(rng):
    for _ in range(25):
        rs = random_ruleset(rng)
        pos = random_position(rs, rng, min_empty=4, max_empty=10)
        values = set()
        for pn, dn in itertools.product((False, True), repeat=2):
            cfg = EngineConfig(heuristic_pn=pn, heuristic_dn=dn)
            values.add(Solver(rs, cfg).solve(pos.copy()).value)
        assert len(values) == 1


def test_move_order_does_not_change_value(rng):
    for _ in range(25):
        rs = random_ruleset(rng)
        pos = random_position(rs, rng, min_empty=4, max_empty=10)
        a = Solver(rs, EngineConfig(order="rowmajor")).solve(pos.copy())
        b = Solver(rs, EngineConfig(order="contribution")).solve(pos.copy())
        assert a.value == b.value


def walk_proof_dag(node, proven):
    """Check the winning-strategy shape of the solved DAG."""
    if not node.kids:
        return
    if node.flags & _F_OR:
        if proven:
            picks = [c for c in node.kids if c.pn == 0.0]
            assert picks, "proven OR node lacks a proven child"
            walk_proof_dag(picks[0], proven)
        else:
            for c in node.kids:
                assert c.dn == 0.0
                walk_proof_dag(c, proven)
    else:
        if proven:
            for c in node.kids:
                assert c.pn == 0.0
                walk_proof_dag(c, proven)
        else:
            picks = [c for c in node.kids if c.dn == 0.0]
            assert picks, "disproven AND node lacks a disproving child"
            walk_proof_dag(picks[0], proven)


def test_proof_dag_shape_proven_and_disproven(mnk33):
    s = Solver(mnk33)
    res = s.solve(build_position(mnk33))
    assert res.value == "maker_win" and s.root.pn == 0.0
    walk_proof_dag(s.root, proven=True)

    rs = generate_mnk(1, 4, 4)
    s2 = Solver(rs)
    res2 = s2.solve(build_position(rs))
    assert res2.value == "breaker_win" and s2.root.dn == 0.0
    walk_proof_dag(s2.root, proven=False)


def test_principal_variation_shape(mnk33):
    s = Solver(mnk33)
    s.solve(build_position(mnk33))
    pv = s.principal_variation()
    assert [ply for ply, _ in pv] == list(range(len(pv)))
    assert all(isinstance(p, float) and p >= 0.0 for _, p in pv)
    assert len(pv) >= 2


def test_export_training_rows_schema(mnk33):
    s = Solver(mnk33)
    s.solve(build_position(mnk33))
    buf = io.StringIO()
    rows = export_training_rows(s, buf)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "node_type,empty_squares,potential,label"
    assert rows == len(lines) - 1 and rows > 0
    labels = set()
    for ln in lines[1:]:
        nt, es, pot, label = ln.split(",")
        assert nt in ("0", "1") and label in ("0", "1")
        assert int(es) >= 0 and float(pot) >= 0.0
        labels.add(label)
    assert "0" in labels              # the proven root at least


def test_prob_breaker_win_range_and_monotonicity():
    base = prob_breaker_win(0, 10, 0.5)
    assert 0.0 <= base <= 1.0
    # more potential favors the maker
    assert prob_breaker_win(0, 10, 3.0) <= base
    # clamped extremes do not overflow
    assert prob_breaker_win(1, 10_000, 0.0) == 1.0
    assert prob_breaker_win(0, 0, 1e6) == 0.0
    assert DEFAULT_COEFFS.c_pot > 0 and DEFAULT_COEFFS.c_empty < 0


def test_init_leaf_values_heuristics():
    cfg = EngineConfig()
    pn, dn = init_leaf_values(False, 2.0, 8, cfg)
    assert pn == 1.0 + cfg.beta * prob_breaker_win(0, 8, 2.0)
    assert dn == cfg.alpha ** 2.0
    # OR leaf exponent shifts by the sibling gap
    _, dn_or = init_leaf_values(True, 1.0, 8, cfg,
                                parent_pot=3.0, min_sibling_pot=2.0)
    assert dn_or == cfg.alpha ** (3.0 - 2.0 + 1.0)
    # heuristics off: unit initial values
    off = EngineConfig(heuristic_pn=False, heuristic_dn=False)
    assert init_leaf_values(True, 5.0, 3, off) == (1.0, 1.0)
    # huge exponent saturates instead of overflowing
    _, capped = init_leaf_values(False, 200.0, 3, cfg)
    assert capped == 1e300


def test_solve_result_to_dict(t7):
    cfg = EngineConfig()
    res = Solver(t7, cfg, node_limit=20).solve(build_position(t7))
    d = res.to_dict(t7, "proof", cfg)
    assert d["n"] == 7 and d["setup"] == "proof"
    assert set(d) == {"ruleset", "n", "setup", "flags", "value", "nodes",
                      "seconds", "stop"}
    assert d["flags"]["forced_move"] is True
