"""Acceptance gates for the analysis package, one test per gate.

The reference-data gates read CSVs exported by the solver package into
results/ at the repository root (see the README's experiment commands).
"""
import filecmp
import json
import pathlib
import time

import numpy as np
import pytest

from mbanalysis import (
    fit_logistic, plot_heatmap, plot_potential_trajectory, plot_scaling,
)

from conftest import REFERENCE, write_training

RESULTS = pathlib.Path(__file__).resolve().parents[2] / "results"


def _require(*names):
    paths = [RESULTS / n for n in names]
    missing = [str(p) for p in paths if not p.exists()]
    if missing:
        pytest.fail(f"reference exports missing: {missing}; "
                    "regenerate with the README's experiment commands")
    return paths


def test_accept_synthetic_recovery(tmp_path):
    """The fitter recovers a known model within 10% per coefficient, fast."""
    t0 = time.monotonic()
    rng = np.random.default_rng(977)
    path = write_training(tmp_path / "syn.csv", rng)
    cs = fit_logistic(path)
    for key, want in REFERENCE.items():
        got = getattr(cs, key)
        assert abs(got - want) / abs(want) <= 0.10, f"{key}: {got} vs {want}"
    assert time.monotonic() - t0 < 60.0


def test_accept_real_export_sign_pattern(tmp_path):
    """Fits on real 4x7..4x9 exports: pot pushes toward maker wins, empties
    and breaker-to-move toward breaker wins."""
    paths = _require("training_4x7.csv", "training_4x8.csv",
                     "training_4x9.csv")
    merged = tmp_path / "merged.csv"
    with open(merged, "w", encoding="utf-8") as out:
        out.write("node_type,empty_squares,potential,label\n")
        for p in paths:
            lines = p.read_text().splitlines()
            assert lines[0] == "node_type,empty_squares,potential,label"
            out.write("".join(line + "\n" for line in lines[1:]))
    cs = fit_logistic(str(merged))
    assert cs.c_pot > 0, cs
    assert cs.c_emptyS < 0, cs
    assert cs.c_nodeT < 0, cs


def test_accept_reference_plots_deterministic(tmp_path):
    """All four operations produce files on the reference exports, and
    rendering twice is byte-identical."""
    train, trace, scaling = _require("training_4x7.csv", "trace_7.csv",
                                     "scaling.csv")
    outs = []
    for name, op, src in (
        ("heatmap", plot_heatmap, train),
        ("trajectory", plot_potential_trajectory, trace),
        ("scaling", plot_scaling, scaling),
    ):
        a = tmp_path / f"{name}_a.png"
        b = tmp_path / f"{name}_b.png"
        op(str(src), str(a))
        op(str(src), str(b))
        assert a.stat().st_size > 0
        assert filecmp.cmp(a, b, shallow=False), f"{name} render differs"
        outs.append(a)

    ja, jb = tmp_path / "ca.json", tmp_path / "cb.json"
    fit_logistic(str(train), json_path=str(ja))
    fit_logistic(str(train), json_path=str(jb))
    assert ja.read_bytes() == jb.read_bytes()
    assert set(json.loads(ja.read_text())) == {"c0", "c_nodeT",
                                               "c_emptyS", "c_pot"}
