"""Logistic fitting: recovery, validation, error paths."""
import csv
import json

import numpy as np
import pytest

from mbanalysis import CoefficientSet, fit_logistic

from conftest import REFERENCE, write_training


def test_recovers_reference_model(tmp_path):
    rng = np.random.default_rng(20260823)
    path = write_training(tmp_path / "train.csv", rng)
    out = tmp_path / "coeffs.json"
    cs = fit_logistic(path, json_path=str(out))
    for key, want in REFERENCE.items():
        got = getattr(cs, key)
        assert abs(got - want) / abs(want) <= 0.10, f"{key}: {got} vs {want}"
    assert cs.row_count == 40_000
    assert 0.5 < cs.train_accuracy <= 1.0
    assert json.loads(out.read_text()) == cs.coeffs_dict()


def test_single_label_raises(tmp_path):
    rng = np.random.default_rng(3)
    path = write_training(tmp_path / "one.csv", rng,
                          coeffs={"c0": 200.0, "c_nodeT": 0.0,
                                  "c_emptyS": 0.0, "c_pot": 0.0},
                          rows=200)
    with pytest.raises(ValueError, match="single label"):
        fit_logistic(path)


def test_empty_csv_raises(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("node_type,empty_squares,potential,label\n")
    with pytest.raises(ValueError, match="no data rows"):
        fit_logistic(str(path))


def test_missing_columns_raises(tmp_path):
    path = tmp_path / "bad.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["node_type", "label"])
        w.writerow([0, 1])
    with pytest.raises(ValueError, match="lacks columns"):
        fit_logistic(str(path))


def test_coefficient_set_validation():
    with pytest.raises(ValueError):
        CoefficientSet(0, 0, 0, 0, train_accuracy=1.5, row_count=10)
    with pytest.raises(ValueError):
        CoefficientSet(0, 0, 0, 0, train_accuracy=0.9, row_count=0)
