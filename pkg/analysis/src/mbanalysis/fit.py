"""Logistic model of node outcomes on (node type, empties, potential).

Consumes the solver's training CSV export; produces a coefficient JSON
the solver reads back through its --coeffs option.  The fitted log-odds
are oriented toward a maker win, the same orientation the solver uses.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np
from sklearn.linear_model import LogisticRegression

TRAINING_COLUMNS = ("node_type", "empty_squares", "potential", "label")


@dataclass(frozen=True)
class CoefficientSet:
    """log-odds(maker win) = c0 + c_nodeT*t + c_emptyS*e + c_pot*p."""
    c0: float
    c_nodeT: float
    c_emptyS: float
    c_pot: float
    train_accuracy: float
    row_count: int

    def __post_init__(self):
        if not 0.0 <= self.train_accuracy <= 1.0:
            raise ValueError("train_accuracy outside [0, 1]")
        if self.row_count <= 0:
            raise ValueError("row_count must be positive")

    def coeffs_dict(self) -> dict:
        return {"c0": self.c0, "c_nodeT": self.c_nodeT,
                "c_emptyS": self.c_emptyS, "c_pot": self.c_pot}


def load_training(csv_path: str) -> tuple[np.ndarray, np.ndarray]:
    """Feature matrix (nodeT, emptyS, pot) and 0/1 labels (1 = breaker won)."""
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        have = reader.fieldnames or ()
        missing = [c for c in TRAINING_COLUMNS if c not in have]
        if missing:
            raise ValueError(f"training CSV lacks columns {missing}")
        feats: list[tuple[float, float, float]] = []
        labels: list[int] = []
        for row in reader:
            feats.append((float(row["node_type"]),
                          float(row["empty_squares"]),
                          float(row["potential"])))
            labels.append(int(row["label"]))
    if not feats:
        raise ValueError("training CSV has no data rows")
    return np.asarray(feats), np.asarray(labels)


def fit_logistic(csv_path: str, json_path: str | None = None) -> CoefficientSet:
    """Maximum-likelihood fit of the outcome on the three node features.

    The exported label marks breaker wins; the returned coefficients are
    flipped to maker-win log-odds so they drop straight into the solver.
    """
    X, y = load_training(csv_path)
    if np.unique(y).size < 2:
        raise ValueError("training data carries a single label")
    maker = 1 - y
    model = LogisticRegression(penalty=None, max_iter=10_000, tol=1e-8)
    model.fit(X, maker)
    c_nodeT, c_emptyS, c_pot = (float(v) for v in model.coef_[0])
    cs = CoefficientSet(
        c0=float(model.intercept_[0]), c_nodeT=c_nodeT,
        c_emptyS=c_emptyS, c_pot=c_pot,
        train_accuracy=float(model.score(X, maker)), row_count=int(y.size))
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(cs.coeffs_dict(), fh, indent=2)
            fh.write("\n")
    return cs
