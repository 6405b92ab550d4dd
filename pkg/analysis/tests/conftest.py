"""Synthetic training-data factory shared by the analysis tests."""
import csv

import numpy as np

# the coefficient set the solver ships as its built-in default
REFERENCE = {"c0": -6.2, "c_nodeT": -13.4, "c_emptyS": -1.52, "c_pot": 25.83}


def write_training(path, rng, coeffs=REFERENCE, rows=40_000):
    """Sample (nodeT, emptyS, pot) and draw labels from the given model."""
    t = rng.integers(0, 2, rows)
    e = rng.integers(2, 15, rows)
    p = rng.uniform(0.05, 2.0, rows)
    z = (coeffs["c0"] + coeffs["c_nodeT"] * t + coeffs["c_emptyS"] * e
         + coeffs["c_pot"] * p)
    p_maker = 1.0 / (1.0 + np.exp(-z))
    label = (rng.random(rows) >= p_maker).astype(int)   # 1 = breaker win
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["node_type", "empty_squares", "potential", "label"])
        for ti, ei, pi, li in zip(t, e, p, label):
            w.writerow([ti, ei, f"{pi:.6f}", li])
    return str(path)
