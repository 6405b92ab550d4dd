"""Offline fitting and figures for maker-breaker solver exports."""

from .fit import CoefficientSet, fit_logistic, load_training
from .plots import plot_heatmap, plot_potential_trajectory, plot_scaling

__version__ = "0.1.0"

__all__ = [
    "CoefficientSet", "fit_logistic", "load_training",
    "plot_heatmap", "plot_potential_trajectory", "plot_scaling",
    "__version__",
]
