"""Exact solver for maker-breaker positional games on grid boards."""

from .board import (
    BREAKER, MAKER, POT_ONE, Hyperedge, Position, Ruleset, Square, Value,
    build_position, parse_position, potential, render_position,
    square_contribution,
)
from .engine import (
    DEFAULT_COEFFS, Coefficients, EngineConfig, SolveResult, Solver,
    export_training_rows, init_leaf_values, prob_breaker_win, solve,
)
from .reductions import (
    TerminalStatus, dominated_square_reduction, forced_moves, legal_moves,
    pairing_fixpoint, prune_dead_squares, terminal_status,
)
from .harness import (
    CONFIG_NAMES, DisproofNotFound, ExperimentSpec, SupportReport,
    find_disproof_setup, named_config, ratio_table, run_experiment,
    scaling_study, support_set,
)
from .rulesets import (
    CoverageReport, generate_mnk, generate_trunc7, trunc7_edges,
    verify_block_coverage,
)

__version__ = "0.1.0"

__all__ = [
    "BREAKER", "MAKER", "POT_ONE",
    "Hyperedge", "Position", "Ruleset", "Square", "Value",
    "build_position", "parse_position", "potential", "render_position",
    "square_contribution",
    "DEFAULT_COEFFS", "Coefficients", "EngineConfig", "SolveResult", "Solver",
    "export_training_rows", "init_leaf_values", "prob_breaker_win", "solve",
    "TerminalStatus", "dominated_square_reduction", "forced_moves",
    "legal_moves", "pairing_fixpoint", "prune_dead_squares", "terminal_status",
    "CONFIG_NAMES", "DisproofNotFound", "ExperimentSpec", "SupportReport",
    "find_disproof_setup", "named_config", "ratio_table", "run_experiment",
    "scaling_study", "support_set",
    "CoverageReport", "generate_mnk", "generate_trunc7", "trunc7_edges",
    "verify_block_coverage",
    "__version__",
]
