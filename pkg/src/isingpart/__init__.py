"""Ising annealing for balanced min-cut graph bipartitioning.

Two solvers share one annealing loop: ``standard`` evaluates the balance
penalty by summing every spin, ``gdi`` keeps a shared balance counter that
workers update atomically.
"""

__version__ = "0.1.0"

from .anneal import AnnealParams, AnnealTrace, anneal, default_params_for, flip_probability
from .bench import BenchConfig, RunReport, emit_plot_data, load_external_results, run_benchmark
from .errors import (
    CapacityError,
    ConfigError,
    DomainError,
    GraphConsistencyError,
    GraphFormatError,
    GraphParseError,
    GraphRangeError,
    GraphValidationError,
    IsingPartError,
    SolverRuntimeError,
)
from .evaluate import PartitionScore, brute_force_balanced_mincut, cut_value, imbalance, score
from .graph import Graph, density, parse_gset, read_gset
from .ising import (
    BalanceCounter,
    MinCutProblem,
    candidate_energies_mincut,
    coefficients_for,
    default_coefficients,
    global_hamiltonian,
    local_field,
)

__all__ = [
    "AnnealParams", "AnnealTrace", "anneal", "default_params_for", "flip_probability",
    "BenchConfig", "RunReport", "emit_plot_data", "load_external_results", "run_benchmark",
    "CapacityError", "ConfigError", "DomainError", "GraphConsistencyError", "GraphFormatError",
    "GraphParseError", "GraphRangeError", "GraphValidationError", "IsingPartError", "SolverRuntimeError",
    "PartitionScore", "brute_force_balanced_mincut", "cut_value", "imbalance", "score",
    "Graph", "density", "parse_gset", "read_gset",
    "BalanceCounter", "MinCutProblem", "candidate_energies_mincut", "coefficients_for",
    "default_coefficients", "global_hamiltonian", "local_field",
]
