"""Steady-state solvers: analytic fixed-J, classical rate equation, full-space oracle."""

from .analytic import analytic_distribution, analytic_fixed_subspace
from .generator import RateGenerator, block_generator, build_generator, local_branching
from .oracle import MAX_ORACLE_QUBITS, full_space_oracle
from .steady import InitialBlockWeights, SteadyDistribution, closed_class_count, kernel_gap, solve_steady

__all__ = [
    "InitialBlockWeights", "MAX_ORACLE_QUBITS", "RateGenerator", "SteadyDistribution",
    "analytic_distribution", "analytic_fixed_subspace", "block_generator", "build_generator",
    "closed_class_count", "full_space_oracle", "kernel_gap", "local_branching", "solve_steady",
]
