"""Sparse recovery by gradient descent with hard thresholding (GraDes).

The convergence guarantee is stated in terms of generalized isometry
bounds ``alpha_2s, beta_2s``; see :mod:`grades.rip` for computing them.
"""
from ._backend import BACKEND
from .core import ProblemInstance, gradient, objective_value, residual
from .errors import BudgetExceededError, ConditionError, ContractError, GradesError
from .instances import Amplitude, gen_gaussian_matrix, gen_sparse_signal, make_instance
from .rip import (
    Exact,
    RipBounds,
    Sampled,
    check_convergence_condition,
    contraction_factor,
    delta_from_bounds,
    exact_rip_bounds,
    iteration_bound,
    sampled_rip_bounds,
)
from .solver import SolveResult, SolverConfig, Status, grades_solve, step
from .threshold import hard_threshold, support

__all__ = [
    "BACKEND",
    "Amplitude",
    "BudgetExceededError",
    "ConditionError",
    "ContractError",
    "Exact",
    "GradesError",
    "ProblemInstance",
    "RipBounds",
    "Sampled",
    "SolveResult",
    "SolverConfig",
    "Status",
    "check_convergence_condition",
    "contraction_factor",
    "delta_from_bounds",
    "exact_rip_bounds",
    "gen_gaussian_matrix",
    "gen_sparse_signal",
    "gradient",
    "grades_solve",
    "hard_threshold",
    "iteration_bound",
    "make_instance",
    "objective_value",
    "residual",
    "sampled_rip_bounds",
    "step",
    "support",
]
