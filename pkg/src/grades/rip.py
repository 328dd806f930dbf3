"""Generalized restricted-isometry bounds and the GraDes iteration bound.

For a matrix ``phi`` and sparsity ``s`` the bounds are constants
``alpha <= beta`` with::

    alpha * ||x||^2 <= ||phi x||^2 <= beta * ||x||^2   for every s-sparse x.

The tightest such constants are the extreme eigenvalues of the Gram
submatrices ``phi_S^T phi_S`` over all ``|S| = s``. :func:`exact_rip_bounds`
enumerates every support; :func:`sampled_rip_bounds` looks at a random
subset of supports and therefore returns an *inner* estimate: its alpha can
only be too large and its beta too small. Sampled bounds certify nothing.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .core import as_matrix
from .errors import BudgetExceededError, ConditionError, ContractError
from .instances import SUPPORT_STREAM, make_rng, random_support

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class Exact:
    """Bounds obtained by enumerating every support."""

    certified = True


@dataclass(frozen=True)
class Sampled:
    """Bounds from ``trials`` random supports drawn with ``seed``."""

    trials: int
    seed: int
    certified = False


@dataclass(frozen=True)
class RipBounds:
    alpha: float
    beta: float
    sparsity: int
    provenance: object = Exact()

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ContractError("alpha and beta must be finite")
        if not 0 < self.alpha <= self.beta:
            raise ContractError(f"need 0 < alpha <= beta, got alpha={self.alpha}, beta={self.beta}")
        if int(self.sparsity) != self.sparsity or self.sparsity < 1:
            raise ContractError(f"sparsity must be a positive integer, got {self.sparsity!r}")
        if not isinstance(self.provenance, (Exact, Sampled)):
            raise ContractError(f"unknown provenance {self.provenance!r}")

    @property
    def certified(self) -> bool:
        return self.provenance.certified


def _check_level(phi, s):
    if int(s) != s or not 1 <= s <= phi.shape[1]:
        raise ContractError(f"need 1 <= s <= {phi.shape[1]} (number of columns), got s={s}")
    return int(s)


def _as_bounds(alpha, beta, s, provenance):
    if alpha <= 0.0:
        raise ContractError(
            f"some {s}-column submatrix is rank deficient (smallest eigenvalue {alpha:.3g}); "
            "no positive lower bound exists"
        )
    return RipBounds(float(alpha), float(beta), s, provenance)


def gram(phi) -> np.ndarray:
    phi = as_matrix(phi)
    return np.ascontiguousarray(phi.T @ phi)


def extremal_supports(phi, s: int, budget: int = DEFAULT_BUDGET):
    """Exhaustive scan returning ``(alpha, beta, alpha_support, beta_support)``.

    The supports are the first, in lexicographic order, at which the extreme
    eigenvalues occur; embedding the matching eigenvector on them gives a
    probe that attains the bound.
    """
    phi = as_matrix(phi)
    s = _check_level(phi, s)
    n_supports = math.comb(phi.shape[1], s)
    if n_supports > budget:
        raise BudgetExceededError(n_supports, budget)
    alpha, beta, amin, amax, _ = _backend.lex_extremes(gram(phi), s)
    return float(alpha), float(beta), np.asarray(amin), np.asarray(amax)


def exact_rip_bounds(phi, s: int, budget: int = DEFAULT_BUDGET) -> RipBounds:
    """Tightest ``(alpha, beta)`` at level ``s`` by full enumeration.

    Raises
    ------
    BudgetExceededError
        If ``binomial(n, s)`` exceeds ``budget``.
    ContractError
        If ``s`` is out of range or some submatrix is singular.
    """
    alpha, beta, _, _ = extremal_supports(phi, s, budget)
    return _as_bounds(alpha, beta, int(s), Exact())


def sample_supports(n: int, s: int, trials: int, seed: int) -> np.ndarray:
    """``trials`` x ``s`` array of random supports, drawn with replacement.

    Row ``t`` depends only on ``(seed, t)``, so any partition of the trials
    across workers reproduces the same rows.
    """
    rows = np.empty((trials, s), dtype=np.intp)
    for t in range(trials):
        rows[t] = random_support(make_rng(seed, SUPPORT_STREAM, t), n, s)
    return rows


def sampled_rip_bounds(phi, s: int, trials: int, seed: int) -> RipBounds:
    """Inner estimate of ``(alpha, beta)`` from ``trials`` random supports.

    The returned alpha is never below the true alpha and the returned beta
    never above the true beta. Use these numbers as a heuristic only.
    """
    phi = as_matrix(phi)
    s = _check_level(phi, s)
    if int(trials) != trials or trials < 1:
        raise ContractError(f"trials must be a positive integer, got {trials!r}")
    supports = sample_supports(phi.shape[1], s, int(trials), seed)
    alpha, beta, _, _, _ = _backend.support_extremes(gram(phi), supports)
    return _as_bounds(alpha, beta, s, Sampled(int(trials), int(seed)))


def delta_from_bounds(bounds: RipBounds) -> float:
    """Classical isometry constant: smallest delta with 1-delta <= alpha, beta <= 1+delta."""
    return max(1.0 - bounds.alpha, bounds.beta - 1.0, 0.0)


def check_convergence_condition(bounds: RipBounds) -> bool:
    """True iff ``beta < 2 * alpha``."""
    return bounds.beta < 2.0 * bounds.alpha


def contraction_factor(bounds: RipBounds) -> float:
    """Per-iteration objective ratio ``(beta - alpha) / alpha`` guaranteed when gamma = beta."""
    return (bounds.beta - bounds.alpha) / bounds.alpha


def iteration_bound(y_norm_sq: float, eps: float, bounds: RipBounds) -> int:
    """Iterations after which GraDes with gamma = beta reaches ``f(x) <= eps``.

    ``ceil(log(y_norm_sq / eps) / log(alpha / (beta - alpha)))``, clamped at 0.
    For ``beta == alpha`` the log base diverges; one step suffices and 1 is
    returned (with a warning) unless ``eps >= y_norm_sq``.

    Raises
    ------
    ConditionError
        If ``beta >= 2 * alpha``.
    """
    if not y_norm_sq > 0 or not eps > 0:
        raise ContractError(f"y_norm_sq and eps must be positive, got {y_norm_sq}, {eps}")
    if not check_convergence_condition(bounds):
        raise ConditionError(
            f"beta={bounds.beta:.6g} is not below 2*alpha={2 * bounds.alpha:.6g}; "
            "no iteration bound exists"
        )
    if eps >= y_norm_sq:
        return 0
    if bounds.beta == bounds.alpha:
        warnings.warn("alpha == beta: perfect isometry on the support set, one step suffices",
                      stacklevel=2)
        return 1
    ratio = math.log(y_norm_sq / eps) / math.log(bounds.alpha / (bounds.beta - bounds.alpha))
    return max(0, math.ceil(ratio))


def reference_bound(y_norm_sq: float, eps: float, bounds: RipBounds) -> Optional[int]:
    """:func:`iteration_bound`, or None when it does not exist."""
    if not check_convergence_condition(bounds) or not y_norm_sq > 0:
        return None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return iteration_bound(y_norm_sq, eps, bounds)
