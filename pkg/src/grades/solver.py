"""GraDes: gradient descent with hard thresholding.

Each iteration applies ``x <- H_s(x + phi^T (y - phi x) / gamma)``, which is
the gradient step ``x - 0.5 * grad f(x) / gamma`` written out. With
certified bounds at level 2s satisfying ``beta < 2 alpha`` and
``gamma = beta``, every step shrinks the objective by at least
``(beta - alpha) / alpha``.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import ProblemInstance, as_signal
from .errors import ContractError
from .rip import RipBounds, check_convergence_condition, reference_bound
from .threshold import hard_threshold

log = logging.getLogger(__name__)

DEFAULT_MAX_ITERS = 1000


class Status(str, enum.Enum):
    CONVERGED = "converged"
    ITERATION_CAP_REACHED = "iteration-cap-reached"
    CONDITION_VIOLATED = "condition-violated"


@dataclass(frozen=True)
class SolverConfig:
    """Settings for :func:`grades_solve`.

    ``bounds`` are the level-2s bounds. When given, ``max_iters`` defaults to
    ten times the predicted iteration count (or 1000 without a prediction).
    """

    sparsity: int
    gamma: float
    eps: float
    max_iters: Optional[int] = None
    bounds: Optional[RipBounds] = None

    def __post_init__(self):
        if int(self.sparsity) != self.sparsity or self.sparsity < 1:
            raise ContractError(f"sparsity must be a positive integer, got {self.sparsity!r}")
        if not self.gamma > 0:
            raise ContractError(f"gamma must be positive, got {self.gamma}")
        if not self.eps > 0:
            raise ContractError(f"eps must be positive, got {self.eps}")
        if self.max_iters is not None and (int(self.max_iters) != self.max_iters or self.max_iters < 1):
            raise ContractError(f"max_iters must be a positive integer, got {self.max_iters!r}")
        if self.bounds is not None and self.bounds.sparsity != 2 * self.sparsity:
            raise ContractError(
                f"bounds are for level {self.bounds.sparsity}, solver needs level {2 * self.sparsity}"
            )

    @classmethod
    def from_bounds(cls, bounds: RipBounds, eps: float, max_iters=None):
        """Use ``gamma = bounds.beta`` and ``sparsity = bounds.sparsity // 2``."""
        if bounds.sparsity % 2:
            raise ContractError(f"bounds level {bounds.sparsity} is odd; need level 2s")
        return cls(bounds.sparsity // 2, bounds.beta, eps, max_iters, bounds)

    @property
    def heuristic(self) -> bool:
        """True unless gamma equals a certified beta."""
        return self.bounds is None or not self.bounds.certified or self.gamma != self.bounds.beta


@dataclass(frozen=True, eq=False)
class SolveResult:
    x: np.ndarray
    trace: np.ndarray
    status: Status
    iterations: int
    reached_target: bool
    predicted_bound: Optional[int] = None
    heuristic: bool = True

    @property
    def final_objective(self) -> float:
        return float(self.trace[-1])

    def __eq__(self, other):
        if not isinstance(other, SolveResult):
            return NotImplemented
        return (
            np.array_equal(self.x, other.x)
            and np.array_equal(self.trace, other.trace)
            and self.status == other.status
            and self.iterations == other.iterations
            and self.reached_target == other.reached_target
            and self.predicted_bound == other.predicted_bound
            and self.heuristic == other.heuristic
        )

    __hash__ = None


def _check_dims(instance: ProblemInstance, x):
    x = as_signal(x)
    if x.shape[0] != instance.n:
        raise ContractError(f"len(x)={x.shape[0]} does not match phi cols={instance.n}")
    return x


def step(instance: ProblemInstance, x, gamma: float, s: int) -> np.ndarray:
    """One GraDes update ``H_s(x + phi^T (y - phi x) / gamma)``."""
    x = _check_dims(instance, x)
    if not gamma > 0:
        raise ContractError(f"gamma must be positive, got {gamma}")
    if np.count_nonzero(x) > s:
        raise ContractError(f"x has {np.count_nonzero(x)} nonzeros, more than s={s}")
    r = instance.y - instance.phi @ x
    return hard_threshold(x + (instance.phi.T @ r) / gamma, s)


def grades_solve(
    instance: ProblemInstance,
    config: SolverConfig,
    callback: Optional[Callable[[int, np.ndarray], None]] = None,
) -> SolveResult:
    """Run GraDes from ``x = 0`` until ``f(x) <= eps`` or the iteration cap.

    Parameters
    ----------
    instance : ProblemInstance
    config : SolverConfig
    callback : callable, optional
        Called as ``callback(t, x_t)`` for every iterate, including ``x_0``.

    Returns
    -------
    SolveResult
        ``status`` is ``CONDITION_VIOLATED`` whenever bounds are supplied and
        ``beta >= 2 alpha``; the run still proceeds, but no guarantee applies.
    """
    s = config.sparsity
    if s > instance.n:
        raise ContractError(f"sparsity {s} exceeds signal length {instance.n}")
    phi, y = instance.phi, instance.y
    y_norm_sq = float(y @ y)

    predicted = None
    violated = False
    if config.bounds is not None:
        violated = not check_convergence_condition(config.bounds)
        if violated:
            log.info("beta >= 2*alpha at level %d: running without guarantee", config.bounds.sparsity)
        elif config.bounds.certified:
            predicted = reference_bound(y_norm_sq, config.eps, config.bounds)
    max_iters = config.max_iters
    if max_iters is None:
        max_iters = 10 * max(predicted, 1) if predicted is not None else DEFAULT_MAX_ITERS

    x = np.zeros(instance.n)
    r = y.copy()
    f = y_norm_sq
    trace = [f]
    if callback is not None:
        callback(0, x)
    t = 0
    while f > config.eps and t < max_iters:
        x = hard_threshold(x + (phi.T @ r) / config.gamma, s)
        r = y - phi @ x
        f = float(r @ r)
        t += 1
        trace.append(f)
        if callback is not None:
            callback(t, x)

    reached = f <= config.eps
    if violated:
        status = Status.CONDITION_VIOLATED
    elif reached:
        status = Status.CONVERGED
    else:
        status = Status.ITERATION_CAP_REACHED
    return SolveResult(
        x=x,
        trace=np.array(trace),
        status=status,
        iterations=t,
        reached_target=reached,
        predicted_bound=predicted if not config.heuristic else None,
        heuristic=config.heuristic,
    )
