"""Data model for noise-free sparse recovery and the least-squares loss.

Signals and measurement matrices are plain float64 numpy arrays; the
validating constructors below are the single place where shape and
finiteness are enforced.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ContractError


def as_signal(x, name="x") -> np.ndarray:
    """Return ``x`` as a finite 1-D float64 array of length >= 1."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise ContractError(f"{name} must be a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractError(f"{name} contains NaN or Inf")
    return arr


def as_matrix(phi, name="phi") -> np.ndarray:
    """Return ``phi`` as a finite, C-contiguous 2-D float64 array."""
    arr = np.ascontiguousarray(phi, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ContractError(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractError(f"{name} contains NaN or Inf")
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """Measurements ``y = phi @ truth`` with optional ground truth and sparsity.

    Arrays are copied and marked read-only on construction, so an instance
    can be shared freely between threads.
    """

    phi: np.ndarray
    y: np.ndarray
    truth: Optional[np.ndarray] = None
    sparsity: Optional[int] = None

    def __post_init__(self):
        phi = as_matrix(self.phi)
        y = as_signal(self.y, "y")
        if y.shape[0] != phi.shape[0]:
            raise ContractError(f"len(y)={y.shape[0]} does not match phi rows={phi.shape[0]}")
        truth = None
        if self.truth is not None:
            truth = as_signal(self.truth, "truth")
            if truth.shape[0] != phi.shape[1]:
                raise ContractError(
                    f"len(truth)={truth.shape[0]} does not match phi cols={phi.shape[1]}"
                )
        sparsity = self.sparsity
        if sparsity is not None:
            if int(sparsity) != sparsity or sparsity < 1:
                raise ContractError(f"sparsity must be a positive integer, got {sparsity!r}")
            sparsity = int(sparsity)
            if truth is not None and np.count_nonzero(truth) > sparsity:
                raise ContractError(
                    f"truth has {np.count_nonzero(truth)} nonzeros, more than sparsity={sparsity}"
                )
        object.__setattr__(self, "phi", _frozen(phi))
        object.__setattr__(self, "y", _frozen(y))
        object.__setattr__(self, "truth", None if truth is None else _frozen(truth))
        object.__setattr__(self, "sparsity", sparsity)

    @property
    def m(self) -> int:
        return self.phi.shape[0]

    @property
    def n(self) -> int:
        return self.phi.shape[1]

    def __eq__(self, other):
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return (
            np.array_equal(self.phi, other.phi)
            and np.array_equal(self.y, other.y)
            and _opt_equal(self.truth, other.truth)
            and self.sparsity == other.sparsity
        )

    __hash__ = None


def _opt_equal(a, b):
    if a is None or b is None:
        return a is None and b is None
    return np.array_equal(a, b)


def _checked_x(instance: ProblemInstance, x) -> np.ndarray:
    x = as_signal(x)
    if x.shape[0] != instance.n:
        raise ContractError(f"len(x)={x.shape[0]} does not match phi cols={instance.n}")
    return x


def residual(instance: ProblemInstance, x) -> np.ndarray:
    """``y - phi @ x``."""
    x = _checked_x(instance, x)
    return instance.y - instance.phi @ x


def objective_value(instance: ProblemInstance, x) -> float:
    """Least-squares loss ``||y - phi x||^2``."""
    r = residual(instance, x)
    return float(r @ r)


def gradient(instance: ProblemInstance, x) -> np.ndarray:
    """Gradient of :func:`objective_value`, ``-2 phi^T (y - phi x)``."""
    r = residual(instance, x)
    return -2.0 * (instance.phi.T @ r)
