"""Hard thresholding onto the set of s-sparse vectors."""
from __future__ import annotations

import numpy as np

from .core import as_signal
from .errors import ContractError


def top_indices(x, s: int) -> np.ndarray:
    """Indices of the ``s`` largest-magnitude entries of ``x``.

    Ties are broken towards the lower index, so the result for ``s`` is
    always a prefix of the result for ``s + 1``.
    """
    order = np.argsort(-np.abs(x), kind="stable")
    return order[:s]


def hard_threshold(x, s: int) -> np.ndarray:
    """Keep the ``s`` largest entries of ``x`` in magnitude and zero the rest.

    Parameters
    ----------
    x : array_like
        Input vector.
    s : int
        Number of entries to keep, ``0 <= s <= len(x)``.

    Returns
    -------
    numpy.ndarray
        A new vector with at most ``s`` nonzeros. Kept entries keep their
        signed values; when magnitudes tie at the cut-off the lower index wins.
    """
    x = as_signal(x)
    if int(s) != s or s < 0:
        raise ContractError(f"s must be a nonnegative integer, got {s!r}")
    s = int(s)
    if s > x.shape[0]:
        raise ContractError(f"s={s} exceeds vector length {x.shape[0]}")
    out = np.zeros_like(x)
    keep = top_indices(x, s)
    out[keep] = x[keep]
    return out


def support(x) -> frozenset:
    """Set of indices where ``x`` is nonzero."""
    return frozenset(int(i) for i in np.flatnonzero(np.asarray(x)))
