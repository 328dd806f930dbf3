"""Pure-Python/numpy scan of Gram submatrix spectra.

Mirrors the compiled ``grades._kernels`` module; used when the extension
is not built or when ``GRADES_BACKEND=python``.
"""
from itertools import combinations, islice

import numpy as np

_CHUNK = 8192


def _batch(gram, supports):
    sub = gram[supports[:, :, None], supports[:, None, :]]
    ev = np.linalg.eigvalsh(sub)
    return ev[:, 0], ev[:, -1]


def lex_extremes(gram, s):
    """Scan every size-``s`` column subset in lexicographic order.

    Returns ``(alpha, beta, alpha_support, beta_support, count)``; on ties
    the first support in lexicographic order is reported.
    """
    gram = np.ascontiguousarray(gram, dtype=np.float64)
    n = gram.shape[0]
    if s < 1 or s > n:
        raise ValueError("need 1 <= s <= n")
    alpha, beta = np.inf, -np.inf
    amin = amax = None
    count = 0
    combos = combinations(range(n), s)
    while True:
        flat = np.fromiter(
            (i for c in islice(combos, _CHUNK) for i in c), dtype=np.intp
        )
        if flat.size == 0:
            break
        chunk = flat.reshape(-1, s)
        lo, hi = _batch(gram, chunk)
        k = int(np.argmin(lo))
        if lo[k] < alpha:
            alpha, amin = float(lo[k]), chunk[k].copy()
        k = int(np.argmax(hi))
        if hi[k] > beta:
            beta, amax = float(hi[k]), chunk[k].copy()
        count += chunk.shape[0]
    return alpha, beta, amin, amax, count


def support_extremes(gram, supports):
    """Extremal eigenvalues over the given rows of ``supports`` (shape T x s)."""
    gram = np.ascontiguousarray(gram, dtype=np.float64)
    supports = np.ascontiguousarray(supports, dtype=np.intp)
    if supports.ndim != 2 or supports.shape[0] < 1 or supports.shape[1] < 1:
        raise ValueError("need at least one non-empty support")
    alpha, beta = np.inf, -np.inf
    tmin = tmax = 0
    for start in range(0, supports.shape[0], _CHUNK):
        lo, hi = _batch(gram, supports[start:start + _CHUNK])
        k = int(np.argmin(lo))
        if lo[k] < alpha:
            alpha, tmin = float(lo[k]), start + k
        k = int(np.argmax(hi))
        if hi[k] > beta:
            beta, tmax = float(hi[k]), start + k
    return alpha, beta, supports[tmin].copy(), supports[tmax].copy(), supports.shape[0]
