"""Seeded random compressed-sensing instances.

Every generator draws from numpy's PCG64 bit generator seeded through a
``SeedSequence`` keyed by ``(seed, stream tag)``, and consumes a fixed
number of uniform doubles: normals come from Box-Muller and supports from
a partial Fisher-Yates shuffle. Outputs are therefore a pure function of
the arguments on every platform numpy supports.
"""
from __future__ import annotations

import enum

import numpy as np

from .core import ProblemInstance, as_matrix, as_signal
from .errors import ContractError

# stream tags keep the matrix, signal and support draws independent
MATRIX_STREAM = 0x6D6174
SIGNAL_STREAM = 0x736967
SUPPORT_STREAM = 0x737570


class Amplitude(str, enum.Enum):
    PLUS_MINUS_ONE = "plus-minus-one"
    STANDARD_NORMAL = "standard-normal"


def _check_seed(seed):
    if int(seed) != seed or not 0 <= seed < 2**64:
        raise ContractError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator for ``seed`` and an optional stream key."""
    ss = np.random.SeedSequence([_check_seed(seed), *stream])
    return np.random.Generator(np.random.PCG64(ss))


def standard_normals(rng: np.random.Generator, size: int) -> np.ndarray:
    """``size`` N(0, 1) variates via Box-Muller (two uniforms per pair)."""
    pairs = (size + 1) // 2
    u = rng.random(2 * pairs)
    radius = np.sqrt(-2.0 * np.log1p(-u[0::2]))  # 1 - u in (0, 1]
    angle = 2.0 * np.pi * u[1::2]
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:size]


def random_support(rng: np.random.Generator, n: int, s: int) -> np.ndarray:
    """Sorted uniformly random size-``s`` subset of ``range(n)``.

    Partial Fisher-Yates shuffle; consumes exactly ``s`` uniforms.
    """
    u = rng.random(s)
    idx = np.arange(n)
    for i in range(s):
        j = i + min(int(u[i] * (n - i)), n - i - 1)
        idx[i], idx[j] = idx[j], idx[i]
    return np.sort(idx[:s])


def gen_gaussian_matrix(m: int, n: int, seed: int) -> np.ndarray:
    """m x n matrix with i.i.d. N(0, 1/m) entries, filled row-major."""
    if m < 1 or n < 1:
        raise ContractError(f"need m, n >= 1, got m={m}, n={n}")
    rng = make_rng(seed, MATRIX_STREAM, m, n)
    return standard_normals(rng, m * n).reshape(m, n) / np.sqrt(m)


def gen_sparse_signal(n: int, s: int, seed: int, amplitude=Amplitude.STANDARD_NORMAL) -> np.ndarray:
    """Length-``n`` vector with exactly ``s`` nonzeros on a random support.

    ``PLUS_MINUS_ONE`` draws random signs; ``STANDARD_NORMAL`` draws
    N(0, 1) values (zero has probability zero but is nudged away if hit,
    so the support size is always exactly ``s``).
    """
    if not 1 <= s <= n:
        raise ContractError(f"need 1 <= s <= n, got s={s}, n={n}")
    amplitude = Amplitude(amplitude)
    rng = make_rng(seed, SIGNAL_STREAM, n, s)
    sup = random_support(rng, n, s)
    if amplitude is Amplitude.PLUS_MINUS_ONE:
        values = np.where(rng.random(s) < 0.5, -1.0, 1.0)
    else:
        values = standard_normals(rng, s)
        values[values == 0.0] = np.finfo(float).tiny
    x = np.zeros(n)
    x[sup] = values
    return x


def make_instance(phi, truth, sparsity: int) -> ProblemInstance:
    """Noise-free instance with ``y = phi @ truth``."""
    phi = as_matrix(phi)
    truth = as_signal(truth, "truth")
    if truth.shape[0] != phi.shape[1]:
        raise ContractError(f"len(truth)={truth.shape[0]} does not match phi cols={phi.shape[1]}")
    return ProblemInstance(phi=phi, y=phi @ truth, truth=truth, sparsity=sparsity)


def gaussian_instance(m: int, n: int, s: int, seed: int, amplitude=Amplitude.STANDARD_NORMAL):
    """Gaussian matrix plus an s-sparse signal, both drawn from ``seed``."""
    phi = gen_gaussian_matrix(m, n, seed)
    truth = gen_sparse_signal(n, s, seed, amplitude)
    return make_instance(phi, truth, s)
