"""
Haar-random coin states and Monte-Carlo localization averages.

A Haar-random pure state is a vector of independent standard complex
Gaussians divided by its norm; this has the same distribution as ``U|e>``
for Haar-random unitary ``U``.

Streams are split into blocks of ``BLOCK`` draws. Block ``b`` is generated
by NumPy's PCG64 seeded with ``SeedSequence(seed, spawn_key=(dim, b))``, so
draw ``i`` depends only on ``(seed, dim, i)``. Parallel averages assign whole
blocks to workers and combine block sums in block order, which makes the
estimate independent of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .limitmap import LimitMap

__all__ = [
    "RandomStateStream",
    "HaarEstimate",
    "sample_state",
    "average_probability",
    "haar_average_exact",
    "RNG_ALGORITHM",
    "BLOCK",
]

BLOCK = 1 << 16
RNG_ALGORITHM = "numpy.PCG64 via SeedSequence(seed, spawn_key=(dim, block)); block=65536"


def _block(seed: int, dim: int, b: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(dim, b))))
    z = rng.standard_normal((BLOCK, dim)) + 1j * rng.standard_normal((BLOCK, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


@dataclass
class RandomStateStream:
    """
    Deterministic stream of Haar-random unit vectors in ``C^dim``.

    Attributes
    ----------
    dim : int
    seed : int
    counter : int
        Number of states drawn so far.
    """

    dim: int
    seed: int = 0
    counter: int = 0
    _cache: tuple[int, np.ndarray] | None = field(default=None, repr=False, compare=False)

    def _get_block(self, b: int) -> np.ndarray:
        if self._cache is None or self._cache[0] != b:
            self._cache = (b, _block(self.seed, self.dim, b))
        return self._cache[1]

    def sample(self, n: int) -> np.ndarray:
        """Next ``n`` states as rows of an ``(n, dim)`` array."""
        out = np.empty((n, self.dim), dtype=complex)
        filled = 0
        while filled < n:
            b, off = divmod(self.counter, BLOCK)
            take = min(n - filled, BLOCK - off)
            out[filled:filled + take] = self._get_block(b)[off:off + take]
            filled += take
            self.counter += take
        return out


def sample_state(stream: RandomStateStream) -> np.ndarray:
    """Draw the next Haar-random unit vector from ``stream``."""
    return stream.sample(1)[0]


@dataclass
class HaarEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int


def average_probability(
    limit_map: LimitMap | np.ndarray, samples: int = 10**6, seed: int = 0, workers: int = 1
) -> HaarEstimate:
    """
    Monte-Carlo mean of ``|F psi|^2`` over Haar-random ``psi``.

    Parameters
    ----------
    limit_map : LimitMap or ndarray
    samples : int
        Number of draws (at least 10**4).
    seed : int
    workers : int
        Threads; the result does not depend on this.
    """
    if samples < 10**4:
        raise ValueError("average_probability needs at least 10**4 samples")
    m = limit_map.matrix if isinstance(limit_map, LimitMap) else np.asarray(limit_map, complex)
    dim = m.shape[1]
    n_blocks = -(-samples // BLOCK)

    def work(b):
        take = min(BLOCK, samples - b * BLOCK)
        psi = _block(seed, dim, b)[:take]
        amp = psi @ m.T
        p = np.einsum("ij,ij->i", amp.conj(), amp).real
        return math.fsum(p), math.fsum(p * p)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sums = list(pool.map(work, range(n_blocks)))
    else:
        sums = [work(b) for b in range(n_blocks)]
    s1 = math.fsum(s for s, _ in sums)
    s2 = math.fsum(q for _, q in sums)
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0) * samples / (samples - 1)
    return HaarEstimate(mean, math.sqrt(var / samples), samples, seed)


def haar_average_exact(limit_map: LimitMap | np.ndarray) -> float:
    """Exact Haar average ``tr(F^dagger F) / dim`` of ``|F psi|^2``."""
    m = limit_map.matrix if isinstance(limit_map, LimitMap) else np.asarray(limit_map, complex)
    return float(np.trace(m.conj().T @ m).real / m.shape[1])
