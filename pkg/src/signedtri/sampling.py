"""Seeded randomness and the hash families used by the estimators.

Every estimator run owns one ``numpy.random.RandomState`` seeded with a
32-bit worker seed.  The compiled kernels in :mod:`signedtri._kernels` seed
numba's Mersenne Twister with the same value, which reproduces the NumPy
stream exactly, so a run is bit-identical on either backend as long as the
draw order below is respected.

Draw order per run:

* pairwise hash over vertices: two uniforms (``a`` then ``b``)
* per-edge fully independent bits: one uniform per query, in stream order,
  drawn only when the bit can influence the run
* a Bernoulli(p) bit for every edge may instead be produced by geometric
  skipping (:func:`geometric_gap`): one uniform gives the number of failures
  before the next success, so only the successes cost a draw
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import math

import numpy as np

# Prime modulus for the vertex hash; vertex ids must be below it.
FIELD_PRIME = 2**31 - 1

_MASK32 = 0xFFFFFFFF
_GOLDEN32 = 0x9E3779B9


def _fmix32(h: int) -> int:
    # murmur3 finalizer, a bijection on 32-bit words
    h ^= h >> 16
    h = (h * 0x85EBCA6B) & _MASK32
    h ^= h >> 13
    h = (h * 0xC2B2AE35) & _MASK32
    h ^= h >> 16
    return h


def split_seed(master: int, worker_index: int) -> int:
    """Derive the 32-bit seed of worker ``worker_index`` from ``master``.

    Injective in ``worker_index`` for a fixed master (for indices below 2**32):
    a per-master offset, an odd-multiplier step and the fmix32 bijection
    compose to a permutation of the 32-bit words.
    """
    if worker_index < 0 or worker_index > _MASK32:
        raise ValueError(f"worker_index out of range: {worker_index}")
    return _fmix32((_master_base(master) + worker_index * _GOLDEN32) & _MASK32)


@lru_cache(maxsize=64)
def _master_base(master: int) -> int:
    if master < 0:
        raise ValueError("master seed must be non-negative")
    return int(np.random.SeedSequence(master).generate_state(1, dtype=np.uint32)[0])


def worker_seeds(master: int, start: int, count: int) -> np.ndarray:
    """Vectorized :func:`split_seed` for workers ``start .. start+count-1`` (int64)."""
    if start < 0 or start + count - 1 > _MASK32:
        raise ValueError("worker indices out of range")
    idx = np.arange(start, start + count, dtype=np.uint64)
    h = (np.uint64(_master_base(master)) + idx * np.uint64(_GOLDEN32)) & np.uint64(_MASK32)
    h ^= h >> np.uint64(16)
    h = (h * np.uint64(0x85EBCA6B)) & np.uint64(_MASK32)
    h ^= h >> np.uint64(13)
    h = (h * np.uint64(0xC2B2AE35)) & np.uint64(_MASK32)
    h ^= h >> np.uint64(16)
    return h.astype(np.int64)


def make_rng(seed: int) -> np.random.RandomState:
    return np.random.RandomState(seed)


def clamp_probability(p: float) -> float:
    """Clamp a rate formula (e.g. ``1/sqrt(k*m)``) into ``[0, 1]``."""
    return min(1.0, max(0.0, float(p)))


def hash_threshold(p: float) -> int:
    return int(round(clamp_probability(p) * FIELD_PRIME))


@dataclass(frozen=True)
class PairwiseHash:
    """2-universal 0/1 hash ``h(u) = [(a*u + b) mod P < t]``.

    With ``a, b`` uniform over the field, ``Pr[h(u)=1] = t/P`` for every ``u``
    and the values at two distinct vertices are independent.
    """

    p: float
    n: int
    a: int
    b: int
    threshold: int = field(repr=False)

    def __call__(self, u: int) -> int:
        return int((self.a * u + self.b) % FIELD_PRIME < self.threshold)

    def table(self) -> np.ndarray:
        """Evaluate on the whole domain ``0..n-1``."""
        u = np.arange(self.n, dtype=np.int64)
        return ((self.a * u + self.b) % FIELD_PRIME < self.threshold).astype(np.int8)


def make_pairwise_hash(p: float, n: int, seed) -> PairwiseHash:
    """Draw a pairwise independent hash with success probability ``p`` on ``[n]``.

    ``seed`` is an int or an existing ``RandomState`` (whose stream is
    advanced by exactly two draws).
    """
    if n < 1 or n >= FIELD_PRIME:
        raise ValueError(f"domain size must be in [1, {FIELD_PRIME}), got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    rng = seed if isinstance(seed, np.random.RandomState) else make_rng(seed)
    a = int(rng.random_sample() * FIELD_PRIME)
    b = int(rng.random_sample() * FIELD_PRIME)
    return PairwiseHash(p=p, n=n, a=a, b=b, threshold=hash_threshold(p))


class BernoulliSource:
    """Fully independent Bernoulli(p) bits from a seeded generator."""

    def __init__(self, p: float, seed):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability out of range: {p}")
        self.p = float(p)
        self.rng = seed if isinstance(seed, np.random.RandomState) else make_rng(seed)

    def draw(self) -> int:
        return int(self.rng.random_sample() < self.p)

    def draws(self, size: int) -> np.ndarray:
        return (self.rng.random_sample(size) < self.p).astype(np.int8)


def geometric_gap(u: float, log_q: float, limit: int) -> int:
    """Failures before the next success of a Bernoulli(1 - q) sequence.

    ``u`` is a uniform draw in [0, 1) and ``log_q = log(q)``; ``log_q = -inf``
    (success probability 1) yields 0.  The result is capped at ``limit``.
    """
    if log_q == -math.inf:
        return 0
    x = math.floor(math.log(1.0 - u) / log_q)
    return limit if x >= limit else int(x)


def bernoulli_draw(src: BernoulliSource) -> int:
    return src.draw()
