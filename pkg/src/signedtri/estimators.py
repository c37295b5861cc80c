"""Single-run estimators for signed triangle counts.

Three subroutines, each a pure function of ``(stream, parameters, seed)``:

``t1_pure_classical``
    vertex/edge sampling with an explicit stored-edge table; the output is an
    unbiased estimate of T1 (or of every triangle type at once for balance)
``t1_heavy_classical``
    samples directed edge copies and weights each detected wedge by the
    probability that the sketch estimator would have lost it; its mean is
    ``T1_heavy * sqrt(k) / m**1.5`` and the caller rescales
``t1_light_quantum``
    drives a :class:`~signedtri.sketch.SketchState`; returns 0 or ``+-k*m``
    with mean ``T1_light``

The functions here are readable reference implementations.  The
``*_batch`` functions run many seeds through the numba kernels and produce
identical values; the orchestrator only uses those.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import UndefinedBalanceError
from .sampling import (
    clamp_probability,
    geometric_gap,
    hash_threshold,
    make_pairwise_hash,
    make_rng,
)
from .sketch import BOTTOM, SketchState
from .stream import (
    SignedEdgeStream,
    StreamMode,
    filter_negative,
    filter_positive,
    flip_stream,
    strip_signs,
)

PURE_CLASSICAL = "pure-classical"
HEAVY = "heavy"
LIGHT = "light"


@dataclass(frozen=True)
class RawRun:
    value: float
    kind: str
    seed: int


@dataclass
class EstimatorConfig:
    """Error targets, threshold and parameter hints for one estimation job."""

    epsilon: float = 0.1
    delta: float = 0.1
    k: int | None = None
    m_hint: float | None = None
    t_hint: float | None = None
    delta_e_hint: float | None = None
    p_e_rate: float = 1.0
    p_v_rate: float = 1.0
    mode: StreamMode = StreamMode.SIGNED_T1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("epsilon", "delta"):
            val = getattr(self, name)
            if not 0.0 < val <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {val}")
        for name in ("p_e_rate", "p_v_rate"):
            val = getattr(self, name)
            if not 0.0 < val <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {val}")
        for name in ("m_hint", "t_hint", "delta_e_hint"):
            val = getattr(self, name)
            if val is not None and val <= 0:
                raise ValueError(f"{name} must be positive, got {val}")

    def clamped_k(self, m: int) -> int:
        k = 1 if self.k is None else int(self.k)
        return max(1, min(k, max(1, int(m))))


def _check_rates(p_e_rate, p_v_rate):
    for name, p in (("p_e_rate", p_e_rate), ("p_v_rate", p_v_rate)):
        if not 0.0 < p <= 1.0:
            raise ValueError(f"{name} must lie in (0, 1], got {p}")


def _check_k(k, m):
    if m > 0 and not 1 <= k <= m:
        raise ValueError(f"k must lie in [1, m={m}], got {k}")


def heavy_rates(k: int, m: int) -> tuple[float, float]:
    """Vertex and index sampling rates ``(1/sqrt(km), sqrt(k/m))``, clamped."""
    return clamp_probability(1.0 / math.sqrt(k * m)), clamp_probability(math.sqrt(k / m))


def heavy_weights(k: int, size: int) -> np.ndarray:
    """``w[e] = 1 - (1 - 1/k)**e`` for ``e = 0..size-1`` (with ``0**0 = 1``)."""
    q = 1.0 - 1.0 / k
    return np.array([1.0 - q ** e for e in range(size)], dtype=np.float64)


def firing_log_q(k: int) -> float:
    """``log(1 - 1/k)``, or ``-inf`` when every edge fires (k = 1)."""
    q = 1.0 - 1.0 / k
    return math.log(q) if q > 0 else -math.inf


def heavy_scale(k: int, m: int) -> float:
    """Factor turning the mean heavy output into an estimate of the heavy count."""
    return m ** 1.5 / math.sqrt(k)


# ---------------------------------------------------------------- classical

def _classical_pass(s: SignedEdgeStream, p_e_rate, p_v_rate, seed):
    _check_rates(p_e_rate, p_v_rate)
    rng = make_rng(seed)
    hv = make_pairwise_hash(p_v_rate, max(s.n, 1), rng)
    inc = 1.0 / (p_v_rate * p_e_rate * p_e_rate)
    store: dict = {}
    nbrs: dict = {}
    t1 = bal = unbal = 0.0
    for v, w, sig in s:
        common = nbrs.get(v, set()) & nbrs.get(w, set())
        for u in sorted(common):
            if not hv(u):
                continue
            a = store[(min(u, v), max(u, v))]
            b = store[(min(u, w), max(u, w))]
            if sig > 0:
                if a < 0 and b < 0:
                    t1 += inc
                if a == b:
                    bal += inc
                else:
                    unbal += inc
            else:
                if a != b:
                    t1 += inc
                    bal += inc
                else:
                    unbal += inc
        if rng.random_sample() < p_e_rate and (hv(v) or hv(w)):
            store[(v, w)] = sig
            nbrs.setdefault(v, set()).add(w)
            nbrs.setdefault(w, set()).add(v)
    return t1, bal, unbal


def t1_pure_classical(s: SignedEdgeStream, p_e_rate: float, p_v_rate: float, seed: int) -> RawRun:
    t1, _, _ = _classical_pass(s, p_e_rate, p_v_rate, seed)
    return RawRun(t1, PURE_CLASSICAL, seed)


def count_all_pure_classical(s: SignedEdgeStream, p_e_rate, p_v_rate, seed) -> RawRun:
    """Unsigned triangle estimate (signs ignored)."""
    _, bal, unbal = _classical_pass(s, p_e_rate, p_v_rate, seed)
    return RawRun(bal + unbal, PURE_CLASSICAL, seed)


def tj_stream(s: SignedEdgeStream, j: int) -> tuple[SignedEdgeStream, StreamMode]:
    """Stream transform and mode whose T1 / unsigned count equals ``T_j`` of ``s``."""
    if j == 1:
        return s, StreamMode.SIGNED_T1
    if j == 2:
        return flip_stream(s), StreamMode.SIGNED_T1
    if j == 3:
        return filter_positive(s), StreamMode.UNSIGNED_ALL
    if j == 0:
        return strip_signs(filter_negative(s)), StreamMode.UNSIGNED_ALL
    raise ValueError(f"triangle type must be 0, 1, 2 or 3, got {j}")


def target_stream(s: SignedEdgeStream, target) -> tuple[SignedEdgeStream, StreamMode]:
    """Like :func:`tj_stream`, also accepting ``"T"`` for the total count."""
    if target in ("T", "total"):
        return strip_signs(s), StreamMode.UNSIGNED_ALL
    if isinstance(target, str):
        if len(target) == 2 and target[0] == "T" and target[1] in "0123":
            return tj_stream(s, int(target[1]))
        raise ValueError(f"unknown target {target!r}")
    return tj_stream(s, target)


def tj_pure_classical(s: SignedEdgeStream, j: int, rates, seed: int) -> RawRun:
    p_e_rate, p_v_rate = rates
    t, mode = tj_stream(s, j)
    if mode is StreamMode.SIGNED_T1:
        return t1_pure_classical(t, p_e_rate, p_v_rate, seed)
    return count_all_pure_classical(t, p_e_rate, p_v_rate, seed)


def balance_components(s: SignedEdgeStream, p_e_rate, p_v_rate, seed) -> tuple[float, float]:
    """``(R_bal, R_unbal)`` from one classical pass."""
    _, bal, unbal = _classical_pass(s, p_e_rate, p_v_rate, seed)
    return bal, unbal


def balance_pure_classical(s: SignedEdgeStream, p_e_rate: float, p_v_rate: float, seed: int) -> float:
    bal, unbal = balance_components(s, p_e_rate, p_v_rate, seed)
    if bal + unbal == 0:
        raise UndefinedBalanceError("no triangle was sampled; balance ratio undefined")
    return bal / (bal + unbal)


# -------------------------------------------------------------------- heavy

def _heavy(s: SignedEdgeStream, k: int, seed: int, signed: bool, m: int | None = None) -> RawRun:
    m = s.m if m is None else int(m)
    if s.m == 0:
        return RawRun(0.0, HEAVY, seed)
    _check_k(k, m)
    p_v, p_i = heavy_rates(k, m)
    weights = heavy_weights(k, 2 * s.m + 1)
    rng = make_rng(seed)
    hv = make_pairwise_hash(p_v, max(s.n, 1), rng)
    stored: dict = {}      # (head, tail) -> sign
    dplus: dict = {}
    dminus: dict = {}
    heads_of: dict = {}    # tail -> set of heads
    res = 0.0
    for v, w, sig in s:
        for u in sorted(heads_of.get(v, set()) & heads_of.get(w, set())):
            a = stored[(u, v)]
            b = stored[(u, w)]
            full_v = dplus[(u, v)] + dminus[(u, v)]
            full_w = dplus[(u, w)] + dminus[(u, w)]
            if not signed:
                res += weights[full_v + full_w]
            elif sig > 0:
                if a < 0 and b < 0:
                    res += weights[full_v + full_w]
            elif a > 0 and b < 0:
                # a positive arm only dies on negative neighbours
                res += weights[dminus[(u, v)] + full_w]
            elif a < 0 and b > 0:
                res += weights[full_v + dminus[(u, w)]]
        for y in (v, w):
            for x in heads_of.get(y, ()):
                d = dplus if sig > 0 else dminus
                d[(x, y)] += 1
        # the index bit of a copy is only drawn when its head is sampled
        for head, tail in ((v, w), (w, v)):
            if hv(head) and rng.random_sample() < p_i:
                stored[(head, tail)] = sig
                dplus[(head, tail)] = 0
                dminus[(head, tail)] = 0
                heads_of.setdefault(tail, set()).add(head)
    return RawRun(float(res), HEAVY, seed)


def t1_heavy_classical(s: SignedEdgeStream, k: int, seed: int, m: int | None = None) -> RawRun:
    return _heavy(s, k, seed, True, m)


def t_all_heavy(s: SignedEdgeStream, k: int, seed: int, m: int | None = None) -> RawRun:
    return _heavy(s, k, seed, False, m)


# -------------------------------------------------------------------- light

def _light(s: SignedEdgeStream, k: int, seed: int, mode: StreamMode, m: int | None = None,
           on_step=None) -> RawRun:
    m = s.m if m is None else int(m)
    if s.m == 0:
        return RawRun(0.0, LIGHT, seed)
    _check_k(k, m)
    rng = make_rng(seed)
    sk = SketchState(m, rng, mode)
    signed = mode is StreamMode.SIGNED_T1
    scale = float(k) * float(m)
    log_q = firing_log_q(k)
    # the 1/k firing bits are drawn by skipping ahead to the next firing edge
    fire = geometric_gap(rng.random_sample() if log_q != -math.inf else 0.0, log_q, s.m)
    for ell, (v, w, sig) in enumerate(s):
        g = ell == fire
        if g:
            gap = geometric_gap(rng.random_sample() if log_q != -math.inf else 0.0, log_q, s.m)
            fire = ell + 1 + gap
            heads = sorted(sk.heads_at(v) | sk.heads_at(w))
            for u in heads:
                if not signed:
                    pairs = (((u, v, 1), (u, w, 1)),)
                elif sig > 0:
                    pairs = (((u, v, -1), (u, w, -1)),)
                else:
                    pairs = (((u, v, 1), (u, w, -1)), ((u, v, -1), (u, w, 1)))
                for x, y in pairs:
                    r = sk.query_pair(x, y)
                    if r is not BOTTOM:
                        return RawRun(r * scale, LIGHT, seed)
        sk.insert((v, w, sig), ell)
        if on_step is not None:
            on_step(ell, bool(g), sk)
    return RawRun(0.0, LIGHT, seed)


def t1_light_quantum(s: SignedEdgeStream, k: int, seed: int, m: int | None = None,
                     on_step=None) -> RawRun:
    """Sketch estimator for T1.

    ``on_step(ell, g, sketch)`` is called after each insert, which lets tests
    inspect the surviving items; it is never used by the orchestrator.
    """
    return _light(s, k, seed, StreamMode.SIGNED_T1, m, on_step)


def t_all_light(s: SignedEdgeStream, k: int, seed: int, m: int | None = None, on_step=None) -> RawRun:
    return _light(s, k, seed, StreamMode.UNSIGNED_ALL, m, on_step)


# ------------------------------------------------------------- batch (fast)

def _seeds(seeds) -> np.ndarray:
    a = np.asarray(seeds, dtype=np.int64)
    if a.ndim != 1:
        raise ValueError("seeds must be one-dimensional")
    if a.size and (a.min() < 0 or a.max() > 0xFFFFFFFF):
        raise ValueError("seeds must be 32-bit unsigned values")
    return a


def light_batch(s: SignedEdgeStream, k: int, seeds, mode: StreamMode, m: int | None = None) -> np.ndarray:
    seeds = _seeds(seeds)
    m = s.m if m is None else int(m)
    if s.m == 0:
        return np.zeros(seeds.size)
    _check_k(k, m)
    if s.m > m:
        raise ValueError(f"stream has {s.m} edges but the sketch budget is {m}")
    us, vs, ss = s.to_arrays()
    return _kernels.light_batch(us, vs, ss, max(s.n, 1), int(k), m, firing_log_q(k), seeds,
                                mode is StreamMode.SIGNED_T1)


def heavy_batch(s: SignedEdgeStream, k: int, seeds, mode: StreamMode, m: int | None = None) -> np.ndarray:
    seeds = _seeds(seeds)
    m = s.m if m is None else int(m)
    if s.m == 0:
        return np.zeros(seeds.size)
    _check_k(k, m)
    p_v, p_i = heavy_rates(k, m)
    us, vs, ss = s.to_arrays()
    return _kernels.heavy_batch(us, vs, ss, max(s.n, 1), hash_threshold(p_v), p_i,
                                heavy_weights(k, 2 * s.m + 1), seeds,
                                mode is StreamMode.SIGNED_T1)


def classical_batch(s: SignedEdgeStream, p_e_rate: float, p_v_rate: float, seeds) -> np.ndarray:
    """Rows of ``(t1, balanced, unbalanced)`` per seed."""
    _check_rates(p_e_rate, p_v_rate)
    seeds = _seeds(seeds)
    if s.m == 0:
        return np.zeros((seeds.size, 3))
    us, vs, ss = s.to_arrays()
    inc = 1.0 / (p_v_rate * p_e_rate * p_e_rate)
    return _kernels.classical_batch(us, vs, ss, max(s.n, 1), hash_threshold(p_v_rate),
                                    float(p_e_rate), inc, seeds)
