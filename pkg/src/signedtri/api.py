"""scikit-learn style front end: configure, ``fit(stream)``, read fitted attributes.

Hyper-parameters live in ``__init__`` (so ``get_params``/``set_params`` and
``sklearn.base.clone`` work) and results are stored in trailing-underscore
attributes, e.g. ``HybridBalanceEstimator(eps=0.1).fit(stream).balance_``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .graph import SignedGraph
from .orchestrator import (
    ClassicalHints,
    Hints,
    WorkerPool,
    balance_classical,
    balance_hybrid,
    classical_count,
    exact_classical_hints,
    exact_count_hints,
    exact_hints,
    hybrid_count,
)
from .estimators import target_stream
from .stream import SignedEdgeStream, make_stream, to_stream

TARGETS = ("T0", "T1", "T2", "T3", "T")


def check_stream(X, n: int | None = None) -> SignedEdgeStream:
    """Coerce ``X`` to a :class:`SignedEdgeStream`.

    Accepts a stream, a :class:`SignedGraph` (canonical edge order) or an
    ``(m, 3)`` integer array of ``u, v, sign`` rows; ``n`` defaults to the
    largest vertex id plus one.
    """
    if isinstance(X, SignedEdgeStream):
        return X
    if isinstance(X, SignedGraph):
        return to_stream(X, None)
    arr = check_array(X, dtype=np.int64, ensure_min_samples=0)
    if arr.shape[1] != 3:
        raise ValueError(f"expected rows of (u, v, sign), got shape {arr.shape}")
    if arr.size and arr[:, :2].min() < 0:
        raise ValueError("vertex ids must be non-negative")
    if n is None:
        n = int(arr[:, :2].max()) + 1 if arr.size else 0
    return make_stream(n, [tuple(int(x) for x in row) for row in arr])


def check_rates(p_e_rate, p_v_rate) -> tuple[float, float]:
    for name, p in (("p_e_rate", p_e_rate), ("p_v_rate", p_v_rate)):
        if not 0.0 < p <= 1.0:
            raise ValueError(f"{name} must lie in (0, 1], got {p}")
    return float(p_e_rate), float(p_v_rate)


def _target_label(target) -> str:
    if isinstance(target, (int, np.integer)) and 0 <= target <= 3:
        return f"T{int(target)}"
    if target in TARGETS:
        return target
    raise ValueError(f"target must be one of {', '.join(TARGETS)} or 0..3, got {target!r}")


class _PoolMixin:
    def _pool(self) -> WorkerPool:
        return WorkerPool(light_workers=self.max_workers, heavy_workers=self.max_workers,
                          master_seed=self.master_seed, max_parallel=self.max_parallel,
                          downscale=self.downscale)


class HybridTriangleEstimator(_PoolMixin, BaseEstimator):
    """Sketch plus sampled-wedge estimate of one signed triangle count.

    ``hints`` is ``"exact"`` (computed from the input) or ``(m, t, delta_e)``.
    """

    def __init__(self, target="T1", eps=0.1, delta=0.1, k=None, hints="exact", master_seed=0,
                 max_workers=None, downscale=False, max_parallel=1):
        self.target = target
        self.eps = eps
        self.delta = delta
        self.k = k
        self.hints = hints
        self.master_seed = master_seed
        self.max_workers = max_workers
        self.downscale = downscale
        self.max_parallel = max_parallel

    def fit(self, X, y=None):
        s = check_stream(X)
        label = _target_label(self.target)
        t, mode = target_stream(s, label)
        if isinstance(self.hints, str) and self.hints == "exact":
            h, _ = exact_count_hints(s, label)
        else:
            h = Hints(*self.hints)
        self.report_ = hybrid_count(t, mode, self.eps, self.delta, h, self.master_seed, self._pool(),
                                    label, self.k)
        self.count_ = self.report_.combined
        self.k_ = self.report_.k
        return self


class ClassicalTriangleEstimator(_PoolMixin, BaseEstimator):
    """Median-of-means of the sampled-vertex/edge estimator for one count."""

    def __init__(self, target="T1", eps=0.1, delta=0.1, p_e_rate=0.7, p_v_rate=0.7, hints="exact",
                 master_seed=0, max_workers=None, downscale=False, max_parallel=1):
        self.target = target
        self.eps = eps
        self.delta = delta
        self.p_e_rate = p_e_rate
        self.p_v_rate = p_v_rate
        self.hints = hints
        self.master_seed = master_seed
        self.max_workers = max_workers
        self.downscale = downscale
        self.max_parallel = max_parallel

    def fit(self, X, y=None):
        s = check_stream(X)
        label = _target_label(self.target)
        rates = check_rates(self.p_e_rate, self.p_v_rate)
        if isinstance(self.hints, str) and self.hints == "exact":
            _, h = exact_count_hints(s, label)
        else:
            h = ClassicalHints(*self.hints)
        self.report_ = classical_count(s, label, self.eps, self.delta, rates, h, self.master_seed, self._pool())
        self.count_ = self.report_.estimate
        return self


class HybridBalanceEstimator(_PoolMixin, BaseEstimator):
    """Balance index from hybrid estimates of T1, T3 and the total count."""

    def __init__(self, eps=0.1, delta=0.1, hints="exact", master_seed=0, max_workers=None,
                 downscale=False, max_parallel=1):
        self.eps = eps
        self.delta = delta
        self.hints = hints
        self.master_seed = master_seed
        self.max_workers = max_workers
        self.downscale = downscale
        self.max_parallel = max_parallel

    def fit(self, X, y=None):
        s = check_stream(X)
        if isinstance(self.hints, str) and self.hints == "exact":
            h = exact_hints(s)
        else:
            h = Hints(*self.hints)
        self.result_ = balance_hybrid(s, self.eps, self.delta, h, self.master_seed, self._pool())
        self.balance_ = self.result_.estimate
        self.counts_ = {k: r.combined for k, r in self.result_.reports.items()}
        return self


class ClassicalBalanceEstimator(_PoolMixin, BaseEstimator):
    """Balance index from one family of sampled-vertex/edge runs."""

    def __init__(self, eps=0.1, delta=0.1, p_e_rate=0.7, p_v_rate=0.7, hints="exact", master_seed=0,
                 max_workers=None, downscale=False, max_parallel=1):
        self.eps = eps
        self.delta = delta
        self.p_e_rate = p_e_rate
        self.p_v_rate = p_v_rate
        self.hints = hints
        self.master_seed = master_seed
        self.max_workers = max_workers
        self.downscale = downscale
        self.max_parallel = max_parallel

    def fit(self, X, y=None):
        s = check_stream(X)
        rates = check_rates(self.p_e_rate, self.p_v_rate)
        if isinstance(self.hints, str) and self.hints == "exact":
            h = exact_classical_hints(s)
        else:
            h = ClassicalHints(*self.hints)
        self.report_ = balance_classical(s, self.eps, self.delta, rates, h, self.master_seed, self._pool())
        self.balance_ = self.report_.estimate
        return self


def fitted_value(est) -> float:
    """The headline number of a fitted estimator."""
    check_is_fitted(est)
    return est.balance_ if hasattr(est, "balance_") else est.count_
