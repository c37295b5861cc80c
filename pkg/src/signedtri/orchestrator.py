"""Median-of-means reduction, hybrid combiners and the worker harness.

A job is a list of :class:`Task` objects.  Each task is a batch of
independent workers running one estimator on one (transformed) stream; a
worker is fully described by its global index, from which its seed is
derived with :func:`~signedtri.sampling.split_seed`.  Workers exchange no
state: the harness hands each chunk of seeds to a compiled kernel and
collects the scalar outputs in index order, so the reduction is the same
whether chunks run serially or concurrently.
"""
from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import estimators as est
from .analytics import ClassicalPlan, Plan, classical_plan, n_delta, repetition_plan
from .graph import UndefinedBalanceError, count_triangles_exact, graph_params
from .sampling import worker_seeds
from .stream import SignedEdgeStream, StreamMode, filter_positive, strip_signs

log = logging.getLogger(__name__)


class InfeasiblePlanError(RuntimeError):
    """The plan needs more workers than the pool has and downscaling is off."""


class WorkerError(RuntimeError):
    def __init__(self, index: int, seed: int, cause: BaseException):
        super().__init__(f"worker {index} (seed {seed}) failed: {cause!r}")
        self.index = index
        self.seed = seed
        self.cause = cause


class BalanceAnomalyError(UndefinedBalanceError):
    """The estimated denominator of a balance ratio is not positive."""

    def __init__(self, message: str, reports=None):
        super().__init__(message)
        self.reports = reports


def median_of_means(values, bucket_size: int, buckets: int) -> float:
    """Mean of each consecutive bucket, then the lower median of the means."""
    values = np.asarray(values, dtype=np.float64)
    if buckets < 1 or bucket_size < 1:
        raise ValueError("bucket_size and buckets must be at least 1")
    if values.size != bucket_size * buckets:
        raise ValueError(f"expected {bucket_size * buckets} values, got {values.size}")
    means = np.sort(values.reshape(buckets, bucket_size).mean(axis=1))
    return float(means[(buckets - 1) // 2])


# ------------------------------------------------------------------ harness

@dataclass(frozen=True)
class Task:
    """``count`` workers with global indices ``start .. start+count-1``."""

    kind: str                  # light | heavy | pure-classical
    stream: SignedEdgeStream
    start: int
    count: int
    mode: StreamMode = StreamMode.SIGNED_T1
    k: int = 1
    m: int = 0
    p_e: float = 1.0
    p_v: float = 1.0


def _run_seeds(task: Task, seeds: np.ndarray) -> np.ndarray:
    if task.kind == est.LIGHT:
        return est.light_batch(task.stream, task.k, seeds, task.mode, task.m)
    if task.kind == est.HEAVY:
        return est.heavy_batch(task.stream, task.k, seeds, task.mode, task.m)
    if task.kind == est.PURE_CLASSICAL:
        return est.classical_batch(task.stream, task.p_e, task.p_v, seeds)
    raise ValueError(f"unknown worker kind {task.kind!r}")


def _run_chunk(task: Task, master: int, start: int, count: int) -> np.ndarray:
    seeds = worker_seeds(master, start, count)
    try:
        return _run_seeds(task, seeds)
    except Exception:
        # locate the first failing worker so it can be replayed alone
        for i, sd in enumerate(seeds):
            try:
                _run_seeds(task, seeds[i:i + 1])
            except Exception as exc:
                raise WorkerError(start + i, int(sd), exc) from exc
        raise


@dataclass
class WorkerPool:
    """Simulated processors; ``None`` worker counts mean "as many as planned".

    ``light_workers``/``heavy_workers`` bound the repetitions of each side of
    one target; when a plan needs more, the job either fails or, with
    ``downscale=True``, is shrunk to fit and flagged in the report.
    """

    light_workers: int | None = None
    heavy_workers: int | None = None
    master_seed: int = 0
    max_parallel: int = 1
    downscale: bool = False
    chunk_size: int = 4096
    executor: str = "thread"

    def run(self, tasks: list) -> list:
        """Execute every task; returns one output array per task, index-ordered."""
        chunks = []
        for ti, t in enumerate(tasks):
            for off in range(0, t.count, self.chunk_size):
                chunks.append((ti, t.start + off, min(self.chunk_size, t.count - off)))
        if self.max_parallel <= 1 or len(chunks) <= 1:
            results = [_run_chunk(tasks[ti], self.master_seed, s, c) for ti, s, c in chunks]
        else:
            pool_cls = ProcessPoolExecutor if self.executor == "process" else ThreadPoolExecutor
            with pool_cls(max_workers=self.max_parallel) as ex:
                futs = [ex.submit(_run_chunk, tasks[ti], self.master_seed, s, c) for ti, s, c in chunks]
                results = [f.result() for f in futs]
        out = []
        for ti, t in enumerate(tasks):
            parts = [r for (cti, _, _), r in zip(chunks, results) if cti == ti]
            if parts:
                out.append(np.concatenate(parts))
            else:
                shape = (0, 3) if t.kind == est.PURE_CLASSICAL else (0,)
                out.append(np.zeros(shape))
        return out


def _fit(planned_eps: int, buckets: int, cap, downscale: bool, what: str, warnings: list) -> int:
    need = planned_eps * buckets
    if cap is None or need <= cap:
        return planned_eps
    if not downscale:
        raise InfeasiblePlanError(f"{what} needs {need} workers but the pool has {cap}")
    got = max(1, cap // buckets)
    warnings.append(
        f"{what}: downscaled from {planned_eps} to {got} runs per bucket; "
        f"error target degrades by a factor of about {math.sqrt(planned_eps / got):.3g}")
    return got


# ------------------------------------------------------------------ reports

@dataclass(frozen=True)
class Hints:
    m: float
    t: float
    delta_e: float

    def clamped(self) -> "Hints":
        # planning formulas need strictly positive values
        return Hints(m=max(1.0, self.m), t=max(1.0, self.t), delta_e=max(1.0, self.delta_e))


@dataclass
class RunReport:
    target: str
    mode: str
    k: int
    m: int
    eps: float
    delta: float
    hints: dict
    plan: dict
    light_bucket: int
    light_buckets: int
    heavy_bucket: int
    heavy_buckets: int
    light_range: tuple
    heavy_range: tuple
    heavy_scale: float
    reduced_light: float
    reduced_heavy: float
    combined: float
    raw_light: list = field(default_factory=list, repr=False)
    raw_heavy: list = field(default_factory=list, repr=False)
    warnings: list = field(default_factory=list)

    def to_dict(self, include_raw: bool = True) -> dict:
        d = asdict(self)
        d["light_range"] = list(self.light_range)
        d["heavy_range"] = list(self.heavy_range)
        if not include_raw:
            d.pop("raw_light")
            d.pop("raw_heavy")
        return d

    def to_json(self, include_raw: bool = True) -> str:
        return json.dumps(self.to_dict(include_raw), sort_keys=True)


@dataclass
class ClassicalReport:
    target: str
    eps: float
    delta: float
    plan: dict
    bucket: int
    buckets: int
    worker_range: tuple
    estimate: float
    numerator: float | None = None
    denominator: float | None = None
    raw: list = field(default_factory=list, repr=False)
    warnings: list = field(default_factory=list)

    def to_dict(self, include_raw: bool = True) -> dict:
        d = asdict(self)
        d["worker_range"] = list(self.worker_range)
        if not include_raw:
            d.pop("raw")
        return d

    def to_json(self, include_raw: bool = True) -> str:
        return json.dumps(self.to_dict(include_raw), sort_keys=True)


# --------------------------------------------------------------- combiners

@dataclass
class _Allocator:
    # hands out disjoint global worker-index ranges in a fixed order
    next_index: int = 0

    def take(self, count: int) -> tuple[int, int]:
        start = self.next_index
        self.next_index += count
        return start, count


def _prepare_hybrid(s: SignedEdgeStream, mode: StreamMode, eps: float, delta: float, hints: Hints,
                    pool: WorkerPool, alloc: _Allocator, target: str, k=None):
    # builds the two tasks of one hybrid target; returns (tasks, finish)
    warnings: list = []
    h = hints.clamped()
    m = max(1, math.ceil(h.m))
    if s.m > m:
        raise ValueError(f"{target}: stream has {s.m} edges but the m hint is {m}")
    plan = repetition_plan(eps / 2, delta / 2, k, m, h.t, h.delta_e)
    kk = plan.k
    ne_l = _fit(plan.n_eps_light, plan.n_delta_light, pool.light_workers, pool.downscale,
                f"{target} light", warnings)
    ne_h = _fit(plan.n_eps_heavy, plan.n_delta_heavy, pool.heavy_workers, pool.downscale,
                f"{target} heavy", warnings)
    if s.m == 0:
        # nothing can be detected; no worker needs to run
        ne_l = ne_h = 0
    lr = alloc.take(ne_l * plan.n_delta_light)
    hr = alloc.take(ne_h * plan.n_delta_heavy)
    tasks = [Task(est.LIGHT, s, lr[0], lr[1], mode, kk, m),
             Task(est.HEAVY, s, hr[0], hr[1], mode, kk, m)]
    scale = est.heavy_scale(kk, m)

    def finish(light_vals, heavy_vals) -> RunReport:
        if s.m == 0:
            rl = rh = 0.0
        else:
            rl = median_of_means(light_vals, ne_l, plan.n_delta_light)
            rh = median_of_means(heavy_vals, ne_h, plan.n_delta_heavy) * scale
        return RunReport(
            target=target, mode=mode.value, k=kk, m=m, eps=eps, delta=delta,
            hints=asdict(hints), plan=plan.to_dict(),
            light_bucket=ne_l, light_buckets=plan.n_delta_light,
            heavy_bucket=ne_h, heavy_buckets=plan.n_delta_heavy,
            light_range=lr, heavy_range=hr, heavy_scale=scale,
            reduced_light=rl, reduced_heavy=rh, combined=rl + rh,
            raw_light=[float(x) for x in light_vals], raw_heavy=[float(x) for x in heavy_vals],
            warnings=warnings)

    return tasks, finish


def hybrid_count(s: SignedEdgeStream, mode: StreamMode, eps: float, delta: float, hints: Hints,
                 master_seed: int, pool: WorkerPool, target: str = "T1", k=None) -> RunReport:
    """Light plus rescaled heavy estimate of one triangle count."""
    pool = _with_seed(pool, master_seed)
    tasks, finish = _prepare_hybrid(s, mode, eps, delta, hints, pool, _Allocator(), target, k)
    light, heavy = pool.run(tasks)
    return finish(light, heavy)


def t1_hybrid(s: SignedEdgeStream, eps: float, delta: float, hints: Hints, master_seed: int,
              pool: WorkerPool, k=None) -> RunReport:
    return hybrid_count(s, StreamMode.SIGNED_T1, eps, delta, hints, master_seed, pool, "T1", k)


def _with_seed(pool: WorkerPool, master_seed) -> WorkerPool:
    if master_seed is None or master_seed == pool.master_seed:
        return pool
    d = asdict(pool)
    d["master_seed"] = master_seed
    return WorkerPool(**d)


def balance_targets(s: SignedEdgeStream):
    """``(label, stream, mode)`` for the numerator and denominator counts."""
    return [("T1", s, StreamMode.SIGNED_T1),
            ("T3", filter_positive(s), StreamMode.UNSIGNED_ALL),
            ("T", strip_signs(s), StreamMode.UNSIGNED_ALL)]


def exact_hints(s: SignedEdgeStream) -> dict:
    """Per-target hints computed from the stream itself (experiment mode)."""
    g = s.to_graph()
    gp = graph_params(g)
    c = count_triangles_exact(g)
    out = {"T1": Hints(m=s.m, t=c.t1, delta_e=gp.delta_e)}
    for label, t, _ in balance_targets(s)[1:]:
        tg = t.to_graph()
        tc = count_triangles_exact(tg)
        out[label] = Hints(m=t.m, t=tc.total, delta_e=graph_params(tg).delta_e)
    return out


@dataclass
class BalanceResult:
    estimate: float
    reports: dict

    def to_dict(self, include_raw: bool = False) -> dict:
        return {"estimate": self.estimate,
                "reports": {k: r.to_dict(include_raw) for k, r in self.reports.items()}}

    def to_json(self, include_raw: bool = False) -> str:
        return json.dumps(self.to_dict(include_raw), sort_keys=True)


def balance_hybrid(s: SignedEdgeStream, eps: float, delta: float, hints, master_seed: int,
                   pool: WorkerPool) -> BalanceResult:
    """``(R1 + R3) / R`` with each count at budget ``(eps/(2+eps), delta/3)``.

    ``hints`` is either one :class:`Hints` shared by all three counts or a
    mapping from ``"T1"``, ``"T3"``, ``"T"`` to per-count hints.
    """
    pool = _with_seed(pool, master_seed)
    sub_eps = eps / (2 + eps)
    sub_delta = delta / 3
    alloc = _Allocator()
    tasks, finishers = [], []
    for label, t, mode in balance_targets(s):
        h = hints[label] if isinstance(hints, dict) else hints
        tk, fin = _prepare_hybrid(t, mode, sub_eps, sub_delta, h, pool, alloc, label)
        tasks.extend(tk)
        finishers.append((label, fin))
    outs = pool.run(tasks)
    reports = {label: fin(outs[2 * i], outs[2 * i + 1]) for i, (label, fin) in enumerate(finishers)}
    denom = reports["T"].combined
    if not denom > 0:
        raise BalanceAnomalyError(f"estimated triangle count is {denom}; balance undefined", reports)
    return BalanceResult((reports["T1"].combined + reports["T3"].combined) / denom, reports)


@dataclass(frozen=True)
class ClassicalHints:
    t: float
    delta_e: float
    delta_v: float
    t_balanced: float | None = None


def exact_classical_hints(s: SignedEdgeStream) -> ClassicalHints:
    g = s.to_graph()
    gp = graph_params(g)
    c = count_triangles_exact(g)
    return ClassicalHints(t=c.total, delta_e=gp.delta_e, delta_v=gp.delta_v, t_balanced=c.balanced)


def _classical_job(s, eps, delta, rates, t_plan, h: ClassicalHints, pool, target, alloc):
    p_e, p_v = rates
    warnings: list = []
    cp = classical_plan(eps, delta, p_e, p_v, max(1.0, t_plan), max(1.0, h.delta_e), max(1.0, h.delta_v))
    ne = _fit(cp.n_eps, cp.n_delta, pool.light_workers, pool.downscale, f"{target} classical", warnings)
    if s.m == 0:
        ne = 0
    rng_ = alloc.take(ne * cp.n_delta)
    task = Task(est.PURE_CLASSICAL, s, rng_[0], rng_[1], p_e=p_e, p_v=p_v)
    return cp, ne, rng_, task, warnings


def balance_classical(s: SignedEdgeStream, eps: float, delta: float, rates, hints: ClassicalHints,
                      master_seed: int, pool: WorkerPool) -> ClassicalReport:
    """Ratio of the median-of-means of balanced and of all sampled triangles.

    Both medians use the same workers; each is planned at ``(eps/(2+eps),
    delta/2)`` against the balanced-count hint (``t/2`` when missing), the
    smaller and therefore binding of the two.
    """
    pool = _with_seed(pool, master_seed)
    t_bal = hints.t_balanced if hints.t_balanced is not None else hints.t / 2
    cp, ne, rng_, task, warnings = _classical_job(
        s, eps / (2 + eps), delta / 2, rates, t_bal, hints, pool, "balance", _Allocator())
    (raw,) = pool.run([task])
    if ne == 0:
        raise BalanceAnomalyError("empty stream; balance undefined")
    num = median_of_means(raw[:, 1], ne, cp.n_delta)
    den = median_of_means(raw[:, 1] + raw[:, 2], ne, cp.n_delta)
    if not den > 0:
        raise BalanceAnomalyError(f"estimated triangle count is {den}; balance undefined")
    return ClassicalReport(target="balance", eps=eps, delta=delta, plan=cp.to_dict(), bucket=ne,
                           buckets=cp.n_delta, worker_range=rng_, estimate=num / den,
                           numerator=num, denominator=den,
                           raw=[[float(a), float(b), float(c)] for a, b, c in raw], warnings=warnings)


def classical_count(s: SignedEdgeStream, j, eps: float, delta: float, rates, hints: ClassicalHints,
                    master_seed: int, pool: WorkerPool) -> ClassicalReport:
    """Median-of-means of the sampled-vertex/edge estimator for ``T_j`` (or ``"T"``)."""
    pool = _with_seed(pool, master_seed)
    t, mode = est.target_stream(s, j)
    label = j if isinstance(j, str) else f"T{j}"
    cp, ne, rng_, task, warnings = _classical_job(
        t, eps, delta, rates, hints.t, hints, pool, label, _Allocator())
    (raw,) = pool.run([task])
    col = raw[:, 0] if mode is StreamMode.SIGNED_T1 else raw[:, 1] + raw[:, 2]
    value = median_of_means(col, ne, cp.n_delta) if ne else 0.0
    return ClassicalReport(target=label, eps=eps, delta=delta, plan=cp.to_dict(), bucket=ne,
                           buckets=cp.n_delta, worker_range=rng_, estimate=value,
                           raw=[float(x) for x in col], warnings=warnings)


def exact_count_hints(s: SignedEdgeStream, j) -> tuple[Hints, ClassicalHints]:
    """Exact hybrid and classical hints for estimating ``T_j`` (or ``"T"``) of ``s``."""
    t, mode = est.target_stream(s, j)
    g = t.to_graph()
    c = count_triangles_exact(g)
    gp = graph_params(g)
    tt = c.t1 if mode is StreamMode.SIGNED_T1 else c.total
    return (Hints(m=t.m, t=tt, delta_e=gp.delta_e),
            ClassicalHints(t=tt, delta_e=gp.delta_e, delta_v=gp.delta_v))


def run_distributed(tasks: list, pool: WorkerPool) -> list:
    """Run already-planned tasks on the pool (see :meth:`WorkerPool.run`)."""
    return pool.run(tasks)


# -------------------------------------------------------------- manifests

def manifest(command: str, master_seed: int, config: dict, reports: list) -> dict:
    """Everything needed to replay a run: seed, inputs and worker ranges.

    Worker ``i`` of a range ``[start, start+count)`` used seed
    ``split_seed(master_seed, i)``; ranges are stored instead of the seeds.
    """
    return {
        "command": command,
        "master_seed": master_seed,
        "seed_rule": "split_seed(master_seed, worker_index)",
        "config": config,
        "runs": reports,
    }


def hint_sensitivity(fn, hints: Hints, factors=(0.5, 1.0, 2.0)) -> dict:
    """Re-run ``fn(hints)`` with ``t`` and ``delta_e`` scaled; reports the spread."""
    out = {}
    for f in factors:
        h = Hints(m=hints.m, t=hints.t * f, delta_e=hints.delta_e * f)
        out[str(f)] = fn(h)
    vals = [v for v in out.values() if isinstance(v, (int, float))]
    spread = (max(vals) - min(vals)) if vals else float("nan")
    return {"estimates": out, "spread": spread}


__all__ = [
    "BalanceAnomalyError", "BalanceResult", "ClassicalHints", "ClassicalPlan", "ClassicalReport",
    "Hints", "InfeasiblePlanError", "Plan", "RunReport", "Task", "WorkerError", "WorkerPool",
    "balance_classical", "balance_hybrid", "balance_targets", "classical_count", "exact_classical_hints",
    "exact_count_hints", "exact_hints", "hint_sensitivity", "hybrid_count", "manifest",
    "median_of_means", "n_delta", "run_distributed", "t1_hybrid",
]
