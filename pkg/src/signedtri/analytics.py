"""Closed-form moments, the ordering-aware light/heavy split, and planning models."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .stream import SignedEdgeStream, StreamMode


@dataclass(frozen=True)
class WedgeDegrees:
    d_plus: int
    d_minus: int

    @property
    def d(self) -> int:
        return self.d_plus + self.d_minus


@dataclass(frozen=True)
class TriangleTerm:
    center: int
    closing: tuple        # (v, w) of the last-arriving edge
    exponent: int
    t_less: float

    @property
    def t_greater(self) -> float:
        return 1.0 - self.t_less


@dataclass(frozen=True)
class KSplit:
    t_less: float
    t_greater: float
    terms: tuple

    @property
    def total(self) -> int:
        return len(self.terms)


def _arm_degrees(s: SignedEdgeStream, by_vertex: dict, arm_idx: int, tail: int,
                 close_idx: int) -> WedgeDegrees:
    # +/- edges at ``tail`` arriving strictly between the arm and the closing edge
    dp = dm = 0
    for j in by_vertex[tail]:
        if arm_idx < j < close_idx:
            if s.items[j][2] > 0:
                dp += 1
            else:
                dm += 1
    return WedgeDegrees(dp, dm)


def oracle_k_split(s: SignedEdgeStream, k: float, mode: StreamMode = StreamMode.SIGNED_T1) -> KSplit:
    """Split the targeted triangle count into its light and heavy parts.

    Targeted triangles are those with exactly one positive edge in signed
    mode and all triangles in unsigned mode.  For each one, let ``vw`` be the
    edge that arrives last and ``u`` the opposite vertex.  Each arm ``(u, x)``
    contributes the number of edges at ``x`` arriving between the arm and
    ``vw``; a positive arm (signed mode only) counts negative edges only.
    The light weight of the triangle is ``(1 - 1/k)**exponent``.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    q = 1.0 - 1.0 / k
    pos = {}
    by_vertex: dict = {}
    for i, (u, v, _) in enumerate(s.items):
        pos[(u, v)] = i
        by_vertex.setdefault(u, []).append(i)
        by_vertex.setdefault(v, []).append(i)
    nbrs: dict = {}
    for u, v, _ in s.items:
        nbrs.setdefault(u, set()).add(v)
        nbrs.setdefault(v, set()).add(u)

    def idx(a, b):
        return pos[(a, b) if a < b else (b, a)]

    terms = []
    for (a, b), i_ab in pos.items():
        for c in nbrs[a] & nbrs[b]:
            if c <= b:
                continue
            e = {(a, b): i_ab, (a, c): idx(a, c), (b, c): idx(b, c)}
            signs = {p: s.items[j][2] for p, j in e.items()}
            if mode is StreamMode.SIGNED_T1 and sum(x > 0 for x in signs.values()) != 1:
                continue
            (v, w), close = max(e.items(), key=lambda kv: kv[1])
            u = ({a, b, c} - {v, w}).pop()
            exponent = 0
            for x in (v, w):
                arm = idx(u, x)
                deg = _arm_degrees(s, by_vertex, arm, x, close)
                positive_arm = s.items[arm][2] > 0
                if mode is StreamMode.SIGNED_T1 and positive_arm:
                    exponent += deg.d_minus
                else:
                    exponent += deg.d
            t = q ** exponent
            terms.append(TriangleTerm(center=u, closing=(v, w), exponent=exponent, t_less=t))
    terms.sort(key=lambda t: (t.closing, t.center))
    t_less = math.fsum(t.t_less for t in terms)
    t_greater = math.fsum(t.t_greater for t in terms)
    return KSplit(t_less=t_less, t_greater=t_greater, terms=tuple(terms))


# ------------------------------------------------------------------ moments

def _t1_pattern(p_e, p_plus):
    return p_e ** 3 * p_plus * (1 - p_plus) ** 2


def expected_t1(n: int, p_e: float, p_plus: float) -> float:
    """Mean number of one-positive-edge triangles in a signed G(n, p_e)."""
    return 3 * math.comb(n, 3) * _t1_pattern(p_e, p_plus)


def var_t1(n: int, p_e: float, p_plus: float) -> float:
    """Variance of the one-positive-edge triangle count in a signed G(n, p_e).

    Diagonal terms plus the covariance of ordered pairs of triangles that
    share exactly one edge (pairs sharing no edge are independent).
    """
    x = 3 * _t1_pattern(p_e, p_plus)
    diag = math.comb(n, 3) * x * (1 - x)
    joint = p_e ** 5 * p_plus * (1 - p_plus) ** 3 * (1 + 3 * p_plus)
    pairs = 2 * math.comb(n, 2) * math.comb(n - 2, 2)
    return diag + pairs * (joint - x * x)


def expected_delta_e1_bound(n: int, p_e: float, p_plus: float) -> float:
    """Heuristic upper estimate of the largest one-positive triangle count on an edge.

    Mean of a Binomial(n-2, q) plus a sub-Gaussian maximal deviation over
    about ``n^2 p_e`` edges.  A planning aid, not an exact expectation.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    arg = n * n * p_e
    if arg <= 1:
        raise ValueError(f"n^2 * p_e must exceed 1 for the deviation term (got {arg})")
    q = 3 * p_e ** 2 * p_plus * (1 - p_plus) ** 2
    return (n - 2) * q + math.sqrt(2 * (n - 2) * q * (1 - q) * math.log(arg))


# ----------------------------------------------------------------- planning

def n_delta(delta: float) -> int:
    """Number of median buckets for failure probability ``delta``."""
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    return max(1, math.ceil(8 * math.log(1 / delta)))


def auto_k(t: float, delta_e: float, m: float) -> int:
    k = math.ceil(t ** 0.4 * delta_e ** 0.4 / m ** 0.2)
    return int(max(1, min(k, max(1, math.floor(m)))))


@dataclass(frozen=True)
class Plan:
    eps: float
    delta: float
    k: int
    k_auto: int
    m: float
    t: float
    delta_e: float
    n_eps_light: int
    n_delta_light: int
    n_eps_heavy: int
    n_delta_heavy: int

    @property
    def light_runs(self) -> int:
        return self.n_eps_light * self.n_delta_light

    @property
    def heavy_runs(self) -> int:
        return self.n_eps_heavy * self.n_delta_heavy

    def to_dict(self) -> dict:
        return asdict(self)


def repetition_plan(eps: float, delta: float, k, m_hint: float, t_hint: float,
                    delta_e_hint: float) -> Plan:
    """Bucket sizes and counts for the light and heavy median-of-means.

    Light: per-run variance at most ``(km)^2 - t^2``; heavy: the rescaled
    heavy output has variance at most ``4 t delta_e m^1.5 / sqrt(k)``.  Both
    use bucket size ``4 Var / (eps t)^2`` and ``ceil(8 ln 1/delta)`` buckets.
    ``k=None`` picks the balancing threshold from the hints.
    """
    for name, val in (("m_hint", m_hint), ("t_hint", t_hint), ("delta_e_hint", delta_e_hint)):
        if not val > 0:
            raise ValueError(f"{name} must be positive, got {val}")
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    ka = auto_k(t_hint, delta_e_hint, m_hint)
    kk = ka if k is None else int(max(1, min(int(k), max(1, math.floor(m_hint)))))
    nd = n_delta(delta)
    km = kk * m_hint
    light = math.ceil(4 * (km * km - t_hint * t_hint) / (t_hint * t_hint * eps * eps))
    heavy = math.ceil(16 * delta_e_hint * m_hint ** 1.5 / (math.sqrt(kk) * t_hint * eps * eps))
    return Plan(eps=eps, delta=delta, k=kk, k_auto=ka, m=m_hint, t=t_hint, delta_e=delta_e_hint,
                n_eps_light=max(1, light), n_delta_light=nd,
                n_eps_heavy=max(1, heavy), n_delta_heavy=nd)


@dataclass(frozen=True)
class ClassicalPlan:
    eps: float
    delta: float
    p_e: float
    p_v: float
    variance_bound: float
    n_eps: int
    n_delta: int

    @property
    def runs(self) -> int:
        return self.n_eps * self.n_delta

    def to_dict(self) -> dict:
        return asdict(self)


def classical_variance_bound(t: float, p_e: float, p_v: float, delta_e: float, delta_v: float) -> float:
    """Upper estimate of the variance of one sampled-vertex/edge run.

    Sum of the diagonal term and the covariances of triangle pairs sharing a
    sampled vertex and an arm, sharing an edge across two centres, or sharing
    only the sampled vertex.
    """
    return t * (1.0 / (p_v * p_e * p_e)
                + 2.0 * delta_e / (p_v * p_e)
                + 2.0 * delta_e * (1.0 - p_e) / p_e
                + delta_v * (1.0 - p_v) / p_v)


def classical_plan(eps: float, delta: float, p_e: float, p_v: float, t_hint: float,
                   delta_e_hint: float, delta_v_hint: float) -> ClassicalPlan:
    if not t_hint > 0:
        raise ValueError("t_hint must be positive")
    var = classical_variance_bound(t_hint, p_e, p_v, delta_e_hint, delta_v_hint)
    ne = max(1, math.ceil(4 * var / (eps * t_hint) ** 2))
    return ClassicalPlan(eps=eps, delta=delta, p_e=p_e, p_v=p_v, variance_bound=var,
                         n_eps=ne, n_delta=n_delta(delta))


def qubits_per_worker(n: int) -> int:
    return 2 * math.ceil(math.log2(max(n, 2))) + 2


def space_model(m: float, t1: float, delta_e: float, eps: float, delta: float,
                n: int | None = None, delta_v: float | None = None) -> dict:
    """Constant-free space expressions for the hybrid and classical estimators.

    ``delta_v`` defaults to ``t1`` (its largest possible value) and the
    ``log n`` factor is included only when ``n`` is given.
    """
    for name, val in (("m", m), ("t1", t1), ("delta_e", delta_e), ("eps", eps)):
        if not val > 0:
            raise ValueError(f"{name} must be positive, got {val}")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1) for a log(1/delta) factor")
    dv = t1 if delta_v is None else delta_v
    rep = math.log(1 / delta) / eps ** 2
    logn = math.log2(n) if n else 1.0
    hybrid = m ** 1.6 / t1 ** 1.2 * delta_e ** 0.8 * rep * logn
    classical = m / t1 * (delta_e + math.sqrt(dv)) * rep * logn
    out = {
        "m": m, "t1": t1, "delta_e": delta_e, "delta_v": dv, "eps": eps, "delta": delta,
        "hybrid_space": hybrid,
        "classical_space": classical,
        "hybrid_over_classical": hybrid / classical,
        "k_auto": auto_k(t1, delta_e, m),
    }
    if n:
        out["n"] = n
        out["qubits_per_worker"] = qubits_per_worker(n)
    return out
